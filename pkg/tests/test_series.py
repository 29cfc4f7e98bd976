import random
from fractions import Fraction

import pytest

from hypercong.errors import (
    NotTerminating,
    PreconditionViolated,
    ZeroDenominator,
    ZeroLowerFactor,
)
from hypercong.exact_core import ShiftedSumSpec, harmonic, pochhammer, shifted_power_sum
from hypercong.padic import PrimePowerModulus, ord_rational, reduce_mod
from hypercong.series import (
    HyperSeriesSpec,
    TheoremParams,
    delta_jet,
    delta_value,
    dflst_dual,
    dflst_sum,
    dual_reduction_sum,
    guo_sum,
    karlsson_minton_sum,
    lhs_theorem1,
    lhs_theorem2,
    phi_jet,
    phi_value,
    psi_jet,
    psi_value,
    sun_e_sum,
    theorem2_prefactor,
    truncated_pfq,
    upsilon_jet,
)

F = Fraction


# --- truncated series --------------------------------------------------------


def test_pfq_single_term():
    spec = HyperSeriesSpec((F(3, 7), F(-2)), (F(5),), F(9), 0)
    assert truncated_pfq(spec) == 1


def test_pfq_terminating_karlsson_minton_instance():
    spec = HyperSeriesSpec((F(-2), F(2)), (F(1),), F(1), 2)
    # terms 1 - 4 + 3
    assert truncated_pfq(spec) == 0


def test_pfq_no_lower_parameters():
    spec = HyperSeriesSpec((F(1),), (), F(1), 3)
    assert truncated_pfq(spec) == 4


def test_pfq_rejects_vanishing_lower_parameter():
    with pytest.raises(ZeroLowerFactor):
        HyperSeriesSpec((F(1),), (F(-1),), F(1), 2)
    # -5 is outside the vanishing window for N = 3
    HyperSeriesSpec((F(1),), (F(-5),), F(1), 3)


def test_pfq_rejects_negative_truncation():
    with pytest.raises(ValueError):
        HyperSeriesSpec((F(1),), (), F(1), -1)


# --- Karlsson-Minton ----------------------------------------------------------


def test_karlsson_minton_basic_vanishing():
    result = karlsson_minton_sum(-2, [(F(1), 1)])
    assert result.value == 0
    assert not result.hypothesis_violated


def test_karlsson_minton_two_pairs():
    result = karlsson_minton_sum(-3, [(F(1), 1), (F(2), 1)])
    assert result.value == 0
    assert not result.hypothesis_violated


def test_karlsson_minton_flagged_outside_hypothesis():
    result = karlsson_minton_sum(-1, [(F(1), 1)])
    assert result.hypothesis_violated
    assert result.value == -1


def test_karlsson_minton_rejects_non_terminating():
    with pytest.raises(NotTerminating):
        karlsson_minton_sum(F(-3, 2), [])
    with pytest.raises(NotTerminating):
        karlsson_minton_sum(2, [])


def test_karlsson_minton_rejects_vanishing_base():
    with pytest.raises(ZeroLowerFactor):
        karlsson_minton_sum(-4, [(F(-2), 1)])
    with pytest.raises(ValueError):
        karlsson_minton_sum(-4, [(F(1), -1)])


def test_karlsson_minton_random_draws_vanish():
    rng = random.Random(99)
    for _ in range(60):
        length = rng.randint(1, 40)
        r = rng.randint(0, 3)
        pairs = []
        budget = length - 1
        for _ in range(r):
            m = rng.randint(0, budget // r) if r else 0
            budget -= m
            b = F(rng.randint(1, 20), rng.choice([1, 1, 2, 3, 5]))
            pairs.append((b, m))
        result = karlsson_minton_sum(-length, pairs)
        assert not result.hypothesis_violated
        assert result.value == 0


# --- parameter triples --------------------------------------------------------


def test_theorem_params_validation():
    tp = TheoremParams(4, 2, 11)
    assert tp.in_hypothesis
    with pytest.raises(PreconditionViolated, match="parity"):
        TheoremParams(3, 2, 11)
    with pytest.raises(PreconditionViolated, match="range"):
        TheoremParams(4, 2, 5)
    with pytest.raises(PreconditionViolated):
        TheoremParams(2, 1, 7)
    with pytest.raises(PreconditionViolated):
        TheoremParams(4, 0, 7)
    with pytest.raises(PreconditionViolated):
        TheoremParams(4, 1, 9)


def test_theorem_params_exploratory_mode():
    tp = TheoremParams(3, 2, 11, exploratory=True)
    assert not tp.in_hypothesis
    assert any("parity" in reason for reason in tp.hypothesis_violations())
    # equality ignores the exploratory flag
    assert tp == TheoremParams(3, 2, 11, exploratory=True)


# --- concrete sums ------------------------------------------------------------


def test_psi_value_all_ones():
    assert psi_value(TheoremParams(3, 1, 5), 0) == 5


def test_psi_value_cubes():
    # sum_{k=0}^{5} ((2)_k/(1)_k)^3 = sum (k+1)^3
    assert psi_value(TheoremParams(3, 2, 7, exploratory=True), 0) == 441


def test_psi_value_at_displacement_is_congruent_to_zero():
    tp = TheoremParams(4, 1, 7)
    value = psi_value(tp, F(7, 4))
    assert reduce_mod(value, PrimePowerModulus(7, 3)).value == 0


@pytest.mark.parametrize("n,q,p", [(4, 1, 7), (4, 2, 11), (3, 1, 5)])
def test_lhs_theorem1_valuations(n, q, p):
    assert ord_rational(lhs_theorem1(TheoremParams(n, q, p)), p) >= 3


@pytest.mark.parametrize("n,q,p", [(4, 1, 7), (4, 2, 11), (3, 3, 11)])
def test_lhs_theorem2_valuations(n, q, p):
    assert ord_rational(lhs_theorem2(TheoremParams(n, q, p)), p) >= 3


@pytest.mark.parametrize("n,q,p", [(4, 2, 11), (3, 1, 5)])
def test_lhs_theorem1_is_a_pfq_specialization(n, q, p):
    tp = TheoremParams(n, q, p)
    spec = HyperSeriesSpec(
        (F(q) - F(p, n),) * n, (F(1),) * (n - 1), F(1), p - 1
    )
    assert lhs_theorem1(tp) == truncated_pfq(spec)


def test_named_sums_are_pfq_specializations():
    # dual route: the incremental evaluators against per-term products
    d, p = 4, 7
    spec = HyperSeriesSpec((F(1, d),) * d, (F(1),) * (d - 1), F(1), p - 1)
    assert guo_sum(d, p) == truncated_pfq(spec)
    p = 5
    spec = HyperSeriesSpec((F(1, p + 1),) * (p + 1), (F(1),) * p, F(1), p - 1)
    assert sun_e_sum(p) == truncated_pfq(spec)
    n, p = 3, 7
    spec = HyperSeriesSpec((1 - F(1, n),) * n, (F(1),) * (n - 1), F(1), p - 1)
    assert dflst_sum(n, p) == truncated_pfq(spec)
    # one extra upper 1 absorbs the k! of the pfq normalization
    spec = HyperSeriesSpec((F(1),) * (n + 1), (1 + F(1, n),) * n, F(1), p - 1)
    assert dflst_dual(n, p) == F(p) ** n * truncated_pfq(spec)


def test_delta_value_rejects_vanishing_denominator():
    with pytest.raises(ZeroDenominator):
        delta_value(TheoremParams(4, 2, 11), -3)


# --- jets of the sums ---------------------------------------------------------


@pytest.mark.parametrize("n,q,p", [(3, 1, 5), (4, 2, 11)])
def test_upsilon_jet_is_zero(n, q, p):
    assert upsilon_jet(TheoremParams(n, q, p), 2).is_zero


def test_upsilon_jet_degenerate_cap():
    jet = upsilon_jet(TheoremParams(3, 2, 7, exploratory=True), 0)
    assert jet.coefficient(0, 0) == 0


def test_phi_jet_constant_term_is_psi_at_zero():
    tp = TheoremParams(3, 1, 5)
    assert phi_jet(tp, 0).coefficient(0, 0) == psi_value(tp, 0) == 5


def test_psi_derivatives_reduce_to_phi_partials():
    tp = TheoremParams(4, 2, 11)
    psi = psi_jet(tp, 2)
    phi = phi_jet(tp, 2)
    n = tp.n
    assert psi.partial(1, 0) == n * phi.partial(1, 0)
    assert psi.partial(2, 0) == n * (phi.partial(1, 1) + phi.partial(2, 0))


def test_delta_jet_slope_matches_closed_form():
    n, q, p = 3, 1, 5
    tp = TheoremParams(n, q, p)
    offset = q - F(p, n)
    expected = F(0)
    for k in range(p - q + 1):
        weight = (pochhammer(offset, k) / pochhammer(F(1), k)) ** n
        s1 = shifted_power_sum(ShiftedSumSpec(offset, 1, k))
        expected += weight * (s1 - harmonic(k))
    assert delta_jet(tp, 1).coefficient(1, 0) == n * expected


def test_phi_vanishes_at_p_zero():
    for tp in (TheoremParams(3, 1, 5), TheoremParams(4, 2, 11)):
        assert phi_value(tp, tp.p, 0) == 0


def test_reflection_identity_exact():
    tp = TheoremParams(4, 2, 11)
    n, q, p = tp.n, tp.q, tp.p
    b = F(p, n) - q + 2
    a = q - F(p, n) - p
    scale = pochhammer(F(1), p - 1) / pochhammer(b, p - 1)
    for k in range(p):
        lhs = pochhammer(F(1), k) / pochhammer(b, k)
        rhs = scale * pochhammer(a, p - 1 - k) / pochhammer(1 - p, p - 1 - k)
        assert lhs == rhs


def test_theorem2_prefactor_valuation_and_factorization():
    unit_tp = TheoremParams(4, 2, 11)
    assert ord_rational(theorem2_prefactor(unit_tp), 11) == 0
    q1_tp = TheoremParams(4, 1, 7)
    assert ord_rational(theorem2_prefactor(q1_tp), 7) == q1_tp.n
    for tp in (unit_tp, q1_tp):
        assert lhs_theorem2(tp) == theorem2_prefactor(tp) * dual_reduction_sum(tp)


def test_upsilon_first_and_second_order_consequences_vanish():
    # the exact sums extracted from the vanishing jet, recomputed from scalars
    for n, q, p in ((4, 2, 11), (3, 1, 5)):
        for order in (1, 2):
            total, scalar = F(0), F(1)
            for k in range(p):
                s = shifted_power_sum(ShiftedSumSpec(F(q), order, k))
                total += scalar * (s - harmonic(k, order))
                if k < p - 1:
                    scalar *= F((1 - p + k) * (q + k) ** n, (k + 1) ** (n + 1))
            assert total == 0
