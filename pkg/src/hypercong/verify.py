"""Congruence verdicts: every theorem, lemma and proof-step identity is a
named check returning a structured :class:`CongruenceReport`.

A report's achieved valuation is always computed exactly on the rational
difference, never by trial division of residues, so it cannot be capped by
the modulus precision.  Exact identities (value must be zero, not just zero
mod p^k) are encoded with ``required_ord = math.inf``; for those no finite
residue is attached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from .errors import PreconditionViolated
from .exact_core import harmonic
from .jets import Jet2
from .padic import (
    PrimePowerModulus,
    Residue,
    bernoulli,
    is_prime,
    morita_gamma,
    ord_rational,
    reduce_mod,
)
from .series import (
    TheoremParams,
    delta_jet,
    delta_value,
    dflst_dual,
    dflst_sum,
    dual_reduction_sum,
    guo_sum,
    lhs_theorem1,
    lhs_theorem2,
    phi_jet,
    phi_value,
    psi_jet,
    psi_value,
    sun_bernoulli_lhs,
    sun_e_sum,
    upsilon_jet,
)

__all__ = [
    "Verdict",
    "CongruenceReport",
    "check_congruence",
    "verify_theorem1",
    "verify_theorem2",
    "verify_guo",
    "verify_sun_e",
    "verify_sun_bernoulli",
    "verify_dflst_pair",
    "verify_lemma_suite",
    "verify_taylor",
    "verify_exact_identities",
]


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    ILL_POSED = "ill_posed"
    HYPOTHESIS_VIOLATED = "hypothesis_violated"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class CongruenceReport:
    """Structured verdict for one congruence or exact-identity check.

    ``required_ord`` is math.inf for exact identities.  ``achieved_ord`` is
    None only for skipped checks.  The residue is present exactly when the
    difference is p-integral and the required valuation is finite.
    """

    check_id: str
    params: dict
    required_ord: int | float
    achieved_ord: int | float | None
    residue_at_required: Residue | None
    verdict: Verdict

    @property
    def observed_holds(self) -> bool | None:
        """Whether the valuation reaches the requirement, ignoring the tag."""
        if self.achieved_ord is None:
            return None
        return self.achieved_ord >= self.required_ord


def check_congruence(lhs, rhs, m: PrimePowerModulus, *, check_id: str = "congruence",
                     params: dict | None = None) -> CongruenceReport:
    """Compare lhs and rhs mod p^k; verdict holds iff ord_p(lhs - rhs) >= k."""
    diff = Fraction(lhs) - Fraction(rhs)
    achieved = ord_rational(diff, m.p)
    params = dict(params or {})
    if achieved < 0:
        return CongruenceReport(check_id, params, m.k, achieved, None, Verdict.ILL_POSED)
    residue = reduce_mod(diff, m)
    verdict = Verdict.HOLDS if achieved >= m.k else Verdict.FAILS
    return CongruenceReport(check_id, params, m.k, achieved, residue, verdict)


def _check_exact(value: Fraction, p: int, check_id: str, params: dict) -> CongruenceReport:
    # Exact identity: the value must be the rational zero.
    achieved = ord_rational(value, p)
    verdict = Verdict.HOLDS if not value else Verdict.FAILS
    return CongruenceReport(check_id, dict(params), math.inf, achieved, None, verdict)


def _check_zero_jet(jet: Jet2, p: int, check_id: str, params: dict) -> CongruenceReport:
    achieved = min(
        (ord_rational(c, p) for c in jet.coefficients.values()), default=math.inf
    )
    verdict = Verdict.HOLDS if jet.is_zero else Verdict.FAILS
    return CongruenceReport(check_id, dict(params), math.inf, achieved, None, verdict)


def _tag(report: CongruenceReport, tp: TheoremParams) -> CongruenceReport:
    # Exploratory out-of-hypothesis runs are observations, never assertions.
    if tp.exploratory and tp.hypothesis_violations() and report.verdict is not Verdict.SKIPPED:
        return replace(report, verdict=Verdict.HYPOTHESIS_VIOLATED)
    return report


def verify_theorem1(tp: TheoremParams) -> CongruenceReport:
    """sum_{k=0}^{p-1} (q - p/n)_k^n / (1)_k^n = 0 (mod p^3)."""
    m = PrimePowerModulus(tp.p, 3)
    return _tag(check_congruence(lhs_theorem1(tp), 0, m,
                                 check_id="theorem1", params=tp.as_params()), tp)


def verify_theorem2(tp: TheoremParams) -> CongruenceReport:
    """p^n sum_{k=0}^{p-1} (1)_k^n / (p/n - q + 2)_k^n = 0 (mod p^3)."""
    m = PrimePowerModulus(tp.p, 3)
    return _tag(check_congruence(lhs_theorem2(tp), 0, m,
                                 check_id="theorem2", params=tp.as_params()), tp)


def verify_guo(d: int, p: int) -> CongruenceReport:
    """sum_{k=0}^{p-1} (1/d)_k^d / k!^d = 0 (mod p^3) for even d >= 4, p = -1 (mod d).

    Also cross-checks that the sum coincides exactly with the theorem1 left
    side at n = d, q = (p+1)/d, which is how the congruence is proved.
    """
    if d < 4 or d % 2:
        raise PreconditionViolated(f"d must be an even integer >= 4, got {d}")
    if not is_prime(p):
        raise PreconditionViolated(f"p = {p} is not prime")
    if (p + 1) % d:
        raise PreconditionViolated(f"need p = -1 (mod {d}), got p = {p}")
    value = guo_sum(d, p)
    reduction = lhs_theorem1(TheoremParams(d, (p + 1) // d, p, exploratory=True))
    if value != reduction:
        raise RuntimeError(
            f"internal inconsistency: guo sum and theorem1 sum differ at d={d}, p={p}"
        )
    return check_congruence(value, 0, PrimePowerModulus(p, 3),
                            check_id="guo", params={"d": d, "p": p})


def verify_sun_e(p: int) -> CongruenceReport:
    """sum_{k=0}^{p-1} (1/(p+1))_k^{p+1} / k!^{p+1} = 0 (mod p^5) for p > 3."""
    if not is_prime(p) or p <= 3:
        raise PreconditionViolated(f"need a prime p > 3, got {p}")
    return check_congruence(sun_e_sum(p), 0, PrimePowerModulus(p, 5),
                            check_id="sun-e", params={"p": p})


def verify_sun_bernoulli(p: int, n: int) -> CongruenceReport:
    """sum (1 - p/n)_k^n / (1)_k^n = (n-1)(7n-5)/(36 n^2) p^4 B_{p-3} (mod p^5)."""
    if not is_prime(p) or p <= 3:
        raise PreconditionViolated(f"need a prime p > 3, got {p}")
    if n < 1:
        raise PreconditionViolated(f"n must be a positive integer, got {n}")
    if n % p == 0:
        raise PreconditionViolated(f"need p coprime to n, got p={p}, n={n}")
    rhs = Fraction((n - 1) * (7 * n - 5), 36 * n * n) * Fraction(p) ** 4 * bernoulli(p - 3)
    return check_congruence(sun_bernoulli_lhs(p, n), rhs, PrimePowerModulus(p, 5),
                            check_id="sun-bernoulli", params={"p": p, "n": n})


def verify_dflst_pair(n: int, p: int) -> tuple[CongruenceReport, CongruenceReport]:
    """The Gamma-valued pair for n >= 3 and p = 1 (mod n), both mod p^3:

    sum_{k=0}^{p-1} (1 - 1/n)_k^n / (1)_k^n      = -Gamma_p(1/n)^n
    p^n sum_{k=0}^{p-1} (1)_k^n / (1 + 1/n)_k^n  = -Gamma_p(1/n)^n

    The right side is the n-th power of the Morita Gamma residue at
    precision p^3; achieved valuations are relative to its canonical lift.
    """
    if n < 3:
        raise PreconditionViolated(f"n must be at least 3, got {n}")
    if not is_prime(p):
        raise PreconditionViolated(f"p = {p} is not prime")
    if p % n != 1:
        raise PreconditionViolated(f"need p = 1 (mod {n}), got p = {p}")
    m = PrimePowerModulus(p, 3)
    gamma = morita_gamma(Fraction(1, n), m).value
    rhs = Fraction((-pow(gamma, n, m.modulus)) % m.modulus)
    params = {"n": n, "p": p}
    first = check_congruence(dflst_sum(n, p), rhs, m, check_id="dflst/sum", params=params)
    second = check_congruence(dflst_dual(n, p), rhs, m, check_id="dflst/dual", params=params)
    return first, second


def verify_lemma_suite(tp: TheoremParams) -> list[CongruenceReport]:
    """The seven harmonic-weighted congruences feeding the main proofs.

    Weights (q)_k^n/(1)_k^n (for the five mod-p checks) and
    (q - p/n)_k^n/(1)_k^n (for the two offset checks, mod p^2 and mod p)
    run over k = 0..p-q.
    """
    n, q, p = tp.n, tp.q, tp.p
    params = tp.as_params()
    pn = Fraction(p, n)

    count = p - q + 1
    plain = []  # (q)_k^n / (1)_k^n
    offset = []  # (q - p/n)_k^n / (1)_k^n
    w, v = Fraction(1), Fraction(1)
    for k in range(count):
        plain.append(w)
        offset.append(v)
        if k < count - 1:
            w *= Fraction(q + k, k + 1) ** n
            v *= ((q - pn + k) / (k + 1)) ** n

    s1_offset = [Fraction(0)]  # sum_{i<k} 1/(q + i - p/n)
    for i in range(count - 1):
        s1_offset.append(s1_offset[-1] + 1 / (q + i - pn))

    h2_head = harmonic(q - 1, 2) * sum(plain)
    h2_shift = sum(plain[k] * harmonic(q + k - 1, 2) for k in range(count))
    h2_plain = sum(plain[k] * harmonic(k, 2) for k in range(count))
    h1_shift = sum(plain[k] * (harmonic(k) - harmonic(q + k - 1)) for k in range(count))
    h1_shift_sq = sum(
        plain[k] * (harmonic(k) ** 2 - harmonic(q + k - 1) ** 2) for k in range(count)
    )
    s1_diff = sum(offset[k] * (s1_offset[k] - harmonic(k)) for k in range(count))
    s1_diff_sq = sum(offset[k] * (s1_offset[k] - harmonic(k)) ** 2 for k in range(count))

    mod_p = PrimePowerModulus(p, 1)
    mod_p2 = PrimePowerModulus(p, 2)
    reports = [
        check_congruence(h2_head, 0, mod_p, check_id="lemmas/h2-head", params=params),
        check_congruence(h2_shift, 0, mod_p, check_id="lemmas/h2-shift", params=params),
        check_congruence(h2_plain, 0, mod_p, check_id="lemmas/h2-plain", params=params),
        check_congruence(h1_shift, 0, mod_p, check_id="lemmas/h1-shift", params=params),
        check_congruence(h1_shift_sq, 0, mod_p, check_id="lemmas/h1-shift-sq", params=params),
        check_congruence(s1_diff, 0, mod_p2, check_id="lemmas/s1-offset", params=params),
        check_congruence(s1_diff_sq, 0, mod_p, check_id="lemmas/s1-offset-sq", params=params),
    ]
    return [_tag(r, tp) for r in reports]


def verify_taylor(tp: TheoremParams) -> list[CongruenceReport]:
    """Degree-2 Taylor truncations agree with the exact values mod p^3.

    Checks the three displacement evaluations: the diagonal sum at p/n, the
    two-variable sum at (p, 0) and the dual sum at -p, each against the
    degree-2 polynomial evaluated from its jet at the origin.
    """
    p = tp.p
    m = PrimePowerModulus(p, 3)
    params = tp.as_params()
    displacement = Fraction(p, tp.n)

    psi_exact = psi_value(tp, displacement)
    psi_taylor = psi_jet(tp, 2).evaluate(displacement)
    phi_exact = phi_value(tp, p, 0)
    phi_taylor = phi_jet(tp, 2).evaluate(p, 0)
    delta_exact = delta_value(tp, -p)
    delta_taylor = delta_jet(tp, 2).evaluate(-p)

    reports = [
        check_congruence(psi_exact, psi_taylor, m, check_id="taylor/psi", params=params),
        check_congruence(phi_exact, phi_taylor, m, check_id="taylor/phi", params=params),
        check_congruence(delta_exact, delta_taylor, m, check_id="taylor/delta", params=params),
    ]
    return [_tag(r, tp) for r in reports]


def _reflection_differences(tp: TheoremParams) -> list[Fraction]:
    # (1)_k/(p/n - q + 2)_k  minus  (1)_{p-1}/(p/n - q + 2)_{p-1} *
    # (q - p/n - p)_{p-1-k}/(1 - p)_{p-1-k}, for k = 0..p-1.
    n, q, p = tp.n, tp.q, tp.p
    b = Fraction(p, n) - q + 2
    a = q - Fraction(p, n) - p
    lhs = [Fraction(1)]
    for k in range(p - 1):
        lhs.append(lhs[-1] * (1 + k) / (b + k))
    rhs = [Fraction(1)]
    for j in range(p - 1):
        rhs.append(rhs[-1] * (a + j) / (1 - p + j))
    scale = lhs[p - 1]
    return [lhs[k] - scale * rhs[p - 1 - k] for k in range(p)]


def verify_exact_identities(tp: TheoremParams) -> list[CongruenceReport]:
    """Exact identities and reductions underpinning the two main congruences:

    - the two-variable sum vanishes exactly at (p, 0);
    - the balanced four-parameter jet is identically zero through degree 2;
    - the theorem1 sum collapses to the weighted second-order sum mod p^3;
    - the term-reversal identity holds exactly for every k;
    - for q > 1, the reflected dual sum vanishes mod p^3 (skipped at q = 1,
      where the dual congruence already follows from the p^n prefactor).
    """
    n, q, p = tp.n, tp.q, tp.p
    params = tp.as_params()
    m3 = PrimePowerModulus(p, 3)
    reports = []

    reports.append(_check_exact(phi_value(tp, p, 0), p, "identities/phi-p0", params))
    reports.append(_check_zero_jet(upsilon_jet(tp, 2), p, "identities/upsilon-jet", params))

    count = p - q + 1
    weights = []
    w = Fraction(1)
    for k in range(count):
        weights.append(w)
        if k < count - 1:
            w *= Fraction(q + k, k + 1) ** n
    s2 = [Fraction(0)]
    for i in range(count - 1):
        s2.append(s2[-1] + Fraction(1, (q + i) ** 2))
    second_order = sum(weights[k] * s2[k] for k in range(count))
    rhs = Fraction(n - 1, 2 * n) * p * p * second_order
    reports.append(check_congruence(lhs_theorem1(tp), rhs, m3,
                                    check_id="identities/p2-reduction", params=params))

    diffs = _reflection_differences(tp)
    achieved = min((ord_rational(d, p) for d in diffs), default=math.inf)
    verdict = Verdict.HOLDS if not any(diffs) else Verdict.FAILS
    reports.append(CongruenceReport("identities/reflection", dict(params), math.inf,
                                    achieved, None, verdict))

    if q == 1:
        reports.append(CongruenceReport("identities/dual-reduction", dict(params), 3,
                                        None, None, Verdict.SKIPPED))
    else:
        reports.append(check_congruence(dual_reduction_sum(tp), 0, m3,
                                        check_id="identities/dual-reduction", params=params))
    return [_tag(r, tp) for r in reports]
