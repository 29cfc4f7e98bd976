"""Exact evaluators for the truncated hypergeometric sums under study.

Two code paths exist on purpose.  ``truncated_pfq`` computes each term from
scratch with explicit Pochhammer products; the specialized evaluators below
it use incremental term ratios (term_{k+1} = term_k * ratio_k), which keeps
a full sweep near-linear in the number of terms.  Tests pin the two routes
against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    NotTerminating,
    PreconditionViolated,
    ZeroDenominator,
    ZeroLowerFactor,
)
from .exact_core import pochhammer
from .jets import Jet2
from .padic import is_prime

__all__ = [
    "HyperSeriesSpec",
    "TheoremParams",
    "KarlssonMintonResult",
    "truncated_pfq",
    "karlsson_minton_sum",
    "psi_value",
    "phi_value",
    "delta_value",
    "lhs_theorem1",
    "lhs_theorem2",
    "dual_reduction_sum",
    "theorem2_prefactor",
    "guo_sum",
    "sun_e_sum",
    "sun_bernoulli_lhs",
    "dflst_sum",
    "dflst_dual",
    "upsilon_jet",
    "phi_jet",
    "psi_jet",
    "delta_jet",
]


def _vanishing_lower(b: Fraction, terms: int) -> bool:
    # (b)_k = 0 for some k <= terms  iff  b is an integer in [-(terms-1), 0]
    return b.denominator == 1 and -(terms - 1) <= b.numerator <= 0


@dataclass(frozen=True)
class HyperSeriesSpec:
    """Parameters of a truncated series sum_{k=0}^{terms} prod(a_i)_k / prod(b_j)_k * z^k/k!."""

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    argument: Fraction
    terms: int

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(Fraction(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(Fraction(b) for b in self.lower))
        object.__setattr__(self, "argument", Fraction(self.argument))
        if self.terms < 0:
            raise ValueError("truncation index must be nonnegative")
        for b in self.lower:
            if _vanishing_lower(b, self.terms):
                raise ZeroLowerFactor(
                    f"lower parameter {b} vanishes within {self.terms} terms"
                )


def truncated_pfq(spec: HyperSeriesSpec) -> Fraction:
    """Evaluate the truncated series exactly, term by term from scratch."""
    total = Fraction(0)
    kfact = 1
    for k in range(spec.terms + 1):
        if k:
            kfact *= k
        term = spec.argument**k / kfact
        for a in spec.upper:
            term *= pochhammer(a, k)
        if not term:
            continue
        for b in spec.lower:
            term /= pochhammer(b, k)
        total += term
    return total


@dataclass(frozen=True)
class KarlssonMintonResult:
    """Value of a terminating Karlsson-Minton sum, flagged when evaluated
    outside the hypothesis -a > m_1 + ... + m_r (the vanishing is then not
    guaranteed)."""

    value: Fraction
    hypothesis_violated: bool


def karlsson_minton_sum(a, pairs: Sequence[tuple]) -> KarlssonMintonResult:
    """Evaluate sum_{k=0}^{-a} (a)_k prod(b_j+m_j)_k / ((1)_k prod(b_j)_k).

    ``a`` must be a negative integer so the sum terminates at k = -a.  Under
    the hypothesis -a > sum(m_j) the value is exactly zero; outside it the
    value is still returned but flagged.
    """
    a = Fraction(a)
    if a.denominator != 1 or a >= 0:
        raise NotTerminating(f"leading parameter {a} is not a negative integer")
    length = -a.numerator
    norm_pairs: list[tuple[Fraction, int]] = []
    total_m = 0
    for b, m in pairs:
        b = Fraction(b)
        if m < 0:
            raise ValueError(f"pair offset {m} must be a nonnegative integer")
        if _vanishing_lower(b, length):
            raise ZeroLowerFactor(f"pair base {b} hits a nonpositive integer in range")
        norm_pairs.append((b, m))
        total_m += m
    violated = not length > total_m

    total = Fraction(0)
    term = Fraction(1)
    for k in range(length + 1):
        total += term
        if k < length and term:
            term *= Fraction(a.numerator + k, 1 + k)
            for b, m in norm_pairs:
                term *= (b + m + k) / (b + k)
    return KarlssonMintonResult(total, violated)


@dataclass(frozen=True)
class TheoremParams:
    """Parameter triple (n, q, p) for the main congruence family.

    Hard requirements (always enforced): n > 2, q > 0, p prime.  The working
    hypotheses -- parity (n even or q odd) and range (p > max(n, (q-1)n+1))
    -- are enforced at construction unless ``exploratory`` is set, in which
    case downstream checks report instead of asserting.
    """

    n: int
    q: int
    p: int
    exploratory: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.n <= 2:
            raise PreconditionViolated(f"n must exceed 2, got {self.n}")
        if self.q < 1:
            raise PreconditionViolated(f"q must be positive, got {self.q}")
        if not is_prime(self.p):
            raise PreconditionViolated(f"p = {self.p} is not prime")
        if not self.exploratory:
            reasons = self.hypothesis_violations()
            if reasons:
                raise PreconditionViolated("; ".join(reasons))

    def hypothesis_violations(self) -> tuple[str, ...]:
        reasons = []
        if self.n % 2 and self.q % 2 == 0:
            reasons.append(f"parity: need n even or q odd (n={self.n}, q={self.q})")
        bound = max(self.n, (self.q - 1) * self.n + 1)
        if self.p <= bound:
            reasons.append(f"range: need p > {bound}, got p={self.p}")
        return tuple(reasons)

    @property
    def in_hypothesis(self) -> bool:
        return not self.hypothesis_violations()

    def as_params(self) -> dict[str, int]:
        return {"n": self.n, "q": self.q, "p": self.p}


def _ratio_power_sum(a: Fraction, b: Fraction, n: int, count: int) -> Fraction:
    """sum_{k=0}^{count-1} ((a)_k / (b)_k)^n via incremental term ratios."""
    # The largest denominator Pochhammer is (b)_{count-1}.
    if count > 1 and _vanishing_lower(b, count - 1):
        raise ZeroDenominator(f"denominator base {b} vanishes within {count} terms")
    total = Fraction(0)
    term = Fraction(1)
    last = count - 1
    for k in range(count):
        total += term
        if k < last:
            term *= ((a + k) / (b + k)) ** n
            if not term:
                break
    return total


def psi_value(tp: TheoremParams, x) -> Fraction:
    """sum_{k=0}^{p-q} (q-x)_k^n / (1)_k^n at an exact rational x."""
    x = Fraction(x)
    return _ratio_power_sum(tp.q - x, Fraction(1), tp.n, tp.p - tp.q + 1)


def phi_value(tp: TheoremParams, x, y) -> Fraction:
    """sum_{k=0}^{p-q} (q-x)_k (q-y)_k^{n-1} / (1)_k^n at exact rationals."""
    x, y = Fraction(x), Fraction(y)
    n, q, p = tp.n, tp.q, tp.p
    total = Fraction(0)
    term = Fraction(1)
    last = p - q
    for k in range(last + 1):
        total += term
        if k < last:
            term *= (q + k - x) * (q + k - y) ** (n - 1) / Fraction(k + 1) ** n
            if not term:
                break
    return total


def delta_value(tp: TheoremParams, x) -> Fraction:
    """sum_{k=0}^{p-q} (q - p/n + x)_k^n / (1+x)_k^n at an exact rational x."""
    x = Fraction(x)
    offset = tp.q - Fraction(tp.p, tp.n) + x
    return _ratio_power_sum(offset, 1 + x, tp.n, tp.p - tp.q + 1)


def lhs_theorem1(tp: TheoremParams) -> Fraction:
    """Full sum_{k=0}^{p-1} (q - p/n)_k^n / (1)_k^n."""
    return _ratio_power_sum(tp.q - Fraction(tp.p, tp.n), Fraction(1), tp.n, tp.p)


def lhs_theorem2(tp: TheoremParams) -> Fraction:
    """p^n * sum_{k=0}^{p-1} (1)_k^n / (p/n - q + 2)_k^n."""
    base = Fraction(tp.p, tp.n) - tp.q + 2
    return Fraction(tp.p) ** tp.n * _ratio_power_sum(Fraction(1), base, tp.n, tp.p)


def dual_reduction_sum(tp: TheoremParams) -> Fraction:
    """sum_{k=0}^{p-1} (q - p/n - p)_k^n / (1-p)_k^n, the reflected dual sum."""
    a = tp.q - Fraction(tp.p, tp.n) - tp.p
    return _ratio_power_sum(a, Fraction(1 - tp.p), tp.n, tp.p)


def theorem2_prefactor(tp: TheoremParams) -> Fraction:
    """p^n (1)_{p-1}^n / (p/n - q + 2)_{p-1}^n, the unit carried by reflection."""
    base = Fraction(tp.p, tp.n) - tp.q + 2
    if _vanishing_lower(base, tp.p - 1):
        raise ZeroDenominator(f"prefactor base {base} vanishes within range")
    den = pochhammer(base, tp.p - 1)
    num = pochhammer(Fraction(1), tp.p - 1)
    return Fraction(tp.p) ** tp.n * (num / den) ** tp.n


def guo_sum(d: int, p: int) -> Fraction:
    """sum_{k=0}^{p-1} (1/d)_k^d / k!^d."""
    return _ratio_power_sum(Fraction(1, d), Fraction(1), d, p)


def sun_e_sum(p: int) -> Fraction:
    """sum_{k=0}^{p-1} (1/(p+1))_k^{p+1} / k!^{p+1}."""
    return _ratio_power_sum(Fraction(1, p + 1), Fraction(1), p + 1, p)


def sun_bernoulli_lhs(p: int, n: int) -> Fraction:
    """sum_{k=0}^{p-1} (1 - p/n)_k^n / (1)_k^n."""
    return _ratio_power_sum(1 - Fraction(p, n), Fraction(1), n, p)


def dflst_sum(n: int, p: int) -> Fraction:
    """sum_{k=0}^{p-1} (1 - 1/n)_k^n / (1)_k^n."""
    return _ratio_power_sum(1 - Fraction(1, n), Fraction(1), n, p)


def dflst_dual(n: int, p: int) -> Fraction:
    """p^n * sum_{k=0}^{p-1} (1)_k^n / (1 + 1/n)_k^n."""
    return Fraction(p) ** n * _ratio_power_sum(Fraction(1), 1 + Fraction(1, n), n, p)


# --- jet-valued sums ---------------------------------------------------------
#
# Each sum below reuses the incremental-ratio scheme with Jet2 terms.  The
# constant coefficient of every divisor jet is a positive integer (k+1 or a
# Pochhammer of 1+x at x=0), so the divisions are total here.


def _linear_power(c: Fraction, sign: int, var: str, m: int, cap: int) -> Jet2:
    # (c + sign*var)^m truncated: binomial expansion up to the cap.
    coeffs = {}
    exp = (1, 0) if var == "x" else (0, 1)
    binom = 1
    for t in range(min(m, cap) + 1):
        if t:
            binom = binom * (m - t + 1) // t
        coeff = binom * c ** (m - t) * sign**t
        if coeff:
            coeffs[(exp[0] * t, exp[1] * t)] = Fraction(coeff)
    return Jet2(coeffs, cap)


def _linear_inverse(c: Fraction, var: str, cap: int) -> Jet2:
    # 1/(c + var) truncated: alternating geometric series.
    if not c:
        raise ZeroDenominator(f"cannot invert {var} with zero constant term")
    exp = (1, 0) if var == "x" else (0, 1)
    coeffs = {}
    for t in range(cap + 1):
        coeffs[(exp[0] * t, exp[1] * t)] = Fraction((-1) ** t) / c ** (t + 1)
    return Jet2(coeffs, cap)


def upsilon_jet(tp: TheoremParams, degree_cap: int = 2) -> Jet2:
    """Jet at (0,0) of
    sum_{k=0}^{p-1} (1-p)_k (q+x)_k (q+y)_k (q)_k^{n-2} / ((1)_k^{n-1} (1+x)_k (1+y)_k).

    For in-range parameters the terminating Karlsson-Minton identity applies
    coefficient-wise and the result is the zero jet.
    """
    n, q, p = tp.n, tp.q, tp.p
    cap = degree_cap
    total = Jet2.zero(cap)
    ratio_x = Jet2.constant(1, cap)  # (q+x)_k / (1+x)_k
    ratio_y = Jet2.constant(1, cap)
    scalar = Fraction(1)  # (1-p)_k (q)_k^{n-2} / (1)_k^{n-1}
    last = p - 1
    for k in range(p):
        total = total + ratio_x * ratio_y * scalar
        if k < last:
            scalar *= Fraction((1 - p + k) * (q + k) ** (n - 2), (k + 1) ** (n - 1))
            ratio_x = ratio_x * Jet2.linear(q + k, "x", 1, cap)
            ratio_x = ratio_x * _linear_inverse(Fraction(1 + k), "x", cap)
            ratio_y = ratio_y * Jet2.linear(q + k, "y", 1, cap)
            ratio_y = ratio_y * _linear_inverse(Fraction(1 + k), "y", cap)
    return total


def phi_jet(tp: TheoremParams, degree_cap: int = 2) -> Jet2:
    """Jet at (0,0) of sum_{k=0}^{p-q} (q-x)_k (q-y)_k^{n-1} / (1)_k^n."""
    n, q, p = tp.n, tp.q, tp.p
    cap = degree_cap
    total = Jet2.zero(cap)
    term = Jet2.constant(1, cap)
    last = p - q
    for k in range(last + 1):
        total = total + term
        if k < last:
            term = term * Jet2.linear(q + k, "x", -1, cap)
            term = term * _linear_power(Fraction(q + k), -1, "y", n - 1, cap)
            term = term * Fraction(1, (k + 1) ** n)
    return total


def psi_jet(tp: TheoremParams, degree_cap: int = 2) -> Jet2:
    """Univariate jet at 0 of sum_{k=0}^{p-q} (q-x)_k^n / (1)_k^n."""
    n, q, p = tp.n, tp.q, tp.p
    cap = degree_cap
    total = Jet2.zero(cap)
    term = Jet2.constant(1, cap)
    last = p - q
    for k in range(last + 1):
        total = total + term
        if k < last:
            term = term * _linear_power(Fraction(q + k), -1, "x", n, cap)
            term = term * Fraction(1, (k + 1) ** n)
    return total


def delta_jet(tp: TheoremParams, degree_cap: int = 2) -> Jet2:
    """Univariate jet at 0 of sum_{k=0}^{p-q} (q - p/n + x)_k^n / (1+x)_k^n."""
    n, q, p = tp.n, tp.q, tp.p
    cap = degree_cap
    offset = q - Fraction(p, n)
    total = Jet2.zero(cap)
    term = Jet2.constant(1, cap)
    last = p - q
    for k in range(last + 1):
        total = total + term
        if k < last:
            term = term * _linear_power(offset + k, 1, "x", n, cap)
            term = term / _linear_power(Fraction(1 + k), 1, "x", n, cap)
    return total
