"""Parabolic degree and slope bookkeeping, and the mixed-case stability check.

All weights and degrees are exact rationals, so every verdict is exact.
Both the slope-form and the expanded-form inequalities are evaluated and
must agree; a disagreement signals an implementation bug and aborts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class StabilityError(ValueError):
    pass


class InternalDisagreement(AssertionError):
    """Slope-form and expanded-form evaluations disagreed; abort."""


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class SurfaceData:
    """Genus and puncture count, with the hyperbolicity constraint 2g-2+n > 0."""

    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 1:
            raise StabilityError("need genus >= 0 and at least one puncture")
        if 2 * self.genus - 2 + self.punctures <= 0:
            raise StabilityError("hyperbolicity violated: 2g-2+n must be positive")

    @property
    def kappa(self) -> int:
        return 2 * self.genus - 2 + self.punctures


def log_canonical_degree(s: SurfaceData) -> int:
    """Degree of the log-canonical bundle, 2g-2+n."""
    return s.kappa


@dataclass(frozen=True)
class WeightTriple:
    """Ordered parabolic weights a1 <= a2 <= a3 in [0, 1)."""

    a1: Fraction
    a2: Fraction
    a3: Fraction

    @staticmethod
    def of(a1, a2, a3) -> "WeightTriple":
        w = WeightTriple(_fr(a1), _fr(a2), _fr(a3))
        if not (0 <= w.a1 <= w.a2 <= w.a3 < 1):
            raise StabilityError("weights must satisfy 0 <= a1 <= a2 <= a3 < 1")
        return w

    @staticmethod
    def zero() -> "WeightTriple":
        return WeightTriple(Fraction(0), Fraction(0), Fraction(0))

    @property
    def values(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a1, self.a2, self.a3)

    @property
    def total(self) -> Fraction:
        return self.a1 + self.a2 + self.a3

    def admissibility(self) -> tuple[bool, bool]:
        """(sum is an integer, two weights coincide) - reported, not enforced."""
        return (self.total.denominator == 1, self.a1 == self.a2 or self.a2 == self.a3)


@dataclass(frozen=True)
class PunctureWeights:
    """Weight triple at one puncture plus the flag-position selections.

    beta is the induced weight of the line subbundle W1, gamma the weight
    of the trivial summand; both must be drawn from the triple (the flag
    incidence itself is caller knowledge).
    """

    weights: WeightTriple
    beta: Fraction
    gamma: Fraction

    @staticmethod
    def of(weights: WeightTriple, beta=None, gamma=None) -> "PunctureWeights":
        b = weights.a1 if beta is None else _fr(beta)
        g = weights.a1 if gamma is None else _fr(gamma)
        if b not in weights.values or g not in weights.values:
            raise StabilityError("beta and gamma must be values of the weight triple")
        return PunctureWeights(weights, b, g)

    @property
    def omega(self) -> Fraction:
        return self.weights.total


@dataclass(frozen=True)
class MixedDegreeData:
    """(d1, d2) plus per-puncture (omega_p, beta_p, gamma_p) bookkeeping."""

    d1: int
    d2: int
    puncture_weights: tuple[PunctureWeights, ...]

    @staticmethod
    def of(d1: int, d2: int, puncture_weights: Iterable[PunctureWeights]) -> "MixedDegreeData":
        if d1 < 0 or d2 < 0:
            raise StabilityError("d1 and d2 must be nonnegative")
        return MixedDegreeData(d1, d2, tuple(puncture_weights))

    @staticmethod
    def weight_free(d1: int, d2: int, n: int) -> "MixedDegreeData":
        pw = PunctureWeights.of(WeightTriple.zero())
        return MixedDegreeData.of(d1, d2, [pw] * n)

    @property
    def sum_omega(self) -> Fraction:
        return sum((pw.omega for pw in self.puncture_weights), Fraction(0))

    @property
    def sum_beta(self) -> Fraction:
        return sum((pw.beta for pw in self.puncture_weights), Fraction(0))

    @property
    def sum_gamma(self) -> Fraction:
        return sum((pw.gamma for pw in self.puncture_weights), Fraction(0))


def par_deg_E(d: MixedDegreeData) -> Fraction:
    """(d1 - d2) + sum of omega_p."""
    return Fraction(d.d1 - d.d2) + d.sum_omega


def par_deg_W1(d: MixedDegreeData, s: SurfaceData) -> Fraction:
    """(-kappa + d1) + sum of beta_p."""
    return Fraction(-s.kappa + d.d1) + d.sum_beta


def par_deg_W2(d: MixedDegreeData, s: SurfaceData) -> Fraction:
    """(-kappa + d1) + sum of (beta_p + gamma_p)."""
    return Fraction(-s.kappa + d.d1) + d.sum_beta + d.sum_gamma


@dataclass(frozen=True)
class StabilityCertificate:
    """Both sides of every inequality, in slope and expanded form, plus verdict."""

    verdict: str  # stable | strictly-semistable | unstable
    slope_w1: tuple[Fraction, Fraction]  # (mu(W1), mu(E))
    slope_w2: tuple[Fraction, Fraction]  # (mu(W2), mu(E))
    expanded_1: tuple[Fraction, Fraction]  # 2d1+d2 vs 3k + sum(omega - 3 beta)
    expanded_2: tuple[Fraction, Fraction]  # d1+2d2 vs 3k + sum(2 omega - 3(beta+gamma))
    failing: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        def pair(t):
            return {"lhs": str(t[0]), "rhs": str(t[1])}

        return {
            "verdict": self.verdict,
            "slope_W1": pair(self.slope_w1),
            "slope_W2": pair(self.slope_w2),
            "expanded_1": pair(self.expanded_1),
            "expanded_2": pair(self.expanded_2),
            "failing": list(self.failing),
        }


def _verdict(lhs1, rhs1, lhs2, rhs2) -> tuple[str, tuple[str, ...]]:
    failing = []
    if lhs1 > rhs1:
        failing.append("W1")
    if lhs2 > rhs2:
        failing.append("W2")
    if failing:
        return "unstable", tuple(failing)
    boundary = []
    if lhs1 == rhs1:
        boundary.append("W1")
    if lhs2 == rhs2:
        boundary.append("W2")
    if boundary:
        return "strictly-semistable", tuple(boundary)
    return "stable", ()


def check_mixed_stability(d: MixedDegreeData, s: SurfaceData) -> StabilityCertificate:
    """Evaluate both strict slope inequalities, slope and expanded form.

    Verdict: stable if both strict, strictly-semistable if some equality
    and no strict violation, unstable otherwise.
    """
    deg_e = par_deg_E(d)
    deg_w1 = par_deg_W1(d, s)
    deg_w2 = par_deg_W2(d, s)
    mu_e = deg_e / 3

    slope_w1 = (deg_w1 / 1, mu_e)
    slope_w2 = (deg_w2 / 2, mu_e)
    verdict_slope, failing_slope = _verdict(*slope_w1, *slope_w2)

    k3 = 3 * s.kappa
    exp1 = (Fraction(2 * d.d1 + d.d2), k3 + d.sum_omega - 3 * d.sum_beta)
    exp2 = (
        Fraction(d.d1 + 2 * d.d2),
        k3 + 2 * d.sum_omega - 3 * (d.sum_beta + d.sum_gamma),
    )
    verdict_exp, failing_exp = _verdict(*exp1, *exp2)

    if verdict_slope != verdict_exp or failing_slope != failing_exp:
        raise InternalDisagreement(
            f"slope form said {verdict_slope}/{failing_slope}, "
            f"expanded form said {verdict_exp}/{failing_exp}"
        )
    return StabilityCertificate(verdict_slope, slope_w1, slope_w2, exp1, exp2, failing_slope)


def unipotent_inequalities(d1: int, d2: int, kappa: int) -> tuple[bool, bool]:
    """The weight-zero inequalities 2d1+d2 < 3k and d1+2d2 < 3k."""
    return (2 * d1 + d2 < 3 * kappa, d1 + 2 * d2 < 3 * kappa)


def nnoid_degrees(n: int) -> tuple[int, int]:
    """(d1, d2) = (n-4, n-3) for the explicit n-noid sections."""
    if n < 4:
        raise StabilityError("n-noid data needs n >= 4")
    return n - 4, n - 3


def prop94_degrees(n: int) -> tuple[int, int, bool]:
    """Invariant-subbundle degrees (4-n, 3-n) and the n = 4 semistable flag.

    Reported under the V = O(1) + O, L = O(-1) normalization, where
    deg E = 0; the flag marks the boundary case deg F1 = 0.
    """
    if n < 4:
        raise StabilityError("n-noid data needs n >= 4")
    return 4 - n, 3 - n, n == 4


def _verdict_from_degrees(deg_e: Fraction, deg_w1: Fraction, deg_w2: Fraction) -> str:
    return _verdict(deg_w1, deg_e / 3, deg_w2 / 2, deg_e / 3)[0]


def twist_invariance_check(d: MixedDegreeData, s: SurfaceData, m: int) -> bool:
    """Verdict is unchanged by deg W1 += m, deg W2 += 2m, deg E += 3m."""
    deg_e = par_deg_E(d)
    deg_w1 = par_deg_W1(d, s)
    deg_w2 = par_deg_W2(d, s)
    base = _verdict_from_degrees(deg_e, deg_w1, deg_w2)
    twisted = _verdict_from_degrees(deg_e + 3 * m, deg_w1 + m, deg_w2 + 2 * m)
    return base == twisted


def stability_region(
    s: SurfaceData, weights: Sequence[PunctureWeights], dmax: int
) -> list[tuple[int, int]]:
    """All (d1, d2) in [0, dmax]^2 with a stable verdict, lexicographic."""
    if dmax < 0:
        raise StabilityError("dmax must be nonnegative")
    out = []
    for d1 in range(dmax + 1):
        for d2 in range(dmax + 1):
            cert = check_mixed_stability(MixedDegreeData.of(d1, d2, weights), s)
            if cert.verdict == "stable":
                out.append((d1, d2))
    return out
