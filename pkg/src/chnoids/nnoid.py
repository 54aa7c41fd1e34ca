"""The explicit off-diagonal Higgs field on the n-punctured sphere.

Builds the 3x3 logarithmic Higgs field from a logarithmic 1-form and the
three section polynomials, verifies its exact trace identities, computes
puncture residues two independent ways, and classifies nilpotent types,
canonical flags and end types.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import linalg
from .exactnum import (
    BinaryForm,
    GaussianRational,
    RationalFunction,
    RationalOneForm,
    UniPoly,
    eval_form,
    resultant,
)
from .sphere import LogOneForm, ProjPoint, PunctureSet, SphereError, make_log_form


class NnoidDataError(ValueError):
    pass


@dataclass(frozen=True)
class NnoidData:
    """Input data: punctures, residues, and sections g1, g2, q.

    Degrees are n-4, n-3 and 3; g1, g2 share no projective zero and q is
    nonvanishing at every puncture.  n = 4 is allowed (g1 constant); the
    stability verdict for that boundary case is strictly-semistable.
    """

    n: int
    punctures: PunctureSet
    omega: LogOneForm
    g1: BinaryForm
    g2: BinaryForm
    q: BinaryForm

    @staticmethod
    def make(
        punctures: PunctureSet,
        omega: LogOneForm,
        g1: BinaryForm,
        g2: BinaryForm,
        q: BinaryForm,
    ) -> "NnoidData":
        n = len(punctures)
        if n < 4:
            raise NnoidDataError("need at least 4 punctures")
        if omega.punctures != punctures:
            raise NnoidDataError("omega must have poles exactly at the punctures")
        if g1.degree != n - 4 or g2.degree != n - 3 or q.degree != 3:
            raise NnoidDataError(
                f"degree mismatch: need deg g1 = {n - 4}, deg g2 = {n - 3}, deg q = 3"
            )
        if g1.is_zero or g2.is_zero:
            raise NnoidDataError("g1 and g2 must be nonzero")
        if resultant(g1, g2).is_zero:
            raise NnoidDataError("g1 and g2 share a projective zero")
        for p in punctures:
            if eval_form(q, p).is_zero:
                raise NnoidDataError(f"q vanishes at the puncture {p}")
        return NnoidData(n, punctures, omega, g1, g2, q)

    def to_json(self) -> dict:
        out = {"n": self.n}
        out.update(self.omega.to_json())
        out["g1"] = self.g1.to_json()
        out["g2"] = self.g2.to_json()
        out["q"] = self.q.to_json()
        return out

    @staticmethod
    def from_json(obj: dict) -> "NnoidData":
        try:
            punctures = PunctureSet.of([ProjPoint.parse(s) for s in obj["punctures"]])
            residues = [GaussianRational.parse(s) for s in obj["residues"]]
            omega = make_log_form(punctures, residues)
            g1 = BinaryForm.from_json(obj["g1"])
            g2 = BinaryForm.from_json(obj["g2"])
            q = BinaryForm.from_json(obj["q"])
        except (KeyError, ValueError, SphereError) as exc:
            raise NnoidDataError(f"malformed n-noid data: {exc}") from exc
        data = NnoidData.make(punctures, omega, g1, g2, q)
        if "n" in obj and obj["n"] != data.n:
            raise NnoidDataError("declared n disagrees with the puncture count")
        return data


# block split of E = V + L: V spans coordinates 0, 1 and L coordinate 2.
# Bundle-degree metadata: V = O(1) + O and L = O(-1), so deg E = 0.
V_INDICES = (0, 1)
L_INDEX = 2


@dataclass(frozen=True)
class HiggsField:
    """3x3 matrix of rational 1-forms, strictly off-diagonal in the 2+1 split."""

    entries: tuple[tuple[RationalOneForm, ...], ...]
    data: NnoidData

    def entry(self, i: int, j: int) -> RationalOneForm:
        return self.entries[i][j]


@dataclass(frozen=True)
class ResidueMatrix:
    point: ProjPoint
    matrix: linalg.Matrix


@dataclass(frozen=True)
class QuadraticDifferential:
    """A rational function times dz^2."""

    fn: RationalFunction

    @property
    def is_zero(self) -> bool:
        return self.fn.is_zero


class EndType(enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"


@dataclass(frozen=True)
class CanonicalFlag:
    """Flag 0 < L < V < C^3 with N(V) inside L and N(L) = 0."""

    line: linalg.Vector
    plane: tuple[linalg.Vector, linalg.Vector]


def _scaled_log_form(data: NnoidData, num0: UniPoly, s: UniPoly) -> RationalOneForm:
    """(num0/V) * s reduced without a generic gcd.

    V is squarefree with roots exactly the punctures and num0 never
    vanishes there (each residue is nonzero and the punctures are
    distinct), so the only common factors are the linear factors of V at
    punctures where s vanishes.
    """
    if s.is_zero:
        return RationalOneForm.make(UniPoly.zero(), UniPoly.of([1]))
    num = num0 * s
    den = data.punctures.vanishing_poly()
    for p in data.punctures.affine:
        if s(p).is_zero:
            lin = UniPoly.of([-p, GaussianRational.of(1)])
            num = num // lin
            den = den // lin
    return RationalOneForm(RationalFunction(num, den))


def build_higgs(data: NnoidData) -> HiggsField:
    """Assemble the off-diagonal Higgs field in the affine chart.

    The lower-left block is (g1, g2) * omega, the upper-right block is
    (-q g2, q g1)^t * omega; the diagonal blocks vanish identically.
    """
    omega_num = data.omega.numerator_poly()
    g1 = data.g1.dehomogenize()
    g2 = data.g2.dehomogenize()
    q = data.q.dehomogenize()
    zero = RationalOneForm.make(UniPoly.zero(), UniPoly.of([1]))
    beta_1 = _scaled_log_form(data, omega_num, -(q * g2))
    beta_2 = _scaled_log_form(data, omega_num, q * g1)
    gamma_1 = _scaled_log_form(data, omega_num, g1)
    gamma_2 = _scaled_log_form(data, omega_num, g2)
    entries = (
        (zero, zero, beta_1),
        (zero, zero, beta_2),
        (gamma_1, gamma_2, zero),
    )
    return HiggsField(entries, data)


def trace_phi(phi: HiggsField) -> RationalOneForm:
    acc = phi.entries[0][0]
    for i in (1, 2):
        acc = acc + phi.entries[i][i]
    return acc


def trace_phi_squared(phi: HiggsField) -> QuadraticDifferential:
    """tr(Phi^2) as an exact quadratic differential.

    Accumulated over a common denominator so the identically-zero case is
    detected without any gcd work; a sign tamper in either block makes
    the numerator a nonzero polynomial.
    """
    from .exactnum import poly_gcd

    num_acc = UniPoly.zero()
    den_acc = UniPoly.of([1])
    for i in range(3):
        for j in range(3):
            a, b = phi.entries[i][j], phi.entries[j][i]
            if a.is_zero or b.is_zero:
                continue
            pn = a.num * b.num
            pd = a.den * b.den
            # lcm-style accumulation keeps the denominator degree bounded
            g = poly_gcd(den_acc, pd)
            cof = pd // g
            num_acc = num_acc * cof + pn * (den_acc // g)
            den_acc = den_acc * cof
    return QuadraticDifferential(RationalFunction.make(num_acc, den_acc))


def residue_matrix(phi: HiggsField, p: ProjPoint) -> ResidueMatrix:
    """Entrywise residue of Phi at a puncture (partial-fraction route)."""
    if p not in phi.data.punctures:
        raise SphereError(f"{p} is not a puncture")
    z = p.affine
    m = linalg.mat(
        [[phi.entries[i][j].residue_at(z) for j in range(3)] for i in range(3)]
    )
    return ResidueMatrix(p, m)


def residue_matrix_closed_form(data: NnoidData, p: ProjPoint) -> ResidueMatrix:
    """Closed-form residue r_i * [[0, B], [C, 0]] evaluated at the puncture."""
    r = data.omega.residue_at(p)
    g1 = eval_form(data.g1, p)
    g2 = eval_form(data.g2, p)
    q = eval_form(data.q, p)
    zero = GaussianRational.of(0)
    rows = [
        [zero, zero, r * (-(q * g2))],
        [zero, zero, r * (q * g1)],
        [r * g1, r * g2, zero],
    ]
    return ResidueMatrix(p, linalg.mat(rows))


def nilpotency_profile(m: linalg.Matrix) -> int | None:
    """Smallest k in {1, 2, 3} with M^k = 0, or None if M^3 != 0."""
    power = m
    for k in range(1, 4):
        if linalg.is_zero_matrix(power):
            return k
        power = linalg.mat_mul(power, m)
    return None


def jordan_type(m: linalg.Matrix) -> tuple[int, ...]:
    k = nilpotency_profile(m)
    if k is None:
        raise NnoidDataError("matrix is not nilpotent")
    if k == 1:
        raise NnoidDataError("zero matrix has no nonzero Jordan type")
    return (2, 1) if k == 2 else (3,)


def end_type(m: linalg.Matrix) -> EndType:
    return EndType.TYPE_I if jordan_type(m) == (2, 1) else EndType.TYPE_II


def canonical_flag(m: linalg.Matrix) -> CanonicalFlag:
    """Canonical two-step flag from a nonzero nilpotent 3x3 matrix.

    Type (2,1): line = image, plane = kernel.  Type (3): line = kernel,
    plane = kernel of the square (which equals the image).
    """
    jt = jordan_type(m)
    if jt == (2, 1):
        line_basis = linalg.column_space_basis(m)
        plane_basis = linalg.kernel_basis(m)
    else:
        line_basis = linalg.kernel_basis(m)
        plane_basis = linalg.kernel_basis(linalg.mat_mul(m, m))
    if len(line_basis) != 1 or len(plane_basis) != 2:
        raise AssertionError("flag dimensions off; matrix not a rank-3 nilpotent")
    flag = CanonicalFlag(line_basis[0], (plane_basis[0], plane_basis[1]))
    _assert_strictly_lowering(m, flag)
    return flag


def _assert_strictly_lowering(m: linalg.Matrix, flag: CanonicalFlag) -> None:
    if not all(x.is_zero for x in linalg.mat_vec(m, flag.line)):
        raise AssertionError("N does not kill the flag line")
    line_span = [flag.line]
    for v in flag.plane:
        if not linalg.in_span(linalg.mat_vec(m, v), line_span):
            raise AssertionError("N does not lower the flag plane into the line")
