"""The projective model of the complex hyperbolic plane.

Signature-(2,1) Hermitian form, membership and distance, the isometry
trichotomy, determinant normalization, weight extraction and unipotent
monodromy exponentials.  Dual numeric backing: exact Q(i) wherever the
inputs are rational, binary64 where transcendentals enter.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .exactnum import GaussianRational, UniPoly, poly_gcd
from .stability import WeightTriple

DEFAULT_TOL = 1e-9

J_SIGNS = (1.0, 1.0, -1.0)
J_FLOAT = np.diag([1.0, 1.0, -1.0]).astype(complex)
J_EXACT = linalg.mat(
    [
        [GaussianRational.of(1), GaussianRational.of(0), GaussianRational.of(0)],
        [GaussianRational.of(0), GaussianRational.of(1), GaussianRational.of(0)],
        [GaussianRational.of(0), GaussianRational.of(0), GaussianRational.of(-1)],
    ]
)


class CH2Error(ValueError):
    pass


def _is_exact_vector(z: Sequence) -> bool:
    return all(isinstance(x, GaussianRational) for x in z)


def herm_form(z: Sequence, w: Sequence):
    """Z1 conj(W1) + Z2 conj(W2) - Z3 conj(W3); exact when both inputs are."""
    if _is_exact_vector(z) and _is_exact_vector(w):
        return z[0] * w[0].conjugate() + z[1] * w[1].conjugate() - z[2] * w[2].conjugate()
    zc = [complex(x) for x in z]
    wc = [complex(x) for x in w]
    return zc[0] * wc[0].conjugate() + zc[1] * wc[1].conjugate() - zc[2] * wc[2].conjugate()


def in_ch2(z: Sequence) -> bool:
    """Whether [Z] is a negative line for the form."""
    v = herm_form(z, z)
    if isinstance(v, GaussianRational):
        return v.re < 0
    return v.real < 0


def distance(z: Sequence, w: Sequence) -> float:
    """Bergman distance, cosh^2(d/2) = <Z,W><W,Z> / (<Z,Z><W,W>).

    Projective-representative independent; the factor-2 normalization
    matches holomorphic sectional curvature -4.
    """
    if not in_ch2(z) or not in_ch2(w):
        raise CH2Error("distance arguments must lie in CH^2")
    zw = complex(herm_form(z, w))
    zz = complex(herm_form(z, z)).real
    ww = complex(herm_form(w, w)).real
    ratio = (zw * zw.conjugate()).real / (zz * ww)
    # rounding can push the ratio a hair under 1 at coincident points
    ratio = max(ratio, 1.0)
    return 2.0 * math.acosh(math.sqrt(ratio))


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix21:
    """A 3x3 complex matrix, exact (Q(i) rows) or floating (ndarray)."""

    rows: object  # linalg.Matrix | np.ndarray

    @staticmethod
    def exact(rows) -> "Matrix21":
        return Matrix21(linalg.mat(rows))

    @staticmethod
    def floating(rows) -> "Matrix21":
        return Matrix21(np.asarray(rows, dtype=complex))

    @property
    def is_exact(self) -> bool:
        return not isinstance(self.rows, np.ndarray)

    def as_array(self) -> np.ndarray:
        if self.is_exact:
            return np.array([[complex(x) for x in row] for row in self.rows], dtype=complex)
        return self.rows

    def to_json(self) -> dict:
        if self.is_exact:
            entries = [[str(x) for x in row] for row in self.rows]
        else:
            entries = [[_format_complex(x) for x in row] for row in self.rows]
        return {"matrix": entries, "backing": "exact" if self.is_exact else "float"}

    @staticmethod
    def from_json(obj) -> "Matrix21":
        entries = obj["matrix"] if isinstance(obj, dict) else obj
        if len(entries) != 3 or any(len(r) != 3 for r in entries):
            raise CH2Error("expected a 3x3 matrix")
        flat = [str(x) for row in entries for x in row]
        if any(("." in s) or ("e" in s.lower() and "/" not in s) for s in flat):
            return Matrix21.floating([[_parse_complex(str(x)) for x in row] for row in entries])
        return Matrix21.exact([[GaussianRational.parse(str(x)) for x in row] for row in entries])


def _format_complex(x: complex) -> str:
    return f"{x.real:.17g}{x.imag:+.17g}i"


def _parse_complex(s: str) -> complex:
    s = s.strip().replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        return complex(s)
    except ValueError as exc:
        raise CH2Error(f"bad complex literal {s!r}") from exc


def identity_matrix(exact: bool = True) -> Matrix21:
    if exact:
        return Matrix21(linalg.identity(3))
    return Matrix21.floating(np.eye(3, dtype=complex))


def boost(t: float) -> Matrix21:
    """One-parameter loxodromic family translating along a real geodesic."""
    c, s = math.cosh(t), math.sinh(t)
    return Matrix21.floating([[c, 0.0, s], [0.0, 1.0, 0.0], [s, 0.0, c]])


def geodesic_point(t: float) -> tuple[complex, complex, complex]:
    """Unit-speed-parametrized geodesic through the origin e3 (speed 2)."""
    return (math.sinh(t), 0.0, math.cosh(t))


def preserves_form(a: Matrix21, tol: float = DEFAULT_TOL) -> bool:
    """A* J A = J, exactly for exact backing, entrywise within tol otherwise."""
    if a.is_exact:
        lhs = linalg.mat_mul(linalg.mat_mul(linalg.conj_transpose(a.rows), J_EXACT), a.rows)
        return lhs == J_EXACT
    arr = a.as_array()
    lhs = arr.conj().T @ J_FLOAT @ arr
    scale = max(1.0, float(np.abs(arr).max()) ** 2)
    return bool(np.abs(lhs - J_FLOAT).max() <= tol * scale)


# ---------------------------------------------------------------------------
# classification


class IsometryClass:
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


def classify_isometry(a: Matrix21, tol: float = DEFAULT_TOL) -> str:
    """Elliptic / parabolic / loxodromic trichotomy for a form-preserving matrix.

    Loxodromic iff some eigenvalue modulus differs from 1; otherwise
    elliptic iff diagonalizable.  Exact backing: repeated roots of a
    cubic over Q(i) are themselves in Q(i), so the modulus test for them
    is exact and only well-separated simple roots are judged numerically.
    """
    if not preserves_form(a, tol):
        raise CH2Error("matrix does not preserve the signature-(2,1) form")
    if a.is_exact:
        return _classify_exact(a.rows, tol)
    return _classify_float(a.as_array(), tol)


def _classify_exact(rows: linalg.Matrix, tol: float) -> str:
    p = linalg.charpoly(rows)
    g = poly_gcd(p, p.derivative())
    if g.is_zero or g.degree == 0:
        # three simple eigenvalues: squarefree, hence diagonalizable
        moduli = [abs(z) for z in np.roots([complex(c) for c in reversed(p.coeffs)])]
        if any(abs(m - 1.0) > tol for m in moduli):
            return IsometryClass.LOXODROMIC
        return IsometryClass.ELLIPTIC
    a2 = p.coeffs[2]  # z^3 + a2 z^2 + ...
    if g.degree == 2:
        lam = -a2 / GaussianRational.of(3)  # triple eigenvalue, exact
        if lam.abs_sq() != 1:
            return IsometryClass.LOXODROMIC
        scaled = linalg.mat_scale(linalg.identity(3), lam)
        return (
            IsometryClass.ELLIPTIC
            if rows == scaled
            else IsometryClass.PARABOLIC
        )
    # g linear: the double eigenvalue (and hence the third) lies in Q(i)
    lam_double = -g.coeffs[0]
    lam_simple = -a2 - lam_double - lam_double
    if lam_double.abs_sq() != 1 or lam_simple.abs_sq() != 1:
        return IsometryClass.LOXODROMIC
    m = linalg.minimal_polynomial(rows)
    sqfree = poly_gcd(m, m.derivative())
    diagonalizable = sqfree.is_zero or sqfree.degree == 0
    return IsometryClass.ELLIPTIC if diagonalizable else IsometryClass.PARABOLIC


def _classify_float(arr: np.ndarray, tol: float) -> str:
    eigvals = np.linalg.eigvals(arr)
    scale = max(1.0, float(np.abs(arr).max()))
    eps = np.finfo(float).eps
    # eigenvalues of a k x k Jordan block move like eps^(1/k) under roundoff;
    # k can be 3 here, and conjugation conditioning eats another safety factor
    modulus_tol = max(tol, 10.0 * (eps * scale) ** (1.0 / 3.0))
    cluster_tol = max(tol, 20.0 * (eps * scale) ** (1.0 / 3.0))
    if any(abs(abs(l) - 1.0) > modulus_tol for l in eigvals):
        return IsometryClass.LOXODROMIC
    remaining = list(eigvals)
    while remaining:
        mu = remaining[0]
        cluster = [l for l in remaining if abs(l - mu) <= cluster_tol]
        remaining = [l for l in remaining if abs(l - mu) > cluster_tol]
        alg_mult = len(cluster)
        if alg_mult == 1:
            continue
        center = sum(cluster) / alg_mult
        sing = np.linalg.svd(arr - center * np.eye(3), compute_uv=False)
        geo_mult = int(np.sum(sing <= cluster_tol * scale))
        if geo_mult < alg_mult:
            return IsometryClass.PARABOLIC
    return IsometryClass.ELLIPTIC


# ---------------------------------------------------------------------------
# normalization, weights, exponentials


def su_normalize(a: Matrix21, tol: float = DEFAULT_TOL) -> Matrix21:
    """Scale by the principal inverse cube root of the determinant."""
    if not preserves_form(a, tol):
        raise CH2Error("matrix does not preserve the signature-(2,1) form")
    if a.is_exact:
        d = linalg.det(a.rows)
        if d.is_zero:
            raise CH2Error("singular matrix")
        if d == GaussianRational.of(1):
            return a
        det = complex(d)
    else:
        det = complex(np.linalg.det(a.as_array()))
        if abs(det) < tol:
            raise CH2Error("singular matrix")
    root = abs(det) ** (1.0 / 3.0) * cmath.exp(1j * cmath.phase(det) / 3.0)
    return Matrix21.floating(a.as_array() / root)


@dataclass(frozen=True)
class ExtractedWeights:
    """Eigenvalue arguments of a unit-spectrum matrix, as sorted weights."""

    triple: WeightTriple
    sum_integral: bool
    two_equal: bool


def weights_from_semisimple(a: Matrix21, tol: float = DEFAULT_TOL) -> ExtractedWeights:
    """Sorted eigenvalue arguments alpha_j = arg(lambda_j)/(2 pi) in [0, 1).

    Requires all eigenvalue moduli 1 (not loxodromic).  The floats are
    rationalized with a bounded denominator so the result feeds directly
    into exact slope arithmetic.
    """
    eigvals = np.linalg.eigvals(a.as_array())
    scale = max(1.0, float(np.abs(a.as_array()).max()))
    modulus_tol = max(tol, 10.0 * (np.finfo(float).eps * scale) ** (1.0 / 3.0))
    if any(abs(abs(l) - 1.0) > modulus_tol for l in eigvals):
        raise CH2Error("loxodromic input: eigenvalue moduli differ from 1")
    raw = sorted((cmath.phase(l) / (2 * math.pi)) % 1.0 for l in eigvals)
    # snap arguments indistinguishable from 0 or 1 to zero
    raw = [0.0 if min(x, 1.0 - x) <= max(tol, 1e-12) else x for x in raw]
    raw.sort()
    total = sum(raw)
    sum_integral = abs(total - round(total)) <= 10 * max(tol, 1e-12)
    two_equal = (abs(raw[0] - raw[1]) <= max(tol, 1e-12)) or (
        abs(raw[1] - raw[2]) <= max(tol, 1e-12)
    )
    fracs = sorted(Fraction(x).limit_denominator(10**6) for x in raw)
    return ExtractedWeights(WeightTriple.of(*fracs), sum_integral, two_equal)


def unipotent_exponential(n_matrix, r, tol: float = DEFAULT_TOL) -> Matrix21:
    """exp(2 pi i r N) = I + aN + a^2 N^2 / 2 for nilpotent N, a = 2 pi i r."""
    if isinstance(n_matrix, Matrix21):
        if n_matrix.is_exact:
            if not linalg.is_zero_matrix(linalg.mat_pow(n_matrix.rows, 3)):
                raise CH2Error("matrix is not nilpotent")
        arr = n_matrix.as_array()
    else:
        arr = np.asarray(n_matrix, dtype=complex)
    n3 = arr @ arr @ arr
    scale = max(1.0, float(np.abs(arr).max()) ** 3)
    if np.abs(n3).max() > max(tol, 1e-12) * scale:
        raise CH2Error("matrix is not nilpotent")
    a = 2j * math.pi * complex(r)
    out = np.eye(3, dtype=complex) + a * arr + (a * a / 2.0) * (arr @ arr)
    return Matrix21.floating(out)


# ---------------------------------------------------------------------------
# samplers (form-preserving conjugators for property suites)


def _expm(x: np.ndarray) -> np.ndarray:
    """Scaling-and-squaring Taylor exponential; plenty for 3x3 inputs."""
    norm = float(np.abs(x).max())
    k = max(0, int(math.ceil(math.log2(max(norm, 1e-16) / 0.25))))
    y = x / (2**k)
    out = np.eye(3, dtype=complex)
    term = np.eye(3, dtype=complex)
    for j in range(1, 24):
        term = term @ y / j
        out = out + term
    for _ in range(k):
        out = out @ out
    return out


def random_form_preserving(rng, scale: float = 1.0) -> Matrix21:
    """Random element of U(2,1) via the exponential of a random u(2,1) element."""
    y = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))) * scale
    x = 0.5 * (y - J_FLOAT @ y.conj().T @ J_FLOAT)
    return Matrix21.floating(_expm(x))


_NULL_TRIPLES = ((1, 0, 1), (0, 1, 1), (3, 4, 5), (5, 12, 13), (8, 15, 17))


def random_exact_form_preserving(rng, steps: int = 3) -> Matrix21:
    """Random exact U(2,1) element: products of unit-diagonal, rational
    boost, and null-vector unipotent generators (all exactly form-preserving)."""

    def unit(a: int, b: int) -> GaussianRational:
        z = GaussianRational.of(a, b)
        return z / z.conjugate()

    out = linalg.identity(3)
    for _ in range(steps):
        kind = rng.randrange(3)
        if kind == 0:
            d = [unit(rng.randrange(1, 5), rng.randrange(0, 5)) for _ in range(3)]
            g = linalg.mat(
                [
                    [d[0], GaussianRational.of(0), GaussianRational.of(0)],
                    [GaussianRational.of(0), d[1], GaussianRational.of(0)],
                    [GaussianRational.of(0), GaussianRational.of(0), d[2]],
                ]
            )
        elif kind == 1:
            t = Fraction(rng.randrange(1, 5), rng.randrange(1, 5))
            ch = GaussianRational.of((t + 1 / t) / 2)
            sh = GaussianRational.of((t - 1 / t) / 2)
            zero, one = GaussianRational.of(0), GaussianRational.of(1)
            g = linalg.mat([[ch, zero, sh], [zero, one, zero], [sh, zero, ch]])
        else:
            va, vb, vc = _NULL_TRIPLES[rng.randrange(len(_NULL_TRIPLES))]
            u1 = unit(rng.randrange(1, 4), rng.randrange(0, 4))
            v = (
                GaussianRational.of(va) * u1,
                GaussianRational.of(vb),
                GaussianRational.of(vc),
            )
            t = GaussianRational.of(0, Fraction(rng.randrange(1, 6), rng.randrange(1, 4)))
            rows = [
                [
                    (GaussianRational.of(1) if i == j else GaussianRational.of(0))
                    + t * v[i] * v[j].conjugate() * J_EXACT[j][j]
                    for j in range(3)
                ]
                for i in range(3)
            ]
            g = linalg.mat(rows)
        out = linalg.mat_mul(out, g)
    return Matrix21(out)
