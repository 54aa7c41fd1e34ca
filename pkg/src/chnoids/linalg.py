"""Exact linear algebra over Q(i) for small dense matrices.

Matrices are tuples of row tuples of GaussianRational.  Everything here
is pure and allocation-light; sizes never exceed a handful of rows.
"""

from __future__ import annotations

from .exactnum import ONE, ZERO, ExactArithmeticError, GaussianRational, UniPoly

Matrix = tuple[tuple[GaussianRational, ...], ...]
Vector = tuple[GaussianRational, ...]


def mat(rows) -> Matrix:
    return tuple(tuple(x for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(n: int, m: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(n))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c: GaussianRational) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = len(b[0])
    inner = len(b)
    return tuple(
        tuple(sum((row[k] * b[k][j] for k in range(inner)), ZERO) for j in range(cols))
        for row in a
    )


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum((row[k] * v[k] for k in range(len(v))), ZERO) for row in a)


def mat_pow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def is_zero_matrix(a: Matrix) -> bool:
    return all(x.is_zero for row in a for x in row)


def conj_transpose(a: Matrix) -> Matrix:
    n, m = len(a), len(a[0])
    return tuple(tuple(a[i][j].conjugate() for i in range(n)) for j in range(m))


def _echelon(rows: list[list[GaussianRational]]) -> tuple[list[list[GaussianRational]], list[int]]:
    """Row-reduce in place; returns (reduced rows, pivot column list)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if not rows[i][c].is_zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and not rows[i][c].is_zero:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def rank(a: Matrix) -> int:
    _, pivots = _echelon([list(row) for row in a])
    return len(pivots)


def kernel_basis(a: Matrix) -> list[Vector]:
    """Basis of the right null space."""
    n_cols = len(a[0])
    rows, pivots = _echelon([list(row) for row in a])
    free = [c for c in range(n_cols) if c not in pivots]
    basis: list[Vector] = []
    for fc in free:
        v = [ZERO] * n_cols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


def column_space_basis(a: Matrix) -> list[Vector]:
    """Basis of the column space (as column vectors)."""
    n = len(a)
    transposed = [[a[i][j] for i in range(n)] for j in range(len(a[0]))]
    rows, pivots = _echelon([list(r) for r in transposed])
    return [tuple(rows[i]) for i in range(len(pivots))]


def in_span(v: Vector, basis: list[Vector]) -> bool:
    if not basis:
        return all(x.is_zero for x in v)
    rows = [list(b) for b in basis]
    _, pivots_before = _echelon([r[:] for r in rows])
    rows.append(list(v))
    _, pivots_after = _echelon(rows)
    return len(pivots_after) == len(pivots_before)


def inverse(a: Matrix) -> Matrix:
    """Exact inverse via Gauss-Jordan on [A | I]; raises on singular input."""
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    rows, pivots = _echelon(aug)
    if pivots != list(range(n)):
        raise ExactArithmeticError("matrix is singular")
    return tuple(tuple(rows[i][n:]) for i in range(n))


def det(a: Matrix) -> GaussianRational:
    rows = [list(row) for row in a]
    n = len(rows)
    out = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if not rows[i][c].is_zero), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            out = -out
        pv = rows[c][c]
        out = out * pv
        inv = pv.inverse()
        for i in range(c + 1, n):
            f = rows[i][c] * inv
            if not f.is_zero:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return out


def charpoly(a: Matrix) -> UniPoly:
    """Characteristic polynomial det(z*I - A), monic, via Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    m = identity(n)
    c = ONE
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        tr = sum((m[i][i] for i in range(n)), ZERO)
        c = -(tr / GaussianRational.of(k))
        coeffs[n - k] = c
        m = tuple(
            tuple(m[i][j] + (c if i == j else ZERO) for j in range(n)) for i in range(n)
        )
    return UniPoly.of(coeffs)


def minimal_polynomial(a: Matrix) -> UniPoly:
    """Monic minimal polynomial, via the first linear dependence among powers."""
    n = len(a)
    powers = [identity(n)]
    for _ in range(n):
        powers.append(mat_mul(powers[-1], a))
    flat = [[p[i][j] for i in range(n) for j in range(n)] for p in powers]
    for d in range(1, n + 2):
        # solve c_0 I + ... + c_{d-1} A^{d-1} = -A^d
        rows = [[flat[k][e] for k in range(d)] + [-flat[d][e]] for e in range(n * n)]
        reduced, pivots = _echelon(rows)
        if d not in pivots:
            sol = [ZERO] * d
            for r, pc in enumerate(pivots):
                sol[pc] = reduced[r][d]
            return UniPoly.of(sol + [1])
    raise AssertionError("no minimal polynomial found")
