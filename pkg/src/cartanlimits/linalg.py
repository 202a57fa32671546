"""Exact 3x3 linear algebra over any exact field (rationals or :class:`HReal`).

Matrices are tuples of row tuples.  Traceless matrices have 8 coordinates in
the fixed basis :data:`SL3_BASIS`; 2-planes of them have 28 Plücker
coordinates indexed by :data:`PLUCKER_PAIRS`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .nonarch import HReal

Matrix = tuple  # tuple of row tuples


class SingularMatrixError(ArithmeticError):
    pass


class NotFiniteError(ValueError):
    """A matrix with an infinite entry has no shadow."""


def _q(x):
    if isinstance(x, (HReal, Fraction)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        from .nonarch import parse_hreal
        return parse_hreal(x)
    raise TypeError(f"unsupported scalar {x!r}")


def mat(rows: Sequence[Sequence]) -> Matrix:
    """Freeze a nested sequence into a matrix of exact scalars."""
    return tuple(tuple(_q(x) for x in row) for row in rows)


def identity(n: int = 3) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n: int = 3, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def elementary(i: int, j: int) -> Matrix:
    """E_ij with 1-based indices."""
    return tuple(tuple(Fraction(int((r, c) == (i - 1, j - 1))) for c in range(3)) for r in range(3))


def diag(*entries) -> Matrix:
    n = len(entries)
    return tuple(tuple(_q(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def madd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def msub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mscale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def trace(a: Matrix):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_zero_matrix(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def columns(a: Matrix) -> list[tuple]:
    return [tuple(c) for c in zip(*a)]


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*cols))


def det3(m: Matrix):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def adjugate(m: Matrix) -> Matrix:
    (a, b, c), (d, e, f), (g, h, i) = m
    return (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )


def inverse(m: Matrix) -> Matrix:
    if len(m) == 2:
        (a, b), (c, d) = m
        det = a * d - b * c
        if det == 0:
            raise SingularMatrixError("matrix is singular")
        return ((d / det, -b / det), (-c / det, a / det))
    det = det3(m)
    if det == 0:
        raise SingularMatrixError("matrix is singular")
    inv = 1 / det
    return mscale(inv, adjugate(m))


def matrix_shadow(m: Matrix) -> Matrix:
    """Entrywise shadow; raises :class:`NotFiniteError` outside Fin."""
    out = []
    for row in m:
        new = []
        for x in row:
            if isinstance(x, HReal):
                if not x.magnitude().is_finite:
                    raise NotFiniteError(f"matrix is not in Fin: entry {x} is infinite")
                new.append(x.shadow())
            else:
                new.append(x)
        out.append(tuple(new))
    return tuple(out)


def cross(u: Sequence, v: Sequence) -> tuple:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def dot(u: Sequence, v: Sequence):
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


# -- elimination ---------------------------------------------------------------

def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form by exact elimination; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def kernel(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Basis of the right null space {v : rows . v = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = row_reduce(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


# -- sl3 coordinates -----------------------------------------------------------

H1 = diag(1, -1, 0)
H2 = diag(0, 1, -1)
SL3_BASIS: tuple[Matrix, ...] = (
    elementary(1, 2), elementary(1, 3), elementary(2, 1), elementary(2, 3),
    elementary(3, 1), elementary(3, 2), H1, H2,
)
SL3_LABELS = ("E12", "E13", "E21", "E23", "E31", "E32", "H1", "H2")
PLUCKER_PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(range(8), 2))


def sl3_coords(x: Matrix) -> tuple:
    if trace(x) != 0:
        raise ValueError("matrix is not traceless")
    return (x[0][1], x[0][2], x[1][0], x[1][2], x[2][0], x[2][1], x[0][0], -x[2][2])


def from_sl3_coords(c: Sequence) -> Matrix:
    e12, e13, e21, e23, e31, e32, a, b = c
    return ((a, e12, e13), (e21, b - a, e23), (e31, e32, -b))


def bracket(x: Matrix, y: Matrix) -> Matrix:
    return msub(matmul(x, y), matmul(y, x))


def conjugate(p: Matrix, x: Matrix, p_inv: Matrix | None = None) -> Matrix:
    if p_inv is None:
        p_inv = inverse(p)
    return matmul(matmul(p, x), p_inv)


# -- 2-planes of traceless matrices ----------------------------------------------

class DegeneratePlaneError(ValueError):
    pass


class NotDecomposableError(ValueError):
    pass


@dataclass(frozen=True)
class Plane2:
    """A 2-dimensional subspace of traceless 3x3 matrices, given by a basis."""

    a: Matrix
    b: Matrix

    def __post_init__(self):
        if rank([sl3_coords(self.a), sl3_coords(self.b)]) != 2:
            raise DegeneratePlaneError("basis matrices are linearly dependent")

    @classmethod
    def span(cls, x, y) -> Plane2:
        return cls(mat(x), mat(y))

    @property
    def basis(self) -> tuple[Matrix, Matrix]:
        return (self.a, self.b)

    def coords(self) -> tuple[tuple, tuple]:
        return sl3_coords(self.a), sl3_coords(self.b)

    def plucker(self) -> tuple:
        u, v = self.coords()
        return tuple(u[i] * v[j] - u[j] * v[i] for i, j in PLUCKER_PAIRS)

    def contains(self, x: Matrix) -> bool:
        u, v = self.coords()
        return rank([u, v, sl3_coords(x)]) == 2

    def same_plane(self, other: Plane2) -> bool:
        return other.contains(self.a) and other.contains(self.b)

    def is_abelian(self) -> bool:
        return is_zero_matrix(bracket(self.a, self.b))

    def conjugated(self, p: Matrix) -> Plane2:
        p_inv = inverse(p)
        return Plane2(conjugate(p, self.a, p_inv), conjugate(p, self.b, p_inv))

    def dual(self) -> Plane2:
        """Image under the outer automorphism X -> -X^T."""
        return Plane2(mscale(-1, transpose(self.a)), mscale(-1, transpose(self.b)))


def plucker(plane: Plane2) -> tuple:
    return plane.plucker()


def _p(v: Sequence, i: int, j: int):
    if i == j:
        return Fraction(0)
    if i < j:
        return v[PLUCKER_PAIRS.index((i, j))]
    return -v[PLUCKER_PAIRS.index((j, i))]


def grassmann_relations(v: Sequence) -> list:
    """Values of all three-term quadratic Plücker relations (all zero iff decomposable)."""
    out = []
    for i, j, k, l in combinations(range(8), 4):
        out.append(_p(v, i, j) * _p(v, k, l) - _p(v, i, k) * _p(v, j, l) + _p(v, i, l) * _p(v, j, k))
    return out


def is_decomposable(v: Sequence) -> bool:
    return any(x != 0 for x in v) and all(r == 0 for r in grassmann_relations(v))


def plane_from_plucker(v: Sequence) -> Plane2:
    if len(v) != 28:
        raise ValueError("a Plücker vector of a 2-plane in sl3 has 28 coordinates")
    if not is_decomposable(v):
        raise NotDecomposableError("vector violates the Grassmann-Plücker relations")
    i, j = next(PLUCKER_PAIRS[k] for k, x in enumerate(v) if x != 0)
    # contractions of a^b with the dual basis vectors e_i*, e_j* lie in the plane
    u = tuple(_p(v, i, k) for k in range(8))
    w = tuple(_p(v, j, k) for k in range(8))
    return Plane2(from_sl3_coords(u), from_sl3_coords(w))


def normalizer_dimension(plane: Plane2) -> int:
    """dim {X traceless : [X, plane] is contained in plane}."""
    u, v = plane.coords()
    annihilator = kernel([u, v], 8)  # functionals vanishing on the plane
    equations = []
    images = [[sl3_coords(bracket(e, y)) for e in SL3_BASIS] for y in plane.basis]
    for f in annihilator:
        for img in images:
            equations.append([dot(f, col) for col in img])
    return 8 - rank(equations)
