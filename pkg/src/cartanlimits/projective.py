"""Points and lines of the projective plane over the rationals or over HReal.

Distances are replaced by squared chordal separations

    sep_sq(p, q) = |p x q|^2 / (|p|^2 |q|^2) = sin^2(spherical distance),

which are exact field elements with twice the order of the distance.

Each point keeps an integral representative ``rep`` (denominators cleared,
minimal valuation 0) and all geometry is computed on it, so the arithmetic
stays polynomial; the canonical representative ``coords`` (divided by its
first minimal-valuation entry) is built only when asked for.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import Matrix, cross, dot, matvec
from .nonarch import HReal, as_hreal, clear_denominators


class CoincidentError(ValueError):
    pass


class IncidenceError(ValueError):
    pass


def _canonical(coords: Sequence) -> tuple[HReal, HReal, HReal]:
    v = tuple(as_hreal(c) for c in coords)
    nonzero = [i for i, c in enumerate(v) if not c.is_zero()]
    # divide by the first entry of minimal valuation: every entry becomes finite
    pivot = min(nonzero, key=lambda i: (v[i].valuation(), i))
    inv = v[pivot].inverse()
    return tuple(c * inv for c in v)


def _shadow_ratio(rep: Sequence[HReal]) -> tuple[Fraction, Fraction, Fraction]:
    nonzero = [c for c in rep if not c.is_zero()]
    vmin = min(c.valuation() for c in nonzero)
    lead = next(c.leading_coefficient() for c in rep if not c.is_zero() and c.valuation() == vmin)
    return tuple(
        c.leading_coefficient() / lead if not c.is_zero() and c.valuation() == vmin else Fraction(0)
        for c in rep
    )


class _Proj:
    __slots__ = ("rep", "_coords", "_shadow")

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction, HReal)):
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ValueError("homogeneous coordinates need three entries")
        v = [as_hreal(c) for c in coords]
        if all(c.is_zero() for c in v):
            raise ValueError("the zero vector is not a projective point")
        self.rep = tuple(clear_denominators(v))
        self._coords = None
        self._shadow = None

    @property
    def coords(self) -> tuple[HReal, HReal, HReal]:
        if self._coords is None:
            self._coords = _canonical(self.rep)
        return self._coords

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return all(c.is_zero() for c in cross(self.rep, other.rep))

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._shadow_coords()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(repr(str(c)) for c in self.coords)})"

    def __str__(self) -> str:
        return "[" + " : ".join(str(c) for c in self.coords) + "]"

    def _shadow_coords(self):
        if self._shadow is None:
            self._shadow = _shadow_ratio(self.rep)
        return self._shadow

    def shadow(self):
        return type(self)(*self._shadow_coords())

    def is_standard(self) -> bool:
        return all(c.is_standard() for c in self.coords)


class ProjPoint(_Proj):
    """Point [x : y : z]."""

    __slots__ = ()


class ProjLine(_Proj):
    """Line {v : a*v0 + b*v1 + c*v2 = 0} stored as the dual point [a : b : c]."""

    __slots__ = ()

    def contains(self, p: ProjPoint) -> bool:
        return dot(self.rep, p.rep) == 0


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    n = cross(p.rep, q.rep)
    if all(c == 0 for c in n):
        raise CoincidentError("join of coincident points")
    return ProjLine(n)


def meet(l: ProjLine, m: ProjLine) -> ProjPoint:
    v = cross(l.rep, m.rep)
    if all(c == 0 for c in v):
        raise CoincidentError("meet of coincident lines")
    return ProjPoint(v)


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    return dot(cross(p.rep, q.rep), r.rep) == 0


def _sep_sq(u: Sequence, v: Sequence) -> HReal:
    c = cross(u, v)
    return as_hreal(dot(c, c)) / as_hreal(dot(u, u) * dot(v, v))


def sep_sq(p: ProjPoint, q: ProjPoint) -> HReal:
    """sin^2 of the spherical distance between ``p`` and ``q``."""
    return _sep_sq(p.rep, q.rep)


def angle_sq(l: ProjLine, m: ProjLine) -> HReal:
    """sin^2 of the angle between two lines (the separation of their poles)."""
    return _sep_sq(l.rep, m.rep)


def distance_to_line_sq(x: ProjPoint, l: ProjLine) -> HReal:
    """sin^2 of the spherical distance from ``x`` to ``l``."""
    n = l.rep
    xn = dot(x.rep, n)
    return as_hreal(xn * xn) / as_hreal(dot(x.rep, x.rep) * dot(n, n))


def foot_of_perpendicular(x: ProjPoint, l: ProjLine) -> ProjPoint:
    """Closest point of ``l`` to ``x``: remove the normal component of ``x``."""
    n = l.rep
    xn = dot(x.rep, n)
    if xn == 0:
        raise IncidenceError("point lies on the line")
    nn = dot(n, n)
    return ProjPoint(tuple(nn * xi - xn * ni for xi, ni in zip(x.rep, n)))


def shadow_point(p: ProjPoint) -> ProjPoint:
    return p.shadow()


def shadow_line(l: ProjLine) -> ProjLine:
    return l.shadow()


def apply(m: Matrix, p: ProjPoint) -> ProjPoint:
    return ProjPoint(matvec(m, p.rep))
