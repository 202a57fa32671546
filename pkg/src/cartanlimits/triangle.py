"""Nonstandard triangles: normalization, magnitude data and the decision table.

A triangle with vertices p, q, x is relabelled so that the shortest altitude
drops from x onto the line H = pq, with foot y nearer p than q.  The three
numbers

    delta ~ |pq|,   epsilon ~ |py|,   eta ~ |xy|,   alpha = epsilon*delta/eta

are produced square-root-free: each is the squared separation divided by
t**(v/2), v its valuation, so it equals the true length up to an
appreciable factor.  Only magnitude classes and valuations are meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .classes import ConfigClass, LimitClass
from .linalg import Matrix, SingularMatrixError, columns, det3, from_columns
from .nonarch import ZERO, HReal, MagnitudeClass, as_hreal, t_power
from .projective import (
    ProjPoint,
    angle_sq,
    distance_to_line_sq,
    foot_of_perpendicular,
    join,
    sep_sq,
)

APPRECIABLE = MagnitudeClass.APPRECIABLE
INFINITESIMAL = MagnitudeClass.INFINITESIMAL
INFINITE = MagnitudeClass.INFINITE
ZERO_CLASS = MagnitudeClass.ZERO


class DegenerateTriangleError(ValueError):
    pass


class TriangleInvariantError(AssertionError):
    """Internal consistency failure: the data contradict the classification theory."""


@dataclass(frozen=True)
class NonstandardTriangle:
    p: ProjPoint
    q: ProjPoint
    x: ProjPoint

    def __post_init__(self):
        if det3((self.p.rep, self.q.rep, self.x.rep)) == 0:
            raise DegenerateTriangleError("vertices are not in general position")

    @property
    def vertices(self) -> tuple[ProjPoint, ProjPoint, ProjPoint]:
        return (self.p, self.q, self.x)

    def relabel(self, order) -> NonstandardTriangle:
        v = self.vertices
        return NonstandardTriangle(*(v[i] for i in order))

    def matrix(self) -> Matrix:
        return from_columns([v.coords for v in self.vertices])


def triangle_from_matrix(P: Matrix) -> NonstandardTriangle:
    """Triangle whose vertices are the column classes of ``P``."""
    if det3(P) == 0:
        raise SingularMatrixError("matrix is singular")
    return NonstandardTriangle(*(ProjPoint(c) for c in columns(P)))


def _order_rep(square: HReal) -> HReal:
    """A length with squared surrogate ``square``, up to an appreciable factor."""
    if square.is_zero():
        return ZERO
    return square / t_power(square.valuation() / 2)


@dataclass(frozen=True)
class NormalizedTriangle:
    p: ProjPoint
    q: ProjPoint
    x: ProjPoint
    y: ProjPoint
    delta_sq: HReal
    epsilon_sq: HReal
    eta_sq: HReal
    delta: HReal
    epsilon: HReal
    eta: HReal
    alpha: HReal
    side_classes: tuple  # |pq|, |qx|, |xp|
    angle_classes: tuple  # at p, q, x

    def magnitudes(self) -> dict[str, MagnitudeClass]:
        return {
            "delta": self.delta.magnitude(),
            "epsilon": self.epsilon.magnitude(),
            "eta": self.eta.magnitude(),
            "alpha": self.alpha.magnitude(),
        }

    def orders(self) -> dict[str, Fraction | None]:
        """Valuations of delta, epsilon, eta, alpha (None for zero)."""
        return {k: (None if v.is_zero() else v.valuation())
                for k, v in (("delta", self.delta), ("epsilon", self.epsilon),
                             ("eta", self.eta), ("alpha", self.alpha))}


def _altitude_sq(v: ProjPoint, a: ProjPoint, b: ProjPoint) -> HReal:
    return distance_to_line_sq(v, join(a, b))


def normalize(T: NonstandardTriangle) -> NormalizedTriangle:
    verts = T.vertices
    alts = [_altitude_sq(verts[i], verts[(i + 1) % 3], verts[(i + 2) % 3]) for i in range(3)]
    # ties go to the earliest vertex
    ix = min(range(3), key=lambda i: (alts[i], i))
    x = verts[ix]
    a, b = verts[(ix + 1) % 3], verts[(ix + 2) % 3]
    if ix == 1:  # keep the remaining pair in input order
        a, b = b, a
    H = join(a, b)
    y = foot_of_perpendicular(x, H)
    da, db = sep_sq(y, a), sep_sq(y, b)
    p, q = (a, b) if da <= db else (b, a)

    delta_sq = sep_sq(p, q)
    epsilon_sq = sep_sq(p, y)
    eta_sq = alts[ix]
    delta, epsilon, eta = _order_rep(delta_sq), _order_rep(epsilon_sq), _order_rep(eta_sq)
    alpha = ZERO if epsilon.is_zero() else epsilon * delta / eta

    pq, qx, xp = join(p, q), join(q, x), join(x, p)
    sides = tuple(s.magnitude() for s in (delta_sq, sep_sq(q, x), sep_sq(x, p)))
    angles = tuple(s.magnitude() for s in (angle_sq(pq, xp), angle_sq(pq, qx), angle_sq(qx, xp)))
    return NormalizedTriangle(p, q, x, y, delta_sq, epsilon_sq, eta_sq,
                              delta, epsilon, eta, alpha, sides, angles)


# (angles, sides) pairs a nonstandard triangle can exhibit
ALLOWED_COUNTS = frozenset({(0, 0), (1, 1), (2, 3), (0, 3), (1, 3), (2, 0), (2, 1)})


def count_infinitesimal(T: NormalizedTriangle) -> tuple[int, int]:
    """(# infinitesimal sides, # infinitesimal angles).

    The angle at x is never counted: with y between p and q the angles at p
    and q are acute, so a vanishing line-angle at x means an angle near pi.
    """
    sides = sum(c is INFINITESIMAL for c in T.side_classes)
    angles = sum(c is INFINITESIMAL for c in T.angle_classes[:2])
    if (angles, sides) not in ALLOWED_COUNTS:
        raise TriangleInvariantError(f"impossible triangle: {sides} infinitesimal sides, {angles} angles")
    return sides, angles


def table_class(delta, epsilon, eta) -> LimitClass:
    """Apply the decision table to coordinates already in normalized position.

    No relabelling happens here: the caller vouches that |eta| <= |delta| and
    that [1:epsilon] is the foot nearer p.
    """
    d, e, h = as_hreal(delta), as_hreal(epsilon), as_hreal(eta)
    alpha = ZERO if e.is_zero() else e * d / h
    return _table(d.magnitude(), h.magnitude(), alpha.magnitude())


def _table(d: MagnitudeClass, h: MagnitudeClass, a: MagnitudeClass) -> LimitClass:
    if a is INFINITE and d.is_finite:
        return LimitClass.N3
    if d is APPRECIABLE:
        if h is APPRECIABLE:
            return LimitClass.C
        if h is INFINITESIMAL:
            return LimitClass.F
    elif d is INFINITESIMAL:
        if a is APPRECIABLE:
            return LimitClass.N1
        if a in (INFINITESIMAL, ZERO_CLASS):
            return LimitClass.N2
    raise TriangleInvariantError(f"no table row for delta {d}, eta {h}, alpha {a}")


def classify(T: NormalizedTriangle) -> LimitClass:
    """Conjugacy class of the limit group, read from (delta, eta, alpha)."""
    return _table(T.delta.magnitude(), T.eta.magnitude(), T.alpha.magnitude())


def classify_triangle(T: NonstandardTriangle) -> LimitClass:
    return classify(normalize(T))


def classify_matrix(P: Matrix) -> LimitClass:
    return classify(normalize(triangle_from_matrix(P)))


# (angles, sides) -> classes the counts allow; used as a cross-check of the decision table
COUNT_TABLE = {
    (0, 0): {LimitClass.C},
    (1, 1): {LimitClass.F},
    (2, 3): {LimitClass.N1, LimitClass.N2, LimitClass.N3},
    (0, 3): {LimitClass.N2},
    (1, 3): {LimitClass.N2},
    (2, 0): {LimitClass.N3},
    (2, 1): {LimitClass.N3},
}


def shadow_config(T: NonstandardTriangle) -> ConfigClass:
    """Configuration class of the shadow: count distinct vertex and side shadows."""
    p, q, x = T.vertices
    points = {v.shadow() for v in (p, q, x)}
    lines = {l.shadow() for l in (join(p, q), join(q, x), join(x, p))}
    return ConfigClass.from_counts(len(points), len(lines))


def all_labelings(T: NonstandardTriangle):
    for order in permutations(range(3)):
        yield T.relabel(order)


def eq1_matrix(delta, epsilon, eta) -> Matrix:
    """Upper triangular matrix whose columns are [1:0:0], [1:delta:0], [1:epsilon:eta]."""
    d, e, h = as_hreal(delta), as_hreal(epsilon), as_hreal(eta)
    one, zero = as_hreal(1), ZERO
    return ((one, one, one), (zero, d, e), (zero, zero, h))


def link_displacement(delta, epsilon, a) -> HReal:
    """Signed displacement of y = [1:epsilon] under the element of G(delta) with
    diagonal (a, 1/a), in the affine coordinate.  Equals -b*eps*(delta + eps)/(a + b*eps)
    with b the corner entry."""
    from .sl2 import g_delta_family

    g = g_delta_family(delta).element(a)
    eps = as_hreal(epsilon)
    first = g[0][0] + g[0][1] * eps
    second = g[1][1] * eps
    return second / first - eps
