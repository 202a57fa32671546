"""SL2 warm-up: the diagonal group moved onto the basis [1:0], [1:delta] and its two possible limits."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .linalg import Matrix, matrix_shadow
from .nonarch import HReal, MagnitudeClass, as_hreal


class Sl2LimitClass(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"

    @property
    def fixed_points(self) -> int:
        return 2 if self is Sl2LimitClass.HYPERBOLIC else 1

    def __str__(self) -> str:
        return self.value


def _check_delta(delta) -> HReal:
    d = as_hreal(delta)
    if d.is_zero():
        raise ValueError("delta must be nonzero")
    if d.magnitude() is MagnitudeClass.INFINITE:
        raise ValueError(f"delta must be finite, got {d}")
    return d


@dataclass(frozen=True)
class GDeltaFamily:
    """{ [[a, (a - 1/a)/delta], [0, 1/a]] : a > 0 }.

    As written the second fixed point is [1:-delta] (the literal conjugate by
    [[1, 1], [0, delta]] has the opposite sign in the corner); only |delta|
    matters for everything computed here.
    """

    delta: HReal

    def element(self, a) -> Matrix:
        a = as_hreal(a)
        if a <= 0:
            raise ValueError("the parameter a must be positive")
        inv = a.inverse()
        return ((a, (a - inv) / self.delta), (as_hreal(0), inv))

    def __str__(self) -> str:
        return f"[[a, (a - 1/a)/({self.delta})], [0, 1/a]]"


def g_delta_family(delta) -> GDeltaFamily:
    return GDeltaFamily(_check_delta(delta))


def classify_sl2(delta) -> Sl2LimitClass:
    d = _check_delta(delta)
    if d.magnitude() is MagnitudeClass.APPRECIABLE:
        return Sl2LimitClass.HYPERBOLIC
    return Sl2LimitClass.PARABOLIC


def finite_sample(delta, c) -> Matrix:
    """Element with a = 1 + c*delta: its upper right entry tends to 2c, so it lies in Fin."""
    d = _check_delta(delta)
    return g_delta_family(d).element(1 + as_hreal(c) * d)


def fixed_points_rp1(m: Matrix) -> int:
    """Number of fixed points of a rational 2x2 matrix acting on the projective line."""
    (a, b), (c, d) = m
    if b == 0 and c == 0 and a == d:
        raise ValueError("scalar matrices fix every point")
    # eigenlines: roots of c*x^2 + (d - a)*x - b = 0 in x = v0/v1, plus infinity when c = 0
    disc = (d - a) ** 2 + 4 * b * c
    if disc < 0:
        return 0
    if c == 0:
        return 1 if a == d else 2
    return 1 if disc == 0 else 2


def shadow_fixed_points(delta, c) -> int:
    return fixed_points_rp1(matrix_shadow(finite_sample(delta, c)))
