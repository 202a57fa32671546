"""Random upper triangular conjugators [[1,1,1],[0,delta,eps],[0,0,eta]] for each row of the table."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .classes import LimitClass
from .linalg import Matrix
from .nonarch import ONE, ZERO, HReal, t_power
from .triangle import eq1_matrix


@dataclass(frozen=True)
class Instance:
    row: LimitClass
    delta: HReal
    epsilon: HReal
    eta: HReal

    @property
    def matrix(self) -> Matrix:
        return eq1_matrix(self.delta, self.epsilon, self.eta)


def _coeff(rng: random.Random, signed: bool = True) -> Fraction:
    c = Fraction(rng.randint(1, 9), rng.randint(1, 5))
    return -c if signed and rng.random() < 0.5 else c


def _element(rng: random.Random, v: Fraction, lead: Fraction | None = None, plain: bool = False) -> HReal:
    """Random element of valuation exactly ``v``, optionally with tails and a denominator."""
    x = t_power(v, lead if lead is not None else _coeff(rng))
    if plain:
        return x
    if rng.random() < 0.5:
        x = x + t_power(v + rng.choice((Fraction(1, 2), Fraction(1), Fraction(2))), _coeff(rng))
    if rng.random() < 0.3:
        # appreciable denominator: does not move the valuation
        x = x / (ONE + t_power(rng.choice((Fraction(1, 2), Fraction(1))), _coeff(rng)))
    return x


def _val(rng: random.Random, lo, hi, integral: bool) -> Fraction:
    if integral:
        return Fraction(rng.randint(int(lo), int(hi)))
    return Fraction(rng.randint(int(2 * lo), int(2 * hi)), 2)


def _epsilon(rng, e: Fraction, d: Fraction, delta: HReal, plain: bool) -> HReal:
    lead = _coeff(rng)
    if e == d:
        # keep the foot nearer p than q: |eps| clearly below |delta|/2
        lead = delta.leading_coefficient() * Fraction(rng.randint(1, 4), 10) * rng.choice((1, -1))
    return _element(rng, e, lead, plain)


def random_instance(row: LimitClass, rng: random.Random, numeric_safe: bool = False) -> Instance:
    """An instance whose normalized coordinates fall in ``row`` of the table.

    ``numeric_safe`` restricts to integer valuations at most 2 with gaps of at
    least one between competing orders, so double precision at n = 1e6 resolves them.
    """
    plain = numeric_safe
    integral = numeric_safe
    top = 2 if numeric_safe else 3

    def gen(v):
        return _element(rng, v, plain=plain)

    if row is LimitClass.C:
        delta, eta = gen(Fraction(0)), gen(Fraction(0))
        eps = ZERO if rng.random() < 0.1 else gen(_val(rng, 0, top, integral))
        return Instance(row, delta, eps, eta)
    if row is LimitClass.F:
        delta = gen(Fraction(0))
        h = _val(rng, 1 if integral else Fraction(1, 2), top, integral)
        if rng.random() < 0.15:
            eps = ZERO
        else:
            eps = gen(_val(rng, h, h + 2, integral))
        return Instance(row, delta, eps, gen(h))
    if row is LimitClass.N3 and rng.random() < 0.25:
        # appreciable base, foot offset much larger than the altitude
        delta = gen(Fraction(0))
        e = _val(rng, 1, 1 if numeric_safe else 2, integral) if numeric_safe else _val(rng, Fraction(1, 2), 2, integral)
        h = e + _val(rng, 1, 1 if numeric_safe else 2, integral) if numeric_safe else e + _val(rng, Fraction(1, 2), 2, integral)
        return Instance(row, delta, gen(e), gen(h))

    # infinitesimal base
    d = _val(rng, 1 if integral else Fraction(1, 2), 1 if numeric_safe else 2, integral)
    delta = gen(d)
    if row is LimitClass.N1:
        e = _val(rng, d, 1 if numeric_safe else d + 2, integral)
        eps = _epsilon(rng, e, d, delta, plain)
        return Instance(row, delta, eps, gen(d + e))
    if row is LimitClass.N2:
        if rng.random() < 0.2:
            h = _val(rng, d, d + 2, integral)
            return Instance(row, delta, ZERO, gen(h))
        e = _val(rng, d, 1 if numeric_safe else d + 2, integral)
        eps = _epsilon(rng, e, d, delta, plain)
        gap = d + e - d
        h = d + _val(rng, 0, gap - (1 if integral else Fraction(1, 2)), integral) if gap > 0 else d
        if numeric_safe:
            h = Fraction(1) if e == 1 else d
        return Instance(row, delta, eps, gen(h))
    if row is LimitClass.N3:
        e = _val(rng, d, 1 if numeric_safe else d + 2, integral)
        eps = _epsilon(rng, e, d, delta, plain)
        h = d + e + _val(rng, 1 if integral else Fraction(1, 2), 1 if numeric_safe else 2, integral)
        return Instance(row, delta, eps, gen(h))
    raise ValueError(f"unknown row {row}")


def instances(row: LimitClass, count: int, seed: int = 0, numeric_safe: bool = False) -> list[Instance]:
    rng = random.Random(f"{seed}-{row.value}")
    return [random_instance(row, rng, numeric_safe) for _ in range(count)]


def random_rational_matrix(rng: random.Random, lo: int = -5, hi: int = 5) -> Matrix:
    """Random nonsingular rational 3x3 matrix with small integer entries."""
    from .linalg import det3

    while True:
        m = tuple(tuple(Fraction(rng.randint(lo, hi)) for _ in range(3)) for _ in range(3))
        if det3(m) != 0:
            return m
