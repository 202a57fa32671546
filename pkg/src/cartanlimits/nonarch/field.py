"""Ordered field of Puiseux rational functions in a positive infinitesimal ``t``.

Every element is stored as

    t**(k/N) * num(s) / den(s),      s = t**(1/N)

with ``num`` and ``den`` ordinary polynomials over the rationals in ``s``,
``num(0) != 0``, ``den(0) == 1``, ``gcd(num, den) == 1`` and ``N`` minimal.
That form is unique, so equality, hashing and printing are canonical.
Ordering, valuation and shadow read off ``k/N`` and ``num(0)``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Union

try:  # gmpy2 rationals are an order of magnitude faster than Fraction
    from gmpy2 import mpq as Q
    from gmpy2 import mpz as _Z
except ImportError:  # pragma: no cover
    Q = Fraction
    _Z = int

Poly = tuple  # tuple of Q coefficients, constant term first, no trailing zeros

Scalar = Union[int, Fraction, "HReal"]

_ONE: Poly = (Q(1),)
_Q0 = Q(0)


# -- dense polynomial helpers ------------------------------------------------

def _strip(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _strip(out)


def _pneg(p: Poly) -> Poly:
    return tuple(-c for c in p)


_KRONECKER_MIN = 12  # below this many nonzero terms the schoolbook product wins


def _common_denominator(p: Poly) -> int:
    d = 1
    for c in p:
        if c:
            den = int(c.denominator)
            d = d // gcd(d, den) * den
    return d


def _pack(p: Poly, nbytes: int) -> tuple[int, int]:
    """Scale ``p`` to integer coefficients and evaluate at 256**nbytes."""
    d = _common_denominator(p)
    pos, neg = bytearray(), bytearray()
    zero = bytes(nbytes)
    for c in p:
        v = int(c.numerator) * (d // int(c.denominator))
        pos += v.to_bytes(nbytes, "little") if v > 0 else zero
        neg += (-v).to_bytes(nbytes, "little") if v < 0 else zero
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little"), d


def _kronecker(p: Poly, q: Poly) -> Poly:
    # a bound on the integer product coefficients fixes the slot width
    bp = max(abs(int(c.numerator)) for c in p).bit_length() + _common_denominator(p).bit_length()
    bq = max(abs(int(c.numerator)) for c in q).bit_length() + _common_denominator(q).bit_length()
    nbytes = (bp + bq + min(len(p), len(q)).bit_length() + 2) // 8 + 1
    x, dp = _pack(p, nbytes)
    y, dq = _pack(q, nbytes)
    n = len(p) + len(q) - 1
    # biasing every slot by half its range makes all digits nonnegative
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * n, "little")
    raw = int(_Z(x) * _Z(y) + bias).to_bytes(n * nbytes, "little")
    scale = dp * dq
    out = []
    for i in range(0, n * nbytes, nbytes):
        digit = int.from_bytes(raw[i:i + nbytes], "little") - half
        out.append(Q(digit, scale) if digit else _Q0)
    return _strip(out)


def _pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    if len(p) == 1:
        c = p[0]
        return tuple(c * x for x in q)
    if len(q) == 1:
        c = q[0]
        return tuple(c * x for x in p)
    ps = [(i, a) for i, a in enumerate(p) if a]
    qs = [(j, b) for j, b in enumerate(q) if b]
    if len(ps) >= _KRONECKER_MIN and len(qs) >= _KRONECKER_MIN:
        return _kronecker(p, q)
    out = [_Q0] * (len(p) + len(q) - 1)
    for i, a in ps:
        for j, b in qs:
            out[i + j] += a * b
    return _strip(out)


def _pscale(p: Poly, c) -> Poly:
    return tuple(x * c for x in p)


def _shift(p: Poly, j: int) -> Poly:
    """Multiply by s**j (j >= 0)."""
    return (_Q0,) * j + p if j else p


def _pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(r) <= dq:
        return (), tuple(r)
    quo = [_Q0] * (len(r) - dq)
    for i in range(len(r) - 1, dq - 1, -1):
        c = r[i]
        if c:
            c = c / lead
            quo[i - dq] = c
            for j in range(dq + 1):
                r[i - dq + j] -= c * q[j]
    return _strip(quo), _strip(r[:dq])


def _primitive(p: list) -> list:
    """Integer polynomial divided by its content, leading coefficient positive."""
    g = 0
    for c in p:
        g = gcd(g, c)
        if g == 1:
            break
    if p[-1] < 0:
        g = -g
    return [c // g for c in p] if g not in (0, 1) else p


def _pgcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd, by primitive pseudo-remainders over the integers.

    Plain Euclid over the rationals blows up the coefficient sizes.
    """
    if len(p) < len(q):
        p, q = q, p
    if not q:
        return _pscale(p, 1 / p[-1]) if p else ()
    a = _primitive(_integral(p))
    b = _primitive(_integral(q))
    while len(b) > 1:
        r = _pseudo_rem(a, b)
        if not r:
            break
        a, b = b, _primitive(r)
    else:
        if b:
            return _ONE
    return tuple(Q(c, b[-1]) for c in b)


def _integral(p: Poly) -> list:
    m = 1
    for c in p:
        d = c.denominator
        m = m * d // gcd(m, d)
    return [int(c * m) for c in p]


def _pseudo_rem(a: list, b: list) -> list:
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def _pexact_div(p: Poly, q: Poly) -> Poly:
    quo, rem = _pdivmod(p, q)
    assert not rem, "inexact polynomial division"
    return quo


def _peval(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _spread(p: Poly, m: int) -> Poly:
    """Substitute s -> s**m."""
    if m == 1 or not p:
        return p
    out = [_Q0] * ((len(p) - 1) * m + 1)
    for i, c in enumerate(p):
        out[i * m] = c
    return tuple(out)


def _compress(p: Poly, g: int) -> Poly:
    return p[::g] if g > 1 else p


def _support_gcd(p: Poly, acc: int) -> int:
    for i, c in enumerate(p):
        if c and i:
            acc = gcd(acc, i)
            if acc == 1:
                return 1
    return acc


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if type(x) is Q:
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot embed {type(x).__name__} exactly")


def _coef(x) -> Q:
    return Q(_to_fraction(x)) if Q is not Fraction else _to_fraction(x)


class MagnitudeClass(enum.Enum):
    ZERO = "zero"
    INFINITESIMAL = "infinitesimal"
    APPRECIABLE = "appreciable"
    INFINITE = "infinite"

    @property
    def is_finite(self) -> bool:
        return self is not MagnitudeClass.INFINITE

    def __str__(self) -> str:
        return self.value


# -- Puiseux polynomials -----------------------------------------------------

class PuiseuxPoly:
    """Finite sum of rational multiples of rational powers of ``t``.

    Immutable; ``terms`` maps exponent to nonzero coefficient.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            e, c = Fraction(e), Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def monomial(cls, coeff, exponent) -> PuiseuxPoly:
        return cls({exponent: coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def exponent_denominator(self) -> int:
        """Common denominator N of all exponents (1 for the zero polynomial)."""
        return reduce(lambda a, e: a * e.denominator // gcd(a, e.denominator), self._terms, 1)

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> Fraction:
        if not self._terms:
            raise ValueError("valuation of zero")
        return next(iter(self._terms))

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            raise ValueError("leading coefficient of zero")
        return next(iter(self._terms.values()))

    def __add__(self, other: PuiseuxPoly) -> PuiseuxPoly:
        merged = dict(self._terms)
        for e, c in other._terms.items():
            merged[e] = merged.get(e, 0) + c
        return PuiseuxPoly(merged)

    def __neg__(self) -> PuiseuxPoly:
        return PuiseuxPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: PuiseuxPoly) -> PuiseuxPoly:
        return self + (-other)

    def __mul__(self, other: PuiseuxPoly) -> PuiseuxPoly:
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return PuiseuxPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, PuiseuxPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"PuiseuxPoly({format_poly(self)!r})"

    def to_hreal(self) -> HReal:
        return HReal.from_puiseux(self)


# -- the field ---------------------------------------------------------------

class HReal:
    """Element of the surrogate hyperreal field.

    Build elements with :func:`t_power`, :meth:`from_puiseux`, the parser,
    or by arithmetic on integers and :class:`~fractions.Fraction` s.
    """

    __slots__ = ("_n", "_k", "_num", "_den", "_hash", "_reduced")

    def __init__(self, value: int | Fraction = 0):
        c = _coef(value)
        self._n = 1
        self._k = 0
        self._num = (c,) if c else ()
        self._den = _ONE
        self._hash = None
        self._reduced = True

    @classmethod
    def _raw(cls, n: int, k: int, num: Poly, den: Poly, reduced: bool = True) -> HReal:
        obj = cls.__new__(cls)
        obj._n, obj._k, obj._num, obj._den, obj._hash = n, k, num, den, None
        obj._reduced = reduced or len(den) == 1 or len(num) == 1
        return obj

    @classmethod
    def _make(cls, n: int, k: int, num: Poly, den: Poly, reduce_gcd: bool = False) -> HReal:
        """Normalize the t-power, den(0) and N.  The gcd of num and den is
        only cancelled when ``reduce_gcd`` is set; otherwise it is deferred
        until a canonical form is actually needed (see :meth:`_canon`)."""
        num = _strip(num)
        if not num:
            return ZERO
        i = 0
        while num[i] == 0:
            i += 1
        if i:
            num, k = num[i:], k + i
        j = 0
        while den[j] == 0:
            j += 1
        if j:
            den, k = den[j:], k - j
        reduced = True
        if len(den) > 1 and len(num) > 1:
            if reduce_gcd:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num, den = _pexact_div(num, g), _pexact_div(den, g)
            else:
                reduced = False
        d0 = den[0]
        if d0 != 1:
            inv = 1 / d0
            num, den = _pscale(num, inv), _pscale(den, inv)
        if n > 1:
            g = gcd(n, k)
            if g > 1:
                g = _support_gcd(den, _support_gcd(num, g))
                if g > 1:
                    n, k = n // g, k // g
                    num, den = _compress(num, g), _compress(den, g)
        return cls._raw(n, k, num, den, reduced)

    def _canon(self) -> HReal:
        """Cancel the deferred gcd in place; the value does not change."""
        if not self._reduced:
            c = HReal._make(self._n, self._k, self._num, self._den, reduce_gcd=True)
            self._n, self._k, self._num, self._den = c._n, c._k, c._num, c._den
            self._reduced = True
        return self

    @classmethod
    def from_puiseux(cls, p: PuiseuxPoly, q: PuiseuxPoly | None = None) -> HReal:
        def conv(poly: PuiseuxPoly) -> HReal:
            if poly.is_zero():
                return ZERO
            n = poly.exponent_denominator
            k = int(poly.valuation() * n)
            body = [_Q0] * (int(max(poly._terms) * n) - k + 1)
            for e, c in poly._terms.items():
                body[int(e * n) - k] = _coef(c)
            return cls._make(n, k, tuple(body), _ONE)

        value = conv(p)
        if q is not None:
            value = value / conv(q)
        return value

    # -- structure ---------------------------------------------------------

    def _lift(self, m: int) -> tuple[int, Poly, Poly]:
        """(k, num, den) re-expressed over exponent denominator m (a multiple of N)."""
        f = m // self._n
        return self._k * f, _spread(self._num, f), _spread(self._den, f)

    @property
    def numerator(self) -> PuiseuxPoly:
        self._canon()
        n = self._n
        return PuiseuxPoly({Fraction(self._k + i, n): _to_fraction(c) for i, c in enumerate(self._num) if c})

    @property
    def denominator(self) -> PuiseuxPoly:
        self._canon()
        n = self._n
        return PuiseuxPoly({Fraction(i, n): _to_fraction(c) for i, c in enumerate(self._den) if c})

    @property
    def exponent_denominator(self) -> int:
        return self._canon()._n

    def is_zero(self) -> bool:
        return not self._num

    def is_polynomial(self) -> bool:
        return self._canon()._den == _ONE

    def valuation(self) -> Fraction:
        if not self._num:
            raise ValueError("valuation of zero is undefined")
        return Fraction(self._k, self._n)

    def leading_coefficient(self) -> Fraction:
        if not self._num:
            raise ValueError("zero has no leading coefficient")
        return _to_fraction(self._num[0])

    def sign(self) -> int:
        if not self._num:
            return 0
        return 1 if self._num[0] > 0 else -1

    def magnitude(self) -> MagnitudeClass:
        if not self._num:
            return MagnitudeClass.ZERO
        if self._k > 0:
            return MagnitudeClass.INFINITESIMAL
        if self._k < 0:
            return MagnitudeClass.INFINITE
        return MagnitudeClass.APPRECIABLE

    def shadow(self) -> Fraction:
        if not self._num:
            return Fraction(0)
        if self._k < 0:
            raise ValueError(f"infinite element has no shadow: {self}")
        return _to_fraction(self._num[0]) if self._k == 0 else Fraction(0)

    def is_standard(self) -> bool:
        """True when the element is a plain rational number."""
        if not self._num:
            return True
        self._canon()
        return self._k == 0 and len(self._num) == 1 and self._den == _ONE

    def to_fraction(self) -> Fraction:
        if not self.is_standard():
            raise ValueError(f"{self} is not a rational constant")
        return _to_fraction(self._num[0]) if self._num else Fraction(0)

    def evaluate(self, t: float) -> float:
        """Value at a concrete positive real ``t`` (fractional powers use the positive root)."""
        if t <= 0:
            raise ValueError("evaluation requires t > 0")
        s = t ** (1.0 / self._n)
        den = _peval(tuple(float(c) for c in self._den), s)
        if den == 0:
            raise ZeroDivisionError(f"pole of {self} at t={t}")
        num = _peval(tuple(float(c) for c in self._num), s)
        return s ** self._k * num / den

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x) -> HReal:
        if isinstance(x, HReal):
            return x
        if isinstance(x, (int, Fraction)) or type(x) is Q:
            return HReal(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._num:
            return self
        if not self._num:
            return other
        a, b = self, other
        if a._n == b._n:
            n, ka, na, da, kb, nb, db = a._n, a._k, a._num, a._den, b._k, b._num, b._den
        else:
            n = a._n * b._n // gcd(a._n, b._n)
            ka, na, da = a._lift(n)
            kb, nb, db = b._lift(n)
        k = min(ka, kb)
        if da == db:
            num = _padd(_shift(na, ka - k), _shift(nb, kb - k))
            return HReal._make(n, k, num, da)
        num = _padd(_pmul(_shift(na, ka - k), db), _pmul(_shift(nb, kb - k), da))
        return HReal._make(n, k, num, _pmul(da, db))

    __radd__ = __add__

    def __neg__(self) -> HReal:
        if not self._num:
            return self
        return HReal._raw(self._n, self._k, _pneg(self._num), self._den, self._reduced)

    def __pos__(self) -> HReal:
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._num or not other._num:
            return ZERO
        a, b = self, other
        if a._n == b._n:
            n, ka, na, da, kb, nb, db = a._n, a._k, a._num, a._den, b._k, b._num, b._den
        else:
            n = a._n * b._n // gcd(a._n, b._n)
            ka, na, da = a._lift(n)
            kb, nb, db = b._lift(n)
        if n == 1 and da == _ONE and db == _ONE:
            return HReal._raw(n, ka + kb, _pmul(na, nb), _ONE)
        return HReal._make(n, ka + kb, _pmul(na, nb), _pmul(da, db))

    __rmul__ = __mul__

    def inverse(self) -> HReal:
        if not self._num:
            raise ZeroDivisionError("division by zero in HReal")
        c = 1 / self._num[0]
        return HReal._raw(self._n, -self._k, _pscale(self._den, c), _pscale(self._num, c), self._reduced)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int) -> HReal:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __abs__(self) -> HReal:
        return -self if self.sign() < 0 else self

    # -- comparison --------------------------------------------------------

    def _key(self):
        self._canon()
        return (self._n, self._k, self._num, self._den)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._reduced and other._reduced:
            return self._key() == other._key()
        # cross-multiplication avoids computing a gcd
        return not (self - other)._num

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_standard():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash(self._key())
        return self._hash

    def compare(self, other) -> int:
        """-1, 0 or 1: the sign of the leading coefficient of the difference."""
        other = self._coerce(other)
        if self._reduced and other._reduced and self._key() == other._key():
            return 0
        return (self - other).sign()

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    def __bool__(self) -> bool:
        return bool(self._num)

    def __str__(self) -> str:
        return format_hreal(self)

    def __repr__(self) -> str:
        return f"HReal({format_hreal(self)!r})"


ZERO = HReal._raw(1, 0, (), _ONE)
ONE = HReal(1)
T = HReal._raw(1, 1, _ONE, _ONE)


def t_power(exponent, coeff=1) -> HReal:
    """``coeff * t**exponent`` for rational ``exponent``."""
    e, c = Fraction(exponent), Fraction(coeff)
    if not c:
        return ZERO
    return HReal._raw(e.denominator, e.numerator, (_coef(c),), _ONE)


def as_hreal(x) -> HReal:
    if isinstance(x, HReal):
        return x
    if isinstance(x, str):
        from .parse import parse_hreal
        return parse_hreal(x)
    return HReal(_to_fraction(x))


def clear_denominators(values) -> list[HReal]:
    """The ``values`` times one common nonzero factor, each result a Puiseux polynomial.

    The factor is the product of the distinct denominators (positive, since
    every denominator has constant term 1) divided by the lowest power of t
    that keeps the results polynomial, so the minimal valuation becomes 0.
    """
    vals = [as_hreal(v) for v in values]
    live = [v for v in vals if v._num]
    if not live:
        return vals
    n = reduce(lambda a, v: a * v._n // gcd(a, v._n), live, 1)
    lifted = [v._lift(n) if v._num else None for v in vals]
    dens: list[Poly] = []
    for item in lifted:
        if item is not None and item[2] not in dens:
            dens.append(item[2])
    kmin = min(item[0] for item in lifted if item is not None)
    out = []
    for item in lifted:
        if item is None:
            out.append(ZERO)
            continue
        k, num, den = item
        for d in dens:
            if d != den:
                num = _pmul(num, d)
        out.append(HReal._make(n, k - kmin, num, _ONE))
    return out


# -- module-level operations ---------------------------------------------------

def add(a, b) -> HReal:
    return as_hreal(a) + as_hreal(b)


def sub(a, b) -> HReal:
    return as_hreal(a) - as_hreal(b)


def mul(a, b) -> HReal:
    return as_hreal(a) * as_hreal(b)


def div(a, b) -> HReal:
    return as_hreal(a) / as_hreal(b)


def neg(a) -> HReal:
    return -as_hreal(a)


def compare(a, b) -> int:
    return as_hreal(a).compare(as_hreal(b))


def valuation(a) -> Fraction:
    return as_hreal(a).valuation()


def magnitude_class(a) -> MagnitudeClass:
    return as_hreal(a).magnitude()


def shadow(a) -> Fraction:
    return as_hreal(a).shadow()


def same_order(a, b) -> bool:
    """Nonzero ``a`` and ``b`` have the same order when ``a/b`` is appreciable."""
    return valuation(a) == valuation(b)


def galaxy_equiv(a, b, eps=1) -> bool:
    """True iff ``(a - b)/eps`` is finite."""
    eps = as_hreal(eps)
    if eps.is_zero():
        raise ValueError("galaxy scale must be nonzero")
    return ((as_hreal(a) - as_hreal(b)) / eps).magnitude().is_finite


# -- canonical printing --------------------------------------------------------

def _format_exponent(e: Fraction) -> str:
    if e == 1:
        return "t"
    return f"t^({e})"


def format_poly(p: PuiseuxPoly) -> str:
    terms = p._terms
    if not terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(terms.items()):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        elif mag == 1:
            body = _format_exponent(e)
        else:
            body = f"{mag}*{_format_exponent(e)}"
        if i == 0:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append((" + " if c > 0 else " - ") + body)
    return "".join(out)


def format_hreal(x: HReal) -> str:
    num = format_poly(x.numerator)
    if x.is_polynomial():
        return num
    return f"({num})/({format_poly(x.denominator)})"


def iter_terms(x: HReal) -> Iterable[tuple[Fraction, Fraction]]:
    return x.numerator.terms.items()
