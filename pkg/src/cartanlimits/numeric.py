"""Floating point cross-check: evaluate hyperreal conjugators at t = 1/n and watch
the conjugated diagonal algebra converge in the Grassmannian."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

import mpmath
import numpy as np

from .classes import LimitClass
from .limits import classify_abelian_subalgebra

MP_DPS = 60  # working precision for conjugation: vertices may be 1e-18 apart at n = 1e6
PLUCKER_TOL = 1e-6
SNAP_TOL = 1e-8
RANK_GAP = 1e6

_PAIRS = tuple(combinations(range(8), 2))
_H = (np.diag([1.0, -1.0, 0.0]), np.diag([0.0, 1.0, -1.0]))


class NoConvergence(RuntimeError):
    """The Plücker sequence is not Cauchy at the requested tolerance."""


class NearSingularError(ValueError):
    pass


# -- Iwasawa -------------------------------------------------------------------------

def iwasawa(P, cond_max: float = 1e14) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """P = K N A with K orthogonal, N unit upper triangular, A positive diagonal."""
    P = np.asarray(P, dtype=float)
    if not np.all(np.isfinite(P)) or np.linalg.cond(P) > cond_max:
        raise NearSingularError("matrix is singular or too ill-conditioned")
    Q, R = np.linalg.qr(P)
    s = np.sign(np.diag(R))
    K, R = Q * s, s[:, None] * R
    a = np.diag(R)
    return K, R / a, np.diag(a)


# -- sequences -----------------------------------------------------------------------

def evaluate_sequence(P: Sequence[Sequence], n: float) -> np.ndarray:
    """Entrywise value of a hyperreal matrix at t = 1/n."""
    t = 1.0 / n
    out = np.empty((3, 3))
    for i, row in enumerate(P):
        for j, x in enumerate(row):
            out[i, j] = x.evaluate(t) if hasattr(x, "evaluate") else float(x)
    return out


def _mp_rational(q):
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def _mp_value(x, t):
    if not hasattr(x, "evaluate"):
        return _mp_rational(Fraction(x))

    def poly(p):
        return mpmath.fsum(_mp_rational(c) * t ** _mp_rational(e) for e, c in p.terms.items())

    return poly(x.numerator) / poly(x.denominator)


def evaluate_sequence_mp(P: Sequence[Sequence], n: float, dps: int = MP_DPS) -> mpmath.matrix:
    """Same as :func:`evaluate_sequence` at ``dps`` significant digits."""
    with mpmath.workdps(dps):
        t = mpmath.mpf(1) / mpmath.mpf(n)
        return mpmath.matrix([[_mp_value(x, t) for x in row] for row in P])


@dataclass(frozen=True)
class RealMatrixSeq:
    """n -> P_n; the generator may return numpy arrays or mpmath matrices."""

    generator: Callable[[float], object]
    label: str = ""

    @classmethod
    def from_hreal(cls, P, label: str = "", high_precision: bool = True) -> RealMatrixSeq:
        if high_precision:
            return cls(lambda n: evaluate_sequence_mp(P, n), label)
        return cls(lambda n: evaluate_sequence(P, n), label)

    def __call__(self, n: float) -> np.ndarray:
        return self.generator(n)


# -- Plücker vectors -------------------------------------------------------------------

def _coords(x: np.ndarray) -> np.ndarray:
    return np.array([x[0, 1], x[0, 2], x[1, 0], x[1, 2], x[2, 0], x[2, 1], x[0, 0], -x[2, 2]])


def _from_coords(c) -> np.ndarray:
    e12, e13, e21, e23, e31, e32, a, b = c
    return np.array([[a, e12, e13], [e21, b - a, e23], [e31, e32, -b]])


def _adjugate(P: np.ndarray) -> np.ndarray:
    c0, c1, c2 = P[:, 0], P[:, 1], P[:, 2]
    return np.array([np.cross(c1, c2), np.cross(c2, c0), np.cross(c0, c1)])


def conjugated_plucker(P: np.ndarray, source=None) -> np.ndarray:
    """Unit Plücker vector of P L P^-1, L the diagonal algebra unless ``source`` is given.

    Uses the adjugate (rows are cross products of columns) and never forms
    1/det, which would be enormous for the degenerating sequences of interest.
    """
    if isinstance(P, mpmath.matrix):
        return _conjugated_plucker_mp(P, source)
    P = np.asarray(P, dtype=float)
    if source is None:
        # columns may be rescaled freely: diagonal matrices commute with L
        P = P / np.linalg.norm(P, axis=0)
        mats = _H
    else:
        mats = _source_mats(source)
    adj = _adjugate(P)
    basis = np.column_stack([_coords(P @ h @ adj) for h in mats])
    return plucker_of_basis(basis)


def _conjugated_plucker_mp(P: mpmath.matrix, source) -> np.ndarray:
    with mpmath.workdps(MP_DPS):
        mats = [mpmath.matrix(m.tolist()) for m in (_H if source is None else _source_mats(source))]
        cols = [[P[i, j] for i in range(3)] for j in range(3)]

        def cross(u, v):
            return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]

        adj = mpmath.matrix([cross(cols[1], cols[2]), cross(cols[2], cols[0]), cross(cols[0], cols[1])])
        vecs = []
        for h in mats:
            x = P * h * adj
            vecs.append([x[0, 1], x[0, 2], x[1, 0], x[1, 2], x[2, 0], x[2, 1], x[0, 0], -x[2, 2]])
        # Gram-Schmidt before leaving high precision: the two vectors may be nearly parallel
        u, w = vecs
        nu = mpmath.sqrt(mpmath.fsum(c * c for c in u))
        u = [c / nu for c in u]
        proj = mpmath.fsum(a * b for a, b in zip(u, w))
        w = [b - proj * a for a, b in zip(u, w)]
        nw = mpmath.sqrt(mpmath.fsum(c * c for c in w))
        w = [c / nw for c in w]
        v = [u[i] * w[j] - u[j] * w[i] for i, j in _PAIRS]
        return np.array([float(c) for c in v])


def conjugated_cartan_plucker(P: np.ndarray) -> np.ndarray:
    return conjugated_plucker(P)


def _source_mats(source):
    plane = source.canonical_algebra if isinstance(source, LimitClass) else source
    return tuple(np.array([[float(x) for x in row] for row in m]) for m in plane.basis)


def plucker_of_basis(basis: np.ndarray) -> np.ndarray:
    q, _ = np.linalg.qr(basis)
    v = np.array([q[i, 0] * q[j, 1] - q[j, 0] * q[i, 1] for i, j in _PAIRS])
    return v / np.linalg.norm(v)


def plane_plucker(plane) -> np.ndarray:
    """Unit Plücker vector of an exact plane."""
    return plucker_of_basis(np.column_stack([np.array([float(c) for c in v]) for v in plane.coords()]))


def plucker_distance(u: np.ndarray, v: np.ndarray) -> float:
    """sin of the angle between two lines in Plücker space (0 for equal planes)."""
    u = np.asarray(u, dtype=float) / np.linalg.norm(u)
    v = np.asarray(v, dtype=float) / np.linalg.norm(v)
    # |u - (u.v) v| keeps full relative accuracy for nearly equal planes, unlike sqrt(1 - c^2)
    return float(min(1.0, np.linalg.norm(u - np.dot(u, v) * v)))


def _align(v: np.ndarray, ref: np.ndarray) -> np.ndarray:
    return -v if np.dot(v, ref) < 0 else v


# -- classification with tolerances --------------------------------------------------

class ToleranceTests:
    """Drop-in replacement for exact zero/sign/rank decisions."""

    def __init__(self, zero_tol: float = 1e-7, rank_gap: float = RANK_GAP):
        self.zero_tol = zero_tol
        self.rank_gap = rank_gap

    def is_zero(self, x) -> bool:
        return abs(float(x)) <= self.zero_tol

    def sign(self, x) -> int:
        x = float(x)
        return 0 if abs(x) <= self.zero_tol else (1 if x > 0 else -1)

    def rank(self, rows) -> int:
        m = np.array(rows, dtype=float)
        s = np.linalg.svd(m, compute_uv=False)
        if s.size == 0 or s[0] <= self.zero_tol:
            return 0
        return int(np.sum(s > s[0] / self.rank_gap))

    def kernel_dim(self, rows, ncols) -> int:
        return ncols - self.rank(rows)


@dataclass(frozen=True)
class NumericPlane:
    """A plane of real traceless matrices given by an (approximately) orthonormal basis."""

    a: np.ndarray
    b: np.ndarray

    @property
    def basis(self):
        return tuple(tuple(tuple(float(x) for x in row) for row in m) for m in (self.a, self.b))

    def coords(self):
        return _coords(self.a), _coords(self.b)

    def plucker(self) -> np.ndarray:
        return plucker_of_basis(np.column_stack(self.coords()))


def plane_from_plucker_numeric(v: np.ndarray) -> NumericPlane:
    """Contract the bivector with the dual vectors of its largest coordinate."""
    v = np.asarray(v, dtype=float)
    k = int(np.argmax(np.abs(v)))
    i, j = _PAIRS[k]

    def p(a, b):
        if a == b:
            return 0.0
        return v[_PAIRS.index((a, b))] if a < b else -v[_PAIRS.index((b, a))]

    u = np.array([p(i, m) for m in range(8)])
    w = np.array([p(j, m) for m in range(8)])
    q, _ = np.linalg.qr(np.column_stack([u, w]))
    return NumericPlane(_from_coords(q[:, 0]), _from_coords(q[:, 1]))


def classify_numeric_plane(plane: NumericPlane, tests: ToleranceTests | None = None) -> LimitClass:
    return classify_abelian_subalgebra(plane, tests or ToleranceTests())


def snap(v: np.ndarray, tol: float = SNAP_TOL) -> np.ndarray:
    v = np.where(np.abs(v) < tol, 0.0, v)
    return v / np.linalg.norm(v)


# -- limit detection -------------------------------------------------------------------

@dataclass
class LimitEstimate:
    plucker: np.ndarray
    plane: NumericPlane
    limit_class: LimitClass
    schedule: list
    steps: list = field(default_factory=list)  # distances between consecutive schedule points
    ratio: float = 0.0
    error_bound: float = 0.0

    def distance_to(self, plane) -> float:
        return plucker_distance(self.plucker, plane_plucker(plane))


DEFAULT_SCHEDULE = (1e4, 1e5, 1e6)


def _neville_at_zero(xs: Sequence[float], ys: Sequence[np.ndarray]) -> np.ndarray:
    """Value at x = 0 of the interpolating polynomial through (xs, ys)."""
    p = [np.array(y, dtype=float) for y in ys]
    m = len(xs)
    for k in range(1, m):
        for i in range(m - k):
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i])
    return p[0]


def detect_limit_plane(seq, n_schedule: Sequence[float] = DEFAULT_SCHEDULE,
                       tol: float = PLUCKER_TOL, source=None, exponent_denominator: int = 1) -> LimitEstimate:
    """Estimate lim Ad(P_n)(diagonal algebra) and classify it.

    The Plücker vectors along the schedule must form a Cauchy sequence
    (strictly shrinking steps).  Their limit is extrapolated by polynomial
    interpolation in s = n**(-1/exponent_denominator) evaluated at s = 0; the
    error estimate is the change when the earliest schedule point is dropped.
    ``source`` (a LimitClass or exact plane) replaces the diagonal algebra.
    """
    sched = [float(n) for n in n_schedule]
    if len(sched) < 3 or any(b <= a for a, b in zip(sched, sched[1:])):
        raise ValueError("schedule must be increasing with at least 3 points")
    if not isinstance(seq, RealMatrixSeq):
        seq = RealMatrixSeq(seq) if callable(seq) else RealMatrixSeq.from_hreal(seq)

    vs = []
    for n in sched:
        v = conjugated_plucker(seq(n), source)
        vs.append(_align(v, vs[-1]) if vs else v)
    steps = [plucker_distance(a, b) for a, b in zip(vs, vs[1:])]
    if any(b > a for a, b in zip(steps, steps[1:])) or (steps[-1] > 0 and steps[-2] == 0):
        raise NoConvergence(f"Plücker steps do not decrease: {steps}")
    rho = steps[-1] / steps[-2] if steps[-2] else 0.0

    if steps[-1] == 0.0:
        est, bound = vs[-1], 0.0
    else:
        xs = [n ** (-1.0 / exponent_denominator) for n in sched]
        est = _neville_at_zero(xs, vs)
        coarse = _neville_at_zero(xs[1:], vs[1:])
        bound = plucker_distance(est, coarse)
    if bound > tol:
        raise NoConvergence(f"extrapolation error estimate {bound:.3g} exceeds {tol:g} (steps {steps})")

    # coordinates below the estimated extrapolation error cannot be told apart from 0
    floor = max(SNAP_TOL, 10 * bound)
    est = snap(est / np.linalg.norm(est), floor)
    plane = plane_from_plucker_numeric(est)
    tests = ToleranceTests(zero_tol=max(1e-7, 10 * floor))
    return LimitEstimate(est, plane, classify_numeric_plane(plane, tests), sched, steps, rho, bound)


def iwasawa_mp(P: mpmath.matrix, dps: int = MP_DPS):
    """Iwasawa factors at ``dps`` digits (mpmath Householder QR, signs fixed)."""
    with mpmath.workdps(dps):
        Q, R = mpmath.qr(P)
        for i in range(3):
            if R[i, i] < 0:
                for j in range(3):
                    R[i, j] = -R[i, j]
                    Q[j, i] = -Q[j, i]
        A = mpmath.diag([R[i, i] for i in range(3)])
        N = R * mpmath.inverse(A)
        return Q, N, A


def detect_for_upper_factor(P_hreal, n_schedule: Sequence[float] = DEFAULT_SCHEDULE) -> LimitEstimate:
    """The same detection run on the N A part of each K_n N_n A_n = rot P_n.

    The fixed rotation makes K_n nontrivial; the limits for P_n and for
    N_n A_n must be conjugate.
    """
    with mpmath.workdps(MP_DPS):
        rot = mpmath.matrix(_fixed_rotation().tolist())

    def gen(n):
        with mpmath.workdps(MP_DPS):
            _, N, A = iwasawa_mp(rot * evaluate_sequence_mp(P_hreal, n))
            return N * A
    return detect_limit_plane(RealMatrixSeq(gen), n_schedule)


def _fixed_rotation() -> np.ndarray:
    q, _ = np.linalg.qr(np.array([[2.0, -1.0, 0.5], [1.0, 3.0, -1.0], [0.0, 1.0, 2.0]]))
    return q
