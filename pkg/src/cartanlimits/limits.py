"""Limits of the Cartan algebra: the Grassmannian oracle, the subalgebra classifier,
characteristic configurations, duality, the digraph of limits and explicit paths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classes import ConfigClass, LimitClass
from .linalg import (
    Matrix,
    Plane2,
    SingularMatrixError,
    adjugate,
    bracket,
    columns,
    from_columns,
    det3,
    identity,
    kernel,
    matmul,
    mscale,
    msub,
    normalizer_dimension,
    plane_from_plucker,
    rank,
    sl3_coords,
    trace,
)
from .nonarch import ONE, T, as_hreal, clear_denominators
from . import triangle as _triangle


class NotAbelianError(ValueError):
    pass


class UnclassifiableError(ValueError):
    """A 2-dimensional abelian algebra that is conjugate to nothing in the list of limits."""


class OracleDisagreement(AssertionError):
    pass


# -- the oracle ------------------------------------------------------------------

def conjugated_plane(P: Matrix, plane: Plane2) -> Plane2:
    """P * plane * P^-1, using the adjugate (the 1/det factor only rescales the plane)."""
    if det3(P) == 0:
        raise SingularMatrixError("conjugator is singular")
    adj = adjugate(P)
    return Plane2(*(matmul(matmul(P, x), adj) for x in plane.basis))


def integral_columns(P: Matrix) -> Matrix:
    """Rescale each column to Puiseux polynomials.  Right multiplication by a
    diagonal matrix commutes with the Cartan algebra, so the conjugate is unchanged."""
    return from_columns([clear_denominators(c) for c in columns(P)])


def conjugated_cartan_plane(P: Matrix) -> Plane2:
    return conjugated_plane(integral_columns(P), LimitClass.C.canonical_algebra)


def plucker_shadow(v: Sequence) -> tuple:
    """Limit of the projective Plücker vector: rescale by a minimal-valuation entry, take shadows."""
    vals = [as_hreal(c) for c in v]
    nonzero = [c for c in vals if not c.is_zero()]
    if not nonzero:
        raise ValueError("zero Plücker vector")
    vmin = min(c.valuation() for c in nonzero)
    lead = next(c.leading_coefficient() for c in nonzero if c.valuation() == vmin)
    return tuple(
        c.leading_coefficient() / lead if not c.is_zero() and c.valuation() == vmin else Fraction(0)
        for c in vals
    )


def grassmann_shadow(plane: Plane2) -> Plane2:
    """Limit of ``plane`` in the Grassmannian of 2-planes, as a rational plane."""
    return plane_from_plucker(plucker_shadow(plane.plucker()))


def oracle_classify(P: Matrix) -> LimitClass:
    return classify_abelian_subalgebra(grassmann_shadow(conjugated_cartan_plane(P)))


# -- classifying 2-dimensional abelian subalgebras ---------------------------------

class ExactTests:
    """Zero/sign/rank decisions in exact arithmetic."""

    def is_zero(self, x) -> bool:
        return x == 0

    def sign(self, x) -> int:
        return (x > 0) - (x < 0)

    def rank(self, rows) -> int:
        return rank(rows)

    def kernel_dim(self, rows, ncols) -> int:
        return len(kernel(rows, ncols))


def _coords(x: Matrix) -> tuple:
    return (x[0][1], x[0][2], x[1][0], x[1][2], x[2][0], x[2][1], x[0][0], -x[2][2])


def _all_zero(m: Matrix, tests) -> bool:
    return all(tests.is_zero(x) for row in m for x in row)


def _cubic_invariants(a: Matrix, b: Matrix):
    a2, b2, ab = matmul(a, a), matmul(b, b), matmul(a, b)
    quad = (trace(a2), trace(ab), trace(b2))
    cubic = (trace(matmul(a2, a)), trace(matmul(a2, b)), trace(matmul(ab, b)), trace(matmul(b2, b)))
    return quad, cubic


def classify_abelian_subalgebra(plane: Plane2, tests=None) -> LimitClass:
    """Conjugacy class of a 2-dimensional abelian subalgebra of sl3(R).

    Nilpotency of the whole plane is the identical vanishing of tr(X^2) and
    tr(X^3) as forms in the plane coordinates.  Nilpotent planes split by
    whether some product XY is nonzero (N1) and by the common kernel (N2, N3).
    Otherwise the trace form tr(X^2) is positive definite for C and
    degenerate, with a nilpotent null direction, for F.
    """
    tests = tests or ExactTests()
    a, b = plane.basis
    if not (tests.is_zero(trace(a)) and tests.is_zero(trace(b))):
        raise ValueError("matrices are not traceless")
    if tests.rank([_coords(a), _coords(b)]) != 2:
        raise ValueError("plane is not 2-dimensional")
    if not _all_zero(bracket(a, b), tests):
        raise NotAbelianError("plane is not abelian")

    (al, be, ga), cubic = _cubic_invariants(a, b)
    if all(tests.is_zero(c) for c in (al, be, ga, *cubic)):
        if not all(_all_zero(m, tests) for m in (matmul(a, a), matmul(a, b), matmul(b, b))):
            return LimitClass.N1
        k = tests.kernel_dim([*a, *b], 3)
        if k == 1:
            return LimitClass.N2
        if k == 2:
            return LimitClass.N3
        raise UnclassifiableError(f"nilpotent plane with common kernel of dimension {k}")

    disc = be * be - al * ga
    if tests.sign(disc) < 0 and tests.sign(al) > 0:
        return LimitClass.C
    if tests.is_zero(disc):
        # null direction of the trace form
        if not tests.is_zero(al):
            x = msub(mscale(al, b), mscale(be, a))
        else:
            x = a
        if not _all_zero(x, tests) and _all_zero(matmul(matmul(x, x), x), tests):
            return LimitClass.F
    raise UnclassifiableError("abelian plane is not conjugate to any of C, F, N1, N2, N3")


# -- characteristic configurations -----------------------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0] if n else [1]


def rational_eigenvalues(m: Matrix) -> list[Fraction]:
    """Distinct rational eigenvalues of a rational 3x3 matrix (rational root theorem)."""
    tr = trace(m)
    c1 = (tr * tr - trace(matmul(m, m))) / 2
    coeffs = [Fraction(1), -tr, c1, -det3(m)]  # lambda^3 - tr lambda^2 + c1 lambda - det
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // _gcd(scale, c.denominator)
    ints = [int(c * scale) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    roots = {Fraction(0)} if len(ints) < 4 else set()
    lead, const = ints[0], ints[-1]
    for p in _divisors(const):
        for q in _divisors(lead):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if _horner(ints, r) == 0:
                    roots.add(r)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _horner(coeffs, x):
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def joint_eigenspaces(plane: Plane2) -> list[list[tuple]]:
    """Bases of the nonzero joint eigenspaces of a commuting pair with rational spectra."""
    a, b = plane.basis
    out = []
    for la in rational_eigenvalues(a):
        for mu in rational_eigenvalues(b):
            rows = [*msub(a, mscale(la, identity())), *msub(b, mscale(mu, identity()))]
            k = kernel(rows, 3)
            if k:
                out.append(k)
    return out


_DESCRIPTIONS = {
    ConfigClass.TC: "three fixed points in general position and the three lines joining them",
    ConfigClass.TF: "two fixed points, the line through them, and a second invariant line through one of them",
    ConfigClass.TN1: "one fixed point on one invariant line (a flag)",
    ConfigClass.TN2: "one fixed point and every line through it (invariant pencil)",
    ConfigClass.TN3: "one line fixed pointwise and every point on it",
    ConfigClass.TN2p: "one point and two lines through it",
    ConfigClass.TN3p: "two points on one line",
}


@dataclass(frozen=True)
class Configuration:
    config: ConfigClass
    fixed_points: int
    invariant_lines: int
    description: str


def _count(spaces) -> int:
    # a 2-dimensional eigenspace is a whole line of fixed points (or a whole pencil);
    # as a configuration it contributes the maximum of three elements
    return sum(1 if len(s) == 1 else 3 for s in spaces)


def characteristic_configuration(cls: LimitClass) -> Configuration:
    alg = cls.canonical_algebra
    points = _count(joint_eigenspaces(alg))
    lines = _count(joint_eigenspaces(alg.dual()))
    config = ConfigClass.from_counts(min(points, 3), min(lines, 3))
    return Configuration(config, points, lines, _DESCRIPTIONS[config])


def describe_config(config: ConfigClass) -> str:
    return _DESCRIPTIONS[config]


# -- duality and the digraph -------------------------------------------------------

def duality(cls: LimitClass) -> LimitClass:
    """Class of the image of the canonical algebra under X -> -X^T."""
    return classify_abelian_subalgebra(cls.canonical_algebra.dual())


EDGES: tuple[tuple[LimitClass, LimitClass], ...] = (
    (LimitClass.C, LimitClass.F),
    (LimitClass.F, LimitClass.N1),
    (LimitClass.N1, LimitClass.N2),
    (LimitClass.N1, LimitClass.N3),
)


class Digraph:
    def __init__(self, edges=EDGES):
        self.vertices = tuple(LimitClass)
        self.edges = frozenset(edges)
        self._succ = {v: [w for (u, w) in edges if u is v] for v in self.vertices}

    def successors(self, v: LimitClass) -> list[LimitClass]:
        return list(self._succ[v])

    def path(self, src: LimitClass, dst: LimitClass, proper: bool = False) -> list[LimitClass] | None:
        """Shortest directed path from src to dst, or None.  The trivial path counts unless ``proper``."""
        if src is dst and not proper:
            return [src]
        prev = {}
        queue = deque([src])
        seen = set() if proper else {src}
        while queue:
            u = queue.popleft()
            for w in self._succ[u]:
                if w in seen:
                    continue
                seen.add(w)
                prev[w] = u
                if w is dst:
                    out = [w]
                    while out[-1] is not src or len(out) == 1:
                        out.append(prev[out[-1]])
                    return out[::-1]
                queue.append(w)
        return None

    def reachable(self, src: LimitClass, dst: LimitClass, proper: bool = False) -> bool:
        return self.path(src, dst, proper) is not None

    def relabeled(self, f) -> Digraph:
        return Digraph(tuple((f(u), f(w)) for u, w in self.edges))

    def is_acyclic(self) -> bool:
        return all(not self.reachable(v, v, proper=True) for v in self.vertices)


GAMMA = Digraph()


def limit_reachable(src: LimitClass, dst: LimitClass, proper: bool = False) -> bool:
    return GAMMA.reachable(src, dst, proper)


def normalizer_dims() -> dict[LimitClass, int]:
    return {c: normalizer_dimension(c.canonical_algebra) for c in LimitClass}


# -- one-parameter paths -------------------------------------------------------------

def _m(rows) -> Matrix:
    return tuple(tuple(as_hreal(x) for x in r) for r in rows)


_N = ONE / T  # n = 1/t
_EDGE_PATHS: dict[tuple[LimitClass, LimitClass], Matrix] = {
    (LimitClass.C, LimitClass.F): _m([[1, _N, 0], [0, 1, 0], [0, 0, 1]]),
    (LimitClass.F, LimitClass.N1): _m([[1, _N, _N * _N / 2], [0, 1, _N], [0, 0, 1]]),
    # diag(1, 1, 1/n) would send N1 to N3; stretching the first coordinate is what gives N2
    (LimitClass.N1, LimitClass.N2): _m([[_N, 0, 0], [0, 1, 0], [0, 0, 1]]),
    (LimitClass.N1, LimitClass.N3): _m([[T, 0, 0], [0, 1, 0], [0, 0, 1]]),
}

_DIRECT_PATHS: dict[tuple[LimitClass, LimitClass], Matrix] = {
    (LimitClass.C, LimitClass.N1): _m([[1, _N, _N * _N / 2], [0, 1, _N], [0, 0, 1]]),
    (LimitClass.C, LimitClass.N2): _m([[1, _N, _N], [0, 1, 0], [0, 0, 1]]),
    (LimitClass.C, LimitClass.N3): _m([[1, 0, _N], [0, 1, _N], [0, 0, 1]]),
    (LimitClass.F, LimitClass.N2): _m([[1, 0, _N], [0, 1, 0], [0, 0, 1]]),
    (LimitClass.F, LimitClass.N3): _m([[1, 0, 0], [0, 1, _N], [0, 0, 1]]),
}


@dataclass(frozen=True)
class PathFamily:
    """Conjugators P(n) written over the field with t = 1/n."""

    source: LimitClass
    target: LimitClass
    matrix: Matrix
    route: tuple[LimitClass, ...]

    def at(self, n: float):
        import numpy as np

        t = 1.0 / n
        return np.array([[float(x.evaluate(t)) for x in row] for row in self.matrix])

    def limit_plane(self) -> Plane2:
        return grassmann_shadow(conjugated_plane(self.matrix, self.source.canonical_algebra))

    def limit_class(self) -> LimitClass:
        return classify_abelian_subalgebra(self.limit_plane())


def _compose(first: Matrix, then: Matrix) -> Matrix:
    # conjugating by `first` and then by `then`
    return matmul(then, first)


def one_param_path(src: LimitClass, dst: LimitClass) -> PathFamily:
    """Explicit conjugators P(n) with P(n) src P(n)^-1 converging to a conjugate of dst."""
    route = GAMMA.path(src, dst)
    if route is None:
        raise ValueError(f"{dst} is not a limit of {src}")
    if src is dst:
        return PathFamily(src, dst, _m(identity()), (src,))
    direct = _DIRECT_PATHS.get((src, dst)) or _EDGE_PATHS.get((src, dst))
    if direct is not None:
        return PathFamily(src, dst, direct, tuple(route))
    # longer routes (F -> N1 -> N2 and so on): the path to the last vertex, then the last edge
    head = one_param_path(src, route[-2])
    return PathFamily(src, dst, _compose(head.matrix, _EDGE_PATHS[(route[-2], dst)]), tuple(route))


# -- both pipelines --------------------------------------------------------------------

@dataclass(frozen=True)
class FullReport:
    triangle_class: LimitClass
    oracle_class: LimitClass
    normalized: _triangle.NormalizedTriangle
    shadow_plane: Plane2

    @property
    def agree(self) -> bool:
        return self.triangle_class is self.oracle_class


def full_classify(P: Matrix, strict: bool = False) -> FullReport:
    P = tuple(tuple(as_hreal(x) for x in row) for row in P)
    norm = _triangle.normalize(_triangle.triangle_from_matrix(P))
    tri = _triangle.classify(norm)
    plane = grassmann_shadow(conjugated_cartan_plane(P))
    report = FullReport(tri, classify_abelian_subalgebra(plane), norm, plane)
    if strict and not report.agree:
        raise OracleDisagreement(f"triangle says {tri}, oracle says {report.oracle_class}")
    return report


__all__ = [
    "LimitClass", "ConfigClass", "Configuration", "Digraph", "GAMMA", "EDGES", "PathFamily",
    "FullReport", "ExactTests", "NotAbelianError", "UnclassifiableError", "OracleDisagreement",
    "conjugated_plane", "conjugated_cartan_plane", "plucker_shadow", "grassmann_shadow",
    "oracle_classify", "classify_abelian_subalgebra", "rational_eigenvalues", "joint_eigenspaces",
    "characteristic_configuration", "describe_config", "duality", "limit_reachable",
    "normalizer_dims", "one_param_path", "full_classify",
]
