"""Acceptance checks, one test per criterion.

Each check returns (passed, detail); the outcome lines are printed at the end
of the pytest run (see conftest.py) and by running this file directly.
"""

import random
import time
from fractions import Fraction
from functools import lru_cache
from itertools import product

import pytest

from cartanlimits.classes import LimitClass
from cartanlimits.limits import (
    GAMMA,
    classify_abelian_subalgebra,
    conjugated_cartan_plane,
    duality,
    grassmann_shadow,
    limit_reachable,
    normalizer_dims,
    one_param_path,
    oracle_classify,
)
from cartanlimits.linalg import from_columns, is_zero_matrix, matmul
from cartanlimits.nonarch import ONE, T, ZERO, HReal, as_hreal, parse_hreal, print_hreal, t_power
from cartanlimits.numeric import detect_limit_plane
from cartanlimits.sampling import instances
from cartanlimits.sl2 import Sl2LimitClass, classify_sl2, shadow_fixed_points
from cartanlimits.triangle import classify, link_displacement, normalize, triangle_from_matrix

SEED = 2024
C, F, N1, N2, N3 = LimitClass.C, LimitClass.F, LimitClass.N1, LimitClass.N2, LimitClass.N3
OUTCOMES: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str) -> None:
    OUTCOMES[n] = (ok, detail)
    assert ok, detail


@lru_cache(maxsize=None)
def table_instances():
    return [(row, inst) for row in LimitClass for inst in instances(row, 200, seed=SEED)]


@lru_cache(maxsize=None)
def triangle_results():
    t0 = time.perf_counter()
    out = [classify(normalize(triangle_from_matrix(inst.matrix))) for _, inst in table_instances()]
    return out, time.perf_counter() - t0


# -- 1 ------------------------------------------------------------------------------

def check_1():
    t0 = time.perf_counter()
    dims = normalizer_dims()
    elapsed = time.perf_counter() - t0
    got = tuple(dims[c] for c in (C, F, N1, N2, N3))
    want = (2, 3, 4, 5, 5)
    return got == want and elapsed < 1.0, f"dims {got}, required {want}, {elapsed:.2f}s"


# -- 2 ------------------------------------------------------------------------------

def check_2():
    classes, elapsed = triangle_results()
    rows = [row for row, _ in table_instances()]
    hits = sum(c is r for c, r in zip(classes, rows))
    return hits == 1000 and elapsed < 30, f"{hits}/1000 rows reproduced in {elapsed:.1f}s"


# -- 3 ------------------------------------------------------------------------------

def check_3():
    classes, _ = triangle_results()
    t0 = time.perf_counter()
    oracle = [oracle_classify(inst.matrix) for _, inst in table_instances()]
    elapsed = time.perf_counter() - t0
    agree = sum(a is b for a, b in zip(classes, oracle))
    return agree == 1000 and elapsed < 120, f"{agree}/1000 oracle agreements in {elapsed:.1f}s"


# -- 4 ------------------------------------------------------------------------------

def check_4():
    t0 = time.perf_counter()
    worst, wrong = 0.0, []
    for dst in (C, F, N1, N2, N3):
        est = detect_limit_plane(one_param_path(C, dst).matrix, (1e4, 1e5, 1e6))
        worst = max(worst, est.distance_to(dst.canonical_algebra))
        if est.limit_class is not dst:
            wrong.append(str(dst))
    elapsed = time.perf_counter() - t0
    ok = not wrong and worst < 1e-6 and elapsed < 5
    return ok, f"5 paths from C, max Plücker distance {worst:.1e}, misclassified {wrong or 'none'}, {elapsed:.2f}s"


# -- 5 ------------------------------------------------------------------------------

# reflexive closure of the arrows C -> F -> N1 -> {N2, N3}
REACHABLE = {C: {C, F, N1, N2, N3}, F: {F, N1, N2, N3}, N1: {N1, N2, N3}, N2: {N2}, N3: {N3}}


def check_5():
    t0 = time.perf_counter()
    pairs = list(product(LimitClass, repeat=2))
    matches = sum(limit_reachable(a, b) == (b in REACHABLE[a]) for a, b in pairs)
    automorphism = GAMMA.relabeled(duality).edges == GAMMA.edges
    dims = normalizer_dims()
    explained = 0
    non_edges = [(a, b) for a, b in pairs if b not in REACHABLE[a]]
    for a, b in non_edges:
        if dims[b] < dims[a]:
            explained += 1
        elif {a, b} == {N2, N3} and classify_abelian_subalgebra(a.canonical_algebra) is not \
                classify_abelian_subalgebra(b.canonical_algebra):
            explained += 1
    elapsed = time.perf_counter() - t0
    ok = matches == 25 and automorphism and explained == len(non_edges) and elapsed < 1
    return ok, (f"{matches}/25 pairs, duality automorphism {automorphism}, "
                f"{explained}/{len(non_edges)} non-edges excluded, {elapsed:.2f}s")


# -- 6 ------------------------------------------------------------------------------

def check_6():
    pool = [inst for row in (N1, N2, N3) for inst in instances(row, 40, seed=SEED + 6)]
    pool = [inst for inst in pool if inst.delta.valuation() > 0][:100]
    good = 0
    for inst in pool:
        plane = grassmann_shadow(conjugated_cartan_plane(inst.matrix))
        if all(is_zero_matrix(matmul(matmul(x, x), x)) for x in plane.basis):
            good += 1
    return good == 100 == len(pool), f"{good}/{len(pool)} shadow planes with X^3 = 0"


# -- 7 ------------------------------------------------------------------------------

def check_7():
    hyper = classify_sl2(1) is Sl2LimitClass.HYPERBOLIC
    para = classify_sl2(T) is Sl2LimitClass.PARABOLIC
    cs = (1, -1, Fraction(1, 3), Fraction(-2, 7))
    two = all(shadow_fixed_points(1, Fraction(c) / 4) == 2 for c in cs)
    one = all(shadow_fixed_points(T, c) == 1 for c in cs)
    ok = hyper and para and two and one
    return ok, f"delta=1 hyperbolic {hyper} (2 shadow fixed points {two}); delta=t parabolic {para} (1 fixed point {one})"


# -- 8 ------------------------------------------------------------------------------

def _admissible(rng):
    vd = Fraction(rng.randint(0, 4), rng.choice((1, 2)))
    ve = vd + Fraction(rng.randint(0, 4), rng.choice((1, 2)))
    delta = t_power(vd, Fraction(rng.randint(1, 9), rng.randint(1, 4)))
    epsilon = t_power(ve, Fraction(rng.randint(1, 9), rng.randint(1, 4)))
    if rng.random() < 0.5:
        epsilon = epsilon * (ONE + t_power(Fraction(1, 2), Fraction(rng.randint(1, 5))))
    if epsilon > delta:
        epsilon = delta / 2
    eta = delta * t_power(Fraction(rng.randint(0, 3)), Fraction(rng.randint(1, 5), 3))
    return delta, epsilon, eta


def check_8():
    rng = random.Random(SEED + 8)
    bound_ok = generic_eq = 0
    for _ in range(100):
        delta, epsilon, eta = _admissible(rng)
        # a finite element of G(delta): a = 1 + c*delta keeps (a - 1/a)/delta finite
        while True:
            c = Fraction(rng.randint(1, 9), rng.randint(1, 5)) * rng.choice((1, -1))
            a = ONE + as_hreal(c) * delta
            if a > 0:
                break
        v = link_displacement(delta, epsilon, a).valuation()
        floor = epsilon.valuation() + delta.valuation()
        bound_ok += v >= floor
        generic_eq += v == floor
    ok = bound_ok == 100 and generic_eq == 100
    return ok, f"bound held {bound_ok}/100, equality on {generic_eq}/100 generic samples"


# -- 9 ------------------------------------------------------------------------------

def _appreciable(rng) -> HReal:
    c = Fraction(rng.randint(1, 9), rng.randint(1, 4)) * rng.choice((1, -1))
    return as_hreal(c) + t_power(Fraction(rng.randint(1, 4), 2), rng.randint(-3, 3))


def check_9():
    rng = random.Random(SEED + 9)
    total = same = 0
    for row in LimitClass:
        for inst in instances(row, 20, seed=SEED + 90):
            cols = list(zip(*inst.matrix))
            for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
                scaled = [tuple(_appreciable(rng) * x for x in cols[i]) for i in perm]
                P = from_columns(scaled)
                total += 1
                same += classify(normalize(triangle_from_matrix(P))) is row
    return same == total and total >= 600, f"{same}/{total} relabelled and rescaled instances unchanged"


# -- 10 -----------------------------------------------------------------------------

def _random_element(rng) -> HReal:
    def poly():
        x = ZERO
        for _ in range(rng.randint(1, 4)):
            e = Fraction(rng.randint(-6, 12), rng.choice((1, 2, 3, 4)))
            x = x + t_power(e, Fraction(rng.randint(-20, 20), rng.randint(1, 9)))
        return x

    x = poly()
    if rng.random() < 0.4:
        d = poly()
        if not d.is_zero():
            x = x / d
    return x


def check_10():
    rng = random.Random(SEED + 10)
    good = 0
    for _ in range(500):
        text = print_hreal(_random_element(rng))
        good += print_hreal(parse_hreal(text)) == text
    return good == 500, f"{good}/500 print-parse-print round trips byte-identical"


CHECKS = {i: globals()[f"check_{i}"] for i in range(1, 11)}
TITLES = {
    1: "normalizer dimensions",
    2: "table reproduction",
    3: "oracle equivalence",
    4: "one-parameter paths",
    5: "digraph soundness",
    6: "unipotency",
    7: "SL2 warm-up",
    8: "link-order law",
    9: "relabelling and rescaling invariance",
    10: "parser round trip",
}


@pytest.mark.parametrize("n", list(CHECKS), ids=[f"criterion_{i:02d}" for i in CHECKS])
def test_criterion(n):
    ok, detail = CHECKS[n]()
    record(n, ok, detail)


def summary_lines() -> list[str]:
    return [f"criterion {n:2d} {TITLES[n]:<38} {'PASS' if ok else 'FAIL'}  {detail}"
            for n, (ok, detail) in sorted(OUTCOMES.items())]


if __name__ == "__main__":
    for n, check in CHECKS.items():
        try:
            ok, detail = check()
        except Exception as e:  # report and carry on
            ok, detail = False, f"{type(e).__name__}: {e}"
        OUTCOMES[n] = (ok, detail)
    print("\n".join(summary_lines()))
