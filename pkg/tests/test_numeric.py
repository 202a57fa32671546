import math
import time

import numpy as np
import pytest

from cartanlimits.classes import LimitClass
from cartanlimits.limits import full_classify, one_param_path
from cartanlimits.nonarch import parse_hreal
from cartanlimits.numeric import (
    NearSingularError,
    NoConvergence,
    RealMatrixSeq,
    ToleranceTests,
    classify_numeric_plane,
    detect_for_upper_factor,
    detect_limit_plane,
    evaluate_sequence,
    evaluate_sequence_mp,
    iwasawa,
    plane_plucker,
    plane_from_plucker_numeric,
    plucker_distance,
)
from cartanlimits.sampling import instances
from cartanlimits.triangle import eq1_matrix

h = parse_hreal


def gram_schmidt_iwasawa(P):
    """Textbook route: orthonormalize the columns in order."""
    P = np.asarray(P, dtype=float)
    K = np.zeros((3, 3))
    R = np.zeros((3, 3))
    for j in range(3):
        v = P[:, j].copy()
        for i in range(j):
            R[i, j] = K[:, i] @ P[:, j]
            v -= R[i, j] * K[:, i]
        R[j, j] = np.linalg.norm(v)
        K[:, j] = v / R[j, j]
    A = np.diag(np.diag(R))
    return K, R / np.diag(R), A


@pytest.mark.parametrize("seed", range(5))
def test_iwasawa_matches_gram_schmidt(seed):
    rng = np.random.default_rng(seed)
    P = rng.normal(size=(3, 3))
    K, N, A = iwasawa(P)
    K2, N2, A2 = gram_schmidt_iwasawa(P)
    assert np.allclose(K, K2) and np.allclose(N, N2) and np.allclose(A, A2)
    assert np.allclose(K @ N @ A, P)
    assert np.allclose(K.T @ K, np.eye(3))
    assert np.allclose(np.diag(N), 1) and np.allclose(np.tril(N, -1), 0)
    assert np.all(np.diag(A) > 0)


def test_iwasawa_rejects_singular():
    with pytest.raises(NearSingularError):
        iwasawa(np.ones((3, 3)))


def test_evaluate_sequence():
    P = eq1_matrix(h("t"), h("t^2 + 1"), h("t^(1/2)"))
    m = evaluate_sequence(P, 100.0)
    assert m[1, 1] == pytest.approx(0.01)
    assert m[1, 2] == pytest.approx(1.0001)
    assert m[2, 2] == pytest.approx(0.1)
    mp = evaluate_sequence_mp(P, 1e6)
    assert float(mp[2, 2]) == pytest.approx(1e-3)


def test_constant_identity_is_cartan():
    seq = RealMatrixSeq(lambda n: np.eye(3), "identity")
    est = detect_limit_plane(seq)
    assert est.limit_class is LimitClass.C
    assert est.distance_to(LimitClass.C.canonical_algebra) < 1e-12


def test_c_to_f_path_on_sparse_schedule():
    fam = one_param_path(LimitClass.C, LimitClass.F)
    est = detect_limit_plane(fam.matrix, (1e2, 1e4, 1e6))
    assert est.limit_class is LimitClass.F
    assert est.distance_to(LimitClass.F.canonical_algebra) < 1e-6


def test_equal_offset_example_agrees_with_exact():
    P = eq1_matrix(h("t"), h("t"), h("t^3"))
    est = detect_limit_plane(P)
    assert est.limit_class is full_classify(P).triangle_class


def test_no_convergence_for_rotating_conjugators():
    def rot(n):
        c, s = math.cos(n), math.sin(n)
        return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])

    with pytest.raises(NoConvergence):
        detect_limit_plane(RealMatrixSeq(rot), (1e4, 2e4, 3e4))


def test_schedule_validation():
    with pytest.raises(ValueError):
        detect_limit_plane(eq1_matrix(1, 0, 1), (1e4, 1e3, 1e5))


@pytest.mark.parametrize("cls", list(LimitClass))
def test_numeric_plane_round_trip(cls):
    v = plane_plucker(cls.canonical_algebra)
    plane = plane_from_plucker_numeric(v)
    assert plucker_distance(plane.plucker(), v) < 1e-12
    assert classify_numeric_plane(plane) is cls


def test_tolerance_tests():
    t = ToleranceTests(zero_tol=1e-9)
    assert t.is_zero(1e-10) and not t.is_zero(1e-8)
    assert t.sign(-1e-10) == 0 and t.sign(-1e-3) == -1
    assert t.rank([[1, 0], [0, 1e-12]]) == 1


@pytest.mark.parametrize("row", list(LimitClass))
def test_numeric_matches_exact(row):
    for inst in instances(row, 8, seed=21, numeric_safe=True):
        exact = full_classify(inst.matrix).oracle_class
        assert detect_limit_plane(inst.matrix).limit_class is exact
        assert detect_for_upper_factor(inst.matrix).limit_class is exact


@pytest.mark.parametrize("src", [LimitClass.C, LimitClass.F, LimitClass.N1])
def test_paths_numeric(src):
    for dst in LimitClass:
        try:
            fam = one_param_path(src, dst)
        except ValueError:
            continue
        est = detect_limit_plane(fam.matrix, source=src)
        assert est.limit_class is dst
        assert est.distance_to(fam.limit_plane()) < 1e-6


def test_timing_is_modest():
    t0 = time.perf_counter()
    detect_limit_plane(eq1_matrix(h("t"), h("t^2"), h("t^3")))
    assert time.perf_counter() - t0 < 2.0
