import random
from fractions import Fraction
from itertools import product

import pytest

from cartanlimits.classes import ConfigClass, LimitClass
from cartanlimits.limits import (
    EDGES,
    GAMMA,
    NotAbelianError,
    OracleDisagreement,
    UnclassifiableError,
    characteristic_configuration,
    classify_abelian_subalgebra,
    conjugated_cartan_plane,
    duality,
    full_classify,
    grassmann_shadow,
    limit_reachable,
    normalizer_dims,
    one_param_path,
    oracle_classify,
    plucker_shadow,
)
from cartanlimits.linalg import H1, Plane2, diag, elementary, is_zero_matrix, mat, matmul, plucker
from cartanlimits.nonarch import parse_hreal
from cartanlimits.sampling import instances, random_rational_matrix
from cartanlimits.triangle import eq1_matrix

C, F, N1, N2, N3 = LimitClass.C, LimitClass.F, LimitClass.N1, LimitClass.N2, LimitClass.N3
h = parse_hreal


@pytest.mark.parametrize("cls", list(LimitClass))
def test_canonical_algebras(cls):
    plane = cls.canonical_algebra
    assert plane.is_abelian()
    assert classify_abelian_subalgebra(plane) is cls


@pytest.mark.parametrize("cls", list(LimitClass))
def test_classifier_is_conjugation_invariant(cls):
    rng = random.Random(f"conj-{cls.value}")
    for _ in range(8):
        g = random_rational_matrix(rng)
        assert classify_abelian_subalgebra(cls.canonical_algebra.conjugated(g)) is cls


def test_classifier_rejects():
    with pytest.raises(NotAbelianError):
        classify_abelian_subalgebra(Plane2(H1, elementary(1, 2)))
    rotation = mat([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    with pytest.raises(UnclassifiableError):
        classify_abelian_subalgebra(Plane2(diag(1, 1, -2), rotation))


def test_other_nilpotent_plane_is_n3_type():
    # span(E12, E32) kills a plane and maps into it
    assert classify_abelian_subalgebra(Plane2(elementary(1, 2), elementary(3, 2))) is N3


def test_grassmann_shadow_example():
    P = eq1_matrix(h("t"), h("t^2"), h("t^3"))
    plane = conjugated_cartan_plane(P)
    limit = grassmann_shadow(plane)
    assert limit.is_abelian()
    assert classify_abelian_subalgebra(limit) is N1
    assert oracle_classify(P) is N1
    # the shadow of a Plücker vector keeps only its leading coordinates
    v = plucker_shadow([h("t"), h("2*t"), h("t^2")] + [h("0")] * 25)
    assert v[:3] == (1, 2, 0)


def test_identity_conjugator_gives_cartan():
    P = eq1_matrix(1, 0, 1)
    assert grassmann_shadow(conjugated_cartan_plane(((1, 0, 0), (0, 1, 0), (0, 0, 1)))).same_plane(C.canonical_algebra)
    assert oracle_classify(P) is C


EXPECTED_CONFIG = {C: ConfigClass.TC, F: ConfigClass.TF, N1: ConfigClass.TN1, N2: ConfigClass.TN2, N3: ConfigClass.TN3}


@pytest.mark.parametrize("cls", list(LimitClass))
def test_characteristic_configuration(cls):
    conf = characteristic_configuration(cls)
    assert conf.config is EXPECTED_CONFIG[cls]
    assert conf.description


def test_duality():
    assert duality(N2) is N3 and duality(N3) is N2
    for c in (C, F, N1):
        assert duality(c) is c
    # configurations dualize the same way
    for c in LimitClass:
        assert characteristic_configuration(duality(c)).config is characteristic_configuration(c).config.dual()


# -- the digraph -------------------------------------------------------------------------------

REACHABLE = {
    C: {C, F, N1, N2, N3},
    F: {F, N1, N2, N3},
    N1: {N1, N2, N3},
    N2: {N2},
    N3: {N3},
}


def test_reachability_table():
    for a, b in product(LimitClass, repeat=2):
        assert limit_reachable(a, b) == (b in REACHABLE[a]), (a, b)


def test_paths():
    assert GAMMA.path(C, N3) == [C, F, N1, N3]
    assert GAMMA.path(N2, N3) is None
    assert GAMMA.path(F, F) == [F]
    assert GAMMA.path(F, F, proper=True) is None
    assert GAMMA.is_acyclic()


def test_duality_is_a_digraph_automorphism():
    assert GAMMA.relabeled(duality).edges == GAMMA.edges


def test_non_edges_forbidden_by_normalizers():
    dims = normalizer_dims()
    for a, b in product(LimitClass, repeat=2):
        if b in REACHABLE[a]:
            continue
        if {a, b} == {N2, N3}:
            # equal normalizer dimension, told apart by the classifier
            assert dims[a] == dims[b]
            assert classify_abelian_subalgebra(a.canonical_algebra) is not classify_abelian_subalgebra(b.canonical_algebra)
        else:
            assert dims[b] < dims[a], (a, b)


# -- one-parameter paths ---------------------------------------------------------------------------

@pytest.mark.parametrize("src, dst", [(a, b) for a in LimitClass for b in REACHABLE[a]])
def test_one_param_path_limits(src, dst):
    fam = one_param_path(src, dst)
    assert fam.limit_class() is dst
    assert fam.route[0] is src and fam.route[-1] is dst


@pytest.mark.parametrize("dst", [C, F, N1, N2, N3])
def test_paths_from_cartan_hit_canonical_algebras(dst):
    assert one_param_path(C, dst).limit_plane().same_plane(dst.canonical_algebra)


@pytest.mark.parametrize("edge", EDGES)
def test_edge_paths(edge):
    src, dst = edge
    assert one_param_path(src, dst).limit_class() is dst


def test_unreachable_path_raises():
    with pytest.raises(ValueError):
        one_param_path(N2, N3)


def test_path_matrix_evaluates():
    fam = one_param_path(C, F)
    m = fam.at(10.0)
    assert m[0][1] == pytest.approx(10.0)


# -- both pipelines -----------------------------------------------------------------------------

@pytest.mark.parametrize("row", list(LimitClass))
def test_full_classify_agrees(row):
    for inst in instances(row, 20, seed=77):
        r = full_classify(inst.matrix, strict=True)
        assert r.triangle_class is row
        assert r.agree


def test_strict_raises_on_disagreement(monkeypatch):
    import cartanlimits.limits as lim

    monkeypatch.setattr(lim, "classify_abelian_subalgebra", lambda plane, tests=None: N3)
    with pytest.raises(OracleDisagreement):
        lim.full_classify(eq1_matrix(1, 0, 1), strict=True)


@pytest.mark.parametrize("row", [N1, N2, N3])
def test_shadow_plane_is_unipotent_for_infinitesimal_base(row):
    for inst in instances(row, 10, seed=5):
        if inst.delta.valuation() <= 0:  # some N3 instances have an appreciable base
            continue
        plane = full_classify(inst.matrix).shadow_plane
        for x in plane.basis:
            assert is_zero_matrix(matmul(matmul(x, x), x))


def test_plucker_of_limit_is_rational():
    plane = full_classify(eq1_matrix(h("t"), h("t^2"), h("t^4"))).shadow_plane
    assert all(isinstance(c, Fraction) for c in plucker(plane))
    assert any(c != 0 for c in plucker(plane))
