import numpy as np
import pytest

from relhom import catalog, oracles
from relhom.modules import ModuleError
from relhom.quiver import AlgebraError, build_algebra

# (algebra dimension, projective dims, injective dims), counted by hand from paths
EXPECTED = {
    "semisimple2": (2, [(1, 0), (0, 1)], [(1, 0), (0, 1)]),
    "a2": (3, [(1, 1), (0, 1)], [(1, 0), (1, 1)]),
    "a3rad2": (5, [(1, 1, 0), (0, 1, 1), (0, 0, 1)], [(1, 0, 0), (1, 1, 0), (0, 1, 1)]),
    "kx2": (2, [(2,)], [(2,)]),
    "nak_cyc2": (4, [(1, 1), (1, 1)], [(1, 1), (1, 1)]),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_builtin_dimensions(name):
    alg = catalog.build(name)
    dim, pdims, idims = EXPECTED[name]
    assert alg.dim == dim
    assert [p.dims for p in alg.projectives()] == pdims
    assert [i.dims for i in alg.injectives()] == idims
    assert sum(sum(p.dims) for p in alg.projectives()) == dim


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_projectives_and_simples_are_indecomposable(name):
    alg = catalog.build(name)
    for m in alg.projectives() + alg.injectives() + alg.simples():
        assert oracles.is_indecomposable(m), m.name


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_projective_tops_are_simple(name):
    # Hom(P(i), S(j)) is one dimensional exactly when i = j
    alg = catalog.build(name)
    n = alg.vertices
    for i in range(n):
        for j in range(n):
            count = len(oracles.all_morphisms(alg.projective(i), alg.simple(j)))
            assert count == (2 if i == j else 1)
            count = len(oracles.all_morphisms(alg.simple(j), alg.injective(i)))
            assert count == (2 if i == j else 1)


def test_one_vertex_simple_is_named_s():
    assert catalog.build("kx2").simple(0).name == "S"
    assert catalog.build("a2").simple(1).name == "S2"


def test_rejects_linear_relation_terms():
    with pytest.raises(AlgebraError, match="square of the arrow ideal"):
        build_algebra(2, [(0, 1, "a")], [[(1, ["a"])]])


def test_rejects_non_composable_relation():
    with pytest.raises(AlgebraError):
        build_algebra(3, [(0, 1, "a"), (1, 2, "b")], [[(1, ["b", "a"])]])


def test_rejects_composite_modulus():
    with pytest.raises(ValueError):
        build_algebra(1, [(0, 0, "x")], [[(1, ["x", "x"])]], p=6)


def test_relation_violation_names_relation():
    alg = catalog.build("kx2")
    with pytest.raises(ModuleError, match="violates relation 0"):
        alg.module([2], [np.array([[1, 0], [0, 1]])], name="bad")


def test_wrong_arrow_count():
    alg = catalog.build("a2")
    with pytest.raises(AlgebraError):
        alg.module([1, 1], [])


def test_products_respect_relations():
    alg = catalog.build("a3rad2")
    a, b = alg.quiver.arrow_index("a"), alg.quiver.arrow_index("b")
    assert alg.normal_form((0, (a, b))) == {}
