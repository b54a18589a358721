"""Sanity checks for the exhaustive oracles against classical counts."""

import numpy as np
import pytest

from relhom import catalog, oracles
from relhom.modules import Morphism, direct_sum


def test_nilpotent_count():
    # q^(n^2 - n) nilpotent n x n matrices over F_q: 4 for n = 2, q = 2
    assert len(oracles.all_modules(catalog.build("kx2"), [2])) == 4


def test_idempotents_of_full_matrix_ring():
    # M_2(F_2) has 16 elements; idempotents are 0, 1 and a projection for each
    # ordered pair of distinct lines (3 * 2 of rank one), 8 in all
    m = direct_sum([catalog.build("semisimple2").simple(0)] * 2).module
    assert len(oracles.endomorphisms(m)) == 16
    assert len(oracles.idempotents(m)) == 8
    assert not oracles.is_indecomposable(m)
    assert [s.dims for s in oracles.decompose(m)] == [(1, 0), (1, 0)]


def test_local_endomorphism_ring():
    p1 = catalog.build("kx2").projective(0)
    assert len(oracles.endomorphisms(p1)) == 4
    assert oracles.is_indecomposable(p1)


def test_dimension_vectors():
    assert oracles.dimension_vectors(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert len(oracles.dimension_vectors(3, 4)) == 15


def test_isomorphism_classes_of_a2_dim_2():
    # representations of 1 -> 2 with dims (1, 1): the zero map (S1 + S2) or P1
    alg = catalog.build("a2")
    mods = oracles.all_modules(alg, [1, 1])
    assert len(mods) == 2
    assert not oracles.isomorphic(*mods)
    assert sum(oracles.is_indecomposable(m) for m in mods) == 1


def test_minimality_oracles():
    alg = catalog.build("a2")
    p1, s1 = alg.projective(0), alg.simple(0)
    cover = oracles.all_morphisms(p1, s1)[1]
    assert oracles.right_minimal_exhaustive(cover)
    ds = direct_sum([p1, alg.simple(1)])
    padded = cover @ ds.projections[0]
    assert not oracles.right_minimal_exhaustive(padded)
    assert oracles.max_killed_summand(padded) == 1
    assert oracles.left_minimal_exhaustive(Morphism.identity(s1))


def test_add_membership_exhaustive():
    alg = catalog.build("a2")
    s1, s2, p1 = alg.simple(0), alg.simple(1), alg.projective(0)
    assert oracles.add_membership_exhaustive(direct_sum([s1, s1, s2]).module, [s1, s2])
    assert not oracles.add_membership_exhaustive(p1, [s1, s2])


def test_solver_fallback_for_large_spaces():
    # above the raw-enumeration budget the span of a solved basis is listed
    alg = catalog.build("a2")
    m = direct_sum([alg.projective(0), alg.simple(1)]).module
    raw = oracles.morphism_batch(m, m)
    spanned = oracles.morphism_batch(m, m, max_bits=3)
    assert len(raw[0]) == len(spanned[0])
    as_set = lambda b: {tuple(np.concatenate([x[k].ravel() for x in b])) for k in range(len(b[0]))}
    assert as_set(raw) == as_set(spanned)
    with pytest.raises(ValueError, match="too large"):
        oracles.morphism_batch(m, m, max_bits=1)


def test_rejects_other_primes():
    alg = catalog.build("kx2", p=3)
    with pytest.raises(ValueError, match="F_2"):
        oracles.all_morphisms(alg.simple(0), alg.simple(0))
