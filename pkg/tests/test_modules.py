import functools

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from relhom import catalog, oracles
from relhom.acceptance import small_modules
from relhom.modules import (Morphism, ModuleError, ShortExactSequence, add_membership, cokernel,
                            direct_sum, hom, hom_dim, image, is_isomorphic, is_left_minimal,
                            is_right_minimal, kernel, left_minimal_reduction, pullback, pushout,
                            random_morphism, right_minimal_reduction, factor_through_mono)

from conftest import BUILTINS, hom_log


@functools.cache
def pool(name, max_total=3):
    return tuple(small_modules(catalog.entry(name).algebra, max_total))


@st.composite
def module_pairs(draw, max_total=3):
    name = draw(st.sampled_from(BUILTINS))
    mods = pool(name, max_total)
    return draw(st.sampled_from(mods)), draw(st.sampled_from(mods))


@st.composite
def morphisms(draw, max_total=3):
    m, n = draw(module_pairs(max_total))
    seed = draw(st.integers(0, 2**16))
    return random_morphism(m, n, np.random.default_rng(seed))


@given(module_pairs())
def test_hom_dim_matches_enumeration(mn):
    m, n = mn
    assert hom_dim(m, n) == hom_log(m, n)


@given(module_pairs())
def test_hom_basis_elements_intertwine(mn):
    m, n = mn
    for f in hom(m, n).basis:
        f.validate()


@given(morphisms())
def test_kernel_cokernel_image(f):
    k, incl = kernel(f)
    c, proj = cokernel(f)
    im, i, coim = image(f)
    assert incl.is_mono() and proj.is_epi() and i.is_mono() and coim.is_epi()
    assert (f @ incl).is_zero() and (proj @ f).is_zero()
    assert i @ coim == f
    assert ShortExactSequence(incl, coim).is_exact()
    assert ShortExactSequence(i, proj).is_exact()


@given(morphisms())
def test_kernel_is_universal(f):
    # every map into the source killed by f factors through the kernel
    k, incl = kernel(f)
    for g in oracles.all_morphisms(f.source, f.source):
        if (f @ g).is_zero():
            assert incl @ factor_through_mono(incl, g) == g


def test_morphism_rejects_non_intertwining_maps():
    alg = catalog.build("a2")
    s1, p1 = alg.simple(0), alg.projective(0)
    # the identity of vertex 1 cannot be extended along the arrow into P1
    with pytest.raises(ModuleError, match=r"arrow 'a' \(1->2\) at vertex 2"):
        Morphism(p1, p1, [np.array([[1]]), np.array([[0]])])
    assert hom_dim(s1, p1) == 0


@given(module_pairs(max_total=2))
def test_isomorphism_search_agrees_with_oracle(mn):
    m, n = mn
    assert (is_isomorphic(m, n) is not None) == oracles.isomorphic(m, n)


@given(module_pairs(max_total=3), st.sampled_from(["proj", "inj", "all"]))
def test_add_membership_agrees_with_oracle(mn, sub):
    m, _ = mn
    gens = catalog.entry(m.algebra.name).sub(sub).generators
    w = add_membership(m, gens)
    assert (w is not None) == oracles.add_membership_exhaustive(m, gens)
    if w is not None:
        assert w.verify()


@given(morphisms(max_total=3))
def test_right_minimal_reduction(f):
    red = right_minimal_reduction(f)
    assert is_right_minimal(red.minimal)
    assert oracles.right_minimal_exhaustive(red.minimal)
    assert red.minimal @ red.kept_proj == f
    assert (f @ red.discarded_incl).is_zero()
    assert sum(red.discarded.dims) == oracles.max_killed_summand(f)
    assert is_right_minimal(f) == oracles.right_minimal_exhaustive(f)


@given(morphisms(max_total=3))
def test_left_minimal_reduction(g):
    red = left_minimal_reduction(g)
    assert is_left_minimal(red.minimal)
    assert oracles.left_minimal_exhaustive(red.minimal)
    assert is_left_minimal(g) == oracles.left_minimal_exhaustive(g)


def test_direct_sum_injections_and_projections():
    alg = catalog.build("a3rad2")
    ds = direct_sum(alg.projectives())
    for i, inc in enumerate(ds.injections):
        for j, pr in enumerate(ds.projections):
            comp = pr @ inc
            assert comp == (Morphism.identity(inc.source) if i == j else
                            Morphism.zero(inc.source, pr.target))


def _ses_from(f):
    k, incl = kernel(f)
    im, _, coim = image(f)
    return ShortExactSequence(incl, coim)


@given(morphisms(), st.integers(0, 2**16), st.sampled_from(["inj", "all", "proj"]))
def test_pullback_keeps_right_acyclicity(f, seed, sub):
    seq = _ses_from(f)
    e = catalog.entry(f.source.algebra.name)
    gens = e.sub(sub).generators
    assume(seq.certify(gens).right_acyclic)
    n = seq.right.target
    rng = np.random.default_rng(seed)
    n_prime = pool(e.name)[int(rng.integers(len(pool(e.name))))]
    alpha = random_morphism(n_prime, n, rng)
    sq = pullback(seq.right, alpha, left=seq.left)
    assert sq.top.is_exact()
    assert seq.right @ sq.beta == alpha @ sq.g_prime
    assert sq.top.certify(gens).right_acyclic


@given(morphisms(), st.integers(0, 2**16), st.sampled_from(["proj", "all", "inj"]))
def test_pushout_keeps_left_acyclicity(f, seed, sub):
    seq = _ses_from(f)
    e = catalog.entry(f.source.algebra.name)
    gens = e.sub(sub).generators
    assume(seq.certify((), gens).left_acyclic)
    l = seq.left.source
    rng = np.random.default_rng(seed)
    l_prime = pool(e.name)[int(rng.integers(len(pool(e.name))))]
    s = random_morphism(l, l_prime, rng)
    sq = pushout(seq.left, s, right=seq.right)
    assert sq.bottom.is_exact()
    assert sq.t @ seq.left == sq.f_pp @ s
    assert sq.bottom.certify((), gens).left_acyclic


def test_split_sequences():
    alg = catalog.build("a2")
    s1, s2, p1 = alg.simple(0), alg.simple(1), alg.projective(0)
    k, incl = kernel(hom(p1, s1).basis[0])
    seq = ShortExactSequence(incl, hom(p1, s1).basis[0])
    assert seq.is_exact() and not seq.is_split()
    ds = direct_sum([s2, s1])
    split = ShortExactSequence(ds.injections[0], ds.projections[1])
    assert split.is_exact() and split.is_split()
