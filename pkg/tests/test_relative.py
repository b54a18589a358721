import functools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relhom import catalog, oracles
from relhom.acceptance import small_modules
from relhom.relative import (DepthError, Subcategory, coresolution_dimension, ext_table,
                             ext_via_x, ext_via_y, factors_through, is_admissible,
                             is_coadmissible, left_approximation, proper_coresolution,
                             proper_resolution, rel_ext, resolution_dimension,
                             right_approximation, verify_balanced_pair)

from conftest import BUILTINS, ext1_oracle

# Projective covers of simples worked out by hand: S(i) <- P(i) with kernel
# rad P(i), which is simple or zero for every builtin algebra.
COVERS = {
    "a2": {"S1": ("P1", "S2")},
    "a3rad2": {"S1": ("P1", "S2"), "S2": ("P2", "S3")},
    "kx2": {"S": ("P1", "S")},
    "nak_cyc2": {"S1": ("P1", "S2"), "S2": ("P2", "S1")},
}


@functools.cache
def pool(name):
    return tuple(small_modules(catalog.entry(name).algebra, 3))


@pytest.mark.parametrize("name,simple", [(n, s) for n in COVERS for s in COVERS[n]])
def test_classical_ext1_matches_enumeration(name, simple):
    e = catalog.entry(name)
    cover, syz = (e.module(x) for x in COVERS[name][simple])
    m = e.module(simple)
    for n in pool(name):
        row = rel_ext(m, n, e.pair("classical"), 1)
        assert row.value == ext1_oracle(m, n, cover, syz)


def test_named_ext_values():
    a2, kx2, a3 = (catalog.entry(n) for n in ("a2", "kx2", "a3rad2"))
    assert rel_ext(a2.module("S1"), a2.module("S2"), a2.pair("classical"), 1).value == 1
    assert rel_ext(a2.module("S2"), a2.module("S1"), a2.pair("classical"), 1).value == 0
    for i in range(1, 5):
        assert rel_ext(kx2.module("S"), kx2.module("S"), kx2.pair("classical"), i).value == 1
    # 0 -> P3 -> P2 -> P1 -> S1 -> 0 and Ext^2(S1, S3) = Ext^1(S2, S3)
    assert rel_ext(a3.module("S1"), a3.module("S3"), a3.pair("classical"), 2).value == 1
    assert rel_ext(a3.module("S1"), a3.module("S3"), a3.pair("classical"), 1).value == 0


@given(st.sampled_from(BUILTINS), st.data())
def test_dimension_shift(name, data):
    e = catalog.entry(name)
    m = data.draw(st.sampled_from(e.corpus))
    n = data.draw(st.sampled_from(e.corpus))
    i = data.draw(st.integers(1, 3))
    proj = e.sub("proj")
    res = proper_resolution(m, proj, i + 2)
    if len(res.syzygies) < 2 or res.syzygies[1].is_zero():
        assert ext_via_x(m, n, proj, i + 1, depth=i + 3) == 0
        return
    k = res.syzygies[1]
    assert ext_via_x(m, n, proj, i + 1, depth=i + 3) == ext_via_x(k, n, proj, i, depth=i + 3)


@given(st.sampled_from(BUILTINS), st.data())
def test_balance_on_builtin_pairs(name, data):
    e = catalog.entry(name)
    pair = e.pair(data.draw(st.sampled_from(sorted(e.pairs))))
    m = data.draw(st.sampled_from(e.corpus))
    n = data.draw(st.sampled_from(e.corpus))
    t = ext_table(m, n, pair, 4)
    assert t.balanced


@given(st.sampled_from(BUILTINS), st.data())
def test_ext_vanishes_on_generators(name, data):
    e = catalog.entry(name)
    pair = e.pair(data.draw(st.sampled_from(sorted(e.pairs))))
    a = data.draw(st.sampled_from(e.corpus))
    i = data.draw(st.integers(1, 3))
    for g in pair.x.generators:
        assert rel_ext(g, a, pair, i).value == 0
    for g in pair.y.generators:
        assert rel_ext(a, g, pair, i).value == 0


@given(st.sampled_from(BUILTINS), st.data())
def test_right_approximations_are_approximations(name, data):
    e = catalog.entry(name)
    sub = e.sub(data.draw(st.sampled_from(["proj", "inj", "all"])))
    m = data.draw(st.sampled_from(pool(name)))
    f = right_approximation(m, sub)
    for g in sub.generators:
        for h in oracles.all_morphisms(g, m):
            assert factors_through(h, f, "right")
    fmin = right_approximation(m, sub, minimal=True)
    if fmin.source.total_dim <= 4:
        assert oracles.right_minimal_exhaustive(fmin)
    assert fmin.source.is_zero() or sub.contains(fmin.source)


@given(st.sampled_from(BUILTINS), st.data())
def test_left_approximations_are_approximations(name, data):
    e = catalog.entry(name)
    sub = e.sub(data.draw(st.sampled_from(["proj", "inj", "all"])))
    m = data.draw(st.sampled_from(pool(name)))
    f = left_approximation(m, sub)
    for g in sub.generators:
        for h in oracles.all_morphisms(m, g):
            assert factors_through(h, f, "left")
    gmin = left_approximation(m, sub, minimal=True)
    if gmin.target.total_dim <= 4:
        assert oracles.left_minimal_exhaustive(gmin)


@pytest.mark.parametrize("name", BUILTINS)
def test_resolutions_are_proper_and_acyclic(name):
    e = catalog.entry(name)
    proj, inj = e.sub("proj"), e.sub("inj")
    for m in e.corpus:
        aug = proper_resolution(m, proj, 4).augmented()
        assert aug.is_acyclic() and aug.is_rel_acyclic(proj.generators, "right")
        aug = proper_coresolution(m, inj, 4).augmented()
        assert aug.is_acyclic() and aug.is_rel_acyclic(inj.generators, "left")


# projective and injective dimensions of the corpus modules, read off the
# minimal resolutions by hand
DIMS = {
    "semisimple2": {"S1": (0, 0), "S2": (0, 0)},
    "a2": {"S1": (1, 0), "S2": (0, 1), "P1": (0, 0)},
    "a3rad2": {"S1": (2, 0), "S2": (1, 1), "S3": (0, 2), "P1": (0, 0), "P2": (0, 0)},
}


@pytest.mark.parametrize("name,mod", [(n, m) for n in DIMS for m in DIMS[n]])
def test_projective_and_injective_dimensions(name, mod):
    e = catalog.entry(name)
    m = e.module(mod)
    pd, idim = DIMS[name][mod]
    r = resolution_dimension(m, e.sub("proj"), 4)
    c = coresolution_dimension(m, e.sub("inj"), 4)
    assert (r.value, c.value) == (pd, idim)
    assert r.consistent and c.consistent


def test_infinite_dimensions_report_periods():
    kx2, nak = catalog.entry("kx2"), catalog.entry("nak_cyc2")
    r = resolution_dimension(kx2.module("S"), kx2.sub("proj"), 4)
    assert r.value is None and r.label == ">=5" and r.period == 1
    assert r.ext_crosscheck == [1] * 5
    r = resolution_dimension(nak.module("S1"), nak.sub("proj"), 4)
    assert r.value is None and r.period == 2
    c = coresolution_dimension(nak.module("S2"), nak.sub("inj"), 4)
    assert c.value is None and c.period == 2


def test_depth_errors():
    e = catalog.entry("kx2")
    s = e.module("S")
    with pytest.raises(DepthError, match="increase depth"):
        ext_via_x(s, s, e.sub("proj"), 3, depth=2)
    with pytest.raises(DepthError):
        ext_via_y(s, s, e.sub("inj"), 2, depth=1)


def test_classical_pair_verifies(entry):
    report = verify_balanced_pair(entry.sub("proj"), entry.sub("inj"), entry.corpus, 4, 20,
                                  np.random.default_rng(0))
    assert report.passed and report.admissibility_agrees


def test_non_balanced_pair_is_reported():
    e = catalog.entry("a2")
    alg = e.algebra
    x = Subcategory("x", (alg.projective(0),))
    y = Subcategory("y", (alg.injective(1),))
    assert not is_admissible(x, e.corpus).admissible
    assert not is_coadmissible(y, e.corpus).admissible
    report = verify_balanced_pair(x, y, e.corpus, 4, 10, np.random.default_rng(0))
    assert not report.passed
    assert any("condition (2)" in f for f in report.failures)
