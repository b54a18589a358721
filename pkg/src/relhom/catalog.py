"""Builtin algebras with their subcategories, balanced pairs, cotorsion specs and corpora."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .cotorsion import CotorsionPairSpec
from .modules import Module, cokernel, direct_sum, is_isomorphic, random_morphism
from .quiver import Algebra, build_algebra
from .relative import BalancedPair, Subcategory, resolution_dimension

DEFAULT_SEED = 0
DEFAULT_CAP = 6
CORPUS_RANDOM_MAPS = 10

ALGEBRA_SPECS = {
    "semisimple2": dict(vertices=2, arrows=[], relations=[]),
    "a2": dict(vertices=2, arrows=[(0, 1, "a")], relations=[]),
    "a3rad2": dict(vertices=3, arrows=[(0, 1, "a"), (1, 2, "b")],
                   relations=[[(1, ["a", "b"])]]),
    "kx2": dict(vertices=1, arrows=[(0, 0, "x")], relations=[[(1, ["x", "x"])]]),
    "nak_cyc2": dict(vertices=2, arrows=[(0, 1, "a"), (1, 0, "b")],
                     relations=[[(1, ["a", "b"])], [(1, ["b", "a"])]]),
}

# Hand-checked non-hereditary cotorsion pairs: C = D is closed under the
# perpendicular conditions but higher Ext between its members survives.
NONHEREDITARY = {
    "a3rad2": ["S1", "S3", "P1", "P2"],
    "nak_cyc2": ["S1", "P1", "P2"],
}


@dataclass
class CatalogEntry:
    name: str
    algebra: Algebra
    subcategories: dict
    pairs: dict
    cotorsion: dict
    corpus: list
    flags: dict = field(default_factory=dict)

    def module(self, name: str) -> Module:
        return lookup_module(self.algebra, name, self.corpus)

    def pair(self, name: str) -> BalancedPair:
        try:
            return self.pairs[name]
        except KeyError:
            raise KeyError(f"unknown pair {name!r} for {self.name}; known: {sorted(self.pairs)}")

    def sub(self, name: str) -> Subcategory:
        try:
            return self.subcategories[name]
        except KeyError:
            raise KeyError(f"unknown subcategory {name!r} for {self.name}; "
                           f"known: {sorted(self.subcategories)}")


def build(name: str, p: int = 2, cap: int = 4) -> Algebra:
    if name not in ALGEBRA_SPECS:
        raise KeyError(f"unknown builtin algebra {name!r}; known: {sorted(ALGEBRA_SPECS)}")
    spec = ALGEBRA_SPECS[name]
    return build_algebra(spec["vertices"], spec["arrows"], spec["relations"], cap=cap, p=p, name=name)


def lookup_module(algebra: Algebra, name: str, extra=()) -> Module:
    """Resolve ``P1``/``I2``/``S3`` style names (``S`` on one vertex) or a corpus name."""
    for m in extra:
        if m.name == name:
            return m
    if name == "S" and algebra.vertices == 1:
        return algebra.simple(0)
    kinds = {"P": algebra.projective, "I": algebra.injective, "S": algebra.simple}
    if len(name) >= 2 and name[0] in kinds and name[1:].isdigit():
        return kinds[name[0]](int(name[1:]) - 1)
    raise KeyError(f"unknown module {name!r}")


def dedupe_iso(mods) -> list[Module]:
    out: list[Module] = []
    for m in mods:
        if m.is_zero():
            continue
        if any(is_isomorphic(m, n) is not None for n in out):
            continue
        out.append(m)
    return out


def default_corpus(algebra: Algebra, rng: np.random.Generator,
                   maps: int = CORPUS_RANDOM_MAPS) -> list[Module]:
    """Simples, projectives, injectives and cokernels of seeded random maps
    between indecomposable projectives, without isomorphic repeats."""
    base = algebra.simples() + algebra.projectives() + algebra.injectives()
    extra = []
    n = algebra.vertices
    for k in range(maps):
        i, j = int(rng.integers(n)), int(rng.integers(n))
        f = random_morphism(algebra.projective(i), algebra.projective(j), rng)
        c, _ = cokernel(f)
        extra.append(c)
    out = dedupe_iso(base)
    count = 0
    for c in extra:
        if c.is_zero() or any(is_isomorphic(c, m) is not None for m in out):
            continue
        count += 1
        out.append(c.renamed(f"Q{count}"))
    return out


def indecomposables(algebra: Algebra) -> list[Module]:
    """Simples, projectives and injectives: every indecomposable of the builtin
    algebras (all are radical square zero or hereditary of type A)."""
    return dedupe_iso(algebra.simples() + algebra.projectives() + algebra.injectives())


def _self_injective(algebra: Algebra) -> bool:
    inj = Subcategory("inj", tuple(algebra.injectives()))
    proj = Subcategory("proj", tuple(algebra.projectives()))
    return (all(inj.contains(p) for p in algebra.projectives())
            and all(proj.contains(i) for i in algebra.injectives()))


def _gldim(algebra: Algebra, proj: Subcategory, cap: int) -> Optional[int]:
    vals = [resolution_dimension(s, proj, cap).value for s in algebra.simples()]
    if any(v is None for v in vals):
        return None
    return max(vals)


@functools.cache
def entry(name: str, seed: int = DEFAULT_SEED, cap: int = DEFAULT_CAP) -> CatalogEntry:
    alg = build(name)
    proj = Subcategory("proj", tuple(alg.projectives()), contains_projectives=True)
    inj = Subcategory("inj", tuple(alg.injectives()), contains_injectives=True)
    every = Subcategory("all", tuple(indecomposables(alg)),
                        contains_projectives=True, contains_injectives=True)
    subs = {"proj": proj, "inj": inj, "all": every}
    classical = BalancedPair("classical", proj, inj)
    pairs = {"classical": classical, "proj": classical}
    self_inj = _self_injective(alg)
    gldim = _gldim(alg, proj, cap)
    alg.flags.update(self_injective=self_inj, gldim=gldim)
    cot = {
        "proj_all": CotorsionPairSpec("proj_all", proj, every, classical),
        "all_inj": CotorsionPairSpec("all_inj", every, inj, classical),
    }
    if self_inj:
        gproj = BalancedPair("gproj", every, every)
        pairs["gproj"] = gproj
        cot["gproj_all"] = CotorsionPairSpec("gproj_all", every, every, gproj)
    if name in NONHEREDITARY:
        gens = tuple(lookup_module(alg, n) for n in NONHEREDITARY[name])
        sub = Subcategory("nonhered", gens)
        subs["nonhered"] = sub
        cot["nonhered"] = CotorsionPairSpec("nonhered", sub, sub, classical)
    corpus = default_corpus(alg, np.random.default_rng(seed))
    return CatalogEntry(name, alg, subs, pairs, cot, corpus,
                        {"self_injective": self_inj, "gldim": gldim})


def builtin_catalog(seed: int = DEFAULT_SEED) -> list[CatalogEntry]:
    return [entry(name, seed) for name in ALGEBRA_SPECS]


def sum_of(mods) -> Module:
    return direct_sum(list(mods)).module
