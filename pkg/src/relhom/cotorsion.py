"""Cotorsion pairs relative to a balanced pair.

The classes C and D of a pair are described by generator lists.  Membership
of an arbitrary module is decided through the perpendicular conditions
``C = perp-left(D)`` and ``D = perp-right(C)``, i.e. by vanishing of relative
Ext^1 against the other side's generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import oracles
from .complexes import PreconditionError
from .modules import (Module, Morphism, ShortExactSequence, StarAcyclicWitness, cokernel,
                      hom_basis, is_left_minimal, is_right_minimal, kernel, pushout)
from .relative import (AdmissibilityError, BalancedPair, Subcategory, ext_via_x,
                       is_admissible, is_approximation, left_approximation, proper_coresolution,
                       proper_resolution, rel_ext, right_approximation, sample_complexes)


class UnsupportedInstance(RuntimeError):
    """A construction needs data that does not exist at corpus scale."""


@dataclass(frozen=True)
class CotorsionPairSpec:
    name: str
    c: Subcategory
    d: Subcategory
    pair: BalancedPair
    depth: int = 6

    def ext(self, m: Module, n: Module, i: int = 1) -> int:
        return rel_ext(m, n, self.pair, i, via="both", depth=max(self.depth, i + 1)).value

    def in_c(self, m: Module) -> bool:
        return all(self.ext(m, d) == 0 for d in self.d.generators)

    def in_d(self, m: Module) -> bool:
        return all(self.ext(c, m) == 0 for c in self.c.generators)


# ---------------------------------------------------------------------------
# Perpendicular classes


@dataclass
class PerpReport:
    direction: str
    generators: list
    members: list
    failures: list   # (module, [(generator, dim Ext^1)])

    def names(self) -> list[str]:
        return [m.name for m in self.members]


def perp(generators: Sequence[Module], corpus: Sequence[Module], direction: str,
         pair: BalancedPair, depth: int = 4) -> PerpReport:
    """``left``: modules ``M`` with ``Ext^1(M, G) = 0`` for all generators;
    ``right``: modules ``N`` with ``Ext^1(G, N) = 0``."""
    if direction not in ("left", "right"):
        raise ValueError(f"direction must be left or right, not {direction!r}")
    members, failures = [], []
    depth = max(depth, 2)
    for m in corpus:
        bad = []
        for g in generators:
            a, b = (m, g) if direction == "left" else (g, m)
            e = rel_ext(a, b, pair, 1, via="both", depth=depth).value
            if e:
                bad.append((g, e))
        if bad:
            failures.append((m, bad))
        else:
            members.append(m)
    return PerpReport(direction, list(generators), members, failures)


@dataclass
class CotorsionVerdict:
    spec: str
    verified: bool
    offending: list            # (C generator, D generator, dim Ext^1)
    unsaturated_c: list        # corpus objects in perp-left(D) not in add(C)
    unsaturated_d: list

    def summary(self) -> dict:
        return {
            "spec": self.spec,
            "verified": self.verified,
            "offending": [(c.name, d.name, e) for c, d, e in self.offending],
            "unsaturated_c": [m.name for m in self.unsaturated_c],
            "unsaturated_d": [m.name for m in self.unsaturated_d],
        }


def verify_cotorsion_pair(spec: CotorsionPairSpec, corpus: Sequence[Module]) -> CotorsionVerdict:
    offending = []
    for c in spec.c.generators:
        for d in spec.d.generators:
            e = spec.ext(c, d)
            if e:
                offending.append((c, d, e))
    left = perp(spec.d.generators, corpus, "left", spec.pair, spec.depth)
    right = perp(spec.c.generators, corpus, "right", spec.pair, spec.depth)
    un_c = [m for m in left.members if not spec.c.contains(m)]
    un_d = [m for m in right.members if not spec.d.contains(m)]
    return CotorsionVerdict(spec.name, not offending, offending, un_c, un_d)


@dataclass
class PerfectVerdict:
    """Minimal approximations of every corpus object: ``label`` is
    ``corpus-perfect`` when all exist, since nothing is claimed beyond the corpus."""

    spec: str
    right: dict   # name -> minimal right C-approximation found and certified
    left: dict    # name -> minimal left D-approximation found and certified

    @property
    def perfect(self) -> bool:
        return all(self.right.values()) and all(self.left.values())

    @property
    def label(self) -> str:
        return "corpus-perfect" if self.perfect else "not corpus-perfect"


def perfect_check(spec: CotorsionPairSpec, corpus: Sequence[Module]) -> PerfectVerdict:
    right, left = {}, {}
    for idx, m in enumerate(corpus):
        name = m.name or f"corpus[{idx}]"
        phi = right_approximation(m, spec.c, minimal=True)
        right[name] = is_approximation(phi, spec.c, "right") and is_right_minimal(phi)
        psi = left_approximation(m, spec.d, minimal=True)
        left[name] = is_approximation(psi, spec.d, "left") and is_left_minimal(psi)
    return PerfectVerdict(spec.name, right, left)


# ---------------------------------------------------------------------------
# Closure and hereditary checks


Membership = Union[Callable[[Module], bool], Sequence[Module]]


def _member(m: Membership) -> Callable[[Module], bool]:
    if callable(m):
        return m
    gens = tuple(m)
    return lambda x: Subcategory("E", gens).contains(x)


@dataclass
class ClosureVerdict:
    mode: str
    holds: bool
    checked: int
    skipped: int
    counterexamples: list   # ShortExactSequence


def closure_check(members: Membership, sequences: Sequence[ShortExactSequence],
                  mode: str) -> ClosureVerdict:
    """Test closure under *-extensions, *-epimorphisms or *-monomorphisms.

    ``extensions``: L, N in E gives M in E; ``epis``: M, N gives L;
    ``monos``: L, M gives N.  Instances whose hypotheses fail are skipped.
    """
    if mode not in ("extensions", "epis", "monos"):
        raise ValueError(f"unknown closure mode {mode!r}")
    inside = _member(members)
    checked = skipped = 0
    bad = []
    for seq in sequences:
        l, m, n = seq.terms
        if mode == "extensions":
            hyp, concl = (l, n), m
        elif mode == "epis":
            hyp, concl = (m, n), l
        else:
            hyp, concl = (l, m), n
        if not all(inside(h) for h in hyp):
            skipped += 1
            continue
        checked += 1
        if not inside(concl):
            bad.append(seq)
    return ClosureVerdict(mode, not bad, checked, skipped, bad)


def star_sequences(pair: BalancedPair, corpus: Sequence[Module], depth: int,
                   samples: int = 0, rng: Optional[np.random.Generator] = None) -> list[ShortExactSequence]:
    """*-acyclic short exact sequences from resolutions, coresolutions and samples."""
    out: list[ShortExactSequence] = []
    seen = set()

    def add(seq: ShortExactSequence):
        key = (seq.left.source.key, seq.left.target.key, seq.right.target.key,
               tuple(b.tobytes() for b in seq.left.blocks), tuple(b.tobytes() for b in seq.right.blocks))
        if key in seen:
            return
        w = seq.certify(pair.x.generators, pair.y.generators)
        if w.star_acyclic:
            seen.add(key)
            out.append(seq)

    for m in corpus:
        for builder, side in ((proper_resolution, "right"), (proper_coresolution, "left")):
            sub = pair.x if side == "right" else pair.y
            try:
                res = builder(m, sub, depth)
            except AdmissibilityError:
                continue
            for a, inc in zip(res.approximations, res.inclusions):
                if side == "right":
                    add(ShortExactSequence(inc, a))
                else:
                    add(ShortExactSequence(a, inc))
    if samples and rng is not None:
        for c in sample_complexes(list(corpus), samples, rng):
            if len(c.terms) == 3:
                seq = ShortExactSequence(c.diffs[0], c.diffs[1])
                if seq.is_exact():
                    add(seq)
    return out


@dataclass
class HereditaryVerdict:
    spec: str
    via_ext: bool
    via_c_resolving: bool
    via_d_coresolving: bool
    ext_failures: list
    closure: dict
    sequences: int

    @property
    def consistent(self) -> bool:
        return self.via_ext == self.via_c_resolving == self.via_d_coresolving

    @property
    def hereditary(self) -> bool:
        return self.via_ext

    def summary(self) -> dict:
        return {
            "spec": self.spec,
            "criterion_1": self.via_c_resolving,
            "criterion_2": self.via_d_coresolving,
            "criterion_3": self.via_ext,
            "consistent": self.consistent,
            "ext_failures": [(c.name, d.name, i, e) for c, d, i, e in self.ext_failures],
            "closure": {k: {"holds": v.holds, "checked": v.checked, "skipped": v.skipped,
                            "counterexamples": [[t.name for t in s.terms] for s in v.counterexamples]}
                        for k, v in self.closure.items()},
            "sequences": self.sequences,
        }


def hereditary_check(spec: CotorsionPairSpec, corpus: Sequence[Module], maxdeg: int,
                     samples: int = 0, rng: Optional[np.random.Generator] = None) -> HereditaryVerdict:
    """Evaluate the three equivalent hereditary criteria independently.

    (3) higher Ext between the classes vanishes; (1) C contains X and is
    closed under *-extensions and *-epimorphisms; (2) D contains Y and is
    closed under *-extensions and *-monomorphisms.
    """
    pair = spec.pair
    c_objs = [m for m in list(spec.c.generators) + list(corpus) if spec.in_c(m)]
    d_objs = [m for m in list(spec.d.generators) + list(corpus) if spec.in_d(m)]
    ext_fail = []
    depth = max(spec.depth, maxdeg + 1)
    for c in _dedupe(c_objs):
        for d in _dedupe(d_objs):
            for i in range(2, maxdeg + 1):
                e = rel_ext(c, d, pair, i, via="both", depth=depth).value
                if e:
                    ext_fail.append((c, d, i, e))
                    break
    seqs = star_sequences(pair, list(corpus) + list(spec.c.generators) + list(spec.d.generators),
                          depth, samples, rng)
    closure = {
        "C_extensions": closure_check(spec.in_c, seqs, "extensions"),
        "C_epis": closure_check(spec.in_c, seqs, "epis"),
        "D_extensions": closure_check(spec.in_d, seqs, "extensions"),
        "D_monos": closure_check(spec.in_d, seqs, "monos"),
    }
    x_in_c = all(spec.in_c(g) for g in pair.x.generators)
    y_in_d = all(spec.in_d(g) for g in pair.y.generators)
    one = x_in_c and closure["C_extensions"].holds and closure["C_epis"].holds
    two = y_in_d and closure["D_extensions"].holds and closure["D_monos"].holds
    return HereditaryVerdict(spec.name, not ext_fail, one, two, ext_fail, closure, len(seqs))


def _dedupe(mods: Sequence[Module]) -> list[Module]:
    seen, out = set(), []
    for m in mods:
        if m.key not in seen:
            seen.add(m.key)
            out.append(m)
    return out


# ---------------------------------------------------------------------------
# Constructions from the proofs


@dataclass
class CompletenessResult:
    module: Module
    approximation: ShortExactSequence     # 0 -> K -> X -> M -> 0
    witness: ShortExactSequence           # 0 -> K -> D -> C -> 0
    result: ShortExactSequence            # 0 -> D -> E -> M -> 0
    certificate: StarAcyclicWitness
    e_in_c: bool
    witness_ok: bool

    @property
    def star_acyclic(self) -> bool:
        return self.certificate.star_acyclic

    def summary(self) -> dict:
        d, e, m = self.result.terms
        return {
            "module": self.module.name,
            "D": list(d.dims), "E": list(e.dims), "E_total_dim": e.total_dim,
            "star_acyclic": self.star_acyclic,
            "E_in_C": self.e_in_c,
            "witness_ends_in_classes": self.witness_ok,
        }


def completeness_construct(m: Module, spec: CotorsionPairSpec,
                           witness: Optional[ShortExactSequence] = None) -> CompletenessResult:
    """Build ``0 -> D -> E -> M -> 0`` from an enough-injectives witness.

    Takes the *-acyclic ``0 -> K -> X -> M -> 0`` from a minimal right
    X-approximation, a *-acyclic ``0 -> K -> D -> C -> 0`` (supplied, or the
    minimal left D-approximation of ``K``) and pushes out along ``K -> D``.
    """
    pair = spec.pair
    if not is_admissible(pair.x, [m]).admissible:
        raise PreconditionError(f"right {pair.x.name}-approximation of {m.name} is not epi; "
                                f"the balanced pair is not admissible")
    phi = right_approximation(m, pair.x, minimal=True)
    k, incl = kernel(phi)
    top = ShortExactSequence(incl, phi)
    gens = (pair.x.generators, pair.y.generators)
    if not top.certify(*gens).star_acyclic:
        raise PreconditionError("approximation sequence is not *-acyclic")
    if witness is None:
        psi = left_approximation(k, spec.d, minimal=True)
        if not psi.is_mono():
            raise UnsupportedInstance(f"minimal left {spec.d.name}-approximation of the kernel "
                                      f"is not mono; supply a witness sequence")
        _, pi = cokernel(psi)
        witness = ShortExactSequence(psi, pi)
    else:
        if witness.left.source != k:
            raise PreconditionError("witness sequence must start at the kernel of the approximation")
    if not witness.is_exact() or not witness.certify(*gens).star_acyclic:
        raise PreconditionError("witness sequence is not *-acyclic")
    _, d_mod, c_mod = witness.terms
    witness_ok = spec.in_d(d_mod) and spec.in_c(c_mod)
    sq = pushout(incl, witness.left, right=phi)
    seq = sq.bottom
    cert = seq.certify(*gens)
    e = seq.terms[1]
    return CompletenessResult(m, top, witness, seq, cert, spec.in_c(e), witness_ok)


@dataclass
class WakamatsuReport:
    module: Module
    approximation: Morphism
    kernel: Module
    ext_dims: list   # (generator, dim Ext^1(G, K))
    closed_under_extensions: bool

    @property
    def passed(self) -> bool:
        return not any(e for _, e in self.ext_dims)

    def summary(self) -> dict:
        return {
            "module": self.module.name,
            "kernel": list(self.kernel.dims),
            "ext1": [(g.name, e) for g, e in self.ext_dims],
            "closed_under_extensions": self.closed_under_extensions,
            "passed": self.passed,
        }


def wakamatsu_check(e: Subcategory, m: Module, pair: BalancedPair, depth: int = 4,
                    sequences: Optional[Sequence[ShortExactSequence]] = None) -> WakamatsuReport:
    """Kernel of a minimal right E-approximation lies in the right perp of E."""
    phi = right_approximation(m, e, minimal=True)
    if not phi.is_epi():
        raise AdmissibilityError(f"right {e.name}-approximation of {m.name} is not epi", m)
    k, _ = kernel(phi)
    dims = [(g, rel_ext(g, k, pair, 1, via="both", depth=max(depth, 2)).value) for g in e.generators]
    closed = True
    if sequences is not None:
        closed = closure_check(e.generators, sequences, "extensions").holds
    return WakamatsuReport(m, phi, k, dims, closed)


@dataclass
class MinimalLeftResult:
    module: Module
    psi_prime: Morphism
    right_approx: Morphism
    left_approx: Morphism
    column: ShortExactSequence   # 0 -> M -> X -> C' -> 0
    x_in_d: bool
    cokernel_in_c: bool
    is_approximation: bool
    left_minimal: bool
    oracle_minimal: Optional[bool]

    @property
    def passed(self) -> bool:
        return (self.x_in_d and self.cokernel_in_c and self.is_approximation and self.left_minimal
                and self.oracle_minimal is not False)

    def summary(self) -> dict:
        return {
            "module": self.module.name,
            "target": list(self.psi_prime.target.dims),
            "X_in_D": self.x_in_d,
            "cokernel_in_C": self.cokernel_in_c,
            "left_approximation": self.is_approximation,
            "left_minimal": self.left_minimal,
            "oracle_minimal": self.oracle_minimal,
            "passed": self.passed,
        }


def minimal_left_from_right(m: Module, spec: CotorsionPairSpec) -> MinimalLeftResult:
    """Minimal left D-approximation of ``m`` via the pushout of a minimal right
    C-approximation along a minimal left D-approximation of its source."""
    pair = spec.pair
    for g in spec.c.generators:
        for h in spec.d.generators:
            if rel_ext(g, h, pair, 2, via="X", depth=max(spec.depth, 3)).value:
                raise PreconditionError(f"cotorsion pair {spec.name} is not hereditary "
                                        f"(Ext^2({g.name}, {h.name}) != 0)")
    phi = right_approximation(m, spec.c, minimal=True)
    if not phi.is_epi():
        raise UnsupportedInstance(f"minimal right {spec.c.name}-approximation of {m.name} is not epi")
    c = phi.source
    psi = left_approximation(c, spec.d, minimal=True)
    if not psi.is_mono():
        raise UnsupportedInstance(f"minimal left {spec.d.name}-approximation of {c!r} is not mono")
    _, pi = cokernel(psi)
    sq = pushout(psi, phi, right=pi)
    psi_prime = sq.f_pp
    column = sq.bottom
    x = psi_prime.target
    c_prime = column.terms[2]
    approx_ok = is_approximation(psi_prime, spec.d, "left")
    minimal = is_left_minimal(psi_prime)
    oracle = None
    if x.total_dim <= 6 and x.p == 2:
        oracle = oracles.left_minimal_exhaustive(psi_prime)
    return MinimalLeftResult(m, psi_prime, phi, psi, column, spec.in_d(x), spec.in_c(c_prime),
                             approx_ok, minimal, oracle)
