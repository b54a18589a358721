"""Bound quiver algebras kQ/I and their indecomposable projectives and injectives.

Paths are stored as ``(start, arrows)`` with ``arrows`` a tuple of arrow
indices in traversal order; the trivial path at ``v`` is ``(v, ())``.  The
relation ideal is truncated at length ``cap + 1``: every path of that length
must lie in the ideal, otherwise the algebra is rejected.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import linalg as la
from .modules import DirectSum, Module, direct_sum

Path = tuple[int, tuple[int, ...]]


class AlgebraError(ValueError):
    """The presentation does not define an admissible finite-dimensional algebra."""


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    label: str


@dataclass(frozen=True)
class Quiver:
    vertices: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if self.vertices < 1:
            raise AlgebraError("a quiver needs at least one vertex")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraError(f"arrow labels must be unique: {labels}")
        for a in self.arrows:
            if not (0 <= a.source < self.vertices and 0 <= a.target < self.vertices):
                raise AlgebraError(f"arrow {a.label!r} has an endpoint out of range")

    @classmethod
    def from_edges(cls, vertices: int, edges: Iterable[tuple[int, int, str]]) -> "Quiver":
        """Build from 0-based ``(source, target, label)`` triples."""
        return cls(vertices, tuple(Arrow(int(s), int(t), str(l)) for s, t, l in edges))

    def arrow_index(self, label: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.label == label:
                return i
        raise AlgebraError(f"unknown arrow label {label!r}")

    def path_end(self, path: Path) -> int:
        start, arrows = path
        return self.arrows[arrows[-1]].target if arrows else start

    def extend(self, path: Path, arrow: int) -> Optional[Path]:
        """``path`` followed by ``arrow``, or ``None`` if they do not compose."""
        if self.arrows[arrow].source != self.path_end(path):
            return None
        return (path[0], path[1] + (arrow,))

    def paths_of_length(self, n: int) -> list[Path]:
        layer = [(v, ()) for v in range(self.vertices)]
        for _ in range(n):
            layer = [q for p in layer for a in range(len(self.arrows))
                     if (q := self.extend(p, a)) is not None]
        return layer


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths ``source -> target``."""

    source: int
    target: int
    terms: tuple[tuple[int, tuple[int, ...]], ...]


class Algebra:
    """A finite-dimensional bound quiver algebra ``kQ/I`` over ``F_p``.

    Left modules are representations; ``P(i)`` has basis the paths starting at
    ``i`` and ``I(i)`` is dual to the paths ending at ``i``.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Relation], cap: int, p: int = 2,
                 name: str = ""):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.cap = int(cap)
        self.p = la.check_prime(int(p))
        self.name = name
        self.flags: dict = {}
        if self.cap < 0:
            raise AlgebraError("path cap must be non-negative")
        self._check_admissible()
        self._build_reducer()

    # -- presentation -----------------------------------------------------

    def _check_admissible(self) -> None:
        q = self.quiver
        for idx, rel in enumerate(self.relations):
            if not rel.terms:
                raise AlgebraError(f"relation {idx} is empty")
            for coeff, arrows in rel.terms:
                if len(arrows) < 2:
                    raise AlgebraError(
                        f"relation {idx} ({self.describe_relation(rel)}) has a term of length "
                        f"{len(arrows)}; relations must lie in the square of the arrow ideal")
                path = (rel.source, tuple(arrows))
                for i in range(1, len(arrows)):
                    if q.arrows[arrows[i]].source != q.arrows[arrows[i - 1]].target:
                        raise AlgebraError(f"relation {idx} contains a non-composable path")
                if q.arrows[arrows[0]].source != rel.source or q.path_end(path) != rel.target:
                    raise AlgebraError(f"relation {idx} mixes non-parallel paths")

    def describe_path(self, path: Path) -> str:
        start, arrows = path
        if not arrows:
            return f"e{start + 1}"
        return "".join(self.quiver.arrows[a].label for a in arrows)

    def describe_relation(self, rel: Relation) -> str:
        parts = []
        for coeff, arrows in rel.terms:
            word = self.describe_path((rel.source, tuple(arrows)))
            parts.append(word if coeff % self.p == 1 else f"{coeff % self.p}*{word}")
        return " + ".join(parts)

    def _build_reducer(self) -> None:
        q, p = self.quiver, self.p
        top = self.cap + 1
        layers = [q.paths_of_length(n) for n in range(top + 1)]
        # column order: longest first, lexicographically largest first
        order = sorted((path for layer in layers for path in layer),
                       key=lambda pa: (-len(pa[1]), tuple(-a for a in pa[1]), -pa[0]))
        col = {path: i for i, path in enumerate(order)}
        rows = []
        for rel in self.relations:
            shortest = min(len(a) for _, a in rel.terms)
            for left_len in range(top - shortest + 1):
                for u in layers[left_len]:
                    if q.path_end(u) != rel.source:
                        continue
                    for right_len in range(top - shortest - left_len + 1):
                        for v in layers[right_len]:
                            if v[0] != rel.target:
                                continue
                            row = np.zeros(len(order), dtype=np.int64)
                            for coeff, arrows in rel.terms:
                                w = (u[0], u[1] + tuple(arrows) + v[1])
                                if len(w[1]) <= top:
                                    row[col[w]] = (row[col[w]] + coeff) % p
                            if row.any():
                                rows.append(row)
        system = np.stack(rows) if rows else la.zeros(0, len(order))
        red, pivots, rank = la.rref(system, p)
        longest = [col[path] for path in layers[top]]
        if longest:
            probe = np.vstack([system, np.eye(len(order), dtype=np.int64)[longest]])
            if la.rank(probe, p) != rank:
                raise AlgebraError(
                    f"paths of length {top} survive the relations; the algebra is infinite-"
                    f"dimensional or needs a larger cap than {self.cap}")
        pivot_set = set(pivots)
        self.basis: list[Path] = sorted(
            (path for path in order if col[path] not in pivot_set),
            key=lambda pa: (len(pa[1]), pa[0], pa[1]))
        self._index = {path: i for i, path in enumerate(self.basis)}
        nf: dict[Path, dict[int, int]] = {}
        pivot_row = {c: r for r, c in enumerate(pivots)}
        for path in order:
            c = col[path]
            if c in pivot_row:
                row = red[pivot_row[c]]
                combo = {}
                for j in np.nonzero(row)[0]:
                    if j != c:
                        combo[self._index[order[j]]] = int((-row[j]) % p)
                nf[path] = combo
            else:
                nf[path] = {self._index[path]: 1}
        self._nf = nf
        self._check_overlaps()

    def _check_overlaps(self) -> None:
        q = self.quiver
        for w in [path for path in self._nf if len(path[1]) <= self.cap]:
            for a in range(len(q.arrows)):
                right = q.extend(w, a)
                if right is not None and self._nf[right] != self.times_arrow(self._nf[w], a):
                    raise AlgebraError(f"reduction of {self.describe_path(right)} is not confluent")
                if q.arrows[a].target == w[0]:
                    left = (q.arrows[a].source, (a,) + w[1])
                    if self._nf[left] != self.arrow_times(a, self._nf[w]):
                        raise AlgebraError(f"reduction of {self.describe_path(left)} is not confluent")
        for rel in self.relations:
            acc: dict[int, int] = {}
            for coeff, arrows in rel.terms:
                for k, v in self.normal_form((rel.source, tuple(arrows))).items():
                    acc[k] = (acc.get(k, 0) + coeff * v) % self.p
            if any(acc.values()):
                raise AlgebraError(f"relation {self.describe_relation(rel)} does not reduce to 0")

    # -- multiplication ---------------------------------------------------

    def times_arrow(self, combo: dict[int, int], arrow: int) -> dict[int, int]:
        """Normal form of ``(sum of basis paths) followed by arrow``."""
        out: dict[int, int] = {}
        for k, c in combo.items():
            ext = self.quiver.extend(self.basis[k], arrow)
            if ext is None:
                continue
            for j, v in self._nf[ext].items():
                out[j] = (out.get(j, 0) + c * v) % self.p
        return {k: v for k, v in out.items() if v}

    def arrow_times(self, arrow: int, combo: dict[int, int]) -> dict[int, int]:
        """Normal form of ``arrow followed by (sum of basis paths)``."""
        a = self.quiver.arrows[arrow]
        out: dict[int, int] = {}
        for k, c in combo.items():
            start, arrows = self.basis[k]
            if start != a.target:
                continue
            for j, v in self._nf[(a.source, (arrow,) + arrows)].items():
                out[j] = (out.get(j, 0) + c * v) % self.p
        return {k: v for k, v in out.items() if v}

    def normal_form(self, path: Path) -> dict[int, int]:
        """Coordinates of a path (any length) in the path basis."""
        start, arrows = path
        combo = {self._index[(start, ())]: 1}
        for a in arrows:
            combo = self.times_arrow(combo, a)
        return combo

    def product(self, first: Path, then: Path) -> dict[int, int]:
        """Normal form of ``first`` followed by ``then`` (zero if not composable)."""
        if self.quiver.path_end(first) != then[0]:
            return {}
        combo = self.normal_form(first)
        for a in then[1]:
            combo = self.times_arrow(combo, a)
        return combo

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> int:
        return self.quiver.vertices

    def paths_between(self, i: int, j: int) -> list[int]:
        return [k for k, path in enumerate(self.basis)
                if path[0] == i and self.quiver.path_end(path) == j]

    # -- modules ----------------------------------------------------------

    def _vertex_label(self, kind: str, i: int) -> str:
        return f"{kind}{i + 1}"

    def _check_vertex(self, i: int) -> None:
        if not 0 <= i < self.vertices:
            raise AlgebraError(f"vertex {i + 1} out of range 1..{self.vertices}")

    @functools.cache
    def projective(self, i: int) -> Module:
        self._check_vertex(i)
        q = self.quiver
        by_vertex = [self.paths_between(i, j) for j in range(self.vertices)]
        pos = [{k: r for r, k in enumerate(ks)} for ks in by_vertex]
        mats = []
        for a_idx, a in enumerate(q.arrows):
            m = la.zeros(len(by_vertex[a.target]), len(by_vertex[a.source]))
            for c, k in enumerate(by_vertex[a.source]):
                for j, v in self.times_arrow({k: 1}, a_idx).items():
                    m[pos[a.target][j], c] = v
            mats.append(m)
        return Module(self, [len(ks) for ks in by_vertex], mats,
                      name=self._vertex_label("P", i))

    @functools.cache
    def injective(self, i: int) -> Module:
        self._check_vertex(i)
        q = self.quiver
        into = [self.paths_between(j, i) for j in range(self.vertices)]
        pos = [{k: r for r, k in enumerate(ks)} for ks in into]
        mats = []
        for a_idx, a in enumerate(q.arrows):
            m = la.zeros(len(into[a.target]), len(into[a.source]))
            for r, k in enumerate(into[a.target]):
                # alpha followed by the path k, expressed over paths source -> i
                for j, v in self.product((a.source, (a_idx,)), self.basis[k]).items():
                    m[r, pos[a.source][j]] = v
            mats.append(m)
        return Module(self, [len(ks) for ks in into], mats, name=self._vertex_label("I", i))

    @functools.cache
    def simple(self, i: int) -> Module:
        self._check_vertex(i)
        dims = [1 if v == i else 0 for v in range(self.vertices)]
        mats = [la.zeros(dims[a.target], dims[a.source]) for a in self.quiver.arrows]
        name = "S" if self.vertices == 1 else self._vertex_label("S", i)
        return Module(self, dims, mats, name=name)

    def projectives(self) -> list[Module]:
        return [self.projective(i) for i in range(self.vertices)]

    def injectives(self) -> list[Module]:
        return [self.injective(i) for i in range(self.vertices)]

    def simples(self) -> list[Module]:
        return [self.simple(i) for i in range(self.vertices)]

    def regular(self) -> DirectSum:
        return direct_sum(self.projectives())

    def dual_regular(self) -> DirectSum:
        """``D(A_A)`` as the sum of the indecomposable injectives."""
        return direct_sum(self.injectives())

    def module(self, dims: Sequence[int], mats: Sequence, name: str = "") -> Module:
        """Representation from per-arrow matrices (validated against the relations)."""
        arrs = []
        for m, a in zip(mats, self.quiver.arrows):
            arrs.append(la.mat(np.asarray(m, dtype=np.int64).reshape(dims[a.target], dims[a.source]),
                               self.p))
        if len(arrs) != len(self.quiver.arrows):
            raise AlgebraError(f"expected {len(self.quiver.arrows)} arrow matrices, got {len(mats)}")
        return Module(self, dims, arrs, name=name)

    def __repr__(self) -> str:
        return f"Algebra({self.name or 'unnamed'}, dim={self.dim}, p={self.p})"

    def __hash__(self) -> int:
        return id(self)

    def __eq__(self, other) -> bool:
        return self is other


def build_algebra(vertices: int, arrows: Sequence[tuple[int, int, str]],
                  relations: Sequence[Sequence[tuple[int, Sequence[str]]]] = (),
                  cap: int = 6, p: int = 2, name: str = "") -> Algebra:
    """Build ``kQ/I`` from 0-based arrows and label-word relations.

    Each relation is a list of ``(coeff, [label, ...])`` terms with labels in
    traversal order.
    """
    q = Quiver.from_edges(vertices, arrows)
    rels = []
    for idx, rel in enumerate(relations):
        terms: dict[tuple[int, ...], int] = {}
        for coeff, word in rel:
            key = tuple(q.arrow_index(w) for w in word)
            if not key:
                raise AlgebraError(f"relation {idx} contains a trivial path")
            terms[key] = (terms.get(key, 0) + int(coeff)) % p
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            raise AlgebraError(f"relation {idx} is zero")
        first = next(iter(terms))
        source = q.arrows[first[0]].source
        target = q.arrows[first[-1]].target
        rels.append(Relation(source, target, tuple((c, k) for k, c in terms.items())))
    return Algebra(q, rels, cap=cap, p=p, name=name)
