"""Finite-dimensional representations of a bound quiver and their morphisms.

A module stores one dimension per vertex and one matrix per arrow (shape
``dims[target] x dims[source]``).  Hom spaces are solution spaces of the
commuting-square equations, one block of equations per arrow.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

import numpy as np

from . import linalg as la

if TYPE_CHECKING:  # pragma: no cover
    from .quiver import Algebra


class ModuleError(ValueError):
    """A representation or morphism violates its defining equations."""


class Module:
    __slots__ = ("algebra", "dims", "mats", "name", "_key")

    def __init__(self, algebra: "Algebra", dims: Sequence[int], mats: Sequence[np.ndarray],
                 name: str = "", check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        p = algebra.p
        self.mats = tuple(np.asarray(m, dtype=np.int64).reshape(
            self.dims[a.target], self.dims[a.source]) % p
            for m, a in zip(mats, algebra.quiver.arrows))
        self.name = name
        if check:
            self.validate()
        for m in self.mats:
            m.setflags(write=False)
        self._key = (id(algebra), self.dims, tuple(m.tobytes() for m in self.mats))

    def validate(self) -> None:
        q = self.algebra.quiver
        if len(self.dims) != q.vertices:
            raise ModuleError(f"module {self.name!r}: expected {q.vertices} dimensions")
        if len(self.mats) != len(q.arrows):
            raise ModuleError(f"module {self.name!r}: expected {len(q.arrows)} arrow matrices")
        for idx, rel in enumerate(self.algebra.relations):
            if self.relation_matrix(rel).any():
                raise ModuleError(f"module {self.name!r} violates relation {idx} "
                                  f"({self.algebra.describe_relation(rel)})")

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def key(self):
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Module) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        label = self.name or "Module"
        return f"{label}{list(self.dims)}"

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, arrows: Sequence[int], start: int) -> np.ndarray:
        """Action of a path given as arrow indices in traversal order."""
        m = la.eye(self.dims[start])
        for a in arrows:
            m = la.matmul(self.mats[a], m, self.p)
        return m

    def relation_matrix(self, rel) -> np.ndarray:
        s, t = rel.source, rel.target
        acc = la.zeros(self.dims[t], self.dims[s])
        for coeff, arrows in rel.terms:
            acc = (acc + coeff * self.path_matrix(arrows, s)) % self.p
        return acc

    def renamed(self, name: str) -> "Module":
        return Module(self.algebra, self.dims, self.mats, name=name, check=False)


def zero_module(algebra: "Algebra") -> Module:
    n = algebra.quiver.vertices
    return Module(algebra, [0] * n, [la.zeros(0, 0) for _ in algebra.quiver.arrows], name="0",
                  check=False)


class Morphism:
    """Vertex-indexed family of matrices intertwining two modules."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Module, target: Module, blocks: Sequence[np.ndarray],
                 check: bool = True):
        if source.algebra is not target.algebra:
            raise ModuleError("morphism between modules over different algebras")
        p = source.p
        self.source = source
        self.target = target
        self.blocks = tuple(np.asarray(b, dtype=np.int64).reshape(target.dims[v], source.dims[v]) % p
                            for v, b in enumerate(blocks))
        if len(self.blocks) != len(source.dims):
            raise ModuleError("one block per vertex required")
        if check:
            self.validate()

    def validate(self) -> None:
        p = self.source.p
        for a_idx, a in enumerate(self.source.algebra.quiver.arrows):
            lhs = la.matmul(self.blocks[a.target], self.source.mats[a_idx], p)
            rhs = la.matmul(self.target.mats[a_idx], self.blocks[a.source], p)
            if not np.array_equal(lhs, rhs):
                raise ModuleError(f"morphism does not intertwine arrow {a.label!r} "
                                  f"({a.source + 1}->{a.target + 1}) at vertex {a.target + 1}")

    @property
    def p(self) -> int:
        return self.source.p

    @classmethod
    def identity(cls, m: Module) -> "Morphism":
        return cls(m, m, [la.eye(d) for d in m.dims], check=False)

    @classmethod
    def zero(cls, source: Module, target: Module) -> "Morphism":
        return cls(source, target, [la.zeros(t, s) for s, t in zip(source.dims, target.dims)],
                   check=False)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """``g @ f`` is the composite ``g o f``."""
        if other.target != self.source:
            raise ModuleError("composition of non-composable morphisms")
        return Morphism(other.source, self.target,
                        [la.matmul(g, f, self.p) for g, f in zip(self.blocks, other.blocks)],
                        check=False)

    def __add__(self, other: "Morphism") -> "Morphism":
        self._same_ends(other)
        return Morphism(self.source, self.target,
                        [(a + b) % self.p for a, b in zip(self.blocks, other.blocks)], check=False)

    def __sub__(self, other: "Morphism") -> "Morphism":
        self._same_ends(other)
        return Morphism(self.source, self.target,
                        [(a - b) % self.p for a, b in zip(self.blocks, other.blocks)], check=False)

    def __neg__(self) -> "Morphism":
        return self.scale(-1)

    def scale(self, c: int) -> "Morphism":
        return Morphism(self.source, self.target, [(c * b) % self.p for b in self.blocks],
                        check=False)

    def _same_ends(self, other: "Morphism") -> None:
        if self.source != other.source or self.target != other.target:
            raise ModuleError("morphisms have different source or target")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Morphism) and self.source == other.source
                and self.target == other.target
                and all(np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks)))

    def __hash__(self):
        return hash((self.source, self.target, tuple(b.tobytes() for b in self.blocks)))

    def __repr__(self) -> str:
        return f"Morphism({self.source!r} -> {self.target!r})"

    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks)

    def ranks(self) -> list[int]:
        return [la.rank(b, self.p) for b in self.blocks]

    def is_mono(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.source.dims))

    def is_epi(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.target.dims))

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_mono()

    def vec(self) -> np.ndarray:
        if not self.blocks:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([b.ravel() for b in self.blocks])

    def total(self) -> np.ndarray:
        """Block-diagonal matrix over all vertices."""
        out = la.zeros(self.target.total_dim, self.source.total_dim)
        r = c = 0
        for b in self.blocks:
            out[r:r + b.shape[0], c:c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        return out

    @classmethod
    def from_total(cls, source: Module, target: Module, total: np.ndarray, check=False) -> "Morphism":
        blocks = []
        r = c = 0
        for s, t in zip(source.dims, target.dims):
            blocks.append(total[r:r + t, c:c + s])
            r += t
            c += s
        return cls(source, target, blocks, check=check)

    def inverse(self) -> "Morphism":
        return Morphism(self.target, self.source, [la.inverse(b, self.p) for b in self.blocks],
                        check=False)


# ---------------------------------------------------------------------------
# Hom spaces


class HomSpace:
    """Basis of Hom(M, N) together with coordinate extraction."""

    def __init__(self, source: Module, target: Module):
        self.source = source
        self.target = target
        p = source.p
        alg = source.algebra
        m, n = source.dims, target.dims
        offs = np.cumsum([0] + [n[v] * m[v] for v in range(len(m))])
        self.offsets = offs
        nvar = int(offs[-1])
        rows = []
        for a_idx, a in enumerate(alg.quiver.arrows):
            s, t = a.source, a.target
            nr = n[t] * m[s]
            if nr == 0:
                continue
            block = la.zeros(nr, nvar)
            # f_t M_a - N_a f_s
            block[:, offs[t]:offs[t + 1]] += np.kron(la.eye(n[t]), source.mats[a_idx].T)
            block[:, offs[s]:offs[s + 1]] -= np.kron(target.mats[a_idx], la.eye(m[s]))
            rows.append(block % p)
        system = np.vstack(rows) if rows else la.zeros(0, nvar)
        self.matrix = la.kernel_basis(system, p)
        self.dim = self.matrix.shape[1]
        self._coords = la.Coordinates(self.matrix, p)

    def element(self, coords) -> Morphism:
        vec = la.matmul(self.matrix, np.asarray(coords, dtype=np.int64).reshape(-1, 1),
                        self.source.p).ravel()
        return self._from_vec(vec)

    def _from_vec(self, vec: np.ndarray) -> Morphism:
        m, n = self.source.dims, self.target.dims
        blocks = [vec[self.offsets[v]:self.offsets[v + 1]].reshape(n[v], m[v])
                  for v in range(len(m))]
        return Morphism(self.source, self.target, blocks, check=False)

    @functools.cached_property
    def basis(self) -> list[Morphism]:
        return [self._from_vec(self.matrix[:, j]) for j in range(self.dim)]

    def coords(self, f: Morphism) -> np.ndarray:
        return self._coords.coords(f.vec())

    def coords_many(self, vecs: np.ndarray) -> np.ndarray:
        """Coordinates of the columns of ``vecs`` (each a vectorised morphism)."""
        return self._coords.coords(vecs)

    def contains(self, f: Morphism) -> bool:
        c = self.coords(f)
        return np.array_equal(la.matmul(self.matrix, c.reshape(-1, 1), f.p).ravel(), f.vec())


@functools.lru_cache(maxsize=50_000)
def hom(source: Module, target: Module) -> HomSpace:
    if source.algebra is not target.algebra:
        raise ModuleError("Hom between modules over different algebras")
    return HomSpace(source, target)


def hom_basis(m: Module, n: Module) -> list[Morphism]:
    return hom(m, n).basis


def hom_dim(m: Module, n: Module) -> int:
    return hom(m, n).dim


def _post_linear(f: Morphism, g_dims: Sequence[int]) -> list[np.ndarray]:
    # vec(f_v X) = kron(f_v, I) vec(X) for X of shape (src_v, g_v), row-major
    return [np.kron(b, la.eye(g)) for b, g in zip(f.blocks, g_dims)]


def _pre_linear(f: Morphism, h_dims: Sequence[int]) -> list[np.ndarray]:
    # vec(X f_v) = kron(I, f_v^T) vec(X) for X of shape (h_v, tgt_v)
    return [np.kron(la.eye(h), b.T) for b, h in zip(f.blocks, h_dims)]


def _block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = la.zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def post_matrix(g_mod: Module, f: Morphism) -> np.ndarray:
    """Matrix of Hom(G, f): Hom(G, M) -> Hom(G, N) in hom-space coordinates."""
    src, tgt = hom(g_mod, f.source), hom(g_mod, f.target)
    if src.dim == 0 or tgt.dim == 0:
        return la.zeros(tgt.dim, src.dim)
    lin = _block_diag(_post_linear(f, g_mod.dims))
    return tgt.coords_many(la.matmul(lin, src.matrix, f.p))


def pre_matrix(f: Morphism, h_mod: Module) -> np.ndarray:
    """Matrix of Hom(f, H): Hom(N, H) -> Hom(M, H) in hom-space coordinates."""
    src, tgt = hom(f.target, h_mod), hom(f.source, h_mod)
    if src.dim == 0 or tgt.dim == 0:
        return la.zeros(tgt.dim, src.dim)
    lin = _block_diag(_pre_linear(f, h_mod.dims))
    return tgt.coords_many(la.matmul(lin, src.matrix, f.p))


def random_morphism(m: Module, n: Module, rng: np.random.Generator) -> Morphism:
    h = hom(m, n)
    return h.element(rng.integers(0, m.p, size=h.dim))


# ---------------------------------------------------------------------------
# Kernels, cokernels, images, sums


def kernel(f: Morphism) -> tuple[Module, Morphism]:
    p = f.p
    src = f.source
    ks = [la.kernel_basis(b, p) for b in f.blocks]
    mats = []
    for a_idx, a in enumerate(src.algebra.quiver.arrows):
        rhs = la.matmul(src.mats[a_idx], ks[a.source], p)
        sol = la.solve(ks[a.target], rhs, p)
        assert sol is not None, "kernel is not a submodule"
        mats.append(sol[0])
    k = Module(src.algebra, [x.shape[1] for x in ks], mats, check=False)
    return k, Morphism(k, src, ks, check=False)


def cokernel(f: Morphism) -> tuple[Module, Morphism]:
    p = f.p
    tgt = f.target
    qs = [la.kernel_basis(b.T, p).T for b in f.blocks]
    rinv = [la.right_inverse(q, p) if q.shape[0] else la.zeros(q.shape[1], 0) for q in qs]
    mats = []
    for a_idx, a in enumerate(tgt.algebra.quiver.arrows):
        mats.append(la.matmul_chain([qs[a.target], tgt.mats[a_idx], rinv[a.source]], p))
    c = Module(tgt.algebra, [q.shape[0] for q in qs], mats, check=False)
    return c, Morphism(tgt, c, qs, check=False)


def image(f: Morphism) -> tuple[Module, Morphism, Morphism]:
    """Image factorisation ``f = incl o coimage``; returns ``(im, incl, coimage)``."""
    p = f.p
    tgt = f.target
    cols = [la.column_basis(b, p) for b in f.blocks]
    mats = []
    for a_idx, a in enumerate(tgt.algebra.quiver.arrows):
        rhs = la.matmul(tgt.mats[a_idx], cols[a.source], p)
        sol = la.solve(cols[a.target], rhs, p)
        assert sol is not None, "image is not a submodule"
        mats.append(sol[0])
    im = Module(tgt.algebra, [c.shape[1] for c in cols], mats, check=False)
    incl = Morphism(im, tgt, cols, check=False)
    coim = Morphism(f.source, im, [la.solve(c, b, p)[0] for c, b in zip(cols, f.blocks)],
                    check=False)
    return im, incl, coim


@dataclass
class DirectSum:
    module: Module
    parts: tuple[Module, ...]
    injections: tuple[Morphism, ...]
    projections: tuple[Morphism, ...]


def direct_sum(parts: Sequence[Module], algebra: Optional["Algebra"] = None) -> DirectSum:
    parts = tuple(parts)
    if not parts:
        if algebra is None:
            raise ValueError("empty direct sum needs an explicit algebra")
        z = zero_module(algebra)
        return DirectSum(z, (), (), ())
    alg = parts[0].algebra
    nv = alg.quiver.vertices
    dims = [sum(m.dims[v] for m in parts) for v in range(nv)]
    mats = [_block_diag([m.mats[a] for m in parts]) for a in range(len(alg.quiver.arrows))]
    total = Module(alg, dims, mats, check=False)
    injections, projections = [], []
    offs = [0] * nv
    for m in parts:
        inj, proj = [], []
        for v in range(nv):
            i = la.zeros(dims[v], m.dims[v])
            i[offs[v]:offs[v] + m.dims[v], :] = la.eye(m.dims[v])
            inj.append(i)
            proj.append(i.T.copy())
            offs[v] += m.dims[v]
        injections.append(Morphism(m, total, inj, check=False))
        projections.append(Morphism(total, m, proj, check=False))
    return DirectSum(total, parts, tuple(injections), tuple(projections))


def block_morphism(src: DirectSum, tgt: DirectSum, entries) -> Morphism:
    """Morphism between direct sums from a matrix of component morphisms.

    ``entries[i][j]`` maps ``src.parts[j]`` to ``tgt.parts[i]``; ``None``
    means zero.
    """
    acc = Morphism.zero(src.module, tgt.module)
    for i, row in enumerate(entries):
        for j, e in enumerate(row):
            if e is not None:
                acc = acc + tgt.injections[i] @ e @ src.projections[j]
    return acc


def factor_through_mono(mono: Morphism, f: Morphism) -> Morphism:
    """The unique ``h`` with ``mono o h = f`` (image of ``f`` must lie in ``mono``)."""
    p = f.p
    blocks = []
    for mb, fb in zip(mono.blocks, f.blocks):
        sol = la.solve(mb, fb, p)
        if sol is None:
            raise ModuleError("morphism does not factor through the monomorphism")
        blocks.append(sol[0])
    return Morphism(f.source, mono.source, blocks, check=False)


def factor_through_epi(epi: Morphism, f: Morphism) -> Morphism:
    """The unique ``h`` with ``h o epi = f`` (``f`` must vanish on ``ker epi``)."""
    p = f.p
    blocks = []
    for eb, fb in zip(epi.blocks, f.blocks):
        sol = la.solve(eb.T, fb.T, p)
        if sol is None:
            raise ModuleError("morphism does not factor through the epimorphism")
        blocks.append(sol[0].T)
    return Morphism(epi.target, f.target, blocks, check=False)


# ---------------------------------------------------------------------------
# Short exact sequences, pullbacks, pushouts


@dataclass
class ShortExactSequence:
    """``0 -> L --left--> M --right--> N -> 0``."""

    left: Morphism
    right: Morphism

    @property
    def terms(self) -> tuple[Module, Module, Module]:
        return self.left.source, self.left.target, self.right.target

    def is_exact(self) -> bool:
        if self.left.target != self.right.source:
            return False
        if not (self.right @ self.left).is_zero():
            return False
        l_rank = self.left.ranks()
        r_rank = self.right.ranks()
        L, M, N = self.terms
        return all(l_rank[v] == L.dims[v] and r_rank[v] == N.dims[v]
                   and L.dims[v] + N.dims[v] == M.dims[v] for v in range(len(M.dims)))

    def is_split(self) -> bool:
        L, M, N = self.terms
        h = hom(N, M)
        if h.dim == 0:
            return N.is_zero()
        target = Morphism.identity(N).vec()
        cols = np.stack([(self.right @ b).vec() for b in h.basis], axis=1)
        return la.solve(cols, target.reshape(-1, 1), N.p) is not None

    def rel_table(self, generators: Sequence[Module], side: str) -> list[list[int]]:
        L, M, N = self.terms
        return [hom_homology([L, M, N], [self.left, self.right], g, side) for g in generators]

    def certify(self, x_generators: Sequence[Module] = (),
                y_generators: Sequence[Module] = ()) -> "StarAcyclicWitness":
        right = self.rel_table(x_generators, "right")
        left = self.rel_table(y_generators, "left")
        return StarAcyclicWitness(self, list(x_generators), list(y_generators), right, left)


@dataclass
class StarAcyclicWitness:
    """Per-generator homology of Hom(G, seq) and Hom(seq, H)."""

    sequence: ShortExactSequence
    x_generators: list
    y_generators: list
    right_table: list
    left_table: list

    @property
    def right_acyclic(self) -> bool:
        return all(not any(row) for row in self.right_table)

    @property
    def left_acyclic(self) -> bool:
        return all(not any(row) for row in self.left_table)

    @property
    def star_acyclic(self) -> bool:
        return self.sequence.is_exact() and self.right_acyclic and self.left_acyclic

    def recheck(self) -> bool:
        again = self.sequence.certify(self.x_generators, self.y_generators)
        return again.right_table == self.right_table and again.left_table == self.left_table


def hom_homology(objects: Sequence[Module], maps: Sequence[Morphism], g: Module,
                 side: str) -> list[int]:
    """Homology of Hom(G, -) (``side='right'``) or Hom(-, G) (``'left'``).

    ``objects`` with ``maps[i]: objects[i] -> objects[i+1]``; entry ``i`` of
    the result is the homology at ``objects[i]``.
    """
    p = g.p
    if side == "right":
        dims = [hom_dim(g, o) for o in objects]
        mats = [post_matrix(g, f) for f in maps]
        return la.homology_dims(dims, mats, p)
    if side == "left":
        dims = [hom_dim(o, g) for o in objects][::-1]
        mats = [pre_matrix(f, g) for f in maps][::-1]
        return la.homology_dims(dims, mats, p)[::-1]
    raise ValueError(f"side must be 'right' or 'left', not {side!r}")


@dataclass
class PullbackSquare:
    """``obj --g_prime--> N'``, ``obj --beta--> M`` over ``M --g--> N <--alpha-- N'``."""

    obj: Module
    beta: Morphism
    g_prime: Morphism
    top: Optional[ShortExactSequence] = None
    bottom: Optional[ShortExactSequence] = None


def pullback(g: Morphism, alpha: Morphism, left: Optional[Morphism] = None) -> PullbackSquare:
    """Pull back ``g: M -> N`` along ``alpha: N' -> N``.

    If ``g`` is epi, the induced top row ``0 -> L -> obj -> N' -> 0`` is built
    with ``L = ker g`` (or the source of ``left`` when supplied).
    """
    if g.target != alpha.target:
        raise ModuleError("pullback needs a common target")
    ds = direct_sum([g.source, alpha.source])
    diff = g @ ds.projections[0] - alpha @ ds.projections[1]
    obj, incl = kernel(diff)
    beta = ds.projections[0] @ incl
    g_prime = ds.projections[1] @ incl
    square = PullbackSquare(obj, beta, g_prime)
    if g.is_epi():
        if left is None:
            _, left = kernel(g)
        f_prime = factor_through_mono(incl, ds.injections[0] @ left)
        square.top = ShortExactSequence(f_prime, g_prime)
        square.bottom = ShortExactSequence(left, g)
    return square


@dataclass
class PushoutSquare:
    """``M --t--> obj <--f_pp-- L'`` under ``M <--f-- L --s--> L'``."""

    obj: Module
    t: Morphism
    f_pp: Morphism
    top: Optional[ShortExactSequence] = None
    bottom: Optional[ShortExactSequence] = None


def pushout(f: Morphism, s: Morphism, right: Optional[Morphism] = None) -> PushoutSquare:
    """Push out ``f: L -> M`` along ``s: L -> L'``.

    If ``f`` is mono, the induced bottom row ``0 -> L' -> obj -> N -> 0`` is
    built with ``N = coker f`` (or the target of ``right`` when supplied).
    """
    if f.source != s.source:
        raise ModuleError("pushout needs a common source")
    ds = direct_sum([f.target, s.target])
    diff = ds.injections[0] @ f - ds.injections[1] @ s
    obj, proj = cokernel(diff)
    t = proj @ ds.injections[0]
    f_pp = proj @ ds.injections[1]
    square = PushoutSquare(obj, t, f_pp)
    if f.is_mono():
        if right is None:
            _, right = cokernel(f)
        g_pp = factor_through_epi(proj, right @ ds.projections[0])
        square.top = ShortExactSequence(f, right)
        square.bottom = ShortExactSequence(f_pp, g_pp)
    return square


# ---------------------------------------------------------------------------
# Additive closure and minimal morphisms


@dataclass
class SplittingWitness:
    """``approximation o section = id``: the module is a summand of a generator sum."""

    approximation: Morphism
    section: Morphism

    def verify(self) -> bool:
        comp = self.approximation @ self.section
        return comp == Morphism.identity(self.section.source)


def add_membership(m: Module, generators: Sequence[Module]) -> Optional[SplittingWitness]:
    """Decide whether ``m`` lies in add(generators).

    The evaluation map ``f: (+)_G G^{dim Hom(G, m)} -> m`` is a right
    approximation; ``m`` is in add iff ``f`` has a section.  The section is
    searched as a combination of ``inj_j o h`` with ``h`` in Hom(m, G), so the
    big sum is never formed unless a witness exists.
    """
    alg = m.algebra
    if m.is_zero():
        z = zero_module(alg)
        return SplittingWitness(Morphism.zero(z, m), Morphism.zero(m, z))
    p = m.p
    columns, index = [], []
    for gi, g in enumerate(generators):
        ev = hom_basis(g, m)
        back = hom_basis(m, g)
        for j, e in enumerate(ev):
            for k, h in enumerate(back):
                columns.append((e @ h).vec())
                index.append((gi, j, k))
    if not columns:
        return None
    system = np.stack(columns, axis=1)
    ident = Morphism.identity(m).vec().reshape(-1, 1)
    sol = la.solve(system, ident, p)
    if sol is None:
        return None
    coeffs = sol[0].ravel()
    parts, maps = [], []
    for gi, g in enumerate(generators):
        for e in hom_basis(g, m):
            parts.append(g)
            maps.append(e)
    ds = direct_sum(parts)
    approx = Morphism.zero(ds.module, m)
    for inj, e, proj in zip(ds.injections, maps, ds.projections):
        approx = approx + e @ proj
    section = Morphism.zero(m, ds.module)
    slot = {}
    pos = 0
    for gi, g in enumerate(generators):
        for j in range(hom_dim(g, m)):
            slot[(gi, j)] = pos
            pos += 1
    for c, (gi, j, k) in zip(coeffs, index):
        if c:
            h = hom_basis(m, generators[gi])[k]
            section = section + (ds.injections[slot[(gi, j)]] @ h).scale(int(c))
    witness = SplittingWitness(approx, section)
    assert witness.verify()
    return witness


def in_add(m: Module, generators: Sequence[Module]) -> bool:
    return add_membership(m, generators) is not None


def is_isomorphic(a: Module, b: Module, rng: Optional[np.random.Generator] = None,
                  tries: int = 400) -> Optional[Morphism]:
    """An explicit isomorphism ``a -> b`` or ``None``.

    Candidates are drawn from Hom(a, b): exhaustively when it has at most
    4096 elements, otherwise the basis and then seeded samples are tried, so
    a ``None`` on a large Hom space is a search miss rather than a proof.
    """
    if a.dims != b.dims:
        return None
    if a.is_zero():
        return Morphism.zero(a, b)
    h = hom(a, b)
    if h.dim == 0:
        return None
    p = a.p
    if p ** h.dim <= 4096:
        for coeffs in np.ndindex(*([p] * h.dim)):
            if any(coeffs):
                f = h.element(coeffs)
                if f.is_iso():
                    return f
        return None
    rng = rng if rng is not None else np.random.default_rng(0)
    for f in h.basis:
        if f.is_iso():
            return f
    for _ in range(tries):
        f = h.element(rng.integers(0, p, size=h.dim))
        if f.is_iso():
            return f
    return None


def _endo_ideal(f: Morphism, side: str) -> list[Morphism]:
    """Basis of {t : f o t = 0} (side='right') or {t : t o f = 0} (side='left')."""
    if side == "right":
        x = f.source
        mat = post_matrix(x, f)
        h = hom(x, x)
    else:
        x = f.target
        mat = pre_matrix(f, x)
        h = hom(x, x)
    ker = la.kernel_basis(mat, f.p)
    return [h.element(ker[:, j]) for j in range(ker.shape[1])]


def _find_idempotent(ideal: Sequence[Morphism], rng: np.random.Generator) -> Optional[Morphism]:
    """Nonzero idempotent in a one-sided ideal of End(X), or ``None`` if nil."""
    if not ideal:
        return None
    x = ideal[0].source
    p = x.p
    totals = [t.total() for t in ideal]
    if la.span_is_nilpotent(totals, p):
        return None
    found = la.split_idempotent_search(totals, p, tries=4000, rng=rng)
    if found is None:
        # the identity itself can be the only idempotent (ideal = End(X))
        ident = la.eye(x.total_dim)
        coeff_sol = la.solve(np.stack([t.ravel() for t in totals], axis=1),
                             ident.reshape(-1, 1), p)
        if coeff_sol is not None:
            return Morphism.identity(x)
        raise RuntimeError("ideal is not nilpotent but no idempotent was found")
    return Morphism.from_total(x, x, found)


@dataclass
class MinimalReduction:
    """``f = f_min o pr_min`` on ``source = kept (+) discarded`` with ``f`` zero on ``discarded``."""

    original: Morphism
    minimal: Morphism
    discarded: Module
    kept_incl: Morphism
    discarded_incl: Morphism
    kept_proj: Morphism
    rounds: int = 0


def right_minimal_reduction(f: Morphism, rng: Optional[np.random.Generator] = None) -> MinimalReduction:
    """Split off the largest summand of the source on which ``f`` vanishes.

    The remaining restriction is right minimal: the ideal
    {t in End(source) : f o t = 0} is certified nilpotent.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    x = f.source
    cur = f
    kept_incl = Morphism.identity(x)
    kept_proj = Morphism.identity(x)
    discarded: list[tuple[Module, Morphism]] = []
    rounds = 0
    while not cur.source.is_zero():
        e = _find_idempotent(_endo_ideal(cur, "right"), rng)
        if e is None:
            break
        rounds += 1
        one = Morphism.identity(cur.source)
        keep_mod, keep_i, keep_p = image(one - e)
        disc_mod, disc_i, _ = image(e)
        discarded.append((disc_mod, kept_incl @ disc_i))
        kept_incl = kept_incl @ keep_i
        kept_proj = keep_p @ kept_proj
        cur = cur @ keep_i
    alg = x.algebra
    ds = direct_sum([d for d, _ in discarded], algebra=alg)
    disc_incl = Morphism.zero(ds.module, x)
    for (d, inc), pr in zip(discarded, ds.projections):
        disc_incl = disc_incl + inc @ pr
    return MinimalReduction(f, cur, ds.module, kept_incl, disc_incl, kept_proj, rounds)


def left_minimal_reduction(g: Morphism, rng: Optional[np.random.Generator] = None) -> MinimalReduction:
    """Dual of :func:`right_minimal_reduction`: strips summands of the target
    that ``g`` does not reach.  ``minimal = kept_proj o g``."""
    rng = rng if rng is not None else np.random.default_rng(0)
    y = g.target
    cur = g
    kept_incl = Morphism.identity(y)
    kept_proj = Morphism.identity(y)
    discarded: list[tuple[Module, Morphism]] = []
    rounds = 0
    while not cur.target.is_zero():
        e = _find_idempotent(_endo_ideal(cur, "left"), rng)
        if e is None:
            break
        rounds += 1
        one = Morphism.identity(cur.target)
        keep_mod, keep_i, keep_p = image(one - e)
        disc_mod, disc_i, _ = image(e)
        discarded.append((disc_mod, kept_incl @ disc_i))
        kept_incl = kept_incl @ keep_i
        kept_proj = keep_p @ kept_proj
        cur = keep_p @ cur
    ds = direct_sum([d for d, _ in discarded], algebra=y.algebra)
    disc_incl = Morphism.zero(ds.module, y)
    for (d, inc), pr in zip(discarded, ds.projections):
        disc_incl = disc_incl + inc @ pr
    return MinimalReduction(g, cur, ds.module, kept_incl, disc_incl, kept_proj, rounds)


def is_right_minimal(f: Morphism) -> bool:
    ideal = _endo_ideal(f, "right")
    return la.span_is_nilpotent([t.total() for t in ideal], f.p) if ideal else True


def is_left_minimal(g: Morphism) -> bool:
    ideal = _endo_ideal(g, "left")
    return la.span_is_nilpotent([t.total() for t in ideal], g.p) if ideal else True
