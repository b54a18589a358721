"""Exhaustive reference computations for tiny modules over F_2.

Nothing here uses the Hom-space solver for small cases: morphisms are
enumerated as raw block matrices and filtered by the intertwining equations,
in numpy batches.  The functions are exponential and only meant for modules
of total dimension about 4.
"""

from __future__ import annotations

import functools
from typing import Sequence

import numpy as np

from . import linalg as la
from .modules import Module, Morphism, hom

BRUTE_FORCE_BITS = 18

Batch = list  # one (K, rows, cols) array per vertex


@functools.cache
def _bits(count: int, width: int) -> np.ndarray:
    """Rows are the binary expansions of ``0 .. count-1`` (uint8, read-only)."""
    idx = np.arange(count, dtype=np.int64)
    out = ((idx[:, None] >> np.arange(width, dtype=np.int64)) & 1).astype(np.uint8)
    out.setflags(write=False)
    return out


def _check_f2(m: Module) -> None:
    if m.p != 2:
        raise ValueError("exhaustive oracles are implemented over F_2 only")


def morphism_batch(m: Module, n: Module, max_bits: int = BRUTE_FORCE_BITS) -> Batch:
    """All morphisms ``m -> n`` as per-vertex stacks of blocks.

    Raw enumeration of all block matrices when there are at most
    ``max_bits`` entries; beyond that, the span of a solved basis is listed
    (still exhaustive, but no longer independent of the solver).
    """
    _check_f2(m)
    shapes = [(n.dims[v], m.dims[v]) for v in range(len(m.dims))]
    width = sum(r * c for r, c in shapes)
    if width > max_bits:
        hs = hom(m, n)
        if hs.dim > max_bits:
            raise ValueError("hom space too large for exhaustive enumeration")
        elems = [hs.element(c) for c in _bits(2 ** hs.dim, hs.dim)]
        return [np.stack([e.blocks[v] for e in elems]).astype(np.uint8) for v in range(len(shapes))]
    # the intertwining defect is linear in the entries: evaluate it on unit
    # vectors once, then test every candidate with a single product
    defect = _split(np.eye(width, dtype=np.uint8), shapes)
    cols = []
    for a_idx, a in enumerate(m.algebra.quiver.arrows):
        lhs = np.matmul(defect[a.target], m.mats[a_idx].astype(np.uint8))
        rhs = np.matmul(n.mats[a_idx].astype(np.uint8), defect[a.source])
        cols.append(_flat((lhs + rhs) % 2))
    cand = _bits(2 ** width, width)
    if cols:
        table = np.concatenate(cols, axis=1)
        # float32 products of 0/1 entries are exact integers at these sizes
        prod = cand.astype(np.float32) @ table.astype(np.float32)
        ok = ~(prod.astype(np.uint8) & 1).any(axis=1)
        cand = cand[ok]
    return _split(cand, shapes)


def _split(rows: np.ndarray, shapes) -> Batch:
    blocks, off = [], 0
    for r, c in shapes:
        blocks.append(rows[:, off:off + r * c].reshape(len(rows), r, c))
        off += r * c
    return blocks


def _count(batch: Batch) -> int:
    return len(batch[0]) if batch else 1


def _select(batch: Batch, mask: np.ndarray) -> Batch:
    return [b[mask] for b in batch]


def _compose(g: Batch, f: Batch) -> Batch:
    """Pointwise ``g_k o f_k``; either side may be a single morphism (K = 1)."""
    return [np.matmul(a, b) % 2 for a, b in zip(g, f)]


def _equal(a: Batch, b: Batch) -> np.ndarray:
    k = max(_count(a), _count(b))
    out = np.ones(k, dtype=bool)
    for x, y in zip(a, b):
        x, y = np.broadcast_arrays(x, y)
        out &= _flat(x == y).all(axis=1)
    return out


def _flat(x: np.ndarray) -> np.ndarray:
    return x.reshape(x.shape[0], x.shape[1] * x.shape[2])


def _is_zero(a: Batch) -> np.ndarray:
    out = np.ones(_count(a), dtype=bool)
    for x in a:
        out &= ~_flat(x).any(axis=1)
    return out


def _invertible(stack: np.ndarray) -> np.ndarray:
    """Batched invertibility over F_2 by Gaussian elimination."""
    k, r, c = stack.shape
    if r != c:
        return np.zeros(k, dtype=bool)
    a = stack.copy() % 2
    ok = np.ones(k, dtype=bool)
    idx = np.arange(k)
    for col in range(r):
        below = a[:, col:, col] != 0
        ok &= below.any(axis=1)
        piv = col + below.argmax(axis=1)
        rows = a[idx, piv].copy()
        a[idx, piv] = a[idx, col]
        a[idx, col] = rows
        factor = a[:, :, col].copy()
        factor[:, col] = 0
        a ^= factor[:, :, None] * a[:, col][:, None, :]
    return ok


def _iso_mask(batch: Batch) -> np.ndarray:
    out = np.ones(_count(batch), dtype=bool)
    for b in batch:
        out &= _invertible(b)
    return out


def _to_morphisms(m: Module, n: Module, batch: Batch) -> list[Morphism]:
    wide = [b.astype(np.int64) for b in batch]
    return [Morphism(m, n, [b[k] for b in wide], check=False) for k in range(_count(batch))]


def _single(f: Morphism) -> Batch:
    return [b[None].astype(np.uint8) for b in f.blocks]


def all_morphisms(m: Module, n: Module, max_bits: int = BRUTE_FORCE_BITS) -> list[Morphism]:
    """Every morphism ``m -> n``."""
    return _to_morphisms(m, n, morphism_batch(m, n, max_bits))


def endomorphisms(m: Module) -> list[Morphism]:
    return all_morphisms(m, m)


def _idempotent_batch(m: Module) -> Batch:
    e = morphism_batch(m, m)
    return _select(e, _equal(_compose(e, e), e))


def idempotents(m: Module) -> list[Morphism]:
    return _to_morphisms(m, m, _idempotent_batch(m))


def is_indecomposable(m: Module) -> bool:
    """Exactly two idempotents, zero and the identity."""
    if m.is_zero():
        return False
    return _count(_idempotent_batch(m)) == 2


def _image_module(e: Morphism) -> Module:
    p = e.p
    cols = [la.column_basis(b, p) for b in e.blocks]
    mats = []
    for a_idx, a in enumerate(e.source.algebra.quiver.arrows):
        rhs = la.matmul(e.source.mats[a_idx], cols[a.source], p)
        mats.append(la.solve(cols[a.target], rhs, p)[0])
    return Module(e.source.algebra, [c.shape[1] for c in cols], mats, check=True)


_DECOMP: dict = {}


def decompose(m: Module) -> list[Module]:
    """Indecomposable summands, found by splitting along idempotents."""
    if m.is_zero():
        return []
    if m.key in _DECOMP:
        return _DECOMP[m.key]
    ident = Morphism.identity(m)
    out = [m]
    for e in idempotents(m):
        if not e.is_zero() and e != ident:
            out = decompose(_image_module(e)) + decompose(_image_module(ident - e))
            break
    _DECOMP[m.key] = out
    return out


def isomorphic(a: Module, b: Module) -> bool:
    """Brute force: some morphism ``a -> b`` is bijective."""
    if a.dims != b.dims:
        return False
    if a.is_zero():
        return True
    return bool(_iso_mask(morphism_batch(a, b)).any())


def add_membership_exhaustive(m: Module, generators: Sequence[Module]) -> bool:
    """Every indecomposable summand of ``m`` is isomorphic to one of a generator."""
    pieces = [s for g in generators for s in decompose(g)]
    return all(any(isomorphic(s, t) for t in pieces) for s in decompose(m))


def max_killed_summand(f: Morphism) -> int:
    """Largest total dimension of a summand of the source on which ``f`` vanishes."""
    ids = _idempotent_batch(f.source)
    killed = _select(ids, _is_zero(_compose(_single(f), ids)))
    return max((sum(e.ranks()) for e in _to_morphisms(f.source, f.source, killed)), default=0)


def right_minimal_exhaustive(f: Morphism) -> bool:
    """Every ``h`` with ``f h = f`` is an automorphism."""
    h = morphism_batch(f.source, f.source)
    fixed = _select(h, _equal(_compose(_single(f), h), _single(f)))
    return bool(_iso_mask(fixed).all())


def left_minimal_exhaustive(g: Morphism) -> bool:
    """Every ``h`` with ``h g = g`` is an automorphism."""
    h = morphism_batch(g.target, g.target)
    fixed = _select(h, _equal(_compose(h, _single(g)), _single(g)))
    return bool(_iso_mask(fixed).all())


def all_modules(algebra, dims: Sequence[int]) -> list[Module]:
    """Every representation with the given dimension vector (raw enumeration)."""
    if algebra.p != 2:
        raise ValueError("exhaustive oracles are implemented over F_2 only")
    arrows = algebra.quiver.arrows
    shapes = [(dims[a.target], dims[a.source]) for a in arrows]
    width = sum(r * c for r, c in shapes)
    if width > BRUTE_FORCE_BITS:
        raise ValueError("too many representations to enumerate")
    out = []
    for bits in _bits(2 ** width, width).astype(np.int64):
        mats, off = [], 0
        for r, c in shapes:
            mats.append(bits[off:off + r * c].reshape(r, c))
            off += r * c
        try:
            out.append(Module(algebra, dims, mats, check=True))
        except ValueError:
            continue
    return out


def dimension_vectors(vertices: int, total: int) -> list[tuple[int, ...]]:
    """All dimension vectors with the given total dimension."""
    if vertices == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in dimension_vectors(vertices - 1, total - first):
            out.append((first,) + rest)
    return out
