"""Bounded cochain complexes of modules, chain maps, cones and hom complexes.

Indexing is cohomological: ``d^n: C^n -> C^{n+1}``.  A complex is stored by
its lowest degree ``lo`` and the consecutive terms from there; everything
outside is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .modules import (Module, Morphism, direct_sum, hom, hom_homology, post_matrix,
                      pre_matrix, zero_module)


class ComplexError(ValueError):
    """Differentials do not square to zero or a chain map fails to commute."""


class Complex:
    __slots__ = ("algebra", "lo", "terms", "diffs")

    def __init__(self, algebra, lo: int, terms: Sequence[Module],
                 diffs: Sequence[Morphism], check: bool = True):
        self.algebra = algebra
        self.lo = int(lo)
        self.terms = tuple(terms)
        self.diffs = tuple(diffs)
        if len(self.diffs) != max(len(self.terms) - 1, 0):
            raise ComplexError("need one differential between consecutive terms")
        if check:
            self.validate()

    def validate(self) -> None:
        for k, d in enumerate(self.diffs):
            if d.source != self.terms[k] or d.target != self.terms[k + 1]:
                raise ComplexError(f"differential in degree {self.lo + k} has wrong ends")
        for k in range(len(self.diffs) - 1):
            if not (self.diffs[k + 1] @ self.diffs[k]).is_zero():
                raise ComplexError(f"d^{self.lo + k + 1} o d^{self.lo + k} is not zero")

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, n: int) -> Module:
        if self.lo <= n <= self.hi:
            return self.terms[n - self.lo]
        return zero_module(self.algebra)

    def d(self, n: int) -> Morphism:
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return Morphism.zero(self.term(n), self.term(n + 1))

    def support(self) -> list[int]:
        return [n for n in self.degrees if not self.term(n).is_zero()]

    def width(self) -> int:
        s = self.support()
        return s[-1] - s[0] + 1 if s else 0

    def trimmed(self) -> "Complex":
        """Same complex with zero terms at both ends removed."""
        s = self.support()
        if not s:
            return Complex(self.algebra, 0, [], [], check=False)
        lo, hi = s[0], s[-1]
        return Complex(self.algebra, lo, [self.term(n) for n in range(lo, hi + 1)],
                       [self.d(n) for n in range(lo, hi)], check=False)

    def on_range(self, lo: int, hi: int) -> "Complex":
        """View over degrees ``lo..hi`` (must contain the support)."""
        s = self.support()
        if s and (s[0] < lo or s[-1] > hi):
            raise ComplexError("range does not contain the support")
        return Complex(self.algebra, lo, [self.term(n) for n in range(lo, hi + 1)],
                       [self.d(n) for n in range(lo, hi)], check=False)

    def shift(self, k: int) -> "Complex":
        """``X[k]`` with ``X[k]^n = X^{n+k}`` and differential ``(-1)^k d``."""
        sign = -1 if k % 2 else 1
        return Complex(self.algebra, self.lo - k, self.terms,
                       [d.scale(sign) for d in self.diffs], check=False)

    def homology(self) -> dict[int, list[int]]:
        """Per-degree homology dimension vectors."""
        p = self.algebra.p
        out = {}
        nv = self.algebra.vertices
        per_vertex = []
        for v in range(nv):
            dims = [t.dims[v] for t in self.terms]
            maps = [d.blocks[v] for d in self.diffs]
            per_vertex.append(la.homology_dims(dims, maps, p) if dims else [])
        for k, n in enumerate(self.degrees):
            out[n] = [per_vertex[v][k] for v in range(nv)]
        return out

    def is_acyclic(self) -> bool:
        return all(not any(h) for h in self.homology().values())

    def rel_homology(self, generator: Module, side: str) -> dict[int, int]:
        if not self.terms:
            return {}
        dims = hom_homology(list(self.terms), list(self.diffs), generator, side)
        return dict(zip(self.degrees, dims))

    def rel_table(self, generators: Sequence[Module], side: str) -> list[dict[int, int]]:
        return [self.rel_homology(g, side) for g in generators]

    def is_rel_acyclic(self, generators: Sequence[Module], side: str) -> bool:
        return all(not any(t.values()) for t in self.rel_table(generators, side))

    def __repr__(self) -> str:
        body = " -> ".join(f"{t!r}@{n}" for n, t in zip(self.degrees, self.terms))
        return f"Complex({body})"

    @classmethod
    def stalk(cls, m: Module, degree: int = 0) -> "Complex":
        return cls(m.algebra, degree, [m], [], check=False)

    @classmethod
    def from_maps(cls, lo: int, maps: Sequence[Morphism]) -> "Complex":
        terms = [maps[0].source] + [f.target for f in maps]
        return cls(maps[0].source.algebra, lo, terms, maps)

    @classmethod
    def zero(cls, algebra) -> "Complex":
        return cls(algebra, 0, [], [], check=False)


class ChainMap:
    __slots__ = ("source", "target", "components")

    def __init__(self, source: Complex, target: Complex, components: dict[int, Morphism],
                 check: bool = True):
        self.source = source
        self.target = target
        comps = {}
        for n in _span(source, target):
            f = components.get(n)
            comps[n] = f if f is not None else Morphism.zero(source.term(n), target.term(n))
            if comps[n].source != source.term(n) or comps[n].target != target.term(n):
                raise ComplexError(f"component in degree {n} has wrong ends")
        self.components = comps
        if check:
            self.validate()

    def validate(self) -> None:
        for n in self.components:
            lhs = self.target.d(n) @ self[n]
            rhs = self[n + 1] @ self.source.d(n)
            if lhs != rhs:
                raise ComplexError(f"chain map does not commute with d in degree {n}")

    def __getitem__(self, n: int) -> Morphism:
        f = self.components.get(n)
        if f is None:
            return Morphism.zero(self.source.term(n), self.target.term(n))
        return f

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(other.source, self.target,
                        {n: self[n] @ other[n] for n in _span(other.source, self.target)},
                        check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {n: self[n] + other[n] for n in set(self.components) | set(other.components)}, check=False)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {n: self[n] - other[n] for n in set(self.components) | set(other.components)}, check=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ChainMap)
                and all(self[n] == other[n] for n in set(self.components) | set(other.components)))

    def __hash__(self):  # pragma: no cover - maps are not used as keys
        return id(self)

    @classmethod
    def identity(cls, c: Complex) -> "ChainMap":
        return cls(c, c, {n: Morphism.identity(c.term(n)) for n in c.degrees}, check=False)

    @classmethod
    def zero(cls, source: Complex, target: Complex) -> "ChainMap":
        return cls(source, target, {}, check=False)

    def is_quasi_iso(self) -> bool:
        """Induced maps on homology are isomorphisms (checked vertexwise)."""
        p = self.source.algebra.p
        for v in range(self.source.algebra.vertices):
            for n in _span(self.source, self.target):
                zx, bx = _cycles_boundaries(self.source, n, v, p)
                zy, by = _cycles_boundaries(self.target, n, v, p)
                hx = zx.shape[1] - la.rank(bx, p)
                hy = zy.shape[1] - la.rank(by, p)
                if hx != hy:
                    return False
                fz = la.matmul(self[n].blocks[v], zx, p)
                if la.rank(np.hstack([fz, by]), p) != zy.shape[1]:
                    return False
        return True


def _span(a: Complex, b: Complex) -> range:
    los = [c.lo for c in (a, b) if c.terms]
    his = [c.hi for c in (a, b) if c.terms]
    if not los:
        return range(0)
    return range(min(los), max(his) + 1)


def _cycles_boundaries(c: Complex, n: int, v: int, p: int):
    dn = c.d(n).blocks[v]
    z = la.kernel_basis(dn, p)
    b = c.d(n - 1).blocks[v]
    return z, b


@dataclass
class Homotopy:
    """Maps ``h^n: source^n -> target^{n-1}`` with ``f - g = d h + h d``."""

    f: ChainMap
    g: ChainMap
    maps: dict[int, Morphism]

    def __getitem__(self, n: int) -> Morphism:
        h = self.maps.get(n)
        if h is None:
            return Morphism.zero(self.f.source.term(n), self.f.target.term(n - 1))
        return h

    def verify(self) -> bool:
        src, tgt = self.f.source, self.f.target
        for n in _span(src, tgt):
            lhs = self.f[n] - self.g[n]
            rhs = tgt.d(n - 1) @ self[n] + self[n + 1] @ src.d(n)
            if lhs != rhs:
                return False
        return True


@dataclass
class ConeResult:
    cone: Complex
    incl: ChainMap  # target -> cone
    proj: ChainMap  # cone -> source[1]


def cone(f: ChainMap) -> ConeResult:
    """Mapping cone with ``Cone^n = X^{n+1} (+) Y^n`` and
    ``d = [[-d_X, 0], [f, d_Y]]``."""
    x, y = f.source, f.target
    alg = x.algebra
    degs = [n for n in range(_span(x, y).start - 1, _span(x, y).stop)] if (x.terms or y.terms) else []
    sums = {n: direct_sum([x.term(n + 1), y.term(n)]) for n in degs}
    diffs = []
    for n in degs[:-1]:
        a, b = sums[n], sums[n + 1]
        d = (b.injections[0] @ x.d(n + 1).scale(-1) @ a.projections[0]
             + b.injections[1] @ f[n + 1] @ a.projections[0]
             + b.injections[1] @ y.d(n) @ a.projections[1])
        diffs.append(d)
    if not degs:
        c = Complex.zero(alg)
        return ConeResult(c, ChainMap.zero(y, c), ChainMap.zero(c, x.shift(1)))
    c = Complex(alg, degs[0], [sums[n].module for n in degs], diffs, check=False)
    incl = ChainMap(y, c, {n: sums[n].injections[1] for n in degs},
                    check=False)
    xs = x.shift(1)
    proj = ChainMap(c, xs, {n: sums[n].projections[0] for n in degs}, check=False)
    return ConeResult(c, incl, proj)


# ---------------------------------------------------------------------------
# Hom complexes


@dataclass
class HomComplex:
    """``Hom(X, A)`` with ``Hom^n = (+)_i Hom(X^i, A^{i+n})`` and
    ``d(phi) = d_A phi - (-1)^n phi d_X``."""

    x: Complex
    a: Complex
    degrees: list[int]
    blocks: dict[int, list[tuple[int, object, int]]]  # n -> [(i, HomSpace, offset)]
    dims: dict[int, int]
    diffs: dict[int, np.ndarray]  # n -> matrix Hom^n -> Hom^{n+1}

    def cohomology(self) -> dict[int, int]:
        p = self.x.algebra.p
        out = {}
        for n in self.degrees:
            r_out = la.rank(self.diffs[n], p) if n in self.diffs else 0
            r_in = la.rank(self.diffs[n - 1], p) if n - 1 in self.diffs else 0
            out[n] = self.dims[n] - r_out - r_in
        return out

    def h(self, n: int) -> int:
        if n not in self.dims:
            return 0
        return self.cohomology()[n]

    def is_acyclic(self) -> bool:
        return not any(self.cohomology().values())

    def maps_from_vector(self, n: int, vec: np.ndarray) -> dict[int, Morphism]:
        out = {}
        for i, hs, off in self.blocks.get(n, []):
            out[i] = hs.element(vec[off:off + hs.dim])
        return out

    def vector_from_maps(self, n: int, maps: dict[int, Morphism]) -> np.ndarray:
        vec = np.zeros(self.dims.get(n, 0), dtype=np.int64)
        for i, hs, off in self.blocks.get(n, []):
            if i in maps:
                vec[off:off + hs.dim] = hs.coords(maps[i])
        return vec

    def d_matrix(self, n: int) -> np.ndarray:
        if n in self.diffs:
            return self.diffs[n]
        return la.zeros(self.dims.get(n + 1, 0), self.dims.get(n, 0))


def hom_complex(x: Complex, a: Complex) -> HomComplex:
    p = x.algebra.p
    xs, as_ = x.support(), a.support()
    if not xs or not as_:
        return HomComplex(x, a, [], {}, {}, {})
    lo = as_[0] - xs[-1]
    hi = as_[-1] - xs[0]
    degrees = list(range(lo - 1, hi + 2))
    blocks, dims = {}, {}
    for n in degrees:
        row, off = [], 0
        for i in range(xs[0], xs[-1] + 1):
            hs = hom(x.term(i), a.term(i + n))
            row.append((i, hs, off))
            off += hs.dim
        blocks[n] = row
        dims[n] = off
    diffs = {}
    for n in degrees[:-1]:
        sign = -1 if n % 2 else 1
        mat = la.zeros(dims[n + 1], dims[n])
        tgt_off = {i: off for i, _, off in blocks[n + 1]}
        src_off = {i: (hs, off) for i, hs, off in blocks[n]}
        for i, hs_t, off_t in blocks[n + 1]:
            if hs_t.dim == 0:
                continue
            # d_A o phi_i
            hs_s, off_s = src_off[i]
            if hs_s.dim:
                m = post_matrix(x.term(i), a.d(i + n))
                mat[off_t:off_t + hs_t.dim, off_s:off_s + hs_s.dim] += m
            # -(-1)^n phi_{i+1} o d_X^i
            if i + 1 in src_off:
                hs_s, off_s = src_off[i + 1]
                if hs_s.dim:
                    m = pre_matrix(x.d(i), a.term(i + 1 + n))
                    mat[off_t:off_t + hs_t.dim, off_s:off_s + hs_s.dim] -= sign * m
        diffs[n] = mat % p
    return HomComplex(x, a, degrees, blocks, dims, diffs)


def chain_map_from_cycle(hc: HomComplex, vec: np.ndarray) -> ChainMap:
    return ChainMap(hc.x, hc.a, hc.maps_from_vector(0, vec), check=False)


def find_homotopy(f: ChainMap, g: ChainMap, hc: Optional[HomComplex] = None) -> Optional[Homotopy]:
    """Solve ``f - g = d h + h d``; ``None`` certifies that no homotopy exists."""
    hc = hc if hc is not None else hom_complex(f.source, f.target)
    p = f.source.algebra.p
    diff = f - g
    if not hc.degrees:
        return Homotopy(f, g, {}) if all(diff[n].is_zero() for n in diff.components) else None
    target = hc.vector_from_maps(0, diff.components)
    d = hc.d_matrix(-1)
    sol = la.solve(d, target.reshape(-1, 1), p)
    if sol is None:
        return None
    h = Homotopy(f, g, hc.maps_from_vector(-1, sol[0].ravel()))
    assert h.verify()
    return h


def is_null_homotopic(f: ChainMap) -> bool:
    return find_homotopy(f, ChainMap.zero(f.source, f.target)) is not None


@dataclass
class HomotopyInverseCertificate:
    """``g`` with ``f g ~ id`` (and ``g f ~ id`` when two-sided)."""

    f: ChainMap
    g: ChainMap
    right: Homotopy
    left: Optional[Homotopy] = None
    cone_table: list = field(default_factory=list)

    @property
    def two_sided(self) -> bool:
        return self.left is not None

    def verify(self) -> bool:
        ok = self.right.verify() and (self.f @ self.g) == self.right.f
        if self.left is not None:
            ok = ok and self.left.verify() and (self.g @ self.f) == self.left.f
        return ok


class PreconditionError(ValueError):
    """A hypothesis required by a construction is not met."""


def homotopy_inverse_certificate(f: ChainMap, generators: Sequence[Module],
                                 source_in_sub: bool = False) -> HomotopyInverseCertificate:
    """Homotopy inverse of a right-relative quasi-isomorphism ``f: A -> X``.

    ``X`` must have all terms in add(generators).  The cone of ``f`` is checked
    to be right-acyclic for the generators first; then ``g: X -> A`` and
    ``h`` with ``f g - id = d h + h d`` are solved for jointly.  When
    ``source_in_sub`` is set, ``g f ~ id_A`` is certified as well.
    """
    a, x = f.source, f.target
    p = a.algebra.p
    c = cone(f).cone
    table = c.rel_table(generators, "right")
    if any(any(t.values()) for t in table):
        raise PreconditionError("cone of the chain map is not right-acyclic for the generators")
    h_xa = hom_complex(x, a)
    h_xx = hom_complex(x, x)
    ident = ChainMap.identity(x)
    if not h_xa.degrees or not h_xx.degrees:
        g = ChainMap.zero(x, a)
        right = find_homotopy(f @ g, ident, h_xx)
        if right is None:
            raise PreconditionError("no homotopy inverse exists")
        return _finish(f, g, right, source_in_sub, table)
    # unknowns: g in Hom^0(X, A), h in Hom^{-1}(X, X)
    d0 = h_xa.d_matrix(0)
    post = la.zeros(h_xx.dims[0], h_xa.dims.get(0, 0))
    for i, hs, off in h_xa.blocks.get(0, []):
        if hs.dim == 0:
            continue
        _, hs_t, off_t = next(b for b in h_xx.blocks[0] if b[0] == i)
        if hs_t.dim:
            post[off_t:off_t + hs_t.dim, off:off + hs.dim] = post_matrix(x.term(i), f[i])
    dm1 = h_xx.d_matrix(-1)
    n_g, n_h = h_xa.dims.get(0, 0), h_xx.dims.get(-1, 0)
    top = np.hstack([d0, la.zeros(d0.shape[0], n_h)])
    bottom = np.hstack([post, (-dm1) % p])
    system = np.vstack([top, bottom]) % p
    rhs = np.concatenate([np.zeros(d0.shape[0], dtype=np.int64),
                          h_xx.vector_from_maps(0, ident.components)])
    sol = la.solve(system, rhs.reshape(-1, 1), p)
    if sol is None:
        raise PreconditionError("no homotopy inverse exists")
    vec = sol[0].ravel()
    g = ChainMap(x, a, h_xa.maps_from_vector(0, vec[:n_g]))
    right = find_homotopy(f @ g, ident, h_xx)
    assert right is not None
    return _finish(f, g, right, source_in_sub, table)


def _finish(f, g, right, source_in_sub, table) -> HomotopyInverseCertificate:
    cert = HomotopyInverseCertificate(f, g, right, cone_table=table)
    if source_in_sub:
        left = find_homotopy(g @ f, ChainMap.identity(f.source))
        if left is None:
            raise PreconditionError("g o f is not homotopic to the identity")
        cert.left = left
    return cert


def complex_sum(a: Complex, b: Complex) -> tuple[Complex, ChainMap, ChainMap]:
    """Degreewise direct sum with its two inclusions."""
    alg = a.algebra
    degs = _span(a, b)
    if not degs:
        z = Complex.zero(alg)
        return z, ChainMap.zero(a, z), ChainMap.zero(b, z)
    sums = {n: direct_sum([a.term(n), b.term(n)]) for n in degs}
    diffs = []
    for n in list(degs)[:-1]:
        s, t = sums[n], sums[n + 1]
        diffs.append(t.injections[0] @ a.d(n) @ s.projections[0]
                     + t.injections[1] @ b.d(n) @ s.projections[1])
    c = Complex(alg, degs.start, [sums[n].module for n in degs], diffs, check=False)
    ia = ChainMap(a, c, {n: sums[n].injections[0] for n in degs}, check=False)
    ib = ChainMap(b, c, {n: sums[n].injections[1] for n in degs}, check=False)
    return c, ia, ib


def null_homotopic_map(x: Complex, a: Complex, h: dict[int, Morphism]) -> ChainMap:
    """``d h + h d`` for maps ``h[n]: X^n -> A^{n-1}``."""
    def hh(n):
        f = h.get(n)
        return f if f is not None else Morphism.zero(x.term(n), a.term(n - 1))
    return ChainMap(x, a, {n: a.d(n - 1) @ hh(n) + hh(n + 1) @ x.d(n) for n in _span(x, a)},
                    check=False)


def random_complex(terms: Sequence[Module], lo: int, rng: np.random.Generator,
                   tries: int = 8) -> Complex:
    """A complex on the given terms with seeded random differentials.

    Each differential is drawn from the maps killed by the previous one and
    killing nothing required later; a draw is kept only if ``d o d = 0``.
    """
    alg = terms[0].algebra
    p = alg.p
    diffs: list[Morphism] = []
    for k in range(len(terms) - 1):
        src, tgt = terms[k], terms[k + 1]
        hs = hom(src, tgt)
        if hs.dim == 0 or not diffs:
            diffs.append(hs.element(rng.integers(0, p, size=hs.dim)) if hs.dim
                         else Morphism.zero(src, tgt))
            continue
        prev = diffs[-1]
        # maps phi with phi o prev = 0 form the kernel of pre-composition
        mat = pre_matrix(prev, tgt)
        ker = la.kernel_basis(mat, p)
        if ker.shape[1] == 0:
            diffs.append(Morphism.zero(src, tgt))
            continue
        coeffs = la.matmul(ker, rng.integers(0, p, size=(ker.shape[1], 1)), p).ravel()
        diffs.append(hs.element(coeffs))
    return Complex(alg, lo, list(terms), diffs)


def random_chain_map(x: Complex, a: Complex, rng: np.random.Generator) -> ChainMap:
    """Uniform chain map: a random degree-0 cycle of the hom complex."""
    hc = hom_complex(x, a)
    if not hc.degrees:
        return ChainMap.zero(x, a)
    p = x.algebra.p
    ker = la.kernel_basis(hc.d_matrix(0), p)
    if ker.shape[1] == 0:
        return ChainMap.zero(x, a)
    vec = la.matmul(ker, rng.integers(0, p, size=(ker.shape[1], 1)), p).ravel()
    return ChainMap(x, a, hc.maps_from_vector(0, vec))
