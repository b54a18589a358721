"""Dense linear algebra over a prime field F_p.

Matrices are plain ``numpy`` int64 arrays with entries in ``[0, p)``.  Empty
shapes such as ``(0, 3)`` are legal and behave like the zero map from a
3-dimensional space to the zero space.
"""

from __future__ import annotations

import itertools
from typing import Callable, Optional, Sequence

import numpy as np

DEFAULT_P = 2
_INT64_MAX = 2**63 - 1


def check_prime(p: int) -> int:
    if p < 2 or p > 2**31:
        raise ValueError(f"modulus {p} outside [2, 2^31]")
    if any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"modulus {p} is not prime")
    return p


def mat(data, p: int, shape: Optional[tuple[int, int]] = None) -> np.ndarray:
    """Coerce ``data`` into a reduced int64 matrix."""
    a = np.array(data, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    k = a.shape[1]
    if k == 0:
        return zeros(a.shape[0], b.shape[1])
    step = max(1, _INT64_MAX // ((p - 1) ** 2 or 1))
    if step >= k:
        return (a @ b) % p
    out = zeros(a.shape[0], b.shape[1])
    for lo in range(0, k, step):
        out = (out + (a[:, lo:lo + step] @ b[lo:lo + step, :]) % p) % p
    return out


def matmul_chain(mats: Sequence[np.ndarray], p: int) -> np.ndarray:
    """Product ``mats[0] @ mats[1] @ ...`` reduced mod p."""
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m, p)
    return out


def inv_scalar(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(int(x), -1, p)


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int], int]:
    """Reduced row-echelon form.

    Returns ``(reduced, pivots, rank)``; ``reduced`` has the same shape as
    ``m`` with the nonzero rows first.
    """
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * inv_scalar(a[r, c], p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots, len(pivots)


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return rref(m, p)[2]


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of ``{x : a x = 0}``."""
    rows, cols = a.shape
    red, pivots, r = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    k = zeros(cols, len(free))
    for j, fc in enumerate(free):
        k[fc, j] = 1
        for i, pc in enumerate(pivots):
            k[pc, j] = (-red[i, fc]) % p
    return k


def solve(a: np.ndarray, b: np.ndarray, p: int) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """Solve ``a x = b``.

    Returns ``(particular, kernel_basis)`` or ``None`` when inconsistent.
    ``b`` may have several columns; ``particular`` then has as many.
    """
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: a is {a.shape}, b is {b.shape}")
    n = a.shape[1]
    aug = np.hstack([a % p, b % p])
    red, pivots, r = rref(aug, p)
    if any(pc >= n for pc in pivots):
        return None
    x = zeros(n, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = red[i, n:]
    return x, kernel_basis(a, p)


def column_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``a`` at pivot positions: a basis of the column space."""
    _, pivots, _ = rref(a, p)
    return a[:, pivots] % p


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    res = solve(a, eye(n), p)
    if res is None or res[1].shape[1]:
        raise ValueError("matrix is singular")
    return res[0]


def right_inverse(a: np.ndarray, p: int) -> np.ndarray:
    """Some ``r`` with ``a r = 1``; ``a`` must have full row rank."""
    res = solve(a, eye(a.shape[0]), p)
    if res is None:
        raise ValueError("matrix does not have full row rank")
    return res[0]


class Coordinates:
    """Fast coordinate extraction for a fixed full-column-rank basis.

    Picks rows where the basis is invertible once; ``coords(v)`` is then one
    small matrix product.
    """

    def __init__(self, basis: np.ndarray, p: int):
        self.basis = basis
        self.p = p
        k = basis.shape[1]
        if k == 0:
            self.rows: list[int] = []
            self.inv = zeros(0, 0)
            return
        _, rows, r = rref(basis.T, p)
        if r != k:
            raise ValueError("basis columns are linearly dependent")
        self.rows = rows
        self.inv = inverse(basis[rows], p)

    def coords(self, v: np.ndarray) -> np.ndarray:
        if not self.rows:
            return zeros(0, v.shape[1] if v.ndim == 2 else 1) if v.ndim == 2 else np.zeros(0, dtype=np.int64)
        if v.ndim == 1:
            return matmul(self.inv, v[self.rows].reshape(-1, 1), self.p).ravel()
        return matmul(self.inv, v[self.rows], self.p)


def homology_dims(dims: Sequence[int], maps: Sequence[np.ndarray], p: int) -> list[int]:
    """Homology of ``V_0 -> V_1 -> ... -> V_n`` (zero beyond both ends).

    ``maps[i]`` is the ``dims[i+1] x dims[i]`` matrix of ``V_i -> V_{i+1}``.
    """
    if len(maps) != max(len(dims) - 1, 0):
        raise ValueError("need one map between consecutive spaces")
    ranks = [rank(m, p) for m in maps]
    out = []
    for i, d in enumerate(dims):
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i > 0 else 0
        out.append(d - r_out - r_in)
    return out


def fitting_idempotent(s: np.ndarray, p: int) -> np.ndarray:
    """Projection onto the stable image of ``s`` along its stable kernel.

    Squares ``s`` until the rank of ``s^(2^k)`` stops dropping; the exponent
    never needs to exceed ``2 * n``.
    """
    n = s.shape[0]
    if n == 0:
        return zeros(0, 0)
    t = s % p
    r = rank(t, p)
    exponent = 1
    while True:
        t2 = matmul(t, t, p)
        exponent *= 2
        r2 = rank(t2, p)
        if r2 == r and exponent >= n:
            t = t2
            break
        if exponent > 2 * n:
            raise RuntimeError("Fitting iteration failed to stabilise")
        t, r = t2, r2
    img = column_basis(t, p)
    ker = kernel_basis(t, p)
    basis = np.hstack([img, ker])
    proj = np.diag([1] * img.shape[1] + [0] * ker.shape[1]).astype(np.int64)
    return matmul_chain([basis, proj, inverse(basis, p)], p)


def span_elements(endos: Sequence[np.ndarray], p: int) -> "itertools.product":
    """Every linear combination of ``endos`` (exhaustive enumeration)."""
    for coeffs in itertools.product(range(p), repeat=len(endos)):
        acc = zeros(*endos[0].shape)
        for c, e in zip(coeffs, endos):
            if c:
                acc = (acc + c * e) % p
        yield acc


def split_idempotent_search(
    endos: Sequence[np.ndarray],
    p: int,
    predicate: Optional[Callable[[np.ndarray], bool]] = None,
    exhaustive_limit: int = 4096,
    tries: int = 512,
    rng: Optional[np.random.Generator] = None,
) -> Optional[np.ndarray]:
    """Look for an idempotent other than 0 and 1 built from the span of ``endos``.

    Every candidate ``s`` in the span is replaced by its Fitting idempotent,
    which is a polynomial in ``s`` with no constant term; it therefore stays
    inside the span whenever the span is closed under composition (a
    subalgebra or a one-sided ideal of matrices).  Spans with at most
    ``exhaustive_limit`` elements are enumerated completely, so ``None`` is a
    proof of absence there; larger spans are sampled.
    """
    endos = [np.asarray(e, dtype=np.int64) % p for e in endos]
    if not endos:
        return None
    n = endos[0].shape[0]
    for e in endos:
        if e.shape != (n, n):
            raise ValueError("endomorphisms must be square of equal size")
    ident = eye(n)

    def ok(e: np.ndarray) -> bool:
        if not e.any() or np.array_equal(e, ident):
            return False
        return predicate is None or bool(predicate(e))

    if p ** len(endos) <= exhaustive_limit:
        candidates = span_elements(endos, p)
    else:
        rng = rng if rng is not None else np.random.default_rng(0)

        def sampled():
            yield from endos
            for _ in range(tries):
                c = rng.integers(0, p, size=len(endos))
                yield sum(int(ci) * e for ci, e in zip(c, endos)) % p

        candidates = sampled()
    for s in candidates:
        e = fitting_idempotent(s, p)
        if ok(e):
            return e
    return None


def span_is_nilpotent(mats: Sequence[np.ndarray], p: int) -> bool:
    """Whether the subspace spanned by ``mats`` is nilpotent under products.

    Computes ``W_{k+1} = W_k * W_1`` until it vanishes or stops shrinking.
    For a one-sided ideal of a matrix algebra this decides whether it lies in
    the radical.
    """
    if not mats:
        return True
    n = mats[0].shape[0]
    if n == 0:
        return True
    base = np.stack([m % p for m in mats])
    _, _, r = rref(base.reshape(len(mats), -1), p)
    w = base
    dim = r
    safe = n * (p - 1) ** 2 < _INT64_MAX
    while True:
        if safe:
            prods = np.einsum("aij,bjk->abik", w, base).reshape(-1, n * n) % p
        else:
            prods = np.stack([matmul(a, b, p) for a in w for b in base]).reshape(-1, n * n)
        red, _, r = rref(prods, p)
        if r == 0:
            return True
        if r >= dim:
            return False
        w = red[:r].reshape(r, n, n)
        dim = r
