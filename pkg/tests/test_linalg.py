import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relhom import linalg as la

from conftest import matrices


def brute_kernel_size(a, p):
    """Number of vectors with a x = 0, by enumeration."""
    n = a.shape[1]
    return sum(1 for x in itertools.product(range(p), repeat=n)
               if not (a @ np.array(x, dtype=np.int64) % p).any())


@given(matrices())
def test_rref_is_idempotent(ap):
    a, p = ap
    r, piv, k = la.rref(a, p)
    r2, piv2, k2 = la.rref(r, p)
    assert np.array_equal(r, r2) and piv == piv2 and k == k2


@given(matrices())
def test_rref_pivots_are_unit_columns(ap):
    a, p = ap
    r, piv, k = la.rref(a, p)
    assert len(piv) == k
    for row, col in enumerate(piv):
        expect = np.zeros(a.shape[0], dtype=np.int64)
        expect[row] = 1
        assert np.array_equal(r[:, col], expect)


@given(matrices())
def test_rank_nullity(ap):
    a, p = ap
    assert la.rank(a, p) + la.kernel_basis(a, p).shape[1] == a.shape[1]


@given(matrices(max_rows=3, max_cols=4, primes=(2, 3)))
def test_kernel_matches_enumeration(ap):
    a, p = ap
    ker = la.kernel_basis(a, p)
    assert not (la.matmul(a, ker, p)).any()
    assert p ** ker.shape[1] == brute_kernel_size(a, p)


@given(matrices(), st.data())
def test_solve_is_sound(ap, data):
    a, p = ap
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1],
                                    max_size=a.shape[1])), dtype=np.int64).reshape(-1, 1)
    b = la.matmul(a, x, p)
    sol = la.solve(a, b, p)
    assert sol is not None
    part, ker = sol
    assert np.array_equal(la.matmul(a, part, p), b % p)
    assert not la.matmul(a, ker, p).any()


@given(matrices(max_rows=4, max_cols=3))
def test_solve_reports_inconsistency(ap):
    a, p = ap
    if a.shape[0] == 0 or la.rank(a, p) == a.shape[0]:
        return
    # a vector outside the column space: extend the column basis
    cols = la.column_basis(a, p)
    for e in np.eye(a.shape[0], dtype=np.int64):
        if la.rank(np.hstack([cols, e.reshape(-1, 1)]), p) > cols.shape[1]:
            assert la.solve(a, e.reshape(-1, 1), p) is None
            return


@given(st.sampled_from((2, 3, 5)), st.integers(1, 4), st.data())
def test_inverse(p, n, data):
    flat = data.draw(st.lists(st.integers(0, p - 1), min_size=n * n, max_size=n * n))
    a = np.array(flat, dtype=np.int64).reshape(n, n)
    if la.rank(a, p) < n:
        with pytest.raises(ValueError):
            la.inverse(a, p)
        return
    assert np.array_equal(la.matmul(a, la.inverse(a, p), p), la.eye(n))


@given(matrices(max_rows=4, max_cols=4))
def test_fitting_idempotent(ap):
    a, p = ap
    if a.shape[0] != a.shape[1]:
        return
    e = la.fitting_idempotent(a, p)
    assert np.array_equal(la.matmul(e, e, p), e)
    # e commutes with a and a is invertible on the image, nilpotent on the kernel
    assert np.array_equal(la.matmul(e, a, p), la.matmul(a, e, p))


def test_homology_dims_of_exact_sequence():
    # 0 -> F -> F^2 -> F -> 0 with inclusion and projection
    i = np.array([[1], [0]])
    q = np.array([[0, 1]])
    assert la.homology_dims([1, 2, 1], [i, q], 2) == [0, 0, 0]
    assert la.homology_dims([1, 2, 1], [i, np.zeros((1, 2), dtype=np.int64)], 2) == [0, 1, 1]


def test_span_is_nilpotent():
    n = np.array([[0, 1], [0, 0]])
    assert la.span_is_nilpotent([n], 2)
    assert not la.span_is_nilpotent([n, n.T], 2)
    assert not la.span_is_nilpotent([la.eye(2)], 3)


def test_split_idempotent_search_exhaustive_absence():
    # span of the identity and a nilpotent: a local algebra, no proper idempotent
    n = np.array([[0, 1], [0, 0]])
    assert la.split_idempotent_search([la.eye(2), n], 2) is None
    e = la.split_idempotent_search([np.diag([1, 0]), np.diag([0, 1])], 2)
    assert e is not None and np.array_equal(la.matmul(e, e, 2), e)


def test_check_prime_rejects_composites():
    with pytest.raises(ValueError):
        la.check_prime(4)
