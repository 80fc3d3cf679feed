import itertools
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3bubble import intlin

small_ints = st.integers(-4, 4)


def matrices(n, m):
    return st.lists(st.lists(small_ints, min_size=m, max_size=m), min_size=n, max_size=n)


def test_det_examples():
    assert intlin.det([[1, 2], [3, 4]]) == -2
    assert intlin.det([[0, 1], [1, 0]]) == -1
    assert intlin.det([[2, 0, 0], [0, Fraction(1, 2), 0], [0, 0, 3]]) == 3
    assert intlin.det([[1, 2], [2, 4]]) == 0


@settings(max_examples=100)
@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)))
def test_det_matches_numpy(m):
    assert intlin.det(m) == round(np.linalg.det(np.array(m, dtype=float)))


@settings(max_examples=100)
@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_inverse(m):
    if intlin.det(m) == 0:
        with pytest.raises(ZeroDivisionError):
            intlin.inverse(m)
        return
    inv = intlin.inverse(m)
    n = len(m)
    assert intlin.matmul(m, inv) == [[int(i == j) for j in range(n)] for i in range(n)]


def _gcd_minors(basis):
    k, n = len(basis), len(basis[0])
    g = 0
    for cols in itertools.combinations(range(n), k):
        g = gcd(g, int(intlin.det([[r[c] for c in cols] for r in basis])))
    return g


@settings(max_examples=150)
@given(st.integers(1, 3).flatmap(lambda r: st.integers(r, 5).flatmap(lambda n: matrices(r, n))))
def test_integer_kernel_is_saturated(a):
    n = len(a[0])
    basis = intlin.integer_kernel(a, n)
    assert len(basis) == n - intlin.rank(a)
    for v in basis:
        assert intlin.matvec(a, v) == [0] * len(a)
    if basis:
        # a primitive sublattice has coprime maximal minors
        assert _gcd_minors(basis) == 1


def test_integer_kernel_example():
    basis = intlin.integer_kernel([[2, 4]], 2)
    assert [tuple(v) for v in basis] in ([(-2, 1)], [(2, -1)])


def test_signature():
    assert intlin.signature([[0, 1], [1, 0]]) == (1, 1)
    assert intlin.signature([[-2, 1], [1, -2]]) == (0, 2)
    assert intlin.signature([[1, 0], [0, 0]]) == (1, 0)


@settings(max_examples=100)
@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)))
def test_signature_matches_eigenvalues(m):
    s = [[m[i][j] + m[j][i] for j in range(len(m))] for i in range(len(m))]
    ev = np.linalg.eigvalsh(np.array(s, dtype=float))
    assert intlin.signature(s) == (int((ev > 1e-9).sum()), int((ev < -1e-9).sum()))


def test_bilinear_dimension_mismatch():
    with pytest.raises(ValueError):
        intlin.bilinear([1, 2], [[1, 0], [0, 1]], [1])
