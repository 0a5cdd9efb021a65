from itertools import product

import numpy as np
from hypothesis import given, settings, strategies as st

from thomcob import linalg


def matrices(p, max_rows=5, max_cols=5):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda rc: st.lists(st.lists(st.integers(0, p - 1), min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


def brute_kernel_size(mat, p):
    mat = np.array(mat)
    return sum(1 for x in product(range(p), repeat=mat.shape[1]) if not (mat @ np.array(x) % p).any())


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(st.just(p), matrices(p, 4, 4))))
def test_kernel_against_enumeration(data):
    # count null vectors by brute force
    p, mat = data
    k = linalg.kernel(mat, p)
    assert p ** k.shape[0] == brute_kernel_size(mat, p)
    assert not (np.array(mat) @ k.T % p).any()
    assert linalg.rank(mat, p) + k.shape[0] == len(mat[0])


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(st.just(p), matrices(p), matrices(p))))
def test_reduce_modulo_stays_in_coset(data):
    p, sub, vecs = data
    width = len(sub[0])
    vecs = [row[:width] + [0] * (width - len(row)) for row in vecs]
    r, piv = linalg.rref(sub, p)
    red = linalg.reduce_modulo(np.array(vecs), (r, piv), p)
    for v, w in zip(vecs, red):
        assert all(w[c] == 0 for c in piv)
        diff = (np.array(v) - w) % p
        assert linalg.rank(np.vstack([r, diff]), p) == len(piv)


def test_span_elements():
    basis = np.array([[1, 0, 1], [0, 1, 1]])
    els = {tuple(int(x) for x in e) for e in linalg.span_elements(basis, 2)}
    assert els == {(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 0)}
