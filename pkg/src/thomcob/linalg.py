"""Dense linear algebra over the prime field F_p.

Matrices are numpy integer arrays holding residues in [0, p).  Only the
handful of routines needed by the Bockstein and obstruction code live here:
row reduction, rank, kernel and the reduction of vectors modulo a subspace.
"""

import numpy as np


def _inv(a, p):
    return pow(int(a), -1, p)


def rref(mat, p):
    """Return (R, pivots) with R the reduced row echelon form of ``mat`` mod p.

    Zero rows are dropped, so R has exactly ``len(pivots)`` rows.
    """
    m = np.array(mat, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        if m[r, c] != 1:
            m[r] = (m[r] * _inv(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(mat, p):
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    return len(rref(mat, p)[1])


def kernel(mat, p):
    """Basis of the right null space {x : mat @ x = 0} as rows of an array.

    The basis is the standard one read off the reduced echelon form: one
    vector per free column, with a 1 in that column.
    """
    mat = np.asarray(mat, dtype=np.int64)
    rows, cols = mat.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(mat, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, pc in enumerate(pivots):
            basis[i, pc] = (-r[j, f]) % p
    return basis


def reduce_modulo(vectors, subspace, p):
    """Reduce each row of ``vectors`` modulo the row space of ``subspace``.

    ``subspace`` must already be in reduced row echelon form (as returned by
    :func:`rref`) together with its pivot list, passed as a pair.
    """
    sub, pivots = subspace
    out = np.array(vectors, dtype=np.int64) % p
    for j, c in enumerate(pivots):
        coef = out[:, c].copy()
        hit = np.nonzero(coef)[0]
        if hit.size:
            out[hit] = (out[hit] - np.outer(coef[hit], sub[j])) % p
    return out


def span_elements(basis, p):
    """All vectors of the F_p-span of the rows of ``basis`` (p**k of them)."""
    basis = np.asarray(basis, dtype=np.int64)
    k = basis.shape[0]
    n = basis.shape[1] if basis.ndim == 2 else 0
    out = [np.zeros(n, dtype=np.int64)]
    for i in range(k):
        out = [(v + c * basis[i]) % p for v in out for c in range(p)]
    return out
