"""Independent reference computations used by the tests.

None of these call into the operation engine's product machinery: they work
from generator values (or plain integer arithmetic) and expand products the
slow way.
"""

import math
from fractions import Fraction
from itertools import combinations

from thomcob.fpalg import Element, add, multiply
from thomcob.steenrod import Op


def binom_big(j, k, p):
    return math.comb(j, k) % p if 0 <= k <= j else 0


def naive_total(pres, table, eng, m, max_degree):
    """Graded pieces of the total operation on monomial m.

    The total operation on a generator g is the sum of its individual
    operations (read from the engine one generator at a time); on a monomial
    it is the plain product of those sums.  Returns {degree shift: (value,
    tainted)} for shifts up to ``max_degree``.
    """
    p = pres.prime
    kind = "sq" if p == 2 else "power"
    step = 1 if p == 2 else 2 * (p - 1)
    pieces = {0: (Element.monomial(pres.unit), False)}
    for i, e in enumerate(m):
        for _ in range(e):
            g = [0] * pres.ngens
            g[i] = 1
            gpieces = {}
            k = 0
            while k * step <= max_degree:
                v, t = eng.monomial(Op(kind, k), tuple(g))
                gpieces[k * step] = (v, t)
                k += 1
            new = {}
            for s1, (a, ta) in pieces.items():
                for s2, (b, tb) in gpieces.items():
                    s = s1 + s2
                    if s > max_degree:
                        continue
                    prod = multiply(pres, a, b)
                    old, told = new.get(s, (Element.zero(), False))
                    taint = told or ta or tb
                    new[s] = (add(pres, old, prod), taint)
            pieces = new
    return pieces


def integer_det(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def determinantal_divisors(mat):
    """gcd of all k x k minors for k = 1..min(shape); d_k = D_k / D_{k-1}."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = math.gcd(g, integer_det([[mat[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g)
    return out


def sign_of_permutation(seq):
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1
