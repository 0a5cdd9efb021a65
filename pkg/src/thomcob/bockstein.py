"""Bockstein complexes, Bockstein cohomology and integral bookkeeping.

For each degree n the Bockstein beta_n: H^n -> H^{n+1} is a matrix in the
monomial bases.  BH^n = ker beta_n / im beta_{n-1} records free summands and
the torsion of order at least p^2; the rest of the torsion is visible only
through dimension counts.  ``reconstruct_integral`` solves that counting
system.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import linalg
from .fpalg import Element, format_element, from_vector, poincare_series, to_vector
from .steenrod import beta, engine


class InconsistentPattern(ValueError):
    pass


def _check_prime(group, prime):
    if prime not in group.data:
        raise KeyError(f"{group.name} has no mod-{prime} data in the catalog")
    return group.data[prime]


def beta_images(group, prime, degree):
    """(values, tainted) of beta on each degree-n basis monomial."""
    pres, table = _check_prime(group, prime)
    eng = engine(pres, table)
    op = beta()
    vals, taint = [], False
    for m in pres.basis(degree) if degree >= 0 else ():
        v, t = eng.monomial(op, m)
        vals.append(v)
        taint = taint or t
    return vals, taint


def beta_matrix(group, prime, degree):
    """Matrix of beta_n; column j is beta of the j-th degree-n monomial."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    pres, _ = _check_prime(group, prime)
    vals, _ = beta_images(group, prime, degree)
    idx = pres.basis_index(degree + 1)
    mat = np.zeros((len(idx), len(vals)), dtype=np.int64)
    for j, v in enumerate(vals):
        for m, c in v.terms.items():
            mat[idx[m], j] = c
    return mat


def beta_rank(group, prime, degree):
    if degree < 0:
        return 0
    return linalg.rank(beta_matrix(group, prime, degree), prime)


@dataclass
class BHResult:
    degree: int
    dimension: int
    representatives: list
    image_basis: list
    tainted: bool = False


def _image_rref(group, prime, degree):
    """RREF (rows, pivots) of im beta_{degree-1} inside degree ``degree``."""
    pres = group.presentation(prime)
    width = len(pres.basis(degree))
    if degree == 0:
        return np.zeros((0, width), dtype=np.int64), []
    mat = beta_matrix(group, prime, degree - 1)
    if mat.size == 0:
        return np.zeros((0, width), dtype=np.int64), []
    return linalg.rref(mat.T, prime)


def bockstein_cohomology(group, prime, degree):
    """dim BH^n with representatives reduced against im beta_{n-1}.

    Representatives are the rows of the reduced echelon form of ker beta_n
    taken modulo the image, so they are canonical for the monomial order.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    pres, _ = _check_prime(group, prime)
    if degree > pres.top_degree:
        return BHResult(degree, 0, [], [])
    ker = linalg.kernel(beta_matrix(group, prime, degree), prime)
    img, pivots = _image_rref(group, prime, degree)
    if ker.shape[0]:
        reduced = linalg.reduce_modulo(ker, (img, pivots), prime)
        reps, _ = linalg.rref(reduced, prime)
    else:
        reps = ker
    _, t_now = beta_images(group, prime, degree)
    _, t_prev = beta_images(group, prime, degree - 1) if degree else ([], False)
    return BHResult(
        degree,
        int(reps.shape[0]),
        [from_vector(pres, degree, r) for r in reps],
        [from_vector(pres, degree, r) for r in img],
        t_now or t_prev,
    )


@dataclass
class IntegralPattern:
    """Per-degree free rank, Z/p count and Z/p^{>=2} count."""

    prime: int
    f: list
    z1: list
    zk: list
    tainted: bool = False

    def torsion(self, n):
        return self.z1[n] + self.zk[n]

    def describe(self, n):
        parts = []
        if self.f[n]:
            parts.append("Z" if self.f[n] == 1 else f"Z^{self.f[n]}")
        p = self.prime
        for count, label in ((self.zk[n], f"Z/{p}^>=2"), (self.z1[n], f"Z/{p}")):
            parts.extend([label] * count)
        return " + ".join(parts) or "0"


def bh_dimensions(group, prime):
    pres = group.presentation(prime)
    top = pres.top_degree
    dims = poincare_series(pres, top)
    ranks = [beta_rank(group, prime, n) for n in range(top + 1)]
    return [dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(top + 1)], dims


def reconstruct_integral(group, prime):
    """Solve dim H^n = f + t_n + t_{n+1} and dim BH^n = f + zk_n + zk_{n+1}.

    Both recursions run from the top degree down, with nothing above the
    dimension of the group.
    """
    pres, _ = _check_prime(group, prime)
    top = pres.top_degree
    f = group.free_ranks() + [0] * max(0, top + 1 - (group.dim + 1))
    bh, dims = bh_dimensions(group, prime)
    zk = [0] * (top + 2)
    t = [0] * (top + 2)
    for n in range(top, -1, -1):
        zk[n] = bh[n] - f[n] - zk[n + 1]
        t[n] = dims[n] - f[n] - t[n + 1]
        if zk[n] < 0 or t[n] < zk[n]:
            raise InconsistentPattern(f"{group.name} mod {prime}: negative count in degree {n}")
    if zk[0] or t[0]:
        raise InconsistentPattern(f"{group.name} mod {prime}: torsion in degree 0")
    tainted = any(beta_images(group, prime, n)[1] for n in range(top + 1))
    return IntegralPattern(prime, f[: top + 1], [t[n] - zk[n] for n in range(top + 1)],
                           zk[: top + 1], tainted)


@dataclass
class CandidateSet:
    """Possible mod-p reductions of a free generator in one degree.

    ``classes`` are the BH-class representatives that may carry the free
    generator; ``ambiguity`` spans the torsion reductions (im beta).  Every
    candidate is a class plus an element of that span.
    """

    degree: int
    base: Element
    classes: list
    ambiguity: list
    ambiguous: bool
    prime: int
    candidates: list = field(default=None)

    @property
    def count(self):
        return len(self.classes) * self.prime ** len(self.ambiguity)


def _nonzero_combinations(vectors, p):
    k = len(vectors)
    for coeffs in product(range(p), repeat=k):
        if any(coeffs):
            yield coeffs


def reduction_candidates(group, prime, degree, free_generator_index=0, cap=4096):
    """Candidate reductions of a free generator of H^degree.

    With one BH class and one free summand the class is forced; otherwise
    the free/torsion split is not determined here and every nonzero class
    is allowed (flagged ambiguous).
    """
    f = group.free_ranks()
    if degree > group.dim or f[degree] < 1:
        raise ValueError(f"{group.name} has no free summand in degree {degree}")
    if not 0 <= free_generator_index < f[degree]:
        raise ValueError("free_generator_index out of range")
    pres = group.presentation(prime)
    bh = bockstein_cohomology(group, prime, degree)
    reps = bh.representatives
    if not reps:
        raise InconsistentPattern(f"{group.name}: BH^{degree} is zero but f = {f[degree]}")
    exact = bh.dimension == 1 and f[degree] == 1
    if exact:
        classes = [reps[0]]
    else:
        classes = []
        vecs = [to_vector(pres, degree, r) for r in reps]
        for coeffs in _nonzero_combinations(vecs, prime):
            v = sum(c * x for c, x in zip(coeffs, vecs)) % prime
            classes.append(from_vector(pres, degree, v))
    cs = CandidateSet(degree, classes[0], classes, bh.image_basis, not exact, prime)
    if cs.count <= cap:
        cs.candidates = list(enumerate_candidates(group, prime, cs))
    return cs


def enumerate_candidates(group, prime, cs):
    pres = group.presentation(prime)
    amb = [to_vector(pres, cs.degree, a) for a in cs.ambiguity]
    for cls in cs.classes:
        base = to_vector(pres, cs.degree, cls)
        for coeffs in product(range(prime), repeat=len(amb)):
            v = base.copy()
            for c, a in zip(coeffs, amb):
                v = v + c * a
            yield from_vector(pres, cs.degree, v % prime)


def bockstein_diagram(group, prime, max_degree=None):
    """DOT text: one node per monomial, one edge per nonzero beta entry."""
    pres = group.presentation(prime)
    top = pres.top_degree if max_degree is None else min(max_degree, pres.top_degree)
    lines = [f'digraph "{group.name} mod {prime}" {{', "  rankdir=LR;"]
    for n in range(top + 1):
        for m in pres.basis(n):
            label = format_element(pres, Element.monomial(m))
            lines.append(f'  "{label}" [label="{n}: {label}"];')
    for n in range(top):
        vals, _ = beta_images(group, prime, n)
        for m, v in zip(pres.basis(n), vals):
            src = format_element(pres, Element.monomial(m))
            for tgt, c in sorted(v.terms.items()):
                dst = format_element(pres, Element.monomial(tgt))
                extra = f' [label="{c}"]' if c != 1 else ""
                lines.append(f'  "{src}" -> "{dst}"{extra};')
    lines.append("}")
    return "\n".join(lines) + "\n"
