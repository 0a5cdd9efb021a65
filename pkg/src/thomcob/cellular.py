"""Integral cellular chains of SO(n) from products of reflections.

Cells are indexed by strictly decreasing sequences n > i_1 > ... > i_m > 0;
the cell for (i_1, ..., i_m) has dimension i_1 + ... + i_m.  The boundary is
the product rule for RP^{n-1} cells, d e^i = (1 + (-1)^i) e^{i-1}, with terms
that would repeat an index or reach 0 discarded.

>>> boundary(Cell((3, 2)), 5)
{Cell(indices=(3, 1)): -2}
>>> [c.label for c in cells_so(5) if c.dimension == 7]
['(4,3)', '(4,2,1)']
"""

from dataclasses import dataclass
from itertools import combinations

from .fpalg import poincare_series


@dataclass(frozen=True, order=True)
class Cell:
    indices: tuple

    def __post_init__(self):
        idx = tuple(self.indices)
        if any(a <= b for a, b in zip(idx, idx[1:])) or (idx and idx[-1] < 1):
            raise ValueError(f"cell indices must strictly decrease to >= 1: {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def dimension(self):
        return sum(self.indices)

    @property
    def label(self):
        if not self.indices:
            return "(0)"
        return "(" + ",".join(map(str, self.indices)) + ")"

    def fits(self, n):
        return not self.indices or self.indices[0] <= n - 1


def cells_so(n):
    """All 2^{n-1} cells of SO(n), ordered by (dimension, length, indices)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = []
    top = list(range(n - 1, 0, -1))
    for m in range(len(top) + 1):
        out.extend(Cell(c) for c in combinations(top, m))
    out.sort(key=lambda c: (c.dimension, len(c.indices), c.indices))
    return out


def cells_by_dimension(n):
    dims = {}
    for c in cells_so(n):
        dims.setdefault(c.dimension, []).append(c)
    top = n * (n - 1) // 2
    return [dims.get(k, []) for k in range(top + 1)]


def _valid(seq):
    return all(a > b for a, b in zip(seq, seq[1:])) and (not seq or seq[-1] > 0)


def boundary(cell, n):
    """Boundary as a dict {Cell: nonzero integer coefficient}."""
    if not cell.fits(n):
        raise ValueError(f"{cell.label} is not a cell of SO({n})")
    out = {}
    prefix = 0
    idx = cell.indices
    for j, i in enumerate(idx):
        coeff = (-1) ** prefix * (1 + (-1) ** i)
        prefix += i
        if not coeff:
            continue
        face = idx[:j] + (i - 1,) + idx[j + 1:]
        if not _valid(face):
            continue
        c = Cell(face)
        out[c] = out.get(c, 0) + coeff
    return {c: v for c, v in out.items() if v}


def boundary_matrices(n):
    """Integer matrices d_k (rows: (k-1)-cells, cols: k-cells) for k = 1..dim."""
    levels = cells_by_dimension(n)
    mats = {}
    for k in range(1, len(levels)):
        row = {c: r for r, c in enumerate(levels[k - 1])}
        mat = [[0] * len(levels[k]) for _ in levels[k - 1]]
        for j, c in enumerate(levels[k]):
            for face, v in boundary(c, n).items():
                mat[row[face]][j] = v
        mats[k] = mat
    return levels, mats


def smith_normal_form(matrix):
    """Elementary divisors d_1 | d_2 | ... of an integer matrix, and its rank.

    Works on a copy with Python integers; the pivot is always an entry of
    least absolute value in the remaining block.
    """
    a = [[int(x) for x in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    divisors = []
    for s in range(min(rows, cols)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(s, rows) for j in range(s, cols) if a[i][j]]
            if not nz:
                return divisors, len(divisors)
            _, i, j = min(nz)
            a[s], a[i] = a[i], a[s]
            for row in a:
                row[s], row[j] = row[j], row[s]
            piv = a[s][s]
            for i in range(s + 1, rows):
                q = a[i][s] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[s])]
            for j in range(s + 1, cols):
                q = a[s][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[s]
            if any(a[i][s] for i in range(s + 1, rows)) or any(a[s][j] for j in range(s + 1, cols)):
                continue
            bad = next((i for i in range(s + 1, rows) for j in range(s + 1, cols) if a[i][j] % piv), None)
            if bad is None:
                break
            # fold the offending row in so the next pass sees a smaller remainder
            a[s] = [x + y for x, y in zip(a[s], a[bad])]
        divisors.append(abs(a[s][s]))
    return divisors, len(divisors)


@dataclass
class HomologySummands:
    degree: int
    free_rank: int
    torsion: list

    def describe(self):
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"

    def record(self):
        return {"degree": self.degree, "free_rank": self.free_rank,
                "torsion": list(self.torsion), "group": self.describe()}


def integral_homology_so(n):
    """H_k(SO(n); Z) for k = 0..dim, from consecutive boundary matrices."""
    levels, mats = boundary_matrices(n)
    snf = {k: smith_normal_form(m) for k, m in mats.items()}
    out = []
    for k, cells in enumerate(levels):
        rk_out = snf[k][1] if k in snf else 0
        divs, rk_in = snf.get(k + 1, ([], 0))
        free = len(cells) - rk_out - rk_in
        out.append(HomologySummands(k, free, [d for d in divs if d > 1]))
    return out


def euler_characteristic(n):
    """Alternating sum of free ranks, checked against the cell count sum."""
    hom = integral_homology_so(n)
    chi = sum((-1) ** h.degree * h.free_rank for h in hom)
    cells = sum((-1) ** k * len(c) for k, c in enumerate(cells_by_dimension(n)))
    if chi != cells:
        raise ArithmeticError(f"Euler characteristic mismatch for SO({n}): {chi} vs {cells}")
    return chi


def incidence_diagram(n):
    """DOT graph of cells, with an edge wherever lowering one index by 1 gives a cell.

    Lowering a 1 removes it.  Edge labels are the boundary coefficients,
    so many edges carry 0.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    cells = cells_so(n)
    lines = [f'graph "SO({n})" {{']
    for c in cells:
        lines.append(f'  "{c.label}" [label="{c.label}", dim={c.dimension}];')
    for lo, hi, coeff in incidence_edges(n):
        lines.append(f'  "{lo.label}" -- "{hi.label}" [label="{coeff}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def incidence_edges(n):
    out = []
    for c in cells_so(n):
        d = boundary(c, n)
        for j, i in enumerate(c.indices):
            face = c.indices[:j] + ((i - 1,) if i > 1 else ()) + c.indices[j + 1:]
            if not _valid(face):
                continue
            f = Cell(face)
            out.append((f, c, d.get(f, 0)))
    out.sort(key=lambda e: (e[0].dimension, e[0].indices, e[1].indices))
    return out


@dataclass
class ConsistencyRow:
    degree: int
    cellular: int
    algebraic: int

    @property
    def ok(self):
        return self.cellular == self.algebraic


def mod2_consistency(n):
    """Compare mod-2 cellular homology with the mod-2 cohomology ring, degree by degree."""
    from .liegroups import build_group

    if n < 2:
        raise ValueError("n must be at least 2")
    levels, mats = boundary_matrices(n)
    ranks = {k: sum(1 for d in smith_normal_form(m)[0] if d % 2) for k, m in mats.items()}
    pres = build_group(f"SO({n})").presentation(2)
    top = max(len(levels) - 1, pres.top_degree)
    alg = poincare_series(pres, top)
    rows = []
    for k in range(top + 1):
        size = len(levels[k]) if k < len(levels) else 0
        cell = size - ranks.get(k, 0) - ranks.get(k + 1, 0)
        rows.append(ConsistencyRow(k, cell, alg[k]))
    return rows
