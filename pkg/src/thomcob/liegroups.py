"""Catalog of compact simple Lie groups with their mod-p cohomology data."""

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .fpalg import AlgebraPresentation, Element, add, multiply, power
from .steenrod import ABSENT, OperationTable, P, beta, binom_mod_p, sq

FAMILIES = ("SO", "Spin", "Ss", "PSO", "Sp", "PSp", "SU", "SUq",
            "G2", "F4", "E6", "E6ad", "E7", "E7ad", "E8")
_BY_LOWER = {f.lower(): f for f in FAMILIES}
_EXCEPTIONAL_DIM = {"G2": 14, "F4": 52, "E6": 78, "E6ad": 78, "E7": 133, "E7ad": 133, "E8": 248}
_EXCEPTIONAL_RATIONAL = {
    "G2": (3, 11),
    "F4": (3, 11, 15, 23),
    "E6": (3, 9, 11, 15, 17, 23),
    "E6ad": (3, 9, 11, 15, 17, 23),
    "E7": (3, 11, 15, 19, 23, 27, 35),
    "E7ad": (3, 11, 15, 19, 23, 27, 35),
    "E8": (3, 15, 23, 27, 35, 39, 47, 59),
}


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int = None
    l: int = None

    def __post_init__(self):
        f, n, l = self.family, self.n, self.l
        if f not in FAMILIES:
            raise SpecError(f"unknown family {f!r}")
        if f in _EXCEPTIONAL_DIM:
            if n is not None or l is not None:
                raise SpecError(f"{f} takes no parameters")
            return
        if n is None or n < 1:
            raise SpecError(f"{f} needs a positive integer n")
        if f == "SUq":
            if l is None or l < 2 or n % l:
                raise SpecError("SUq(n,l) needs l >= 2 with l dividing n")
        elif l is not None:
            raise SpecError(f"{f} takes a single parameter")
        if f == "Ss" and n % 4:
            raise SpecError("Ss(n) needs 4 | n")

    def __str__(self):
        if self.n is None:
            return self.family
        if self.l is None:
            return f"{self.family}({self.n})"
        return f"{self.family}({self.n},{self.l})"

    @classmethod
    def parse(cls, text):
        """Read ``SO(5)``, ``SUq(4,2)``, ``e8`` and so on (case-insensitive)."""
        t = text.strip()
        m = re.fullmatch(r"([A-Za-z0-9]+)\s*(?:\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\))?", t)
        if not m or m.group(1).lower() not in _BY_LOWER:
            raise SpecError(f"cannot parse group spec {text!r}")
        fam = _BY_LOWER[m.group(1).lower()]
        n = int(m.group(2)) if m.group(2) else None
        l = int(m.group(3)) if m.group(3) else None
        return cls(fam, n, l)


@dataclass(frozen=True)
class DerivedParams:
    """q: largest power of 2 dividing n; t: least power of 2 with n <= t;
    r: exponent of the largest power of ``prime`` dividing n."""

    n: int
    q: int
    t: int
    r: int
    prime: int = 2

    def k(self, i):
        """Least power of 2 with i * k >= n."""
        out = 1
        while i * out < self.n:
            out *= 2
        return out


def derived_params(n, prime=2):
    if n < 1:
        raise ValueError("n must be positive")
    q = n & -n
    t = 1
    while t < n:
        t *= 2
    r = 0
    while n % prime ** (r + 1) == 0:
        r += 1
    return DerivedParams(n, q, t, r, prime)


@dataclass(eq=False)
class GroupData:
    spec: GroupSpec
    dim: int
    rational_degrees: tuple
    data: dict  # prime -> (AlgebraPresentation, OperationTable)
    torsion_primes: tuple
    params: DerivedParams = None
    notes: list = field(default_factory=list)

    @property
    def name(self):
        return str(self.spec)

    @property
    def primes(self):
        return tuple(sorted(self.data))

    def presentation(self, p):
        if p not in self.data:
            raise KeyError(f"{self.name} has no mod-{p} data in the catalog")
        return self.data[p][0]

    def table(self, p):
        if p not in self.data:
            raise KeyError(f"{self.name} has no mod-{p} data in the catalog")
        return self.data[p][1]

    @property
    def torsion_free(self):
        return not self.torsion_primes

    def free_ranks(self):
        """f_n: ranks of the exterior algebra on the rational degrees."""
        ranks = [0] * (self.dim + 1)
        ranks[0] = 1
        for d in self.rational_degrees:
            for k in range(self.dim, d - 1, -1):
                ranks[k] += ranks[k - d]
        return ranks


# tables ---------------------------------------------------------------


def _formula_table(pres, entries):
    top = max(pres.top_degree, 1)
    ops = frozenset(sq(j) for j in range(1, top + 1))
    search = tuple(sq(2**i) for i in range(top.bit_length()) if 2**i <= top)
    return OperationTable(2, ops, search, entries)


def _odd_table(pres, entries):
    p = pres.prime
    top = max(pres.top_degree, 1)
    ops = frozenset([beta()] + [P(k) for k in range(1, top // (2 * (p - 1)) + 1)])
    search = [beta()]
    k = 1
    while 2 * k * (p - 1) <= top:
        search.append(P(k))
        k *= p
    return OperationTable(p, ops, tuple(search), entries)


def _listed_table(prime, search, entries):
    return OperationTable(prime, frozenset(search), tuple(search), entries)


def _u_resolver(pres, n):
    """u_k as an element: the generator, or u_{k/2}^2 iterated, else 0."""

    @lru_cache(maxsize=None)
    def u(k):
        if k >= n or k <= 0:
            return Element.zero()
        name = f"u{k}"
        if name in pres.index:
            return pres.gen(name)
        if k % 2 == 0:
            return power(pres, u(k // 2), 2)
        return Element.zero()

    return u


def _sq_u_entries(pres, n, exception=None):
    """Sq^j u_k = C(k, j) u_{k+j} on every u generator; Sq^1 override."""
    u = _u_resolver(pres, n)
    entries = {}
    for i, name in enumerate(pres.names):
        if not name.startswith("u"):
            continue
        k = int(name[1:])
        for j in range(1, pres.degrees[i]):
            entries[(sq(j), i)] = u(k + j) if binom_mod_p(k, j, 2) else Element.zero()
    if exception:
        for k, value in exception.items():
            if f"u{k}" in pres.index:
                entries[(sq(1), pres.index[f"u{k}"])] = value
    return entries


def _odd_u_list(lo, hi, skip=None):
    return [k for k in range(lo, hi, 2) if k != skip]


def _build_so(n):
    pr = derived_params(n)
    m = n // 2
    gens = [(f"u{k}", k, pr.k(k)) for k in range(1, 2 * m, 2)]
    pres = AlgebraPresentation(2, gens)
    return pres, _formula_table(pres, _sq_u_entries(pres, n)), pr


def _build_spin(n):
    pr = derived_params(n)
    m = n // 2
    gens = [(f"u{k}", k, pr.k(k)) for k in range(3, 2 * m, 2)]
    if pr.t - 1 > 0:
        gens.append(("z", pr.t - 1, 2))
    pres = AlgebraPresentation(2, gens)
    entries = _sq_u_entries(pres, n)
    if n <= 6 and "z" in pres.index:
        # torsion-free, so the Bockstein vanishes on z as well
        entries[(sq(1), pres.index["z"])] = Element.zero()
    return pres, _formula_table(pres, entries), pr


def _quotient_u_gens(n, pr, first):
    q = pr.q
    ks = _odd_u_list(first, n, skip=q - 1)
    gens = [(f"u{k}", k, pr.k(k)) for k in ks]
    if 2 * q - 2 < n and 2 * q - 2 > 0:
        gens.append((f"u{2 * q - 2}", 2 * q - 2, pr.k(2 * q - 2)))
    return sorted(gens, key=lambda g: g[1])


def _build_ss(n):
    pr = derived_params(n)
    q = pr.q
    gens = [("v", 1, q), ("z", pr.t - 1, 2)] + _quotient_u_gens(n, pr, 3)
    pres = AlgebraPresentation(2, gens)
    exception = {}
    if q >= 8:
        exception[q // 2 - 1] = pres.gen("v", q // 2)
    entries = _sq_u_entries(pres, n, exception)
    if n == 4:
        # Ss(4) and SO(4) agree with z in the role of u3
        zi = pres.index["z"]
        entries[(sq(1), zi)] = Element.zero()
        entries[(sq(2), zi)] = Element.zero()
    return pres, _formula_table(pres, entries), pr


def _build_pso(n):
    pr = derived_params(n)
    q = pr.q
    gens = [("v", 1, q)] + _quotient_u_gens(n, pr, 1)
    pres = AlgebraPresentation(2, gens)
    exception = {}
    if q >= 8:
        k = q // 2 - 1
        exception[k] = add(pres, _u_resolver(pres, n)(k + 1), pres.gen("v", q // 2))
    return pres, _formula_table(pres, _sq_u_entries(pres, n, exception)), pr


def _build_psp(n):
    pr = derived_params(n)
    q = pr.q
    gens = [("v", 1, 4 * q)] + [(f"b{d}", d, 2) for d in range(3, 4 * n, 4) if d != 4 * q - 1]
    pres = AlgebraPresentation(2, gens)
    entries = {}
    for i, name in enumerate(pres.names):
        if name == "v":
            continue
        d = pres.degrees[i]
        k = (d - 3) // 4
        for j in range(1, d):
            val = Element.zero()
            if j % 4 == 0 and binom_mod_p(k, j // 4, 2):
                target = f"b{d + j}"
                if target in pres.index:
                    val = pres.gen(target)
            entries[(sq(j), i)] = val
    if n % 2 == 0:
        entries[(sq(1), pres.index[f"b{2 * q - 1}"])] = pres.gen("v", 2 * q)
    return pres, _formula_table(pres, entries), pr


def _z_power_entries(pres, n, p, step):
    """P^k z_{2i-1} = C(i-1, k) z_{2i-1+2k(p-1)} (step = 2(p-1)); Sq^{2k} at p = 2."""
    entries = {}
    for i, name in enumerate(pres.names):
        if not name.startswith("z"):
            continue
        d = pres.degrees[i]
        idx = (d + 1) // 2
        # instability leaves P^k z open exactly for 2k < |z| (Sq^{2k} likewise)
        for k in range(1, (d + 1) // 2):
            val = Element.zero()
            target = f"z{d + k * step}"
            if binom_mod_p(idx - 1, k, p) and target in pres.index:
                val = pres.gen(target)
            op = P(k) if p != 2 else sq(2 * k)
            entries[(op, i)] = val
    return entries


def _build_suq_odd(n, p):
    r = derived_params(n, p).r
    pr_ = p**r
    gens = [("y", 2, pr_)] + [(f"z{d}", d, 2) for d in range(1, 2 * n, 2) if d != 2 * pr_ - 1]
    pres = AlgebraPresentation(p, gens)
    entries = _z_power_entries(pres, n, p, 2 * (p - 1))
    for i in range(pres.ngens):
        entries[(beta(), i)] = Element.zero()
    src = f"z{2 * p ** (r - 1) - 1}"
    entries[(beta(), pres.index[src])] = pres.gen("y", p ** (r - 1))
    return pres, _odd_table(pres, entries)


def _build_suq_two(n, l):
    r = derived_params(n).r
    if l % 4 == 0:
        gens = [("y", 2, 2**r)] + [(f"z{d}", d, 2) for d in range(1, 2 * n, 2)
                                   if d != 2 ** (r + 1) - 1]
        bock = ("z" + str(2**r - 1), ("y", 2 ** (r - 1)))
    else:
        gens = [("z1", 1, 2 ** (r + 1))] + [(f"z{d}", d, 2) for d in range(3, 2 * n, 2)
                                            if d != 2 ** (r + 1) - 1]
        bock = ("z" + str(2**r - 1), ("z1", 2**r))
    pres = AlgebraPresentation(2, gens)
    entries = _z_power_entries(pres, n, 2, 2)
    # the only nonzero odd square is the listed Bockstein
    for i, d in enumerate(pres.degrees):
        for j in range(1, d, 2):
            entries[(sq(j), i)] = Element.zero()
    src, (tname, tpow) = bock
    if src in pres.index and src != "z1":
        entries[(sq(1), pres.index[src])] = pres.gen(tname, tpow)
    return pres, _formula_table(pres, entries)


_E7_SQ = {
    1: {"x5": "x3^2", "x9": "x5^2", "x15": "x3^2*x5^2", "x17": "x9^2",
        "x23": "x3^2*x9^2", "x27": "x5^2*x9^2"},
    2: {"x3": "x5", "x15": "x17"},
    4: {"x5": "x9", "x23": "x27"},
    8: {"x9": "x17", "x15": "x23"},
}
_E8_SQ = {
    1: {"x5": "x3^2", "x9": "x5^2", "x15": "x3^2*x5^2", "x17": "x9^2",
        "x23": "x3^2*x9^2", "x27": "x5^2*x9^2", "x29": "x15^2"},
    2: {"x3": "x5", "x15": "x17", "x27": "x29"},
    4: {"x5": "x9", "x23": "x27"},
    8: {"x9": "x17", "x15": "x23"},
}


def _mono(pres, text):
    """Product of generator powers; None if a factor is not in the ring."""
    out = Element.monomial(pres.unit)
    for factor in text.split("*"):
        name, _, e = factor.partition("^")
        if name not in pres.index:
            return None
        out = multiply(pres, out, pres.gen(name, int(e or 1)))
    return out


def _listed_entries(pres, rules, rename=None):
    """Listed Sq^1, Sq^2, Sq^4, Sq^8 actions; all other listed-degree ones 0.

    A rule whose target leaves the ring stays ABSENT, since nothing says
    what replaces it there.
    """
    entries = {}
    for j in (1, 2, 4, 8):
        for i, d in enumerate(pres.degrees):
            if j < d:
                entries[(sq(j), i)] = Element.zero()
        for src, tgt in rules[j].items():
            if src not in pres.index:
                continue
            i = pres.index[src]
            if j >= pres.degrees[i]:
                continue
            for a, b in (rename or {}).items():
                tgt = tgt.replace(a, b)
            val = _mono(pres, tgt)
            entries[(sq(j), i)] = ABSENT if val is None else val
    return entries


_SQ_1248 = (sq(1), sq(2), sq(4), sq(8))


def _build_exceptional_two(family):
    if family in ("G2", "F4", "E6", "E6ad"):
        ext = {"G2": ["x5"], "F4": ["x5", "x15", "x23"],
               "E6": ["x5", "x9", "x15", "x17", "x23"]}[family if family != "E6ad" else "E6"]
        gens = [("x3", 3, 4)] + [(x, int(x[1:]), 2) for x in ext]
        pres = AlgebraPresentation(2, gens)
        return pres, _listed_table(2, _SQ_1248, _listed_entries(pres, _E7_SQ))
    if family == "E7":
        gens = [("x3", 3, 4), ("x5", 5, 4), ("x9", 9, 4),
                ("x15", 15, 2), ("x17", 17, 2), ("x23", 23, 2), ("x27", 27, 2)]
        pres = AlgebraPresentation(2, gens)
        return pres, _listed_table(2, _SQ_1248, _listed_entries(pres, _E7_SQ))
    if family == "E7ad":
        gens = [("x1", 1, 4), ("x5", 5, 4), ("x9", 9, 4), ("x6", 6, 2),
                ("x15", 15, 2), ("x17", 17, 2), ("x23", 23, 2), ("x27", 27, 2)]
        pres = AlgebraPresentation(2, gens)
        entries = _listed_entries(pres, _E7_SQ, rename={"x3^2": "x6"})
        return pres, _listed_table(2, _SQ_1248, entries)
    gens = [("x3", 3, 16), ("x5", 5, 8), ("x9", 9, 4), ("x15", 15, 4),
            ("x17", 17, 2), ("x23", 23, 2), ("x27", 27, 2), ("x29", 29, 2)]
    pres = AlgebraPresentation(2, gens)
    return pres, _listed_table(2, _SQ_1248, _listed_entries(pres, _E8_SQ))


def _build_e7_three():
    gens = [("x3", 3, 2), ("x7", 7, 2), ("x8", 8, 3), ("x11", 11, 2), ("x15", 15, 2),
            ("x19", 19, 2), ("x27", 27, 2), ("x35", 35, 2)]
    pres = AlgebraPresentation(3, gens)
    entries = {(beta(), i): Element.zero() for i in range(pres.ngens)}
    entries[(beta(), pres.index["x7"])] = pres.gen("x8")
    entries[(P(1), pres.index["x3"])] = pres.gen("x7")
    entries[(P(3), pres.index["x7"])] = pres.gen("x19")
    return pres, _odd_table(pres, entries)


def _exterior(prime, degrees, prefix="e"):
    """Torsion-free stand-in: an exterior algebra with zero Bockstein."""
    gens = []
    seen = {}
    for d in sorted(degrees):
        seen[d] = seen.get(d, 0) + 1
        name = f"{prefix}{d}" if seen[d] == 1 else f"{prefix}{d}_{seen[d]}"
        gens.append((name, d, 2))
    pres = AlgebraPresentation(prime, gens)
    entries = {}
    for i in range(pres.ngens):
        entries[(sq(1) if prime == 2 else beta(), i)] = Element.zero()
    if prime == 2:
        return pres, OperationTable(2, frozenset([sq(1)]), (sq(1),), entries)
    return pres, OperationTable(prime, frozenset([beta()]), (beta(),), entries)


def rational_degrees(spec):
    f, n = spec.family, spec.n
    if f in _EXCEPTIONAL_RATIONAL:
        return _EXCEPTIONAL_RATIONAL[f]
    if f in ("SO", "Spin", "Ss", "PSO"):
        m = n // 2
        if n % 2:
            return tuple(4 * i - 1 for i in range(1, m + 1))
        return tuple(sorted([4 * i - 1 for i in range(1, m)] + [n - 1]))
    if f in ("Sp", "PSp"):
        return tuple(range(3, 4 * n, 4))
    return tuple(range(3, 2 * n, 2))


def dimension(spec):
    f, n = spec.family, spec.n
    if f in _EXCEPTIONAL_DIM:
        return _EXCEPTIONAL_DIM[f]
    if f in ("SO", "Spin", "Ss", "PSO"):
        return n * (n - 1) // 2
    if f in ("Sp", "PSp"):
        return n * (2 * n + 1)
    return n * n - 1


def _prime_factors(x):
    out, d = [], 2
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        out.append(x)
    return out


def _is_torsion_free_at(pres, rational):
    return pres.total_dimension == 2 ** len(rational)


@lru_cache(maxsize=None)
def build_group(spec):
    """Assemble GroupData for a spec (string or GroupSpec)."""
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    f, n = spec.family, spec.n
    dim = dimension(spec)
    rat = rational_degrees(spec)
    data = {}
    params = derived_params(n) if n else None
    notes = []
    if f == "SO" or (f == "PSO" and n % 2):
        pres, table, _ = _build_so(n)
        data[2] = (pres, table)
        if f == "PSO":
            notes.append("PSO(n) = SO(n) for odd n")
    elif f == "Spin":
        pres, table, _ = _build_spin(n)
        data[2] = (pres, table)
    elif f == "Ss":
        pres, table, _ = _build_ss(n)
        data[2] = (pres, table)
    elif f == "PSO":
        pres, table, _ = _build_pso(n)
        data[2] = (pres, table)
    elif f == "PSp":
        pres, table, _ = _build_psp(n)
        data[2] = (pres, table)
    elif f == "SUq":
        for p in _prime_factors(spec.l):
            if p == 2:
                data[2] = _build_suq_two(n, spec.l)
            else:
                data[p] = _build_suq_odd(n, p)
        if 2 not in data:
            data[2] = _exterior(2, rat)
    elif f in ("Sp", "SU"):
        data[2] = _exterior(2, rat)
    elif f in ("E7", "E7ad"):
        data[2] = _build_exceptional_two(f)
        data[3] = _build_e7_three()
    else:
        data[2] = _build_exceptional_two(f)
    for p, (pres, _) in data.items():
        if pres.top_degree != dim:
            raise AssertionError(f"{spec} mod {p}: top degree {pres.top_degree} != dim {dim}")
    torsion = tuple(sorted(p for p, (pres, _) in data.items() if not _is_torsion_free_at(pres, rat)))
    return GroupData(spec, dim, rat, data, torsion, params, notes)


def catalog_record(group):
    """Plain-data summary of a catalog entry, for JSON output."""
    from .fpalg import format_element

    out = {
        "group": group.name,
        "dim": group.dim,
        "rational_degrees": list(group.rational_degrees),
        "torsion_primes": list(group.torsion_primes),
        "primes": {},
    }
    if group.params:
        out["params"] = {"q": group.params.q, "t": group.params.t, "r": group.params.r}
    for p in group.primes:
        pres, table = group.data[p]
        rows = []
        for (op, i), val in sorted(table.action.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            text = "ABSENT" if val is ABSENT else format_element(pres, val)
            rows.append({"op": str(op), "generator": pres.names[i], "value": text})
        out["primes"][str(p)] = {
            "generators": [{"name": g.name, "degree": g.degree, "nilpotency": g.nilpotency}
                           for g in pres.generators],
            "search": [str(o) for o in table.search],
            "actions": rows,
        }
    return out
