"""Obstructions to surjectivity of the Thom morphism MU^*(G) -> H^*(G; Z).

A free class x of H^n(G; Z) fails to be in the image as soon as some
composite of Steenrod operations of odd degree >= 3 is nonzero on every
possible mod-p reduction of x (and, at odd primes, when Q1 is nonzero on
it).  Conversely, if every such composite kills all of ker(beta), nothing
can obstruct and the morphism is onto.
"""

import heapq
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import linalg
from .bockstein import beta_matrix, reconstruct_integral, reduction_candidates
from .fpalg import Element, format_element, from_vector
from .steenrod import Q1, OperationWord, apply_atomic, milnor_q1

NOT_IN_IMAGE = "NOT_IN_IMAGE"
NO_OBSTRUCTION_FOUND = "NO_OBSTRUCTION_FOUND"
TAINTED = "TAINTED"

DEFAULT_MAX_LENGTH = 6

DEFAULT_INSTANCES = (
    "SO(4)", "SO(5)", "SO(8)", "SO(10)",
    "Spin(6)", "Spin(7)", "Spin(10)",
    "Ss(4)", "Ss(8)", "Ss(12)", "Ss(16)",
    "PSO(4)", "PSO(6)", "PSO(8)", "PSO(10)", "PSO(12)", "PSO(16)",
    "Sp(2)", "Sp(3)", "PSp(2)", "PSp(3)", "PSp(4)",
    "SU(4)", "SUq(4,2)", "SUq(4,4)", "SUq(9,3)",
    "G2", "F4", "E6", "E6ad", "E7", "E7ad", "E8",
)


def _op_key(op):
    return (op.kind, op.k)


def _word_key(ops, p):
    return (sum(o.shift(p) for o in ops), len(ops), tuple(_op_key(o) for o in ops))


def odd_composites(table, max_total_degree, max_word_length):
    """All words over the search atomics with odd degree in [3, max_total_degree].

    Sorted by (degree, length, operations from the left).
    """
    p = table.prime
    atoms = table.atomics()
    out = []

    def grow(ops, deg):
        if len(ops) and deg % 2 == 1 and deg >= 3:
            out.append(ops)
        if len(ops) == max_word_length:
            return
        for op, s in atoms:
            if deg + s <= max_total_degree:
                grow((op,) + ops, deg + s)

    grow((), 0)
    out.sort(key=lambda ops: _word_key(ops, p))
    return [OperationWord(ops) for ops in out]


class WordSearch:
    """Best-first walk over operation words applied to a list of elements.

    Words come out in the order of :func:`odd_composites`.  A word is only
    extended when some element still has an untainted nonzero value, since
    every longer word factors through it.  ``taint_pruned`` records that a
    branch was cut only because its values depended on ABSENT entries.
    """

    def __init__(self, pres, table, elements, max_degree, max_length, with_q1=False):
        self.pres = pres
        self.table = table
        self.p = pres.prime
        self.elements = list(elements)
        self.max_degree = max_degree
        self.max_length = max_length
        self.with_q1 = with_q1 and self.p != 2
        self.taint_pruned = False
        self.evaluated = 0

    def _apply(self, op, values):
        out = []
        for v, t in values:
            if v.is_zero():
                out.append((v, t))
                continue
            r = apply_atomic(self.pres, self.table, op, v)
            out.append((r.value, t or r.tainted))
        self.evaluated += 1
        return out

    def __iter__(self):
        p = self.p
        if self.with_q1 and 2 * p - 1 <= self.max_degree:
            vals = []
            for x in self.elements:
                r = milnor_q1(self.pres, self.table, x)
                vals.append((r.value, r.tainted))
            yield OperationWord((Q1,)), vals
        start = [(x, False) for x in self.elements]
        heap = []
        counter = 0
        atoms = self.table.atomics()

        def push(ops, values):
            nonlocal counter
            heapq.heappush(heap, (_word_key(ops, p), counter, ops, values))
            counter += 1

        def expand(ops, deg, values):
            if len(ops) >= self.max_length:
                return
            live = any(v and not t for v, t in values)
            if not live:
                if any(t for _, t in values):
                    self.taint_pruned = True
                return
            for op, s in atoms:
                if deg + s <= self.max_degree:
                    push((op,) + ops, self._apply(op, values))

        expand((), 0, start)
        while heap:
            key, _, ops, values = heapq.heappop(heap)
            deg = key[0]
            if deg % 2 == 1 and deg >= 3:
                yield OperationWord(ops), values
            expand(ops, deg, values)


@dataclass
class Witness:
    candidate: Element
    word: OperationWord
    value: Element


@dataclass
class ObstructionVerdict:
    group: str
    prime: int
    degree: int
    status: str
    witnesses: list = field(default_factory=list)
    candidate_count: int = 0
    ambiguous: bool = False
    uniform: bool = False
    presentation: object = None

    def record(self):
        pres = self.presentation
        return {
            "group": self.group,
            "prime": self.prime,
            "degree": self.degree,
            "status": self.status,
            "candidates": self.candidate_count,
            "ambiguous": self.ambiguous,
            "witnesses": [
                {
                    "candidate": format_element(pres, w.candidate),
                    "word": str(w.word),
                    "value": format_element(pres, w.value),
                }
                for w in self.witnesses
            ],
        }


def _combine(pres, coeffs, values):
    p = pres.prime
    out = {}
    taint = False
    for c, (v, t) in zip(coeffs, values):
        if not c:
            continue
        taint = taint or t
        for m, a in v.terms.items():
            out[m] = (out.get(m, 0) + c * a) % p
    return Element(out), taint


def _in_span(pres, target, span):
    """Whether ``target`` lies in the F_p-span of the elements ``span``."""
    if target.is_zero():
        return True
    support = sorted(set(target.terms).union(*(s.terms for s in span)))
    idx = {m: i for i, m in enumerate(support)}

    def vec(e):
        v = np.zeros(len(support), dtype=np.int64)
        for m, c in e.terms.items():
            v[idx[m]] = c
        return v

    p = pres.prime
    if not span:
        return False
    base = np.array([vec(s) for s in span])
    return linalg.rank(np.vstack([base, vec(target)]), p) == linalg.rank(base, p)


def obstruction_verdict(group, prime, degree, max_length=DEFAULT_MAX_LENGTH, max_degree=None,
                        cap=4096):
    """Search for a composite that is nonzero on every candidate reduction.

    Small candidate sets get an individual witness each (the first word in
    search order that is untainted and nonzero on that candidate).  Large
    cosets class + span(im beta) are certified by a single word w with
    w(class) outside w(span), which makes w nonzero on the whole coset.
    """
    pres = group.presentation(prime)
    table = group.table(prime)
    cs = reduction_candidates(group, prime, degree, cap=cap)
    bound = (group.dim - degree) if max_degree is None else min(max_degree, group.dim - degree)
    tracked = list(cs.classes) + list(cs.ambiguity)
    ncls, namb = len(cs.classes), len(cs.ambiguity)
    verdict = ObstructionVerdict(group.name, prime, degree, NO_OBSTRUCTION_FOUND,
                                 candidate_count=cs.count, ambiguous=cs.ambiguous,
                                 presentation=pres)
    if cs.candidates is not None:
        pending = {}
        for ci in range(ncls):
            for amb in product(range(prime), repeat=namb):
                coeffs = tuple(1 if j == ci else 0 for j in range(ncls)) + amb
                pending[coeffs] = None
        uniform = False
    else:
        pending = {ci: None for ci in range(ncls)}
        uniform = True
    verdict.uniform = uniform
    potential = False
    search = WordSearch(pres, table, tracked, bound, max_length, with_q1=True)
    for word, values in search:
        if all(v is not None for v in pending.values()):
            break
        for key, found in pending.items():
            if found is not None:
                continue
            if not uniform:
                val, taint = _combine(pres, key, values)
                if taint:
                    potential = True
                elif val:
                    cand, _ = _combine(pres, key, [(x, False) for x in tracked])
                    pending[key] = Witness(cand, word, val)
            else:
                cval, ctaint = values[key]
                amb_vals = values[ncls:]
                if ctaint or any(t for _, t in amb_vals):
                    potential = True
                    continue
                if not _in_span(pres, cval, [v for v, _ in amb_vals if v]):
                    pending[key] = Witness(tracked[key], word, cval)
    potential = potential or search.taint_pruned
    if all(v is not None for v in pending.values()):
        verdict.status = NOT_IN_IMAGE
        verdict.witnesses = list(pending.values())
    elif potential:
        verdict.status = TAINTED
    return verdict


def _kernel_elements(group, prime, degree):
    pres = group.presentation(prime)
    ker = linalg.kernel(beta_matrix(group, prime, degree), prime)
    return [from_vector(pres, degree, r) for r in ker]


def survives(group, prime, degree, max_length=DEFAULT_MAX_LENGTH, max_degree=None):
    """(found, tainted): does some odd composite act nontrivially on ker beta_n?"""
    pres = group.presentation(prime)
    if degree > pres.top_degree:
        return False, False
    elems = _kernel_elements(group, prime, degree)
    if not elems:
        return False, False
    bound = (group.dim - degree) if max_degree is None else min(max_degree, group.dim - degree)
    tainted = False
    search = WordSearch(pres, group.table(prime), elems, bound, max_length)
    for _, values in search:
        for v, t in values:
            if t:
                tainted = True
            elif v:
                return True, tainted
    return False, tainted or search.taint_pruned


@dataclass
class Table1Row:
    group: str
    surjective: str  # yes, no or conditional
    min_degree: int = None
    prime: int = None
    reason: str = ""
    verdict: ObstructionVerdict = None
    caveats: list = field(default_factory=list)

    def record(self):
        out = {
            "group": self.group,
            "surjective": self.surjective,
            "min_degree": self.min_degree,
            "prime": self.prime,
            "reason": self.reason,
        }
        if self.verdict is not None:
            out["verdict"] = self.verdict.record()
        if self.caveats:
            out["caveats"] = list(self.caveats)
        return out


def surjectivity_scan(group, max_length=DEFAULT_MAX_LENGTH, max_degree=None):
    """Decide the surjectivity row for a group.

    Degrees are visited upward.  A degree needs attention only when some
    odd composite survives on ker beta there; the first degree with a
    NOT_IN_IMAGE verdict is the answer.
    """
    if group.torsion_free:
        return Table1Row(group.name, "yes", reason="no torsion")
    f = group.free_ranks()
    caveats = []
    for d in range(group.dim + 1):
        for p in group.torsion_primes:
            hit, tainted = survives(group, p, d, max_length, max_degree)
            if not hit:
                if tainted:
                    caveats.append(f"degree {d} mod {p}: survival depends on unlisted operations")
                continue
            if f[d] < 1:
                caveats.append(f"degree {d} mod {p}: a torsion class survives an odd composite")
                continue
            v = obstruction_verdict(group, p, d, max_length, max_degree)
            if v.status == NOT_IN_IMAGE:
                return Table1Row(group.name, "no", d, p, "obstruction found", v, caveats)
            caveats.append(f"degree {d} mod {p}: {v.status}")
    if caveats:
        return Table1Row(group.name, "conditional", reason="; ".join(caveats), caveats=caveats)
    return Table1Row(group.name, "yes", reason="every odd composite vanishes on ker beta")


INCONCLUSIVE = "INCONCLUSIVE"


def minimal_failing_degree(group, max_length=DEFAULT_MAX_LENGTH, max_degree=None):
    """Smallest degree with an obstructed free class, None if there is none,
    or INCONCLUSIVE when only unlisted operation data stands in the way."""
    row = surjectivity_scan(group, max_length, max_degree)
    if row.surjective == "no":
        return row.min_degree
    if row.surjective == "conditional":
        return INCONCLUSIVE
    return None


def multiplier_bound(group, degree):
    """Upper bound m with m * alpha in the image of the Thom morphism.

    Product over degrees d in (degree, dim G] and torsion primes p of the
    exponent of the p-torsion of H^d(G; Z), with Z/p^{>=2} priced at p^2.
    Only meaningful where an obstruction has been found; not tight.
    """
    if group.torsion_free:
        return 1
    out = 1
    for p in group.torsion_primes:
        pat = reconstruct_integral(group, p)
        for d in range(degree + 1, group.dim + 1):
            if pat.zk[d]:
                out *= p * p
            elif pat.z1[d]:
                out *= p
    return out


def table1(instances=DEFAULT_INSTANCES, max_length=DEFAULT_MAX_LENGTH):
    from .liegroups import build_group

    return [surjectivity_scan(build_group(name), max_length) for name in instances]


def format_table1(rows):
    width = max(len(r.group) for r in rows) + 2
    lines = [f"{'group':<{width}}{'surjective':<13}min degree"]
    for r in rows:
        deg = "-" if r.min_degree is None else str(r.min_degree)
        lines.append(f"{r.group:<{width}}{r.surjective:<13}{deg}")
    return "\n".join(lines) + "\n"

