"""Steenrod squares, reduced powers and Bocksteins on presented algebras.

An :class:`OperationTable` records what each atomic operation does to each
generator.  Everything else follows from two rules: the Bockstein is a
derivation, and the total operations Sq = sum Sq^j and P = sum P^k are ring
maps (the Cartan formula).  Entries the table leaves open are ABSENT; they
evaluate to zero but mark the result as tainted whenever they could have
contributed.
"""

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .fpalg import Element, add, multiply, scale


class _Absent:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ABSENT"


ABSENT = _Absent()


@dataclass(frozen=True, order=True)
class Op:
    """An atomic operation: ``beta``, ``sq`` (Sq^k) or ``power`` (P^k).

    ``q`` with k = 1 stands for the Milnor operation Q1; it is not atomic
    and only appears inside words.
    """

    kind: str
    k: int = 0

    def shift(self, p):
        if self.kind == "beta":
            return 1
        if self.kind == "sq":
            return self.k
        if self.kind == "power":
            return 2 * self.k * (p - 1)
        if self.kind == "q":
            return 2 * p - 1
        raise ValueError(self.kind)

    def __str__(self):
        if self.kind == "beta":
            return "beta"
        if self.kind == "sq":
            return f"Sq{self.k}"
        if self.kind == "power":
            return f"P{self.k}"
        return "Q1"


def beta():
    return Op("beta", 1)


def sq(j):
    return Op("sq", j)


def P(k):
    return Op("power", k)


Q1 = Op("q", 1)


def parse_op(text):
    t = text.strip()
    if t.lower() in ("beta", "b"):
        return beta()
    if t.upper() == "Q1":
        return Q1
    m = re.fullmatch(r"(?i)(sq|p)\^?(\d+)", t)
    if not m:
        raise ValueError(f"unknown operation {text!r}")
    kind = "sq" if m.group(1).lower() == "sq" else "power"
    return Op(kind, int(m.group(2)))


@dataclass(frozen=True)
class OperationWord:
    """A composite of operations, applied right to left.

    ``OperationWord((sq(1), sq(2)))`` is Sq^1 Sq^2: first Sq^2, then Sq^1.
    """

    ops: tuple

    def __post_init__(self):
        if not self.ops:
            raise ValueError("an operation word must be nonempty")

    def degree(self, p):
        return sum(o.shift(p) for o in self.ops)

    def __str__(self):
        return ",".join(str(o) for o in self.ops)

    def __len__(self):
        return len(self.ops)


def parse_word(text):
    return OperationWord(tuple(parse_op(t) for t in text.split(",") if t.strip()))


@dataclass(frozen=True)
class TaintedElement:
    value: Element
    tainted: bool = False


@dataclass(frozen=True, eq=False)
class OperationTable:
    """Generator actions of the atomic operations at one prime.

    ``operations`` lists the operations :func:`apply_atomic` accepts, and
    ``search`` the subset used to build composite words.  ``action`` maps
    (Op, generator index) to an Element or ABSENT; at p = 2 the Bockstein
    is read from the Sq^1 entries.  Missing keys are ABSENT unless a forced
    rule (Sq^0 = id, Sq^{|g|} g = g^2, instability) decides them.
    """

    prime: int
    operations: frozenset
    search: tuple
    action: dict = field(default_factory=dict)

    def supports(self, op):
        if op.kind in ("sq", "power") and op.k == 0:
            return True
        if self.prime == 2 and op.kind == "beta":
            return sq(1) in self.operations
        return op in self.operations

    def atomics(self):
        """(op, degree shift) pairs of the search set."""
        return [(o, o.shift(self.prime)) for o in self.search]


def _normalize(op, p):
    if p == 2 and op.kind == "power":
        raise ValueError("reduced powers P^k are for odd primes; use Sq at p = 2")
    if p != 2 and op.kind == "sq":
        raise ValueError("Steenrod squares are for p = 2; use P^k at odd primes")
    if p == 2 and op.kind == "beta":
        return sq(1)
    return op


class _Engine:
    """Per-(presentation, table) evaluator with a monomial-level cache."""

    def __init__(self, pres, table):
        if pres.prime != table.prime:
            raise ValueError("presentation and table disagree on the prime")
        self.pres = pres
        self.table = table
        self.p = pres.prime
        self._cache = {}
        self._gen_cache = {}

    # generator level -------------------------------------------------
    def generator_value(self, op, i):
        """Action of an atomic op on generator i: Element, or ABSENT."""
        key = (op, i)
        if key in self._gen_cache:
            return self._gen_cache[key]
        val = self._generator_value(op, i)
        self._gen_cache[key] = val
        return val

    def _generator_value(self, op, i):
        pres, p = self.pres, self.p
        d = pres.degrees[i]
        g = Element.monomial(tuple(1 if t == i else 0 for t in range(pres.ngens)))
        if op.kind == "beta":
            look = sq(1) if p == 2 else op
            if p == 2 and d == 1:
                return pres.gen(pres.names[i], 2)
            return self.table.action.get((look, i), ABSENT)
        if op.kind == "sq":
            j = op.k
            if j == 0:
                return g
            if j > d:
                return Element.zero()
            if j == d:
                return pres.gen(pres.names[i], 2)
            return self.table.action.get((op, i), ABSENT)
        if op.kind == "power":
            k = op.k
            if k == 0:
                return g
            if 2 * k > d:
                return Element.zero()
            if 2 * k == d:
                return pres.gen(pres.names[i], p)
            return self.table.action.get((op, i), ABSENT)
        raise ValueError(f"not an atomic operation: {op}")

    # monomial level ---------------------------------------------------
    def monomial(self, op, m):
        key = (op, m)
        hit = self._cache.get(key)
        if hit is None:
            if op.kind == "beta" or (op.kind == "sq" and op.k == 1):
                hit = self._derivation(m)
            else:
                hit = self._total(op, m)
            self._cache[key] = hit
        return hit

    def _derivation(self, m):
        pres, p = self.pres, self.p
        bop = beta()
        out = Element.zero()
        unknown = False
        n = pres.ngens
        prefix_deg = 0
        for i in range(n):
            e = m[i]
            if e == 0:
                continue
            mult = e % p
            if mult:
                rest = list(m)
                rest[i] = e - 1
                pre = tuple(rest[:i]) + (0,) * (n - i)
                mid = tuple(rest[i] if t == i else 0 for t in range(n))
                post = (0,) * (i + 1) + tuple(rest[i + 1:])
                bg = self.generator_value(bop, i)
                if bg is ABSENT:
                    # beta(g) * (everything else) could be nonzero
                    if Element.monomial(tuple(rest)) and pres.monomial_degree(m) + 1 <= pres.top_degree:
                        unknown = True
                elif bg:
                    # prefix * g^{e-1} * beta(g) * suffix; g^{e-1} is even or trivial
                    term = multiply(pres, Element.monomial(pre), Element.monomial(mid))
                    term = multiply(pres, term, bg)
                    term = multiply(pres, term, Element.monomial(post))
                    sign = -1 if prefix_deg % 2 else 1
                    out = add(pres, out, scale(pres, sign * mult, term))
            prefix_deg += e * pres.degrees[i]
        return out, unknown

    def _factor_pieces(self, op, i, e):
        """Pieces (shift, value) of the total operation on g_i^e, grouped as
        independent factors whose product is the total operation."""
        pres, p = self.pres, self.p
        d = pres.degrees[i]
        if op.kind == "sq":
            top_j = d
            mk = sq
        else:
            top_j = d // 2
            mk = P
        base = [(j, self.generator_value(mk(j), i)) for j in range(top_j + 1)]
        factors = []
        s = 0
        while e:
            digit = e % p
            e //= p
            if digit:
                q = p**s
                frob = []
                for j, v in base:
                    if v is ABSENT:
                        frob.append((j * q, ABSENT))
                    else:
                        w = v
                        for _ in range(s):
                            w = _pth_power(pres, w)
                        if w:
                            frob.append((j * q, w))
                factors.extend([frob] * digit)
            s += 1
        return factors

    def _total(self, op, m):
        pres = self.pres
        target = op.k
        if pres.monomial_degree(m) + op.shift(self.p) > pres.top_degree:
            return Element.zero(), False
        state = {0: (Element.monomial(pres.unit), False)}
        for i, e in enumerate(m):
            if not e:
                continue
            for pieces in self._factor_pieces(op, i, e):
                nxt = {}
                for a, (known, unk) in state.items():
                    for b, piece in pieces:
                        c = a + b
                        if c > target:
                            continue
                        k2, u2 = nxt.get(c, (Element.zero(), False))
                        if piece is ABSENT:
                            u2 = u2 or unk or bool(known)
                        else:
                            k2 = add(pres, k2, multiply(pres, known, piece))
                            u2 = u2 or unk
                        nxt[c] = (k2, u2)
                state = nxt
        return state.get(target, (Element.zero(), False))

    # element level ----------------------------------------------------
    def apply(self, op, e):
        pres = self.pres
        out = Element.zero()
        tainted = False
        for m, c in e.terms.items():
            v, u = self.monomial(op, m)
            if v:
                out = add(pres, out, scale(pres, c, v))
            tainted = tainted or u
        return TaintedElement(out, tainted)


def _pth_power(pres, w):
    out = w
    for _ in range(pres.prime - 1):
        out = multiply(pres, out, w)
    return out


@lru_cache(maxsize=256)
def engine(pres, table):
    return _Engine(pres, table)


def apply_atomic(presentation, table, op, e):
    """Apply one atomic operation to a homogeneous element."""
    if isinstance(op, str):
        op = parse_op(op)
    if op.kind == "q":
        raise ValueError("Q1 is not atomic; use milnor_q1 or apply_word")
    if not table.supports(op):
        raise ValueError(f"operation {op} is not in the table")
    if not presentation.is_homogeneous(e):
        raise ValueError("operations need a homogeneous element")
    op = _normalize(op, presentation.prime)
    if op.kind in ("sq", "power") and op.k == 0:
        return TaintedElement(e, False)
    return engine(presentation, table).apply(op, e)


def apply_word(presentation, table, word, e):
    """Apply a word right to left; taint accumulates."""
    if isinstance(word, str):
        word = parse_word(word)
    ops = word.ops if isinstance(word, OperationWord) else tuple(word)
    value, tainted = e, False
    for op in reversed(ops):
        if op.kind == "q":
            r = milnor_q1(presentation, table, value)
        else:
            r = apply_atomic(presentation, table, op, value)
        value, tainted = r.value, tainted or r.tainted
    return TaintedElement(value, tainted)


def milnor_q1(presentation, table, e):
    """Q1 = P^1 beta - beta P^1 at an odd prime."""
    if presentation.prime == 2:
        raise ValueError("Q1 is defined here only for odd primes")
    a = apply_atomic(presentation, table, P(1), apply_atomic(presentation, table, beta(), e).value)
    b1 = apply_atomic(presentation, table, P(1), e)
    b = apply_atomic(presentation, table, beta(), b1.value)
    taint = a.tainted or b1.tainted or b.tainted
    taint = taint or apply_atomic(presentation, table, beta(), e).tainted
    return TaintedElement(add(presentation, a.value, scale(presentation, -1, b.value)), taint)


def binom_mod_p(j, k, p):
    """C(j, k) mod p by Lucas' theorem (C(a, b) = 0 when a < b)."""
    if k < 0 or j < 0:
        return 0
    out = 1
    while j or k:
        a, b = j % p, k % p
        if b > a:
            return 0
        num = den = 1
        for t in range(b):
            num = num * (a - t) % p
            den = den * (t + 1) % p
        out = out * num * pow(den, -1, p) % p
        j //= p
        k //= p
    return out


@dataclass(frozen=True)
class DivisibilityVerdict:
    status: str  # PASS, COUNTEREXAMPLE or NOT_APPLICABLE
    counterexample: tuple = None  # (k, j)


def verify_an_divisibility(p, r, range_bound):
    """Check that C(j, k) = 0 mod p whenever j = p^(r-1) + k - kp - 1 >= 0.

    This is the divisibility that rules out odd-degree composites landing
    on the one nontrivial Bockstein source in the SU(n)/Gamma_l rings.
    """
    if range_bound < 1:
        raise ValueError("range_bound must be at least 1")
    if r <= 1:
        return DivisibilityVerdict("NOT_APPLICABLE")
    for k in range(1, range_bound + 1):
        j = p ** (r - 1) + k - k * p - 1
        if j >= 0 and binom_mod_p(j, k, p) != 0:
            return DivisibilityVerdict("COUNTEREXAMPLE", (k, j))
    return DivisibilityVerdict("PASS")
