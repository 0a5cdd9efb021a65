"""Graded-commutative algebras over F_p presented by truncated generators.

Every ring we meet is a tensor product of truncated polynomial algebras
F_p[g]/(g^h); an exterior generator is simply the case h = 2.  A monomial is
a tuple of exponents indexed like the generator list, and an element is a
sparse map from monomials to nonzero residues.

>>> so5 = AlgebraPresentation(2, [("u1", 1, 8), ("u3", 3, 2)])
>>> [format_element(so5, Element.monomial(m)) for m in enumerate_basis(so5, 3)]
['u1^3', 'u3']
>>> format_element(so5, parse_element(so5, "u3 + u1^3"))
'u1^3 + u3'
"""

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    nilpotency: int


class AlgebraPresentation:
    """F_p[g_1, ..., g_n] / (g_i^{h_i}), graded-commutative.

    Generators keep their declaration order; that order is the canonical
    order of factors in a monomial and fixes the Koszul signs at odd primes.
    Instances are immutable and compare by identity, which lets evaluation
    caches key on them.
    """

    def __init__(self, prime, generators):
        if prime < 2 or any(prime % d == 0 for d in range(2, int(prime**0.5) + 1)):
            raise ValueError(f"{prime} is not a prime")
        gens = tuple(g if isinstance(g, Generator) else Generator(*g) for g in generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        for g in gens:
            if g.degree < 1:
                raise ValueError(f"generator {g.name} must have positive degree")
            if g.nilpotency < 2:
                raise ValueError(f"generator {g.name} needs nilpotency at least 2")
            if prime != 2 and g.degree % 2 == 1 and g.nilpotency != 2:
                raise ValueError(f"odd generator {g.name} must be exterior at p={prime}")
        self.prime = prime
        self.generators = gens
        self.names = tuple(names)
        self.degrees = tuple(g.degree for g in gens)
        self.nilpotency = tuple(g.nilpotency for g in gens)
        self.index = {n: i for i, n in enumerate(names)}
        self.odd = tuple(i for i, g in enumerate(gens) if g.degree % 2 == 1)
        self._basis_cache = {}

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}^{g.nilpotency}" for g in self.generators)
        return f"AlgebraPresentation(p={self.prime}; {gens})"

    @property
    def ngens(self):
        return len(self.generators)

    @property
    def top_degree(self):
        return sum((h - 1) * d for d, h in zip(self.degrees, self.nilpotency))

    @property
    def total_dimension(self):
        out = 1
        for h in self.nilpotency:
            out *= h
        return out

    @property
    def unit(self):
        return (0,) * self.ngens

    def monomial_degree(self, m):
        return sum(e * d for e, d in zip(m, self.degrees))

    def degree(self, e):
        """Degree of a nonzero homogeneous element; raises on mixed degrees."""
        degs = {self.monomial_degree(m) for m in e.terms}
        if len(degs) != 1:
            raise ValueError("element is zero or not homogeneous")
        return degs.pop()

    def is_homogeneous(self, e):
        return len({self.monomial_degree(m) for m in e.terms}) <= 1

    def gen(self, name, power=1):
        i = self.index[name]
        if power >= self.nilpotency[i]:
            return Element.zero()
        m = [0] * self.ngens
        m[i] = power
        return Element.monomial(tuple(m))

    def basis(self, degree):
        """Cached tuple of the degree-``degree`` monomials (see enumerate_basis)."""
        b = self._basis_cache.get(degree)
        if b is None:
            b = tuple(_enumerate(self.degrees, self.nilpotency, degree))
            self._basis_cache[degree] = b
        return b

    def basis_index(self, degree):
        key = ("index", degree)
        idx = self._basis_cache.get(key)
        if idx is None:
            idx = {m: i for i, m in enumerate(self.basis(degree))}
            self._basis_cache[key] = idx
        return idx


class Element:
    """Sparse F_p-linear combination of monomials."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def monomial(cls, m, coeff=1):
        return cls({tuple(m): coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        body = " + ".join(f"{c}*{m}" for m, c in sorted(self.terms.items()))
        return f"Element({body or '0'})"

    def support(self):
        return set(self.terms)


def _enumerate(degrees, nilpotency, target, start=0):
    if start == len(degrees):
        if target == 0:
            yield ()
        return
    d, h = degrees[start], nilpotency[start]
    rest = sum((hh - 1) * dd for dd, hh in zip(degrees[start + 1:], nilpotency[start + 1:]))
    for e in range(min(h - 1, target // d), -1, -1):
        remaining = target - e * d
        if remaining > rest:
            break
        for tail in _enumerate(degrees, nilpotency, remaining, start + 1):
            yield (e,) + tail


def enumerate_basis(presentation, degree):
    """Monomials of the given degree, in descending lexicographic exponent order.

    The first generator's exponent varies slowest and is listed from high
    to low, so for F_2[u1,u3]/(u1^8,u3^2) degree 3 gives u1^3 before u3.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    return list(presentation.basis(degree))


def multiply_monomials(presentation, a, b):
    """Product of two monomials as (coefficient, monomial), or None if zero."""
    out = []
    for x, y, h in zip(a, b, presentation.nilpotency):
        s = x + y
        if s >= h:
            return None
        out.append(s)
    coeff = 1
    p = presentation.prime
    if p != 2:
        # sign from moving the odd factors of b past the later odd factors of a
        swaps = 0
        seen_in_a = 0
        for i in reversed(presentation.odd):
            if b[i]:
                swaps += seen_in_a
            if a[i]:
                seen_in_a += 1
        if swaps % 2:
            coeff = p - 1
    return coeff, tuple(out)


def multiply(presentation, a, b):
    p = presentation.prime
    out = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            r = multiply_monomials(presentation, ma, mb)
            if r is None:
                continue
            s, m = r
            out[m] = (out.get(m, 0) + s * ca * cb) % p
    return Element(out)


def add(presentation, *elements):
    p = presentation.prime
    out = {}
    for e in elements:
        for m, c in e.terms.items():
            out[m] = (out.get(m, 0) + c) % p
    return Element(out)


def scale(presentation, c, e):
    p = presentation.prime
    return Element({m: (c * v) % p for m, v in e.terms.items()})


def subtract(presentation, a, b):
    return add(presentation, a, scale(presentation, -1, b))


def power(presentation, e, n):
    out = Element.monomial(presentation.unit)
    for _ in range(n):
        out = multiply(presentation, out, e)
    return out


def poincare_series(presentation, max_degree):
    """Dimensions of the graded pieces in degrees 0..max_degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    series = [1] + [0] * max_degree
    for d, h in zip(presentation.degrees, presentation.nilpotency):
        nxt = [0] * (max_degree + 1)
        for i, v in enumerate(series):
            if not v:
                continue
            for e in range(h):
                j = i + e * d
                if j > max_degree:
                    break
                nxt[j] += v
        series = nxt
    return series


def to_vector(presentation, degree, e):
    """Coordinates of a homogeneous element in the degree's monomial basis."""
    import numpy as np

    idx = presentation.basis_index(degree)
    v = np.zeros(len(idx), dtype=np.int64)
    for m, c in e.terms.items():
        if m not in idx:
            raise ValueError("element has a term outside the requested degree")
        v[idx[m]] = c
    return v


def from_vector(presentation, degree, vec):
    basis = presentation.basis(degree)
    return Element({basis[i]: int(c) for i, c in enumerate(vec) if int(c) % presentation.prime})


def sort_key(presentation, m):
    return (presentation.monomial_degree(m), tuple(-x for x in m))


def format_monomial(presentation, m):
    parts = []
    for name, e in zip(presentation.names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_element(presentation, e):
    """Canonical text: terms by degree then basis order, "c*g^e" factors.

    The zero element prints as "0" and the unit as "1".
    """
    if e.is_zero():
        return "0"
    terms = []
    for m in sorted(e.terms, key=lambda m: sort_key(presentation, m)):
        c = e.terms[m]
        mono = format_monomial(presentation, m)
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms)


class ParseError(ValueError):
    pass


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def parse_element(presentation, text):
    """Inverse of :func:`format_element`; also accepts "-" between terms."""
    s = text.strip()
    if not s:
        raise ParseError("empty element")
    if s[0] not in "+-":
        s = "+" + s
    pieces = _TERM_SPLIT.split(s)
    # pieces looks like ['', '+', term, '-', term, ...]
    if pieces[0] != "" or len(pieces) % 2 == 0:
        raise ParseError(f"cannot parse element {text!r}")
    out = Element.zero()
    for sign, term in zip(pieces[1::2], pieces[2::2]):
        value = _parse_term(presentation, term)
        if sign == "-":
            value = scale(presentation, -1, value)
        out = add(presentation, out, value)
    return out


def _parse_term(presentation, term):
    if not term:
        raise ParseError("empty term")
    value = Element.monomial(presentation.unit)
    for k, factor in enumerate(term.split("*")):
        factor = factor.strip()
        if re.fullmatch(r"\d+", factor):
            if k != 0:
                raise ParseError(f"coefficient must lead the term: {term!r}")
            value = scale(presentation, int(factor), value)
            continue
        mt = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?", factor)
        if not mt:
            raise ParseError(f"bad factor {factor!r}")
        name, exp = mt.group(1), int(mt.group(2) or 1)
        if name not in presentation.index:
            raise ParseError(f"unknown generator {name!r}")
        i = presentation.index[name]
        if exp >= presentation.nilpotency[i]:
            raise ParseError(f"{name}^{exp} violates {name}^{presentation.nilpotency[i]} = 0")
        value = multiply(presentation, value, presentation.gen(name, exp))
    return value
