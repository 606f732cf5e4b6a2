"""Sparse multivariate polynomials over Q with named variables.

A :class:`Ring` fixes an ordered tuple of variable names.  Monomials are
plain exponent tuples of the ring's length and a :class:`Polynomial` maps
monomials to nonzero :class:`~fractions.Fraction` coefficients.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Coefficient = Union[int, Fraction]


class RingMismatch(ValueError):
    pass


class Ring:
    """Ordered variable registry."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: Union[str, int]) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.nvars:
                raise IndexError(name)
            return name
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Ring({', '.join(self.names)})"

    def __getstate__(self):
        return self.names

    def __setstate__(self, names):
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: Coefficient) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: Fraction(c)})

    def var(self, name: Union[str, int]) -> "Polynomial":
        i = self.index(name)
        return self.monomial(tuple(int(j == i) for j in range(self.nvars)))

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def monomial(self, exps: Sequence[int], coeff: Coefficient = 1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise RingMismatch(f"exponent vector of length {len(exps)} in {self}")
        return Polynomial(self, {exps: Fraction(coeff)})

    def extend(self, names: Iterable[str]) -> "Ring":
        return Ring(self.names + tuple(names))

    def without(self, names: Iterable[str]) -> "Ring":
        drop = set(names)
        return Ring(n for n in self.names if n not in drop)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


# --- monomial orders --------------------------------------------------------


class MonomialOrder:
    """Total multiplicative well-order on exponent tuples, via a sort key."""

    name = "order"

    def key(self, m: Monomial):
        raise NotImplementedError

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        """-1, 0 or 1 as ``m1`` is less than, equal to, or greater than ``m2``."""
        if len(m1) != len(m2):
            raise RingMismatch("monomials from different rings")
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def __repr__(self) -> str:
        return self.name


class Lex(MonomialOrder):
    name = "lex"

    def key(self, m: Monomial):
        return m

    def __eq__(self, other):
        return isinstance(other, Lex)

    def __hash__(self):
        return hash("lex")


class GrevLex(MonomialOrder):
    name = "grevlex"

    def key(self, m: Monomial):
        return (sum(m), tuple(-e for e in reversed(m)))

    def __eq__(self, other):
        return isinstance(other, GrevLex)

    def __hash__(self):
        return hash("grevlex")


class Block(MonomialOrder):
    """Product order: the ``front`` positions are compared first.

    ``front`` and ``back`` are disjoint index tuples covering the ring.
    """

    def __init__(self, front: Sequence[int], nvars: int,
                 front_order: MonomialOrder | None = None,
                 back_order: MonomialOrder | None = None):
        self.front = tuple(sorted(front))
        fs = set(self.front)
        self.back = tuple(i for i in range(nvars) if i not in fs)
        self.nvars = nvars
        self.front_order = front_order or GrevLex()
        self.back_order = back_order or GrevLex()
        self.name = f"block({self.front}|{self.back})"

    def key(self, m: Monomial):
        return (self.front_order.key(tuple(m[i] for i in self.front)),
                self.back_order.key(tuple(m[i] for i in self.back)))

    def __eq__(self, other):
        return (isinstance(other, Block) and self.front == other.front and self.nvars == other.nvars
                and self.front_order == other.front_order and self.back_order == other.back_order)

    def __hash__(self):
        return hash((self.front, self.nvars))


GREVLEX = GrevLex()
LEX = Lex()


def order_compare(order: MonomialOrder, m1: Monomial, m2: Monomial) -> int:
    return order.compare(m1, m2)


def block_order(ring: Ring, front_names: Iterable[str]) -> Block:
    return Block([ring.index(n) for n in front_names], ring.nvars)


# --- polynomials ------------------------------------------------------------


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to Fractions."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Coefficient]):
        self.ring = ring
        n = ring.nvars
        clean: Dict[Monomial, Fraction] = {}
        for m, c in terms.items():
            if c:
                if len(m) != n:
                    raise RingMismatch(f"monomial {m} does not fit {ring}")
                clean[tuple(m)] = Fraction(c)
        self.terms = clean

    def __getstate__(self):
        return (self.ring, self.terms)

    def __setstate__(self, state):
        self.ring, self.terms = state

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return tuple(self.ring.names[i] for i in sorted(used))

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # calculus and evaluation

    def derivative(self, var: Union[str, int]) -> "Polynomial":
        i = self.ring.index(var)
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return Polynomial(self.ring, out)

    def euler_derivative(self, var: Union[str, int]) -> "Polynomial":
        """``x_i * d/dx_i``: scales every term by its exponent in ``var``."""
        i = self.ring.index(var)
        return Polynomial(self.ring, {m: c * m[i] for m, c in self.terms.items()})

    def evaluate(self, point: Mapping[str, Coefficient]) -> Fraction:
        values = []
        for i, name in enumerate(self.ring.names):
            values.append(point.get(name))
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    v = values[i]
                    if v is None:
                        raise KeyError(f"no value assigned to {self.ring.names[i]}")
                    t *= Fraction(v) ** e
            total += t
        return total

    def substitute(self, values: Mapping[str, Coefficient]) -> "Polynomial":
        """Partial evaluation; the result stays in the same ring."""
        idx = {self.ring.index(n): Fraction(v) for n, v in values.items()}
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            mm = list(m)
            for i, v in idx.items():
                if mm[i]:
                    c = c * v ** mm[i]
                    mm[i] = 0
            key = tuple(mm)
            out[key] = out.get(key, 0) + c
        return Polynomial(self.ring, out)

    def to_ring(self, ring: Ring) -> "Polynomial":
        """Re-embed into ``ring`` by matching variable names."""
        used = self.variables()
        for n in used:
            if n not in ring:
                raise RingMismatch(f"variable {n} missing from {ring}")
        pos = [(ring.index(n), self.ring.index(n)) for n in self.ring.names if n in ring]
        out = {}
        for m, c in self.terms.items():
            mm = [0] * ring.nvars
            for j, i in pos:
                mm[j] = m[i]
            out[tuple(mm)] = c
        return Polynomial(ring, out)

    # normalization and text

    def primitive(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Integer-primitive associate with positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = {m: int(c * den) for m, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if ints[self.leading_monomial(order)] < 0:
            g = -g
        return Polynomial(self.ring, {m: Fraction(v // g) for m, v in ints.items()})

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        return self * (1 / lc)

    def to_str(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.names, m) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_str()!r})"


_TERM_RE = re.compile(r"\s*([+-]?)\s*([^+-]+)")
_NUM_RE = re.compile(r"^\d+(/\d+)?$")


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Parse the text rendering produced by :meth:`Polynomial.to_str`.

    Accepts sums of terms ``c*v1^e1*v2`` with integer or ``p/q`` coefficients;
    no parentheses.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    out: Dict[Monomial, Fraction] = {}
    pos = 0
    while pos < len(text):
        mt = _TERM_RE.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        pos = mt.end()
        sign = -1 if mt.group(1) == "-" else 1
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        for factor in mt.group(2).strip().split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if _NUM_RE.match(factor):
                coeff *= Fraction(factor)
                continue
            name, _, e = factor.partition("^")
            exps[ring.index(name.strip())] += int(e) if e else 1
        m = tuple(exps)
        out[m] = out.get(m, 0) + coeff
    return Polynomial(ring, out)
