"""Buchberger's algorithm over Q, plus the ideal operations built on it.

The engine works on ``{monomial: int}`` dicts kept integer-primitive
(fraction-free reduction), so the hot loops never touch ``Fraction``.  A
prime modulus may be passed for diagnostic runs; verdicts returned by the
public helpers below are always computed over Q.

Pair handling follows Gebauer and Moller's update procedure and pairs are
selected by the normal strategy (smallest lcm in the active order).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .polynomials import GREVLEX, Block, Monomial, MonomialOrder, Polynomial, Ring

DEFAULT_PRIME = 1_000_003

_Terms = Dict[Monomial, int]


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: Tuple[Polynomial, ...]

    def __init__(self, ring: Ring, generators: Iterable[Polynomial]):
        gens = []
        for g in generators:
            if g.ring != ring:
                g = g.to_ring(ring)
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class ReducedGB:
    ring: Ring
    order: MonomialOrder
    basis: Tuple[Polynomial, ...]
    leading_monomials: Tuple[Monomial, ...] = field(repr=False)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def is_zero(self) -> bool:
        return not self.basis

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


@dataclass(frozen=True)
class ZeroDimReport:
    finite: bool
    dimension: Optional[int] = None
    standard_monomials: Optional[Tuple[Monomial, ...]] = None


# --- coefficient domains ----------------------------------------------------


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Integers:
    """Fraction-free arithmetic; polynomials kept primitive up to sign."""

    modulus = None

    @staticmethod
    def from_poly(p: Polynomial) -> _Terms:
        den = 1
        for c in p.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        terms = {m: int(c * den) for m, c in p.terms.items()}
        return _Integers.normalize(terms)

    @staticmethod
    def normalize(terms: _Terms) -> _Terms:
        g = 0
        for v in terms.values():
            g = gcd(g, v)
            if g == 1:
                return terms
        if g > 1:
            return {m: v // g for m, v in terms.items()}
        return terms

    @staticmethod
    def multipliers(c: int, lc: int) -> Tuple[int, int]:
        """(a, b) with a*c == b*lc; the reduction is a*p - b*x^t*g."""
        h = gcd(c, lc)
        a, b = lc // h, c // h
        if a < 0:
            a, b = -a, -b
        return a, b

    @staticmethod
    def scale(terms: _Terms, a: int) -> _Terms:
        if a == 1:
            return terms
        return {m: v * a for m, v in terms.items()}

    @staticmethod
    def reduce_coeff(v: int) -> int:
        return v


class _ModP:
    def __init__(self, p: int):
        self.modulus = p

    def from_poly(self, poly: Polynomial) -> _Terms:
        p = self.modulus
        out = {}
        for m, c in poly.terms.items():
            v = c.numerator * pow(c.denominator, -1, p) % p
            if v:
                out[m] = v
        return out

    def normalize(self, terms: _Terms) -> _Terms:
        return terms

    def multipliers(self, c: int, lc: int) -> Tuple[int, int]:
        return 1, c * pow(lc, -1, self.modulus) % self.modulus

    def scale(self, terms: _Terms, a: int) -> _Terms:
        return terms

    def reduce_coeff(self, v: int) -> int:
        return v % self.modulus


# --- core engine ------------------------------------------------------------


class _Engine:
    def __init__(self, order: MonomialOrder, domain):
        self.order = order
        self.dom = domain
        self._keys: Dict[Monomial, object] = {}
        okey = order.key
        keys = self._keys

        def key(m):
            k = keys.get(m)
            if k is None:
                k = keys[m] = okey(m)
            return k

        self.key = key

    def lead(self, terms: _Terms) -> Monomial:
        return max(terms, key=self.key)

    def reduce(self, f: _Terms, basis: Sequence[Tuple[Monomial, int, _Terms]],
               full: bool = True) -> Tuple[_Terms, int]:
        """Divide ``f`` by ``basis``; returns (remainder, scale).

        ``scale * f - remainder`` lies in the ideal of ``basis``.
        """
        dom = self.dom
        red = dom.reduce_coeff
        key = self.key
        p = dict(f)
        r: _Terms = {}
        scale = 1
        steps = 0
        while p:
            m = max(p, key=key)
            c = p[m]
            for lm, lc, g in basis:
                if _divides(lm, m):
                    break
            else:
                if not full:
                    r.update(p)
                    break
                r[m] = c
                del p[m]
                continue
            a, b = dom.multipliers(c, lc)
            if a != 1:
                p = {mm: v * a for mm, v in p.items()}
                if r:
                    r = {mm: v * a for mm, v in r.items()}
                scale *= a
            t = tuple(x - y for x, y in zip(m, lm))
            for gm, gv in g.items():
                mm = tuple(x + y for x, y in zip(gm, t))
                v = red(p.get(mm, 0) - b * gv)
                if v:
                    p[mm] = v
                else:
                    p.pop(mm, None)
            steps += 1
            if dom.modulus is None and steps % 8 == 0 and p:
                g_ = 0
                for v in r.values():
                    g_ = gcd(g_, v)
                for v in p.values():
                    g_ = gcd(g_, v)
                    if g_ == 1:
                        break
                if g_ > 1:
                    p = {mm: v // g_ for mm, v in p.items()}
                    r = {mm: v // g_ for mm, v in r.items()}
                    scale = Fraction(scale, g_)
        if dom.modulus is None and r:
            g_ = 0
            for v in r.values():
                g_ = gcd(g_, v)
            if g_ > 1:
                r = {mm: v // g_ for mm, v in r.items()}
                scale = Fraction(scale, g_)
        return r, scale

    def spoly(self, f, g) -> _Terms:
        (lf, cf, tf), (lg, cg, tg) = f, g
        L = _lcm(lf, lg)
        if self.dom.modulus is None:
            h = gcd(cf, cg)
            mf, mg = cg // h, cf // h
        else:
            p = self.dom.modulus
            mf, mg = 1, cf * pow(cg, -1, p) % p
        sf = tuple(x - y for x, y in zip(L, lf))
        sg = tuple(x - y for x, y in zip(L, lg))
        red = self.dom.reduce_coeff
        out: _Terms = {}
        for m, v in tf.items():
            mm = tuple(x + y for x, y in zip(m, sf))
            out[mm] = red(v * mf)
        for m, v in tg.items():
            mm = tuple(x + y for x, y in zip(m, sg))
            nv = red(out.get(mm, 0) - v * mg)
            if nv:
                out[mm] = nv
            else:
                out.pop(mm, None)
        return out

    def entry(self, terms: _Terms) -> Tuple[Monomial, int, _Terms]:
        terms = self.dom.normalize(terms)
        lm = self.lead(terms)
        return lm, terms[lm], terms

    def groebner(self, gens: List[_Terms], stop_on_unit: bool = False) -> List[Tuple[Monomial, int, _Terms]]:
        key = self.key
        store: List[Tuple[Monomial, int, _Terms]] = []
        active: List[int] = []
        pairs: List[Tuple[object, int, int, Monomial]] = []

        def update(hi: int) -> None:
            nonlocal active, pairs
            lh = store[hi][0]
            cands = [(gi, _lcm(lh, store[gi][0])) for gi in active]
            kept = []
            for pos, (g1, l1) in enumerate(cands):
                if _disjoint(lh, store[g1][0]):
                    kept.append((g1, l1))
                    continue
                others = cands[pos + 1:]
                if any(_divides(l2, l1) for _, l2 in others) or any(_divides(l2, l1) for _, l2 in kept):
                    continue
                kept.append((g1, l1))
            new_pairs = [(key(l1), g1, hi, l1) for g1, l1 in kept if not _disjoint(lh, store[g1][0])]
            survivors = []
            for pr in pairs:
                _, g1, g2, l12 = pr
                if (_divides(lh, l12) and _lcm(store[g1][0], lh) != l12
                        and _lcm(store[g2][0], lh) != l12):
                    continue
                survivors.append(pr)
            pairs = survivors + new_pairs
            active = [gi for gi in active if not _divides(lh, store[gi][0])] + [hi]

        def basis():
            return [store[i] for i in active]

        gens = [self.dom.normalize(g) for g in gens if g]
        gens.sort(key=lambda t: key(self.lead(t)))
        for g in gens:
            h, _ = self.reduce(g, basis())
            if not h:
                continue
            store.append(self.entry(h))
            if stop_on_unit and not any(store[-1][0]):
                return [store[-1]]
            update(len(store) - 1)
        while pairs:
            best = min(range(len(pairs)), key=lambda i: (pairs[i][0], pairs[i][1], pairs[i][2]))
            _, i, j, _ = pairs.pop(best)
            s = self.spoly(store[i], store[j])
            if not s:
                continue
            h, _ = self.reduce(s, basis())
            if not h:
                continue
            store.append(self.entry(h))
            if stop_on_unit and not any(store[-1][0]):
                return [store[-1]]
            update(len(store) - 1)
        # minimalize then interreduce tails
        G = basis()
        G = [g for g in G if not any(o is not g and _divides(o[0], g[0]) for o in G)]
        G.sort(key=lambda e: key(e[0]))
        out = []
        for idx, g in enumerate(G):
            others = G[:idx] + G[idx + 1:]
            tail = {m: v for m, v in g[2].items() if m != g[0]}
            r, s = self.reduce(tail, others)
            # rebuild s*g_lead + r, where s scales the tail
            new = {m: v for m, v in r.items()}
            new[g[0]] = self._mul_scalar(g[1], s)
            new = self._integral(new)
            out.append(self.entry(new))
        return out

    def _mul_scalar(self, v: int, s) -> object:
        if self.dom.modulus is None:
            return v * s
        return v

    def _integral(self, terms: Dict[Monomial, object]) -> _Terms:
        if self.dom.modulus is not None:
            return terms
        den = 1
        for v in terms.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        return {m: int(v * den) for m, v in terms.items()}


def _domain(modulus: Optional[int]):
    return _Integers if modulus is None else _ModP(modulus)


def _to_polynomial(ring: Ring, terms: _Terms, lm: Monomial, modulus: Optional[int]) -> Polynomial:
    lc = terms[lm]
    if modulus is None:
        return Polynomial(ring, {m: Fraction(v, lc) for m, v in terms.items()})
    inv = pow(lc, -1, modulus)
    return Polynomial(ring, {m: v * inv % modulus for m, v in terms.items()})


def _as_list(gens) -> Tuple[Ring, List[Polynomial]]:
    if isinstance(gens, Ideal):
        return gens.ring, list(gens.generators)
    gens = list(gens)
    if not gens:
        raise ValueError("cannot infer ring from an empty generator list")
    return gens[0].ring, gens


# --- public API -------------------------------------------------------------


def reduced_groebner_basis(ideal: Ideal, order: MonomialOrder = GREVLEX,
                           modulus: Optional[int] = None, stop_on_unit: bool = False) -> ReducedGB:
    """Reduced Groebner basis, monic, sorted by increasing leading monomial.

    With ``stop_on_unit`` the run returns ``{1}`` as soon as a nonzero
    constant appears (only the unit ideal can produce one).
    """
    dom = _domain(modulus)
    eng = _Engine(order, dom)
    gens = [dom.from_poly(g) for g in ideal.generators]
    G = eng.groebner([g for g in gens if g], stop_on_unit=stop_on_unit)
    if stop_on_unit and len(G) == 1 and not any(G[0][0]):
        G = [eng.entry({G[0][0]: 1})]
    polys = tuple(_to_polynomial(ideal.ring, t, lm, modulus) for lm, _, t in G)
    return ReducedGB(ideal.ring, order, polys, tuple(lm for lm, _, _ in G))


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Remainder of ``f`` on division by ``G`` (any generating list)."""
    if f.is_zero():
        return f
    eng = _Engine(order, _Integers)
    basis = [eng.entry(_Integers.from_poly(g)) for g in G if not g.is_zero()]
    raw = dict(f.terms)
    den = 1
    for c in raw.values():
        den = den * c.denominator // gcd(den, c.denominator)
    terms = {m: int(c * den) for m, c in raw.items()}
    r, scale = eng.reduce(terms, basis)
    factor = Fraction(1) / (Fraction(scale) * den)
    return Polynomial(f.ring, {m: v * factor for m, v in r.items()})


def is_member(f: Polynomial, gb: ReducedGB) -> bool:
    return normal_form(f, gb.basis, gb.order).is_zero()


def is_proper(ideal: Ideal) -> bool:
    """True iff the ideal is not the unit ideal (its complex variety is nonempty)."""
    if not ideal.generators:
        return True
    gb = reduced_groebner_basis(ideal, GREVLEX, stop_on_unit=True)
    return not gb.is_unit()


def eliminate(ideal: Ideal, drop: Iterable[str]) -> Tuple[Ring, Tuple[Polynomial, ...]]:
    """Reduced grevlex Groebner basis of the elimination ideal.

    Returns the smaller ring (``drop`` removed) and the generators of
    ``ideal`` intersected with it.
    """
    ring = ideal.ring
    drop = [n for n in ring.names if n in set(drop)]
    order = Block([ring.index(n) for n in drop], ring.nvars)
    gb = reduced_groebner_basis(ideal, order)
    sub = ring.without(drop)
    front = set(order.front)
    keep = [g for g, lm in zip(gb.basis, gb.leading_monomials) if not any(lm[i] for i in front)]
    # under the block order a leading monomial free of dropped variables forces the whole polynomial to be
    keep_sorted = sorted((g.to_ring(sub) for g in keep), key=lambda p: GREVLEX.key(p.leading_monomial(GREVLEX)))
    return sub, tuple(keep_sorted)


def _fresh_name(ring: Ring, base: str = "w") -> str:
    name = base
    while name in ring:
        name += "_"
    return name


def saturate_by_product(ideal: Ideal, vars: Iterable[str]) -> Ideal:
    """``I : (prod vars)^infinity`` via one Rabinowitsch variable."""
    ring = ideal.ring
    vars = list(vars)
    w = _fresh_name(ring)
    big = ring.extend([w])
    prod = big.var(w)
    for v in vars:
        prod = prod * big.var(v)
    gens = [g.to_ring(big) for g in ideal.generators] + [prod - 1]
    sub, elim = eliminate(Ideal(big, gens), [w])
    return Ideal(ring, [g.to_ring(ring) for g in elim])


def standard_monomials(leading: Sequence[Monomial], nvars: int, limit: int = 100_000) -> Optional[List[Monomial]]:
    """Monomials outside the monomial ideal generated by ``leading``.

    None if the set is infinite (some variable has no pure power among
    ``leading``).  Enumerated breadth-first; sorted lexicographically.
    """
    for v in range(nvars):
        if not any(lm[v] and sum(lm) == lm[v] for lm in leading):
            return None
    if any(not any(lm) for lm in leading):
        return []
    seen = {(0,) * nvars}
    frontier = [(0,) * nvars]
    while frontier:
        nxt = []
        for m in frontier:
            for v in range(nvars):
                mm = m[:v] + (m[v] + 1,) + m[v + 1:]
                if mm in seen or any(_divides(lm, mm) for lm in leading):
                    continue
                seen.add(mm)
                nxt.append(mm)
        if len(seen) > limit:
            raise RuntimeError("standard monomial enumeration exceeded limit")
        frontier = nxt
    return sorted(seen)


def zero_dim_report(ideal: Ideal, order: MonomialOrder = GREVLEX) -> ZeroDimReport:
    gb = reduced_groebner_basis(ideal, order)
    std = standard_monomials(gb.leading_monomials, ideal.ring.nvars)
    if std is None:
        return ZeroDimReport(False)
    return ZeroDimReport(True, len(std), tuple(std))
