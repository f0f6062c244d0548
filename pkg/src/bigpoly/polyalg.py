"""Exact sparse polynomial and free-module arithmetic with a module
Groebner engine.

Coefficients live in Q (Fractions) or F_p (canonical residues).  Free
module elements are sparse maps (position, monomial) -> coefficient.
Submodules carry a reduced Groebner basis under a position-over-term
order: positions are compared by a per-module key (presentations rank
them by ascending generator degree), monomials by graded reverse
lexicographic with t1 > t2 > ... > tr.  Variable weights enter degree
bookkeeping only, never term comparison.

The product (coprime-lcm) criterion is unsound for modules and is not
used; pair pruning relies on the chain criterion only.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .errors import InvalidInputError

# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class CoefField:
    """Q for characteristic 0, F_p for prime p; values stay exact."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and not _is_prime(self.char):
            raise InvalidInputError(f"characteristic {self.char} is not 0 or prime")

    @property
    def zero(self):
        return 0 if self.char else Fraction(0)

    @property
    def one(self):
        return 1 if self.char else Fraction(1)

    def make(self, a):
        if self.char:
            return int(a) % self.char
        return Fraction(a)

    def add(self, a, b):
        return (a + b) % self.char if self.char else a + b

    def sub(self, a, b):
        return (a - b) % self.char if self.char else a - b

    def mul(self, a, b):
        return (a * b) % self.char if self.char else a * b

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.char:
            return pow(a, self.char - 2, self.char)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))


QQ = CoefField(0)
GF2 = CoefField(2)


# ---------------------------------------------------------------------------
# rings and monomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring descriptor: field, active variables, degree weight.

    ``active`` holds global 1-based variable indices; monomials are
    exponent tuples aligned with it.  Killing a variable produces a new
    ring on the remaining ones.
    """

    field: CoefField
    active: tuple[int, ...]
    weight: int = 1

    def __post_init__(self):
        if any(a < 1 for a in self.active) or list(self.active) != sorted(set(self.active)):
            raise InvalidInputError("active variables must be distinct and ascending")
        if self.weight < 1:
            raise InvalidInputError("variable weight must be positive")

    @property
    def nvars(self) -> int:
        return len(self.active)

    @property
    def unit(self) -> tuple[int, ...]:
        return (0,) * self.nvars

    def slot(self, var: int) -> int:
        try:
            return self.active.index(var)
        except ValueError:
            raise InvalidInputError(f"variable t{var} is not active") from None

    def var_mono(self, var: int, power: int = 1) -> tuple[int, ...]:
        if power < 1:
            raise InvalidInputError("power must be positive")
        m = [0] * self.nvars
        m[self.slot(var)] = power
        return tuple(m)

    def mono_mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def mono_divides(self, a, b) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def mono_div(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def mono_lcm(self, a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    def mono_deg(self, a) -> int:
        return sum(a)

    def mono_wdeg(self, a) -> int:
        return self.weight * sum(a)

    def mono_key(self, a):
        # grevlex as a max-key: higher total degree wins, ties break on
        # the reversed negated exponents
        return (sum(a), tuple(-e for e in reversed(a)))

    def kill_variable(self, var: int) -> "PolyRing":
        s = self.slot(var)
        return PolyRing(self.field, self.active[:s] + self.active[s + 1 :], self.weight)

    def restrict_mono(self, a, slot_gone: int):
        return a[:slot_gone] + a[slot_gone + 1 :]


class Poly:
    """Sparse exact polynomial: monomial tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        self.terms = {}
        if terms:
            f = ring.field
            for m, c in dict(terms).items():
                c = f.make(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def variable(cls, ring: PolyRing, var: int, power: int = 1) -> "Poly":
        return cls(ring, {ring.var_mono(var, power): ring.field.one})

    @classmethod
    def constant(cls, ring: PolyRing, c) -> "Poly":
        return cls(ring, {ring.unit: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=self.ring.mono_key, reverse=True):
            bits.append(_format_scalar_term(self.ring, self.terms[m], m))
        return "+".join(bits)


# ---------------------------------------------------------------------------
# free module elements
# ---------------------------------------------------------------------------


class FreeModElem:
    """Sparse free-module element: (position, monomial) -> coefficient.

    Canonical form is enforced: zero coefficients are never stored.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        self.terms = {}
        if terms:
            f = ring.field
            for k, c in dict(terms).items():
                c = f.make(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def zero(cls, ring: PolyRing) -> "FreeModElem":
        return cls(ring)

    @classmethod
    def generator(cls, ring: PolyRing, pos: int) -> "FreeModElem":
        return cls(ring, {(pos, ring.unit): ring.field.one})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, FreeModElem)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def add(self, other: "FreeModElem") -> "FreeModElem":
        f = self.ring.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = f.add(out.get(k, f.zero), c)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = FreeModElem(self.ring)
        res.terms = out
        return res

    def scale(self, c) -> "FreeModElem":
        f = self.ring.field
        c = f.make(c)
        res = FreeModElem(self.ring)
        if c:
            res.terms = {k: f.mul(v, c) for k, v in self.terms.items()}
        return res

    def mono_shift(self, mono) -> "FreeModElem":
        ring = self.ring
        res = FreeModElem(ring)
        res.terms = {
            (p, ring.mono_mul(m, mono)): c for (p, m), c in self.terms.items()
        }
        return res

    def mul_poly(self, poly: Poly) -> "FreeModElem":
        f = self.ring.field
        acc = {}
        for pm, pc in poly.terms.items():
            for (pos, m), c in self.terms.items():
                k = (pos, self.ring.mono_mul(m, pm))
                s = f.add(acc.get(k, f.zero), f.mul(c, pc))
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)
        res = FreeModElem(self.ring)
        res.terms = acc
        return res

    def wdegrees(self, gen_degs) -> set[int]:
        ring = self.ring
        return {ring.mono_wdeg(m) + gen_degs[p] for (p, m) in self.terms}

    def format(self) -> str:
        """Textual form: terms `c*t1^a1*...*[g_k]` joined by `+`."""
        if not self.terms:
            return "0"
        ring = self.ring
        keys = sorted(self.terms, key=lambda k: (-k[0], ring.mono_key(k[1])), reverse=True)
        bits = []
        for pos, m in keys:
            bits.append(_format_scalar_term(ring, self.terms[(pos, m)], m) + f"*[g{pos}]")
        return "+".join(bits)

    def __repr__(self):
        return self.format()


def _format_scalar_term(ring: PolyRing, coeff, mono) -> str:
    parts = [str(coeff)]
    for slot, e in enumerate(mono):
        if e:
            v = ring.active[slot]
            parts.append(f"t{v}^{e}" if e > 1 else f"t{v}")
    return "*".join(parts)


_TERM_RE = re.compile(r"^t(\d+)(?:\^(\d+))?$")
_GEN_RE = re.compile(r"^\[g(\d+)\]$")


def parse_elem(ring: PolyRing, text: str) -> FreeModElem:
    """Inverse of FreeModElem.format (exact round-trip)."""
    text = text.strip()
    if text == "0":
        return FreeModElem.zero(ring)
    terms = {}
    f = ring.field
    for chunk in text.split("+"):
        parts = chunk.strip().split("*")
        try:
            coeff = f.make(Fraction(parts[0]))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"bad coefficient in {chunk!r}") from exc
        mono = [0] * ring.nvars
        pos = None
        for tok in parts[1:]:
            gm = _GEN_RE.match(tok)
            if gm:
                pos = int(gm.group(1))
                continue
            tm = _TERM_RE.match(tok)
            if not tm:
                raise InvalidInputError(f"bad factor {tok!r}")
            mono[ring.slot(int(tm.group(1)))] += int(tm.group(2) or 1)
        if pos is None:
            raise InvalidInputError(f"term {chunk!r} lacks a generator marker")
        key = (pos, tuple(mono))
        c = f.add(terms.get(key, f.zero), coeff)
        if c:
            terms[key] = c
        else:
            terms.pop(key, None)
    return FreeModElem(ring, terms)


# ---------------------------------------------------------------------------
# submodules and the Groebner engine
# ---------------------------------------------------------------------------


class Submodule:
    """Finitely generated submodule of a free module with a fixed order.

    ``pos_key[p]`` is the comparison key of position p; larger keys are
    greater in the position-over-term order.  Instances are immutable;
    the reduced Groebner basis is computed once and cached.
    """

    def __init__(self, ring: PolyRing, rank: int, gens, pos_key=None):
        self.ring = ring
        self.rank = rank
        if pos_key is None:
            pos_key = tuple((-i,) for i in range(rank))
        self.pos_key = tuple(pos_key)
        if len(self.pos_key) != rank:
            raise InvalidInputError("pos_key length must equal the ambient rank")
        clean = []
        for g in gens:
            if g.ring != ring:
                raise InvalidInputError("generator ring mismatch")
            for pos, _ in g.terms:
                if not 0 <= pos < rank:
                    raise InvalidInputError(f"position {pos} outside rank {rank}")
            if not g.is_zero():
                clean.append(g)
        self.gens = tuple(clean)
        self._gb = None

    # -- order helpers ----------------------------------------------------

    def term_key(self, key):
        pos, mono = key
        return (self.pos_key[pos], self.ring.mono_key(mono))

    def lead(self, elem: FreeModElem):
        key = max(elem.terms, key=self.term_key)
        return key, elem.terms[key]

    # -- Groebner machinery -------------------------------------------------

    def groebner(self) -> tuple[FreeModElem, ...]:
        if self._gb is None:
            self._gb = self._reduced_groebner()
        return self._gb

    def _normalize(self, elem: FreeModElem) -> FreeModElem:
        """Monic over F_p; content 1 with positive lead over Q."""
        if elem.is_zero():
            return elem
        f = self.ring.field
        if f.char:
            _, lc = self.lead(elem)
            return elem.scale(f.inv(lc))
        den = reduce(lcm, (c.denominator for c in elem.terms.values()), 1)
        num = reduce(gcd, (c.numerator for c in elem.terms.values()))
        scale = Fraction(den, num) if num else Fraction(1)
        out = elem.scale(scale)
        _, lc = self.lead(out)
        if lc < 0:
            out = out.scale(-1)
        return out

    def _reduce_once(self, work, leads):
        """Full normal form of the dict ``work`` against (elem, lead) list."""
        ring = self.ring
        f = ring.field
        result = {}
        while work:
            key = max(work, key=self.term_key)
            c = work.pop(key)
            pos, mono = key
            hit = None
            for g, (lpos, lmono), lc in leads:
                if lpos == pos and ring.mono_divides(lmono, mono):
                    hit = (g, lmono, lc)
                    break
            if hit is None:
                result[key] = c
                continue
            g, lmono, lc = hit
            shift = ring.mono_div(mono, lmono)
            factor = f.div(c, lc)
            for (p2, m2), c2 in g.terms.items():
                k2 = (p2, ring.mono_mul(m2, shift))
                s = f.sub(work.get(k2, f.zero), f.mul(factor, c2))
                if k2 == key:
                    continue
                if s:
                    work[k2] = s
                else:
                    work.pop(k2, None)
        return result

    def normal_form(self, elem: FreeModElem) -> FreeModElem:
        """Canonical representative of elem modulo this submodule."""
        gb = self.groebner()
        leads = [(g,) + self.lead(g) for g in gb]
        out = FreeModElem(self.ring)
        out.terms = self._reduce_once(dict(elem.terms), leads)
        return out

    def contains(self, elem: FreeModElem) -> bool:
        return self.normal_form(elem).is_zero()

    def _reduced_groebner(self):
        ring = self.ring
        f = ring.field
        G = [self._normalize(g) for g in self.gens]
        leads = [self.lead(g) for g in G]
        pending = []
        processed = set()

        def push_pairs(j):
            (pj, mj), _ = leads[j]
            for i in range(j):
                (pi, mi), _ = leads[i]
                if pi != pj:
                    continue
                lcm_m = ring.mono_lcm(mi, mj)
                heapq.heappush(pending, (ring.mono_deg(lcm_m), i, j))

        for j in range(len(G)):
            push_pairs(j)
        while pending:
            _, i, j = heapq.heappop(pending)
            processed.add((i, j))
            (pi, mi), ci = leads[i]
            (pj, mj), cj = leads[j]
            lcm_m = ring.mono_lcm(mi, mj)
            # chain criterion (valid for modules; the coprime/product
            # criterion is not and must stay out)
            skip = False
            for k in range(len(G)):
                if k in (i, j):
                    continue
                (pk, mk), _ = leads[k]
                if pk != pi or not ring.mono_divides(mk, lcm_m):
                    continue
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a in processed and b in processed:
                    skip = True
                    break
            if skip:
                continue
            si = G[i].mono_shift(ring.mono_div(lcm_m, mi)).scale(f.inv(ci))
            sj = G[j].mono_shift(ring.mono_div(lcm_m, mj)).scale(f.inv(cj))
            s = si.add(sj.scale(f.neg(f.one)))
            lead_list = [(g, lt, lc) for g, (lt, lc) in zip(G, leads)]
            rem = FreeModElem(ring)
            rem.terms = self._reduce_once(dict(s.terms), lead_list)
            if rem.is_zero():
                continue
            rem = self._normalize(rem)
            G.append(rem)
            leads.append(self.lead(rem))
            push_pairs(len(G) - 1)
        return self._interreduce(G)

    def _interreduce(self, G):
        ring = self.ring
        # minimalize: drop anything whose lead is divisible by another lead
        keep = []
        for i, g in enumerate(G):
            (pi, mi), _ = self.lead(g)
            redundant = False
            for j, h in enumerate(G):
                if i == j:
                    continue
                (pj, mj), _ = self.lead(h)
                if pj == pi and ring.mono_divides(mj, mi) and (mj != mi or j < i):
                    redundant = True
                    break
            if not redundant:
                keep.append(g)
        # tail-reduce each against the others until stable
        changed = True
        while changed:
            changed = False
            for i in range(len(keep)):
                others = [
                    (h, self.lead(h)[0], self.lead(h)[1])
                    for j, h in enumerate(keep)
                    if j != i
                ]
                red = FreeModElem(ring)
                red.terms = self._reduce_once(dict(keep[i].terms), others)
                red = self._normalize(red)
                if red.terms != keep[i].terms:
                    keep[i] = red
                    changed = True
            keep = [g for g in keep if not g.is_zero()]
        keep.sort(key=lambda g: self.term_key(self.lead(g)[0]), reverse=True)
        return tuple(keep)

    # -- derived operations -------------------------------------------------

    def canonical(self):
        """Hashable canonical form of the reduced Groebner basis."""
        out = []
        for g in self.groebner():
            out.append(tuple(sorted(g.terms.items())))
        return tuple(out)

    def equals(self, other: "Submodule") -> bool:
        if self.ring != other.ring or self.rank != other.rank:
            raise InvalidInputError("cannot compare submodules of different ambients")
        return self.canonical() == other.canonical()

    def with_gens(self, gens) -> "Submodule":
        return Submodule(self.ring, self.rank, gens, self.pos_key)


def member(U: Submodule, v: FreeModElem) -> bool:
    """True iff v lies in U (normal form vanishes)."""
    if v.ring != U.ring:
        raise InvalidInputError("ring mismatch")
    for pos, _ in v.terms:
        if not 0 <= pos < U.rank:
            raise InvalidInputError(f"position {pos} outside rank {U.rank}")
    return U.contains(v)


def colon_by_scalar(U: Submodule, f: Poly) -> Submodule:
    """(U : f) = {v : f*v in U}, via a cofactor-tagged elimination basis.

    Working in F + F' with every original position ranked above every
    tag position, the basis elements supported purely on tags are
    exactly the cofactors of f, i.e. generators of the colon module.
    """
    if f.is_zero():
        raise InvalidInputError("colon by zero")
    if f.ring != U.ring:
        raise InvalidInputError("ring mismatch")
    k = U.rank
    pos_key2 = tuple((1, *key) for key in U.pos_key) + tuple(
        (0, *key) for key in U.pos_key
    )
    gens2 = []
    for u in U.gens:
        gens2.append(FreeModElem(U.ring, dict(u.terms)))
    one = U.ring.field.one
    for i in range(k):
        tag = FreeModElem.generator(U.ring, i).mul_poly(f)
        tag.terms[(k + i, U.ring.unit)] = one
        gens2.append(tag)
    W = Submodule(U.ring, 2 * k, gens2, pos_key2)
    out = []
    for g in W.groebner():
        if all(pos >= k for pos, _ in g.terms):
            shifted = FreeModElem(U.ring, {(pos - k, m): c for (pos, m), c in g.terms.items()})
            out.append(shifted)
    return Submodule(U.ring, k, out, U.pos_key)


def colon_by_scalar_intersection(U: Submodule, f: Poly) -> Submodule:
    """Cross-check route for the colon: (U cap f*F) divided by f."""
    if f.is_zero():
        raise InvalidInputError("colon by zero")
    k = U.rank
    pos_key2 = tuple((1, *key) for key in U.pos_key) + tuple(
        (0, *key) for key in U.pos_key
    )
    gens2 = []
    for u in U.gens:
        w = FreeModElem(U.ring, dict(u.terms))
        for (pos, m), c in u.terms.items():
            w.terms[(k + pos, m)] = c
        gens2.append(w)
    for i in range(k):
        gens2.append(FreeModElem.generator(U.ring, i).mul_poly(f))
    W = Submodule(U.ring, 2 * k, gens2, pos_key2)
    out = []
    for g in W.groebner():
        if all(pos >= k for pos, _ in g.terms):
            inter = FreeModElem(
                U.ring, {(pos - k, m): c for (pos, m), c in g.terms.items()}
            )
            out.append(_divide_by_poly(inter, f))
    return Submodule(U.ring, k, out, U.pos_key)


def _divide_by_poly(elem: FreeModElem, f: Poly) -> FreeModElem:
    """Exact division of a module element by a scalar polynomial."""
    ring = elem.ring
    fld = ring.field
    fkey = max(f.terms, key=ring.mono_key)
    fc = f.terms[fkey]
    work = dict(elem.terms)
    out = {}
    while work:
        key = max(work, key=lambda k: (ring.mono_key(k[1]), -k[0]))
        pos, mono = key
        if not ring.mono_divides(fkey, mono):
            raise InvalidInputError("element not divisible by the given polynomial")
        shift = ring.mono_div(mono, fkey)
        c = fld.div(work[key], fc)
        out[(pos, shift)] = c
        for fm, fc2 in f.terms.items():
            k2 = (pos, ring.mono_mul(fm, shift))
            s = fld.sub(work.get(k2, fld.zero), fld.mul(c, fc2))
            if s:
                work[k2] = s
            else:
                work.pop(k2, None)
    return FreeModElem(ring, out)


def is_nonzerodivisor(U: Submodule, f: Poly):
    """(flag, witness): witness is a normal-form element of (U:f) \\ U.

    f is a nonzerodivisor on F/U exactly when (U : f) = U, compared via
    reduced Groebner bases.
    """
    if f.is_zero():
        raise InvalidInputError("zero is always a zero-divisor")
    C = colon_by_scalar(U, f)
    for g in sorted(C.groebner(), key=lambda g: U.term_key(U.lead(g)[0])):
        nf = U.normal_form(g)
        if not nf.is_zero():
            return False, nf
    return True, None


def quotient_variable(U: Submodule, var: int) -> Submodule:
    """Image of U in the free module over the ring with t_var killed."""
    slot = U.ring.slot(var)
    new_ring = U.ring.kill_variable(var)
    gens = []
    for g in U.gens:
        terms = {}
        f = new_ring.field
        for (pos, m), c in g.terms.items():
            if m[slot]:
                continue
            terms[(pos, U.ring.restrict_mono(m, slot))] = c
        elem = FreeModElem(new_ring, terms)
        if not elem.is_zero():
            gens.append(elem)
    return Submodule(new_ring, U.rank, gens, U.pos_key)


# ---------------------------------------------------------------------------
# degreewise dense linear-algebra oracle (test-only alternate engine)
# ---------------------------------------------------------------------------


def monomials_of_weight(ring: PolyRing, wdeg: int):
    """All monomial tuples of the given weighted degree."""
    if wdeg % ring.weight:
        return []
    target = wdeg // ring.weight
    n = ring.nvars
    out = []

    def rec(slot, remaining, acc):
        if slot == n - 1:
            out.append(tuple(acc + [remaining]))
            return
        for e in range(remaining + 1):
            rec(slot + 1, remaining - e, acc + [e])

    if n == 0:
        return [()] if target == 0 else []
    rec(0, target, [])
    return out


def member_by_degree(U: Submodule, v: FreeModElem, gen_degs) -> bool:
    """Membership decided by dense linear algebra in v's degree.

    Requires homogeneous generators and a homogeneous v (with respect
    to the weighted grading shifted by ``gen_degs``).  This is the
    independent authority the Groebner path is checked against.
    """
    if v.is_zero():
        return True
    degs = v.wdegrees(gen_degs)
    if len(degs) != 1:
        raise InvalidInputError("test element must be homogeneous")
    (d,) = degs
    ring = U.ring
    f = ring.field
    rows = []
    for g in U.gens:
        gdegs = g.wdegrees(gen_degs)
        if len(gdegs) != 1:
            raise InvalidInputError("generators must be homogeneous")
        (dg,) = gdegs
        if dg > d:
            continue
        for mono in monomials_of_weight(ring, d - dg):
            rows.append(g.mono_shift(mono).terms)
    # echelonize rows, then reduce v
    pivots = []
    for row in rows:
        row = dict(row)
        for pkey, prow in pivots:
            if pkey in row:
                c = row[pkey]
                for k2, c2 in prow.items():
                    s = f.sub(row.get(k2, f.zero), f.mul(c, c2))
                    if s:
                        row[k2] = s
                    else:
                        row.pop(k2, None)
        if row:
            pkey = next(iter(row))
            c = f.inv(row[pkey])
            prow = {k2: f.mul(c2, c) for k2, c2 in row.items()}
            pivots.append((pkey, prow))
    work = dict(v.terms)
    for pkey, prow in pivots:
        if pkey in work:
            c = work[pkey]
            for k2, c2 in prow.items():
                s = f.sub(work.get(k2, f.zero), f.mul(c, c2))
                if s:
                    work[k2] = s
                else:
                    work.pop(k2, None)
    return not work
