"""Koszul-type presentations and the algebraic syzygy-order oracle.

The module attached to a generic length vector is the cokernel of the
Koszul differential mapping long subsets into the span of the short
ones.  Its syzygy order is decided by testing sequences of distinct
variables for regularity via iterated variable quotients and exact
colon computations; the combinatorial invariant mu is computed
independently on the other side, and the two are compared.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from . import lenvec as lv
from .errors import InvalidInputError, UnsupportedConfigError
from .polyalg import (
    CoefField,
    FreeModElem,
    Poly,
    PolyRing,
    Submodule,
    is_nonzerodivisor,
    quotient_variable,
)

VARIANT_COMPLEX = "complex"
VARIANT_REAL = "real"


@dataclass(frozen=True)
class KoszulParams:
    """Grading and differential parameters.

    complex: variables weigh 2, a simplex of size s has degree
    (2p+2q-1)*s, coefficients in Q.  real: weight 1, degree (p+q-1)*s,
    coefficients in F_2; p = 1 is rejected there (the module is torsion
    and the order question collapses).  q is the exponent in the
    differential; p enters the grading only.
    """

    p: int = 1
    q: int = 1
    variant: str = VARIANT_COMPLEX

    def __post_init__(self):
        if self.variant not in (VARIANT_COMPLEX, VARIANT_REAL):
            raise UnsupportedConfigError(f"unknown variant {self.variant!r}")
        if self.p < 1 or self.q < 1:
            raise InvalidInputError("p and q must be positive")
        if self.variant == VARIANT_REAL and self.p == 1:
            raise UnsupportedConfigError(
                "real variant with p=1 yields a torsion module; p >= 2 required"
            )

    @property
    def field(self) -> CoefField:
        return CoefField(0) if self.variant == VARIANT_COMPLEX else CoefField(2)

    @property
    def var_weight(self) -> int:
        return 2 if self.variant == VARIANT_COMPLEX else 1

    @property
    def simplex_weight(self) -> int:
        if self.variant == VARIANT_COMPLEX:
            return 2 * self.p + 2 * self.q - 1
        return self.p + self.q - 1

    def ring(self, r: int) -> PolyRing:
        return PolyRing(self.field, tuple(range(1, r + 1)), self.var_weight)


def koszul_sign(j: int, gamma: int) -> int:
    """(-1)^(1-based rank of j inside gamma): d{1,2} = t2^q {1} - t1^q {2}."""
    below = gamma & ((1 << (j - 1)) - 1)
    return -1 if (bin(below).count("1") + 1) % 2 else 1


def koszul_differential(
    gamma: int, ring: PolyRing, params: KoszulParams, positions=None
) -> FreeModElem:
    """d(gamma) = sum over active j in gamma of sign * t_j^q * (gamma\\j).

    ``positions`` maps facet masks to generator positions; by default
    the facet masks themselves index the free module on all subsets.
    """
    f = ring.field
    terms = {}
    j = 1
    m = gamma
    while m:
        if m & 1:
            if j in ring.active:
                facet = gamma & ~(1 << (j - 1))
                pos = positions[facet] if positions is not None else facet
                if pos is not None:
                    sign = koszul_sign(j, gamma)
                    coeff = f.make(sign)
                    key = (pos, ring.var_mono(j, params.q))
                    if key in terms:
                        terms[key] = f.add(terms[key], coeff)
                    else:
                        terms[key] = coeff
        m >>= 1
        j += 1
    return FreeModElem(ring, terms)


def apply_differential(elem: FreeModElem, params: KoszulParams) -> FreeModElem:
    """Extend d linearly to module elements with subset positions."""
    out = FreeModElem.zero(elem.ring)
    for (gamma, mono), c in elem.terms.items():
        dg = koszul_differential(gamma, elem.ring, params)
        out = out.add(dg.mono_shift(mono).scale(c))
    return out


@dataclass
class ModulePresentation:
    """coker of the restricted differential: generators are the short
    subsets (including the empty set), one relation per long subset."""

    lv: lv.LengthVector
    lv_strong: lv.LengthVector
    params: KoszulParams
    ring: PolyRing
    gens: tuple[tuple[int, int], ...]  # (subset mask, degree), position order
    relations: tuple[FreeModElem, ...]

    @property
    def rank(self) -> int:
        return len(self.gens)

    def gen_degrees(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.gens)

    def pos_key(self) -> tuple:
        # ascending generator degree is greatest-first in the order
        return tuple((-d, -i) for i, (_, d) in enumerate(self.gens))

    def submodule(self) -> Submodule:
        return Submodule(self.ring, self.rank, list(self.relations), self.pos_key())

    def check_homogeneous(self) -> bool:
        degs = self.gen_degrees()
        for rel in self.relations:
            if rel.is_zero():
                continue
            if len(rel.wdegrees(degs)) != 1:
                return False
        return True


def build_presentation(
    vector: lv.LengthVector, params: KoszulParams, perturb_base: int = 2
) -> ModulePresentation:
    """Presentation of the cokernel module for a generic length vector.

    Strong genericity is needed by the underlying theory; merely
    generic vectors are promoted by the exact perturbation, which keeps
    the long/short family (hence the module up to isomorphism) intact.
    """
    lv.require_generic(vector)
    strong = vector
    if not lv.is_strongly_generic(strong):
        strong = lv.perturb_strongly_generic(strong, base=perturb_base)
    fam = lv.long_family(strong)
    r = strong.r
    ring = params.ring(r)
    shorts = [m for m in range(1 << r) if not fam.is_long(m)]
    shorts.sort(key=lambda m: (bin(m).count("1"), m))
    positions = {m: None for m in range(1 << r)}
    gens = []
    for i, m in enumerate(shorts):
        positions[m] = i
        gens.append((m, params.simplex_weight * bin(m).count("1")))
    relations = []
    longs = [m for m in range(1 << r) if fam.is_long(m)]
    longs.sort(key=lambda m: (bin(m).count("1"), m))
    for gamma in longs:
        relations.append(koszul_differential(gamma, ring, params, positions))
    pres = ModulePresentation(vector, strong, params, ring, tuple(gens), tuple(relations))
    # every relation term carries t^q, so the module survives killing
    # all variables; regular-sequence tests never hit a zero quotient
    assert all(
        any(m) for rel in pres.relations for (_, m) in rel.terms
    ), "relation with a constant term"
    return pres


@dataclass(frozen=True)
class SyzygyReport:
    lv: lv.LengthVector
    mu: int
    order: int
    agree: bool
    cap: int
    witness_subset: tuple[int, ...] | None
    witness_elem: str | None
    params: KoszulParams

    def to_json(self) -> str:
        payload = {
            "lv": self.lv.csv(),
            "mu": self.mu,
            "order": self.order,
            "agree": self.agree,
            "cap": self.cap,
            "witness_subset": list(self.witness_subset) if self.witness_subset else None,
            "witness_elem": self.witness_elem,
            "variant": self.params.variant,
            "p": self.params.p,
            "q": self.params.q,
            "char": self.params.field.char,
        }
        return json.dumps(payload, separators=(",", ":"))


def default_cap(r: int) -> int:
    return (r + 1) // 2


class _QuotientCache:
    """Variable-kill chains, memoized on the killed set."""

    def __init__(self, base: Submodule):
        self.cache: dict[frozenset[int], Submodule] = {frozenset(): base}

    def get(self, killed: tuple[int, ...]) -> Submodule:
        key = frozenset(killed)
        try:
            return self.cache[key]
        except KeyError:
            pass
        prev = self.get(killed[:-1])
        mod = quotient_variable(prev, killed[-1])
        self.cache[key] = mod
        return mod


def algebraic_syzygy_order(
    pres: ModulePresentation, cap: int | None = None, collect_pairs=None
):
    """Largest k <= cap with every ascending variable subset of size <= k
    regular on the presented module; the first failure is returned as a
    witness.

    Returns (order, failing subset or None, witness element or None).
    Subsets are scanned level by level in lexicographic order, which
    together with the graded rearrangement property pins the witness
    deterministically.  Variables are tested linearly (t_i, not t_i^q):
    the two are interchangeable for zero-divisor purposes.
    """
    r = pres.lv_strong.r
    if cap is None:
        cap = default_cap(r)
    if cap < 0:
        raise InvalidInputError("cap must be nonnegative")
    if cap > default_cap(r):
        raise InvalidInputError(f"cap {cap} exceeds ceil(r/2) = {default_cap(r)}")
    cache = _QuotientCache(pres.submodule())
    for k in range(1, cap + 1):
        for subset in combinations(range(1, r + 1), k):
            mod = cache.get(subset[:-1])
            t = Poly.variable(mod.ring, subset[-1])
            ok, witness = is_nonzerodivisor(mod, t)
            if collect_pairs is not None and k == 2:
                collect_pairs.append(subset)
            if not ok:
                return k - 1, subset, witness
    return cap, None, None


def verify_theorem(
    vector: lv.LengthVector,
    params: KoszulParams,
    cap: int | None = None,
    perturb_base: int = 2,
) -> SyzygyReport:
    """Compare the algebraic order against mu - 1.

    The combinatorial side never touches the Groebner engine, so the
    comparison is a genuine two-route check.  A disagreement is
    reported, never reconciled; callers escalate it.
    """
    mu_val = lv.mu(vector)
    pres = build_presentation(vector, params, perturb_base)
    r = pres.lv_strong.r
    if cap is None:
        cap = default_cap(r)
    order, subset, witness = algebraic_syzygy_order(pres, cap)
    agree = order == mu_val - 1
    return SyzygyReport(
        lv=vector,
        mu=mu_val,
        order=order,
        agree=agree,
        cap=cap,
        witness_subset=subset,
        witness_elem=witness.format() if witness is not None else None,
        params=params,
    )
