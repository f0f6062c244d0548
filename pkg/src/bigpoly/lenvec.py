"""Length-vector combinatorics: genericity, long/short subsets, mu.

A length vector is a weakly increasing tuple of nonnegative integers.
J in {1,..,r} is long when its sum beats the complement's; for generic
vectors (no ties) exactly half of all subsets are long.  The invariant
mu is the least number of short facets among long subsets having one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm

from . import backend
from .errors import (
    GenericityError,
    InvalidFamilyError,
    InvalidInputError,
    ResourceLimitError,
)

# Materializing a family walks all 2^r subsets; pointwise queries only
# need masks and fit in machine words much longer.
FAMILY_MAX_R = 24
POINTWISE_MAX_R = 63


@dataclass(frozen=True)
class LengthVector:
    """Exact integer length vector in normal form (weakly increasing)."""

    entries: tuple[int, ...]

    def __post_init__(self):
        e = self.entries
        if not isinstance(e, tuple):
            object.__setattr__(self, "entries", tuple(e))
            e = self.entries
        if len(e) == 0:
            raise InvalidInputError("length vector needs at least one entry")
        if len(e) > POINTWISE_MAX_R:
            raise ResourceLimitError(f"r > {POINTWISE_MAX_R} unsupported")
        for x in e:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InvalidInputError(f"entries must be exact integers, got {x!r}")
            if x < 0:
                raise InvalidInputError("entries must be nonnegative")
        if any(a > b for a, b in zip(e, e[1:])):
            raise InvalidInputError(
                "entries must be weakly increasing; use LengthVector.normal_form"
            )

    @classmethod
    def normal_form(cls, values) -> "LengthVector":
        """Sort entries and clear denominators of rational inputs."""
        vals = [Fraction(v) for v in values]
        if any(v < 0 for v in vals):
            raise InvalidInputError("entries must be nonnegative")
        denom = reduce(lcm, (v.denominator for v in vals), 1)
        ints = sorted(int(v * denom) for v in vals)
        return cls(tuple(ints))

    @classmethod
    def from_csv(cls, text: str) -> "LengthVector":
        """Parse comma-separated entries; fractions like 3/2 are cleared."""
        parts = [p.strip() for p in text.split(",")]
        if not parts or any(p == "" for p in parts):
            raise InvalidInputError(f"cannot parse length vector {text!r}")
        try:
            vals = [Fraction(p) for p in parts]
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"cannot parse length vector {text!r}") from exc
        return cls.normal_form(vals)

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    def subset_sum(self, mask: int) -> int:
        self._check_mask(mask)
        s = 0
        m = mask
        while m:
            low = m & -m
            s += self.entries[low.bit_length() - 1]
            m ^= low
        return s

    def _check_mask(self, mask: int) -> None:
        if not isinstance(mask, int) or mask < 0 or mask >= (1 << self.r):
            raise InvalidInputError(f"subset code {mask!r} out of range for r={self.r}")

    def csv(self) -> str:
        return ",".join(str(x) for x in self.entries)

    def __str__(self) -> str:
        return f"({self.csv()})"


@lru_cache(maxsize=4096)
def _family_data(entries: tuple[int, ...]):
    if len(entries) > FAMILY_MAX_R:
        raise ResourceLimitError(
            f"family-level operations are capped at r <= {FAMILY_MAX_R}"
        )
    return backend.family_data(entries)


def is_generic(lv: LengthVector) -> bool:
    """True iff no subset sum equals half the total (exact arithmetic)."""
    return _family_data(lv.entries)[0] < 0


def is_strongly_generic(lv: LengthVector) -> bool:
    """True iff all 2^r subset sums are pairwise distinct."""
    if lv.r > FAMILY_MAX_R:
        raise ResourceLimitError(
            f"family-level operations are capped at r <= {FAMILY_MAX_R}"
        )
    return backend.strongly_generic(lv.entries)


def require_generic(lv: LengthVector) -> None:
    tie = _family_data(lv.entries)[0]
    if tie >= 0:
        raise GenericityError(
            f"{lv} is not generic: subset {subset_repr(tie)} ties its complement"
        )


def is_long(lv: LengthVector, mask: int) -> bool:
    """True iff the subset's sum strictly beats its complement's."""
    d = 2 * lv.subset_sum(mask) - lv.total
    if d == 0:
        raise GenericityError(
            f"subset {subset_repr(mask)} of {lv} ties its complement"
        )
    return d > 0


def sigma(lv: LengthVector, mask: int) -> int:
    """Number of j in the subset whose removal makes it short."""
    lv._check_mask(mask)
    n = 0
    m = mask
    while m:
        low = m & -m
        if not is_long(lv, mask ^ low):
            n += 1
        m ^= low
    return n


def mu_witness(lv: LengthVector) -> tuple[int, int]:
    """(mu, attaining long subset).  Requires a generic vector."""
    require_generic(lv)
    status = _family_data(lv.entries)[1]
    best, mask = backend.mu_from_statuses(status, lv.r)
    if best == 0:
        # cannot happen for generic vectors; verified rather than assumed
        raise InvalidInputError(f"no long subset of {lv} has a short facet")
    return best, mask


def mu(lv: LengthVector) -> int:
    return mu_witness(lv)[0]


@dataclass(frozen=True)
class LongFamily:
    """The complete long/short dichotomy for one equivalence class.

    ``status`` holds one byte per mask (1 long, 2 short).  Families of
    weakly increasing vectors are automatically closed under supersets
    and index raising.
    """

    r: int
    status: bytes

    def __post_init__(self):
        if len(self.status) != (1 << self.r):
            raise InvalidInputError("status table has wrong size")

    def is_long(self, mask: int) -> bool:
        return self.status[mask] == 1

    def longs(self):
        return [m for m in range(1 << self.r) if self.status[m] == 1]

    def validate(self) -> None:
        """Raise InvalidFamilyError unless monotone and self-dual."""
        st = self.status
        full = (1 << self.r) - 1
        for m in range(1 << self.r):
            if st[m] not in (1, 2):
                raise InvalidFamilyError("undecided mask in family")
            if (st[m] == 1) == (st[full ^ m] == 1):
                raise InvalidFamilyError(
                    f"family is not self-dual at {subset_repr(m)}"
                )
        for m in range(1 << self.r):
            if st[m] != 1:
                continue
            mm = full & ~m
            while mm:
                b = mm & -mm
                if st[m | b] != 1:
                    raise InvalidFamilyError(
                        f"family is not monotone above {subset_repr(m)}"
                    )
                mm ^= b


    def minimal_sets(self) -> tuple[int, ...]:
        """Minimal long subsets under the superset/index-raising order."""
        return tuple(backend.minimal_longs(self.status, self.r))

    def fingerprint(self) -> str:
        """Sorted minimal long sets in hex, comma separated."""
        return ",".join(format(m, "x") for m in self.minimal_sets())

    def serialize(self) -> str:
        """One hex minimal set per line, newline-terminated."""
        return "".join(format(m, "x") + "\n" for m in self.minimal_sets())


def long_family(lv: LengthVector) -> LongFamily:
    """The family of all long subsets of a generic vector."""
    require_generic(lv)
    return LongFamily(lv.r, _family_data(lv.entries)[1])


def equivalent(lv1: LengthVector, lv2: LengthVector) -> bool:
    """True iff both vectors induce the same long/short dichotomy."""
    if lv1.r != lv2.r:
        raise InvalidInputError(f"rank mismatch: {lv1.r} vs {lv2.r}")
    return long_family(lv1) == long_family(lv2)


def mu_of_family(fam: LongFamily) -> int:
    """mu computed from the family alone (no representative needed)."""
    fam.validate()
    best, _ = backend.mu_from_statuses(fam.status, fam.r)
    if best == 0:
        raise InvalidFamilyError("no long subset has a short facet")
    return best


def perturb_strongly_generic(lv: LengthVector, base: int = 2) -> LengthVector:
    """An equivalent strongly generic vector with positive entries.

    Scales by base^r and adds the distinct powers base^(j-1); the
    perturbation total stays below the scaled minimal slack, so every
    long/short comparison is preserved while all subset sums become
    distinct.
    """
    if base < 2:
        raise InvalidInputError("perturbation base must be at least 2")
    r = lv.r
    scale = base**r
    entries = tuple(scale * e + base**j for j, e in enumerate(lv.entries))
    out = LengthVector(entries)
    if __debug__ and r <= 16:
        assert is_strongly_generic(out)
    return out


def subset_repr(mask: int) -> str:
    """Human-readable {i,j,..} form of a subset code."""
    elems = []
    j = 1
    while mask:
        if mask & 1:
            elems.append(str(j))
        mask >>= 1
        j += 1
    return "{" + ",".join(elems) + "}"


def parse_subset(text: str, r: int) -> int:
    """Inverse of subset_repr; also accepts bare hex masks."""
    text = text.strip()
    try:
        if text.startswith("{"):
            body = text.strip("{}")
            mask = 0
            if body:
                for part in body.split(","):
                    j = int(part)
                    if not 1 <= j <= r:
                        raise InvalidInputError(f"element {j} out of range")
                    mask |= 1 << (j - 1)
            return mask
        mask = int(text, 16)
    except ValueError as exc:
        raise InvalidInputError(f"cannot parse subset {text!r}") from exc
    if not 0 <= mask < (1 << r):
        raise InvalidInputError(f"subset code {text!r} out of range")
    return mask


def parse_subset_list(text: str, r: int) -> list[int]:
    """Comma-separated masks; {i,j} braces may hold commas themselves."""
    toks = re.findall(r"\{[^}]*\}|[^,{}\s]+", text)
    if not toks:
        raise InvalidInputError(f"cannot parse subset list {text!r}")
    return [parse_subset(tok, r) for tok in toks]
