"""Classification reports over enumerated chambers.

Reproduces the uniqueness statements for the top two syzygy orders and
the named normal forms, and publishes full per-mu histograms for the
rest (where no closed-form description is known).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import lenvec as lv
from .chambers import Chamber, enumerate_chambers
from .errors import InvalidInputError


def ones_normal_form(r: int, mu_val: int) -> lv.LengthVector:
    """(0,..,0,1,..,1) with 2*mu-1 trailing ones."""
    ones = 2 * mu_val - 1
    if ones > r:
        raise InvalidInputError(f"no ones normal form for r={r}, mu={mu_val}")
    return lv.LengthVector((0,) * (r - ones) + (1,) * ones)


def max_order_normal_form(r: int) -> lv.LengthVector:
    """(1,..,1) for odd r, (0,1,..,1) for even r: the unique top chamber."""
    if r % 2:
        return lv.LengthVector((1,) * r)
    return lv.LengthVector((0,) + (1,) * (r - 1))


def next_order_normal_forms(r: int) -> list[lv.LengthVector]:
    """Normal forms at order m-1: one for odd r, two for even r >= 4."""
    if r % 2:
        return [ones_normal_form(r, (r - 1) // 2)]
    return [
        ones_normal_form(r, (r - 2) // 2),
        lv.LengthVector((1, 1, 1) + (2,) * (r - 3)),
    ]


def check_lemma_J_mu(vector: lv.LengthVector) -> bool:
    """If some long subset has exactly mu elements, the vector must be
    equivalent to the ones normal form; returns whether that held."""
    mu_val = lv.mu(vector)
    fam = lv.long_family(vector)
    has_small_long = any(
        bin(m).count("1") == mu_val for m in fam.minimal_sets()
    )
    if not has_small_long:
        return True
    return fam == lv.long_family(ones_normal_form(vector.r, mu_val))


def check_lemma_on_chamber(chamber: Chamber) -> bool:
    """Fingerprint-level version of check_lemma_J_mu.

    A minimal long set never has fewer than mu elements (its facets are
    all short), so a long set of size mu exists iff a minimal one does;
    and the ones normal form has the single minimal long set
    {r-2mu+2, .., r-mu+1}.
    """
    r = chamber.r
    mu_val = chamber.mu
    if min(bin(m).count("1") for m in chamber.min_long) != mu_val:
        return True
    expected = 0
    for j in range(r - 2 * mu_val + 2, r - mu_val + 2):
        expected |= 1 << (j - 1)
    return chamber.min_long == (expected,)


def classify_order(r: int, k: int, chambers: list[Chamber] | None = None, **kw) -> list[Chamber]:
    """Chambers whose syzygy order mu-1 equals k, canonically ordered."""
    if chambers is None:
        chambers = enumerate_chambers(r, **kw)
    return [c for c in chambers if c.mu - 1 == k]


@dataclass(frozen=True)
class ClassificationResult:
    r: int
    counts: dict[int, int]  # mu -> chamber count
    top: tuple[Chamber, ...]  # mu = m+1
    next_to_top: tuple[Chamber, ...]  # mu = m

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def csv_rows(self) -> list[str]:
        return [
            f"{self.r},{mu},{mu - 1},{n}" for mu, n in sorted(self.counts.items())
        ]


def classify(r: int, chambers: list[Chamber] | None = None, **kw) -> ClassificationResult:
    if chambers is None:
        chambers = enumerate_chambers(r, **kw)
    counts: dict[int, int] = {}
    for c in chambers:
        counts[c.mu] = counts.get(c.mu, 0) + 1
    m = (r - 1) // 2
    top = tuple(c for c in chambers if c.mu == m + 1)
    nxt = tuple(c for c in chambers if c.mu == m)
    result = ClassificationResult(r, dict(sorted(counts.items())), top, nxt)
    assert result.total == len(chambers)
    return result
