"""Length-vector combinatorics against brute-force oracles."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bigpoly import lenvec as lv
from bigpoly.errors import (
    GenericityError,
    InvalidFamilyError,
    InvalidInputError,
    ResourceLimitError,
)

V = lv.LengthVector


def brute_generic(entries):
    r = len(entries)
    total = sum(entries)
    for mask in range(1 << r):
        s = sum(entries[j] for j in range(r) if (mask >> j) & 1)
        if 2 * s == total:
            return False
    return True


def brute_long_set(entries):
    r = len(entries)
    total = sum(entries)
    longs = set()
    for mask in range(1 << r):
        s = sum(entries[j] for j in range(r) if (mask >> j) & 1)
        if 2 * s > total:
            longs.add(mask)
    return longs


class TestConstruction:
    def test_rejects_empty(self):
        with pytest.raises(InvalidInputError):
            V(())

    def test_rejects_negative(self):
        with pytest.raises(InvalidInputError):
            V((-1, 2))

    def test_rejects_decreasing(self):
        with pytest.raises(InvalidInputError):
            V((2, 1))

    def test_rejects_nonint(self):
        with pytest.raises(InvalidInputError):
            V((1.5, 2))

    def test_normal_form_sorts(self):
        assert lv.LengthVector.normal_form([3, 1, 2]).entries == (1, 2, 3)

    def test_normal_form_clears_denominators(self):
        assert lv.LengthVector.normal_form(["1/2", 1]).entries == (1, 2)

    def test_csv_round_trip(self):
        vec = V((0, 0, 1, 1, 1))
        assert lv.LengthVector.from_csv(vec.csv()) == vec

    def test_from_csv_fraction(self):
        assert lv.LengthVector.from_csv("1/3,1").entries == (1, 3)

    def test_from_csv_garbage(self):
        with pytest.raises(InvalidInputError):
            lv.LengthVector.from_csv("1,,2")


class TestGenericity:
    @pytest.mark.parametrize(
        "entries,expect",
        [((1, 1, 1), True), ((1, 1, 2), False), ((0, 0, 1), True), ((0,), False)],
    )
    def test_examples(self, entries, expect):
        assert lv.is_generic(V(entries)) is expect

    def test_exhaustive_sweep_r9(self):
        # brute force over all 2^9 subsets, scaled copies included
        base = (1, 2, 3, 4, 5, 6, 7, 8, 9)
        for scale in (1, 3):
            entries = tuple(scale * e for e in base)
            assert lv.is_generic(V(entries)) == brute_generic(entries)

    def test_random_against_oracle(self):
        rng = random.Random(42)
        for _ in range(50):
            r = rng.randint(1, 8)
            entries = tuple(sorted(rng.randint(0, 12) for _ in range(r)))
            assert lv.is_generic(V(entries)) == brute_generic(entries)

    @pytest.mark.parametrize(
        "entries,expect",
        [((1, 2, 4), True), ((1, 1, 1), False), ((1, 2, 3), False)],
    )
    def test_strongly_generic(self, entries, expect):
        assert lv.is_strongly_generic(V(entries)) is expect

    def test_strongly_generic_sort_oracle(self):
        rng = random.Random(7)
        for _ in range(40):
            r = rng.randint(1, 10)
            entries = tuple(sorted(rng.randint(0, 40) for _ in range(r)))
            sums = sorted(
                sum(entries[j] for j in range(r) if (m >> j) & 1)
                for m in range(1 << r)
            )
            distinct = all(a != b for a, b in zip(sums, sums[1:]))
            assert lv.is_strongly_generic(V(entries)) == distinct


class TestLongAndSigma:
    def test_is_long_examples(self):
        assert lv.is_long(V((1, 1, 1)), 0b011)
        assert not lv.is_long(V((0, 1, 1, 1)), 0b0011)
        assert lv.is_long(V((0, 0, 1, 1, 1)), 0b01100)

    def test_is_long_tie_raises(self):
        with pytest.raises(GenericityError):
            lv.is_long(V((1, 1, 2)), 0b100)

    def test_is_long_bad_mask(self):
        with pytest.raises(InvalidInputError):
            lv.is_long(V((1, 1, 1)), 1 << 5)

    def test_sigma_examples(self):
        assert lv.sigma(V((1, 1, 1)), 0b011) == 2
        assert lv.sigma(V((1, 1, 1)), 0b111) == 0
        assert lv.sigma(V((1, 1, 1)), 0) == 0


class TestMu:
    @pytest.mark.parametrize(
        "entries,expect",
        [
            ((1, 1, 1, 1, 1), 3),
            ((0, 0, 1, 1, 1), 2),
            ((1, 1, 1, 2, 2, 2), 2),
            ((1, 1, 1), 2),
            ((0, 1, 1, 1), 2),
            ((0, 0, 0, 1, 1, 1), 2),
            ((0, 0, 1), 1),
        ],
    )
    def test_named_values(self, entries, expect):
        assert lv.mu(V(entries)) == expect

    def test_witness_attains(self):
        vec = V((1, 1, 1, 1, 1))
        mu_val, mask = lv.mu_witness(vec)
        assert lv.is_long(vec, mask)
        assert lv.sigma(vec, mask) == mu_val

    def test_nongeneric_raises(self):
        with pytest.raises(GenericityError):
            lv.mu(V((1, 1, 2)))

    def test_permutation_invariant(self):
        rng = random.Random(3)
        for _ in range(25):
            entries = sorted(rng.randint(0, 9) for _ in range(6))
            vec = lv.LengthVector.normal_form(entries)
            if not lv.is_generic(vec):
                continue
            shuffled = list(entries)
            rng.shuffle(shuffled)
            assert lv.mu(lv.LengthVector.normal_form(shuffled)) == lv.mu(vec)

    @given(
        st.lists(st.integers(min_value=0, max_value=20), min_size=1, max_size=9)
    )
    @settings(max_examples=80, deadline=None)
    def test_mu_bound(self, entries):
        vec = lv.LengthVector.normal_form(entries)
        if not lv.is_generic(vec):
            return
        m = (vec.r - 1) // 2
        assert 1 <= lv.mu(vec) <= m + 1


class TestFamilies:
    def test_family_111(self):
        fam = lv.long_family(V((1, 1, 1)))
        assert set(fam.longs()) == {m for m in range(8) if bin(m).count("1") >= 2}

    def test_family_001(self):
        fam = lv.long_family(V((0, 0, 1)))
        assert set(fam.longs()) == {m for m in range(8) if m & 0b100}

    def test_family_0111_derived(self):
        fam = lv.long_family(V((0, 1, 1, 1)))
        expect = {m for m in range(16) if bin(m & 0b1110).count("1") >= 2}
        assert set(fam.longs()) == expect

    def test_family_matches_oracle(self):
        rng = random.Random(11)
        for _ in range(30):
            r = rng.randint(1, 9)
            entries = tuple(sorted(rng.randint(0, 9) for _ in range(r)))
            vec = V(entries)
            if not lv.is_generic(vec):
                continue
            assert set(lv.long_family(vec).longs()) == brute_long_set(entries)

    @given(
        st.lists(st.integers(min_value=0, max_value=15), min_size=1, max_size=8)
    )
    @settings(max_examples=80, deadline=None)
    def test_duality_and_closures(self, entries):
        vec = lv.LengthVector.normal_form(entries)
        if not lv.is_generic(vec):
            return
        fam = lv.long_family(vec)
        r, st_ = fam.r, fam.status
        full = (1 << r) - 1
        for m in range(1 << r):
            assert (st_[m] == 1) != (st_[full ^ m] == 1)
        fam.validate()  # monotone + self-dual
        # index-raising closure for weakly increasing entries
        for m in fam.longs():
            for j in range(r - 1):
                if (m >> j) & 1 and not (m >> (j + 1)) & 1:
                    assert st_[(m ^ (1 << j)) | (1 << (j + 1))] == 1

    def test_equivalent(self):
        assert lv.equivalent(V((1, 1, 1)), V((2, 3, 4)))
        assert not lv.equivalent(V((1, 1, 1)), V((0, 0, 1)))
        vec = V((0, 1, 2, 4))
        assert lv.equivalent(vec, V(tuple(2 * e for e in vec.entries)))

    def test_equivalent_rank_mismatch(self):
        with pytest.raises(InvalidInputError):
            lv.equivalent(V((1, 1, 1)), V((1, 1, 1, 1)))

    def test_mu_of_family_matches_mu(self):
        rng = random.Random(5)
        for _ in range(30):
            entries = tuple(sorted(rng.randint(0, 9) for _ in range(7)))
            vec = V(entries)
            if not lv.is_generic(vec):
                continue
            assert lv.mu_of_family(lv.long_family(vec)) == lv.mu(vec)

    @pytest.mark.parametrize("k,r", [(1, 1), (1, 3), (2, 5), (3, 7), (2, 7), (4, 9)])
    def test_mu_of_ones_family(self, k, r):
        # (0,..,0,1,..,1) with 2k-1 ones has mu = k
        vec = V((0,) * (r - 2 * k + 1) + (1,) * (2 * k - 1))
        assert lv.mu_of_family(lv.long_family(vec)) == k

    def test_mu_of_family_rejects_broken(self):
        fam = lv.long_family(V((1, 1, 1)))
        # flip one pair to break self-duality
        status = bytearray(fam.status)
        status[0b011] = 2
        with pytest.raises(InvalidFamilyError):
            lv.mu_of_family(lv.LongFamily(3, bytes(status)))

    def test_fingerprint_and_serialize(self):
        fam = lv.long_family(V((1, 1, 1)))
        assert fam.fingerprint() == "3"
        assert fam.serialize() == "3\n"
        fam2 = lv.long_family(V((0, 0, 1, 1, 1)))
        assert fam2.serialize() == "c\n"


class TestPerturbation:
    @pytest.mark.parametrize("entries", [(0, 0, 1), (1, 1, 1), (0, 1, 2, 4), (1, 1, 1, 1, 1)])
    def test_preserves_family(self, entries):
        vec = V(entries)
        pert = lv.perturb_strongly_generic(vec)
        assert lv.is_strongly_generic(pert)
        assert all(e > 0 for e in pert.entries)
        assert lv.long_family(pert) == lv.long_family(vec)

    def test_other_base(self):
        vec = V((0, 0, 1))
        pert = lv.perturb_strongly_generic(vec, base=3)
        assert lv.is_strongly_generic(pert)
        assert lv.long_family(pert) == lv.long_family(vec)

    def test_bad_base(self):
        with pytest.raises(InvalidInputError):
            lv.perturb_strongly_generic(V((0, 0, 1)), base=1)


def test_family_cap():
    with pytest.raises(ResourceLimitError):
        lv.is_generic(V(tuple(range(30))))


def test_subset_repr_round_trip():
    for mask in range(16):
        assert lv.parse_subset(lv.subset_repr(mask), 4) == mask
    assert lv.parse_subset("c", 5) == 0xC
    assert lv.parse_subset_list("{1,2},c", 5) == [0b11, 0xC]
