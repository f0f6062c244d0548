"""Pure and compiled kernel lanes must agree operation by operation."""

import random

import pytest

from bigpoly import _kernels_py as pure

speedups = pytest.importorskip("bigpoly._speedups")


def random_vectors(count, rmax=9, emax=12, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        r = rng.randint(1, rmax)
        out.append(tuple(sorted(rng.randint(0, emax) for _ in range(r))))
    return out


@pytest.mark.parametrize("entries", random_vectors(40))
def test_family_data_agrees(entries):
    assert speedups.family_data(entries) == pure.family_data(entries)


@pytest.mark.parametrize("entries", random_vectors(40, seed=1))
def test_strongly_generic_agrees(entries):
    assert speedups.strongly_generic(entries) == pure.strongly_generic(entries)


@pytest.mark.parametrize("entries", random_vectors(30, seed=2))
def test_mu_agrees(entries):
    tie, status = pure.family_data(entries)
    if tie >= 0:
        return
    r = len(entries)
    assert speedups.mu_from_statuses(status, r) == pure.mu_from_statuses(status, r)


def test_family_data_overflow_raises():
    with pytest.raises(OverflowError):
        speedups.family_data((1 << 60, 1 << 61))


def test_lp_realize_agrees():
    rng = random.Random(3)
    for _ in range(60):
        r = rng.randint(2, 7)
        tie, status = pure.family_data(tuple(sorted(rng.randint(0, 9) for _ in range(r))))
        if tie >= 0:
            continue
        mins = pure.minimal_longs(status, r)
        assert speedups.lp_realize(r, mins) == pure.lp_realize(r, mins)


@pytest.mark.parametrize("r", range(1, 8))
def test_enumeration_identical(r):
    w = pure.root_witness(r)
    assert speedups.enumerate_subtree(r, (), w) == pure.enumerate_subtree(r, (), w)
    assert speedups.enumerate_subtree(r, (), w, "count") == pure.enumerate_subtree(
        r, (), w, "count"
    )


def test_enumeration_from_prefix():
    r = 6
    tasks = pure.expand_frontier(r, 8)
    for prefix, witness in tasks:
        a = speedups.enumerate_subtree(r, prefix, witness)
        b = pure.enumerate_subtree(r, prefix, witness)
        assert a == b


def test_backend_dispatch_fallback():
    # dispatcher must fall back to pure kernels on overflow
    from bigpoly import backend

    big = (1 << 60, 1 << 61, 1 << 62)
    assert backend.family_data(big) == pure.family_data(big)
