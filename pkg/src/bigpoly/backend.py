"""Kernel backend selection: compiled extension when available, else pure.

Set BIGPOLY_PURE=1 to force the pure-Python kernels.  The compiled
kernels work on 64-bit integers and raise OverflowError on inputs
outside that range; the wrappers below fall back transparently.
"""

from __future__ import annotations

import os

from . import _kernels_py as _py

if os.environ.get("BIGPOLY_PURE"):
    _impl = _py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _py

BACKEND = getattr(_impl, "BACKEND_NAME", "python")


def _dispatch(name, *args, **kwargs):
    if _impl is not _py:
        try:
            return getattr(_impl, name)(*args, **kwargs)
        except OverflowError:
            pass
    return getattr(_py, name)(*args, **kwargs)


def family_data(entries):
    return _dispatch("family_data", entries)


def strongly_generic(entries):
    return _dispatch("strongly_generic", entries)


def mu_from_statuses(status, r):
    return _dispatch("mu_from_statuses", status, r)


def enumerate_subtree(r, prefix, witness, mode="full"):
    return _dispatch("enumerate_subtree", r, prefix, witness, mode)


def lp_realize(r, long_masks):
    return _dispatch("lp_realize", r, long_masks)


# Always pure Python: cheap, and used to build worker task lists so the
# task split never depends on the backend in use.
subset_sums = _py.subset_sums
sigma_from_statuses = _py.sigma_from_statuses
minimal_longs = _py.minimal_longs
cover_tables = _py.cover_tables
root_witness = _py.root_witness
expand_frontier = _py.expand_frontier
