"""Pure-Python compute kernels.

``bigpoly._speedups`` (Cython) mirrors the public functions here; the
dispatcher in ``bigpoly.backend`` picks whichever is available.  Subsets of
{1,..,r} are bit masks: bit j-1 set <=> j in J.  Status codes: 0 unknown,
1 long, 2 short.
"""

from __future__ import annotations

import sys
from math import gcd

BACKEND_NAME = "python"


def subset_sums(entries):
    """Sums of all 2^r subsets of ``entries``, indexed by mask."""
    r = len(entries)
    sums = [0] * (1 << r)
    for j in range(r):
        bit = 1 << j
        e = entries[j]
        for m in range(bit):
            sums[bit | m] = sums[m] + e
    return sums


def find_tie(sums):
    """Smallest mask whose sum equals its complement's sum, or -1."""
    total = sums[-1]
    for mask, s in enumerate(sums):
        if 2 * s == total:
            return mask
    return -1


def long_statuses(sums):
    """Per-mask status byte (1 long, 2 short); assumes no ties."""
    total = sums[-1]
    out = bytearray(len(sums))
    for mask, s in enumerate(sums):
        out[mask] = 1 if 2 * s > total else 2
    return out


def family_data(entries):
    """(first tie mask or -1, status bytes or None when a tie exists)."""
    sums = subset_sums(entries)
    tie = find_tie(sums)
    if tie >= 0:
        return tie, None
    return -1, bytes(long_statuses(sums))


def strongly_generic(entries):
    """True iff all 2^r subset sums are pairwise distinct."""
    sums = subset_sums(entries)
    return len(set(sums)) == len(sums)


def sigma_from_statuses(status, mask):
    """Number of j in the mask whose removal leaves a short set."""
    n = 0
    m = mask
    while m:
        low = m & -m
        if status[mask ^ low] == 2:
            n += 1
        m ^= low
    return n


def mu_from_statuses(status, r):
    """(mu, attaining mask): min sigma over long masks with sigma > 0.

    Returns (0, -1) when no long mask has a short facet (impossible for a
    family coming from a generic vector; callers treat it as an error).
    The attaining mask is the smallest one, scanning masks in ascending
    order, so the witness is deterministic.
    """
    best = 0
    best_mask = -1
    for mask in range(1, 1 << r):
        if status[mask] != 1:
            continue
        sig = sigma_from_statuses(status, mask)
        if sig and (best == 0 or sig < best):
            best = sig
            best_mask = mask
            if best == 1:
                break
    return best, best_mask


_COVER_CACHE = {}


def cover_tables(r):
    """Cover relations of the superset/index-raising order on masks.

    ups[m] are the masks directly above m (add one element, or raise one
    element by one position); downs[m] the masks directly below.  The
    transitive closure is J <= K iff some injection J -> K never lowers
    an index; long families of weakly increasing vectors are up-closed.
    """
    try:
        return _COVER_CACHE[r]
    except KeyError:
        pass
    size = 1 << r
    full = size - 1
    ups = []
    downs = []
    for mask in range(size):
        up = []
        down = []
        free = full & ~mask
        m = free
        while m:
            b = m & -m
            up.append(mask | b)
            m ^= b
        m = mask
        while m:
            b = m & -m
            down.append(mask ^ b)
            b2 = b << 1
            if b2 & free:
                up.append((mask ^ b) | b2)
            b1 = b >> 1
            if b1 & free:
                down.append((mask ^ b) | b1)
            m ^= b
        ups.append(up)
        downs.append(down)
    _COVER_CACHE[r] = (ups, downs)
    return ups, downs


def minimal_longs(status, r):
    """Long masks with no long cover-lower (ascending)."""
    _, downs = cover_tables(r)
    out = []
    for mask in range(1, 1 << r):
        if status[mask] != 1:
            continue
        for d in downs[mask]:
            if status[d] == 1:
                break
        else:
            out.append(mask)
    return out


# ---------------------------------------------------------------------------
# Exact rational feasibility LP (phase-1 simplex, Bland's rule, integer
# fraction-free pivoting).  Decides whether some weakly increasing
# nonnegative vector makes every mask in ``long_masks`` strictly long.
# ---------------------------------------------------------------------------


def lp_realize(r, long_masks):
    """Integer witness of {0 <= l_1 <= ... <= l_r, l(J) > l(Jc) for J given}.

    Strictness is encoded as a margin of 1, which is no loss: the system
    is rational and homogeneous up to scaling.  Returns a gcd-reduced
    tuple of nonnegative ints, or None when infeasible.
    """
    rows = []
    rhs = []
    row = [0] * r
    row[0] = 1
    rows.append(row)
    rhs.append(0)
    for i in range(r - 1):
        row = [0] * r
        row[i] = -1
        row[i + 1] = 1
        rows.append(row)
        rhs.append(0)
    for J in long_masks:
        row = [1 if (J >> j) & 1 else -1 for j in range(r)]
        rows.append(row)
        rhs.append(1)
    vals = _phase1(rows, rhs, r)
    if vals is None:
        return None
    g = 0
    for v in vals:
        g = gcd(g, v)
    if g > 1:
        vals = [v // g for v in vals]
    return tuple(vals)


def _phase1(A, b, n):
    """Phase-1 simplex over exact integers; returns values*den or None.

    The tableau stays integral (entries are minors of the input system);
    each pivot divides exactly by the previous pivot.  Bland's rule on
    both the entering column and the leaving row guarantees termination.
    """
    m = len(A)
    art_rows = [i for i in range(m) if b[i]]
    ncols = n + m + len(art_rows) + 1
    rhs_col = ncols - 1
    T = []
    basic = [0] * m
    k = 0
    for i in range(m):
        row = [0] * ncols
        if b[i] == 0:
            for j in range(n):
                row[j] = -A[i][j]
            row[n + i] = 1
            basic[i] = n + i
        else:
            for j in range(n):
                row[j] = A[i][j]
            row[n + i] = -1
            row[n + m + k] = 1
            basic[i] = n + m + k
            k += 1
            row[rhs_col] = b[i]
        T.append(row)
    obj = [0] * ncols
    for i in art_rows:
        ri = T[i]
        for j in range(ncols):
            obj[j] += ri[j]
    for j in range(n + m, ncols - 1):
        obj[j] = 0
    den = 1
    nenter = n + m  # artificial columns never re-enter
    while True:
        q = -1
        for j in range(nenter):
            if obj[j] > 0:
                q = j
                break
        if q < 0:
            if obj[rhs_col] != 0:
                return None
            break
        p = -1
        for i in range(m):
            tq = T[i][q]
            if tq <= 0:
                continue
            if p < 0:
                p = i
                continue
            lhs = T[i][rhs_col] * T[p][q]
            rhs_ = T[p][rhs_col] * tq
            if lhs < rhs_ or (lhs == rhs_ and basic[i] < basic[p]):
                p = i
        if p < 0:
            raise AssertionError("phase-1 objective unbounded")
        prow = T[p]
        piv = prow[q]
        for i in range(m):
            if i == p:
                continue
            ti = T[i]
            tiq = ti[q]
            for j in range(ncols):
                ti[j] = (ti[j] * piv - tiq * prow[j]) // den
        oq = obj[q]
        for j in range(ncols):
            obj[j] = (obj[j] * piv - oq * prow[j]) // den
        basic[p] = q
        den = piv
    vals = [0] * n
    for i in range(m):
        if basic[i] < n:
            vals[basic[i]] = T[i][rhs_col]
    return vals


# ---------------------------------------------------------------------------
# Chamber enumeration: DFS over complementary subset pairs with closure
# forcing and LP pruning.  Every leaf is one equivalence class of weakly
# increasing generic vectors, and every class is reached exactly once.
# ---------------------------------------------------------------------------


def root_witness(r):
    """A strongly generic starting vector (binary weights)."""
    return tuple(1 << j for j in range(r))


def _mask_sum(witness, mask):
    s = 0
    m = mask
    while m:
        low = m & -m
        s += witness[low.bit_length() - 1]
        m ^= low
    return s


class _Engine:
    """Mutable DFS state: the status table plus an undo trail."""

    def __init__(self, r):
        self.r = r
        self.size = 1 << r
        self.full = self.size - 1
        self.ups, self.downs = cover_tables(r)
        # one representative per complementary pair: the mask containing r
        self.reps = [m for m in range(self.size) if m >> (r - 1)]
        self.st = bytearray(self.size)
        self.trail = []
        if not self.assign(self.full, 1):
            raise AssertionError("seeding the full set failed")

    def assign(self, mask, want):
        """Set a status and propagate closure; False on contradiction.

        Long propagates to all cover-uppers, short to all cover-lowers,
        and each assignment forces the complementary status on the
        complement.  The caller rolls the trail back after a False.
        """
        st = self.st
        trail = self.trail
        ups = self.ups
        downs = self.downs
        full = self.full
        stack = [(mask, want)]
        while stack:
            m, s = stack.pop()
            cur = st[m]
            if cur == s:
                continue
            if cur:
                return False
            st[m] = s
            trail.append(m)
            stack.append((full ^ m, 3 - s))
            if s == 1:
                for u in ups[m]:
                    if st[u] != 1:
                        stack.append((u, 1))
            else:
                for d in downs[m]:
                    if st[d] != 2:
                        stack.append((d, 2))
        return True

    def rollback(self, mark):
        st = self.st
        trail = self.trail
        while len(trail) > mark:
            st[trail.pop()] = 0

    def minimal_decided_longs(self):
        # the decided-long set is up-closed, so cover-lowers suffice
        st = self.st
        downs = self.downs
        out = []
        for m in range(1, self.size):
            if st[m] != 1:
                continue
            for d in downs[m]:
                if st[d] == 1:
                    break
            else:
                out.append(m)
        return out

    def replay(self, prefix):
        for mask, want in prefix:
            if not self.assign(mask, want):
                raise AssertionError("infeasible prefix")


def _next_undecided(eng, idx):
    reps = eng.reps
    st = eng.st
    n = len(reps)
    while idx < n and st[reps[idx]]:
        idx += 1
    return idx


def _emit(eng, witness, out, mode):
    mu, _ = mu_from_statuses(eng.st, eng.r)
    if mode == "count":
        out[mu] = out.get(mu, 0) + 1
    else:
        out.append((tuple(eng.minimal_decided_longs()), tuple(witness), mu))


def _dfs(eng, idx, witness, out, mode):
    idx = _next_undecided(eng, idx)
    if idx == len(eng.reps):
        _emit(eng, witness, out, mode)
        return
    J = eng.reps[idx]
    d = 2 * _mask_sum(witness, J) - sum(witness)
    for want in (1, 2):
        mark = len(eng.trail)
        if not eng.assign(J, want):
            eng.rollback(mark)
            continue
        if (want == 1 and d > 0) or (want == 2 and d < 0):
            _dfs(eng, idx + 1, witness, out, mode)
        else:
            w2 = lp_realize(eng.r, eng.minimal_decided_longs())
            if w2 is not None:
                _dfs(eng, idx + 1, w2, out, mode)
        eng.rollback(mark)


def enumerate_subtree(r, prefix, witness, mode="full"):
    """Enumerate all chambers below a decision prefix, in DFS order.

    mode "full" -> list of (min_long tuple, witness tuple, mu);
    mode "count" -> dict mu -> number of chambers.
    """
    if sys.getrecursionlimit() < (1 << r) + 100:
        sys.setrecursionlimit((1 << r) + 100)
    eng = _Engine(r)
    eng.replay(prefix)
    out = [] if mode == "full" else {}
    _dfs(eng, 0, tuple(witness), out, mode)
    return out


def expand_one(r, prefix, witness):
    """Children of a DFS node, or None when the node is a leaf."""
    eng = _Engine(r)
    eng.replay(prefix)
    idx = _next_undecided(eng, 0)
    if idx == len(eng.reps):
        return None
    J = eng.reps[idx]
    d = 2 * _mask_sum(witness, J) - sum(witness)
    children = []
    for want in (1, 2):
        mark = len(eng.trail)
        if not eng.assign(J, want):
            eng.rollback(mark)
            continue
        if (want == 1 and d > 0) or (want == 2 and d < 0):
            children.append((prefix + ((J, want),), tuple(witness)))
        else:
            w2 = lp_realize(r, eng.minimal_decided_longs())
            if w2 is not None:
                children.append((prefix + ((J, want),), w2))
        eng.rollback(mark)
    return children


def _undecided_pairs(r, prefix):
    eng = _Engine(r)
    eng.replay(prefix)
    return sum(1 for m in eng.reps if not eng.st[m])


def expand_frontier(r, min_tasks):
    """Split the DFS tree into >= min_tasks independent subtree tasks.

    The node with the most undecided pairs is split first (a cheap
    proxy for subtree size, which is extremely skewed).  The returned
    (prefix, witness) list preserves DFS order, so concatenating
    per-task outputs reproduces the single-DFS output for any worker
    count; the split depends only on (r, min_tasks).
    """
    frontier = [((), root_witness(r))]
    weight = [_undecided_pairs(r, ())]
    while len(frontier) < min_tasks:
        best = -1
        for i, w in enumerate(weight):
            if w == 0:
                continue
            if best < 0 or w > weight[best]:
                best = i
        if best < 0:
            break
        children = expand_one(r, *frontier[best])
        if children is None:
            weight[best] = 0
        else:
            frontier[best : best + 1] = children
            weight[best : best + 1] = [
                _undecided_pairs(r, pfx) for pfx, _ in children
            ]
    return [(pfx, wit) for pfx, wit in frontier]
