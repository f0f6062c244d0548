# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring bigpoly._kernels_py.

All arithmetic runs on 64-bit integers with explicit guards; anything
that would leave the safe range raises OverflowError, and the backend
dispatcher (or the in-engine LP fallback) reruns the computation with
the pure-Python arbitrary-precision kernels instead.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

from bigpoly import _kernels_py as _py

cdef extern from *:
    ctypedef long long i128 "__int128"

BACKEND_NAME = "cython"

cdef long long ENTRY_GUARD = (<long long> 1) << 55
cdef long long PIVOT_GUARD = (<long long> 1) << 62
cdef int MAXMINS = 300


cdef long long c_gcd(long long a, long long b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# family kernels
# ---------------------------------------------------------------------------


cdef long long* _sums_c(entries, int* r_out) except NULL:
    cdef int r = len(entries)
    cdef int j, size
    cdef long long e, tot = 0
    cdef long long* sums
    cdef long long bit, m
    size = 1 << r
    sums = <long long*> malloc(size * sizeof(long long))
    if sums == NULL:
        raise MemoryError()
    sums[0] = 0
    for j in range(r):
        val = entries[j]
        if not (-ENTRY_GUARD < val < ENTRY_GUARD):
            free(sums)
            raise OverflowError("entry outside compiled-kernel range")
        e = val
        tot += e
        if not (-ENTRY_GUARD < tot < ENTRY_GUARD):
            free(sums)
            raise OverflowError("total outside compiled-kernel range")
        bit = (<long long> 1) << j
        for m in range(bit):
            sums[bit | m] = sums[m] + e
    r_out[0] = r
    return sums


def family_data(entries):
    """(first tie mask or -1, status bytes or None when a tie exists)."""
    cdef int r = 0
    cdef long long* sums = _sums_c(entries, &r)
    cdef int size = 1 << r
    cdef int mask, tie = -1
    cdef long long total = sums[size - 1]
    cdef unsigned char[:] buf
    try:
        for mask in range(size):
            if 2 * sums[mask] == total:
                tie = mask
                break
        if tie >= 0:
            return tie, None
        status = bytearray(size)
        buf = status
        for mask in range(size):
            buf[mask] = 1 if 2 * sums[mask] > total else 2
        return -1, bytes(status)
    finally:
        free(sums)


def strongly_generic(entries):
    """True iff all 2^r subset sums are pairwise distinct."""
    cdef int r = 0
    cdef long long* sums = _sums_c(entries, &r)
    cdef int size = 1 << r
    cdef int i, j, h
    cdef long long v
    try:
        # in-place binary insertion would be O(n^2); use a simple shell sort
        h = 1
        while h < size // 3:
            h = 3 * h + 1
        while h >= 1:
            for i in range(h, size):
                v = sums[i]
                j = i
                while j >= h and sums[j - h] > v:
                    sums[j] = sums[j - h]
                    j -= h
                sums[j] = v
            h //= 3
        for i in range(1, size):
            if sums[i] == sums[i - 1]:
                return False
        return True
    finally:
        free(sums)


def mu_from_statuses(status, int r):
    """(mu, attaining mask); (0, -1) when no long mask has a short facet."""
    cdef const unsigned char[:] st = status
    cdef int best = 0, best_mask = -1
    cdef int mask, sig
    cdef int m, low
    for mask in range(1, 1 << r):
        if st[mask] != 1:
            continue
        sig = 0
        m = mask
        while m:
            low = m & (-m)
            if st[mask ^ low] == 2:
                sig += 1
            m ^= low
        if sig and (best == 0 or sig < best):
            best = sig
            best_mask = mask
            if best == 1:
                break
    return best, best_mask


# ---------------------------------------------------------------------------
# exact feasibility LP (integer fraction-free phase-1 simplex)
# ---------------------------------------------------------------------------


cdef int _lp_core(int r, int* mins, int nmins, long long* T, long long* obj,
                  int* basic, long long* out_vals) except -2:
    """1 feasible (out_vals = witness*den, gcd-reduced), 0 infeasible.

    Mirrors _kernels_py._phase1 exactly: same layout, same Bland rule.
    Raises OverflowError when any tableau entry leaves the int64 range.
    """
    cdef int n = r
    cdef int m = r + nmins
    cdef int n_art = nmins
    cdef int ncols = n + m + n_art + 1
    cdef int rhs_col = ncols - 1
    cdef int i, j, k, p, q, J
    cdef long long den, piv, oq, tiq
    cdef i128 acc, lhs, rhs_
    memset(T, 0, m * ncols * sizeof(long long))
    memset(obj, 0, ncols * sizeof(long long))
    # row 0: l_1 >= 0; rows 1..r-1: l_{i+1} - l_i >= 0; then margin rows
    T[0 * ncols + 0] = -1  # negated: -A row with surplus +1
    T[0 * ncols + n + 0] = 1
    basic[0] = n + 0
    for i in range(1, r):
        T[i * ncols + (i - 1)] = 1
        T[i * ncols + i] = -1
        T[i * ncols + n + i] = 1
        basic[i] = n + i
    for k in range(nmins):
        i = r + k
        J = mins[k]
        for j in range(n):
            T[i * ncols + j] = 1 if (J >> j) & 1 else -1
        T[i * ncols + n + i] = -1
        T[i * ncols + n + m + k] = 1
        T[i * ncols + rhs_col] = 1
        basic[i] = n + m + k
        for j in range(ncols):
            obj[j] += T[i * ncols + j]
    for j in range(n + m, ncols - 1):
        obj[j] = 0
    den = 1
    while True:
        q = -1
        for j in range(n + m):
            if obj[j] > 0:
                q = j
                break
        if q < 0:
            if obj[rhs_col] != 0:
                return 0
            break
        p = -1
        for i in range(m):
            tiq = T[i * ncols + q]
            if tiq <= 0:
                continue
            if p < 0:
                p = i
                continue
            lhs = <i128> T[i * ncols + rhs_col] * <i128> T[p * ncols + q]
            rhs_ = <i128> T[p * ncols + rhs_col] * <i128> tiq
            if lhs < rhs_ or (lhs == rhs_ and basic[i] < basic[p]):
                p = i
        if p < 0:
            raise AssertionError("phase-1 objective unbounded")
        piv = T[p * ncols + q]
        for i in range(m):
            if i == p:
                continue
            tiq = T[i * ncols + q]
            for j in range(ncols):
                acc = (<i128> T[i * ncols + j] * <i128> piv
                       - <i128> tiq * <i128> T[p * ncols + j])
                acc = acc / den
                if not (-PIVOT_GUARD < acc < PIVOT_GUARD):
                    raise OverflowError("LP tableau outside int64 range")
                T[i * ncols + j] = <long long> acc
        oq = obj[q]
        for j in range(ncols):
            acc = <i128> obj[j] * <i128> piv - <i128> oq * <i128> T[p * ncols + j]
            acc = acc / den
            if not (-PIVOT_GUARD < acc < PIVOT_GUARD):
                raise OverflowError("LP tableau outside int64 range")
            obj[j] = <long long> acc
        basic[p] = q
        den = piv
    for j in range(n):
        out_vals[j] = 0
    for i in range(m):
        if basic[i] < n:
            out_vals[basic[i]] = T[i * ncols + rhs_col]
    cdef long long g = 0
    for j in range(n):
        g = c_gcd(g, out_vals[j])
    if g > 1:
        for j in range(n):
            out_vals[j] = out_vals[j] // g
    return 1


def lp_realize(int r, long_masks):
    """Integer witness making every given mask strictly long, or None."""
    cdef int nmins = len(long_masks)
    if nmins > MAXMINS:
        raise OverflowError("too many LP constraints for compiled kernel")
    cdef int m = r + nmins
    cdef int ncols = r + m + nmins + 1
    cdef int* mins = <int*> malloc((nmins + 1) * sizeof(int))
    cdef long long* T = <long long*> malloc(m * ncols * sizeof(long long))
    cdef long long* obj = <long long*> malloc(ncols * sizeof(long long))
    cdef int* basic = <int*> malloc(m * sizeof(int))
    cdef long long* vals = <long long*> malloc(r * sizeof(long long))
    if mins == NULL or T == NULL or obj == NULL or basic == NULL or vals == NULL:
        free(mins); free(T); free(obj); free(basic); free(vals)
        raise MemoryError()
    cdef int i, ok
    try:
        for i in range(nmins):
            mins[i] = long_masks[i]
        ok = _lp_core(r, mins, nmins, T, obj, basic, vals)
        if not ok:
            return None
        return tuple(vals[i] for i in range(r))
    finally:
        free(mins); free(T); free(obj); free(basic); free(vals)


# ---------------------------------------------------------------------------
# chamber DFS engine
# ---------------------------------------------------------------------------


cdef class _CEngine:
    cdef int r, size, full, nreps, trail_len, maxrows, maxcols
    cdef signed char* st
    cdef int* reps
    cdef int* trail
    cdef int* stack  # assign() worklist, entries encoded mask*4+status
    cdef int* ups_off
    cdef int* ups_flat
    cdef int* downs_off
    cdef int* downs_flat
    cdef long long* wit  # one witness vector per DFS depth
    cdef long long* lp_T
    cdef long long* lp_obj
    cdef int* lp_basic
    cdef int* mins_buf
    cdef list out_full
    cdef long long* hist
    cdef int count_mode

    def __cinit__(self, int r):
        cdef int size = 1 << r
        cdef int mask, m, b, b2, nu, nd, pos_u, pos_d, j
        self.r = r
        self.size = size
        self.full = size - 1
        self.trail_len = 0
        self.st = <signed char*> malloc(size)
        self.trail = <int*> malloc(size * sizeof(int))
        self.stack = <int*> malloc(size * (2 * r + 4) * sizeof(int))
        self.reps = <int*> malloc((size // 2 + 1) * sizeof(int))
        self.ups_off = <int*> malloc((size + 1) * sizeof(int))
        self.downs_off = <int*> malloc((size + 1) * sizeof(int))
        self.ups_flat = <int*> malloc(size * (r + r) * sizeof(int))
        self.downs_flat = <int*> malloc(size * (r + r) * sizeof(int))
        self.wit = <long long*> malloc((size // 2 + 2) * r * sizeof(long long))
        self.maxrows = r + MAXMINS
        self.maxcols = r + self.maxrows + MAXMINS + 1
        self.lp_T = <long long*> malloc(self.maxrows * self.maxcols * sizeof(long long))
        self.lp_obj = <long long*> malloc(self.maxcols * sizeof(long long))
        self.lp_basic = <int*> malloc(self.maxrows * sizeof(int))
        self.mins_buf = <int*> malloc((MAXMINS + 2) * sizeof(int))
        self.hist = <long long*> malloc((r + 2) * sizeof(long long))
        if (self.st == NULL or self.trail == NULL or self.stack == NULL
                or self.reps == NULL or self.ups_off == NULL
                or self.downs_off == NULL or self.ups_flat == NULL
                or self.downs_flat == NULL or self.wit == NULL
                or self.lp_T == NULL or self.lp_obj == NULL
                or self.lp_basic == NULL or self.mins_buf == NULL
                or self.hist == NULL):
            raise MemoryError()
        memset(self.st, 0, size)
        memset(self.hist, 0, (r + 2) * sizeof(long long))
        self.nreps = 0
        for mask in range(size):
            if mask >> (r - 1):
                self.reps[self.nreps] = mask
                self.nreps += 1
        pos_u = 0
        pos_d = 0
        for mask in range(size):
            self.ups_off[mask] = pos_u
            self.downs_off[mask] = pos_d
            m = self.full & ~mask
            while m:
                b = m & (-m)
                self.ups_flat[pos_u] = mask | b
                pos_u += 1
                m ^= b
            m = mask
            while m:
                b = m & (-m)
                self.downs_flat[pos_d] = mask ^ b
                pos_d += 1
                b2 = b << 1
                if b2 & (self.full & ~mask):
                    self.ups_flat[pos_u] = (mask ^ b) | b2
                    pos_u += 1
                b2 = b >> 1
                if b2 and (b2 & (self.full & ~mask)):
                    self.downs_flat[pos_d] = (mask ^ b) | b2
                    pos_d += 1
                m ^= b
        self.ups_off[size] = pos_u
        self.downs_off[size] = pos_d

    def __dealloc__(self):
        free(self.st); free(self.trail); free(self.stack); free(self.reps)
        free(self.ups_off); free(self.downs_off)
        free(self.ups_flat); free(self.downs_flat)
        free(self.wit); free(self.lp_T); free(self.lp_obj)
        free(self.lp_basic); free(self.mins_buf); free(self.hist)

    cdef int assign(self, int mask, int want):
        cdef int top = 0
        cdef int m, s, cur, k
        cdef signed char* st = self.st
        self.stack[top] = (mask << 2) | want
        top += 1
        while top:
            top -= 1
            m = self.stack[top] >> 2
            s = self.stack[top] & 3
            cur = st[m]
            if cur == s:
                continue
            if cur:
                return 0
            st[m] = <signed char> s
            self.trail[self.trail_len] = m
            self.trail_len += 1
            self.stack[top] = ((self.full ^ m) << 2) | (3 - s)
            top += 1
            if s == 1:
                for k in range(self.ups_off[m], self.ups_off[m + 1]):
                    if st[self.ups_flat[k]] != 1:
                        self.stack[top] = (self.ups_flat[k] << 2) | 1
                        top += 1
            else:
                for k in range(self.downs_off[m], self.downs_off[m + 1]):
                    if st[self.downs_flat[k]] != 2:
                        self.stack[top] = (self.downs_flat[k] << 2) | 2
                        top += 1
        return 1

    cdef void rollback(self, int mark):
        while self.trail_len > mark:
            self.trail_len -= 1
            self.st[self.trail[self.trail_len]] = 0

    cdef int collect_minimal_longs(self) except -2:
        cdef int n = 0
        cdef int m, k, mini
        for m in range(1, self.size):
            if self.st[m] != 1:
                continue
            mini = 1
            for k in range(self.downs_off[m], self.downs_off[m + 1]):
                if self.st[self.downs_flat[k]] == 1:
                    mini = 0
                    break
            if mini:
                if n >= MAXMINS:
                    raise OverflowError("minimal-long antichain too large")
                self.mins_buf[n] = m
                n += 1
        return n

    cdef void emit(self, int depth):
        cdef int best = 0, best_mask = -1
        cdef int mask, sig, m, low, k, nmins
        cdef signed char* st = self.st
        for mask in range(1, self.size):
            if st[mask] != 1:
                continue
            sig = 0
            m = mask
            while m:
                low = m & (-m)
                if st[mask ^ low] == 2:
                    sig += 1
                m ^= low
            if sig and (best == 0 or sig < best):
                best = sig
                best_mask = mask
                if best == 1:
                    break
        if self.count_mode:
            self.hist[best] += 1
            return
        nmins = self.collect_minimal_longs()
        mins = tuple(self.mins_buf[k] for k in range(nmins))
        wit = tuple(self.wit[depth * self.r + k] for k in range(self.r))
        self.out_full.append((mins, wit, best))

    cdef int run_lp(self, int depth) except -2:
        """Solve for the current decided-long set; witness at depth+1."""
        cdef int nmins, ok, k
        nmins = self.collect_minimal_longs()
        try:
            ok = _lp_core(self.r, self.mins_buf, nmins, self.lp_T,
                          self.lp_obj, self.lp_basic,
                          self.wit + (depth + 1) * self.r)
        except OverflowError:
            mins_list = [self.mins_buf[k] for k in range(nmins)]
            res = _py.lp_realize(self.r, mins_list)
            if res is None:
                return 0
            for k in range(self.r):
                val = res[k]
                if not (-ENTRY_GUARD < val < ENTRY_GUARD):
                    raise OverflowError("witness outside compiled range")
                self.wit[(depth + 1) * self.r + k] = res[k]
            return 1
        return ok

    cdef int dfs(self, int idx, int depth) except -1:
        cdef int J, want, mark, ok
        cdef long long d, tot, sj
        cdef int k
        while idx < self.nreps and self.st[self.reps[idx]]:
            idx += 1
        if idx == self.nreps:
            self.emit(depth)
            return 0
        J = self.reps[idx]
        tot = 0
        sj = 0
        for k in range(self.r):
            tot += self.wit[depth * self.r + k]
            if (J >> k) & 1:
                sj += self.wit[depth * self.r + k]
        d = 2 * sj - tot
        for want in range(1, 3):
            mark = self.trail_len
            if not self.assign(J, want):
                self.rollback(mark)
                continue
            if (want == 1 and d > 0) or (want == 2 and d < 0):
                memcpy(self.wit + (depth + 1) * self.r,
                       self.wit + depth * self.r,
                       self.r * sizeof(long long))
                self.dfs(idx + 1, depth + 1)
            else:
                ok = self.run_lp(depth)
                if ok:
                    self.dfs(idx + 1, depth + 1)
            self.rollback(mark)
        return 0


def enumerate_subtree(int r, prefix, witness, mode="full"):
    """Chambers below a decision prefix; see _kernels_py for the contract."""
    cdef _CEngine eng = _CEngine(r)
    cdef int k, mu
    cdef long long v
    eng.count_mode = 1 if mode == "count" else 0
    eng.out_full = []
    if not eng.assign(eng.full, 1):
        raise AssertionError("seeding the full set failed")
    for mask, want in prefix:
        if not eng.assign(mask, want):
            raise AssertionError("infeasible prefix")
    for k in range(r):
        val = witness[k]
        if not (-ENTRY_GUARD < val < ENTRY_GUARD):
            raise OverflowError("witness outside compiled-kernel range")
        eng.wit[k] = val
    eng.dfs(0, 0)
    if eng.count_mode:
        return {mu: eng.hist[mu] for mu in range(r + 2) if eng.hist[mu]}
    return eng.out_full
