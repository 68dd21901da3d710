# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; same API as ``_kernels_py``."""

from libc.stdlib cimport malloc, free, calloc
from libc.string cimport memcpy, memset, memcmp

ctypedef long long i64
ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

BACKEND = "cython"


cdef inline i64 _inv(i64 a, i64 p) noexcept nogil:
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef struct Work:
    int n
    i64 p
    int rank
    i64* rows      # n x n echelon rows, slot order
    int* piv_row   # column -> slot, or -1
    i64* vec       # scratch vector


cdef int work_init(Work* w, int n, i64 p) except -1:
    cdef int m = n if n > 0 else 1
    w.n = n
    w.p = p
    w.rank = 0
    w.rows = <i64*>malloc(m * m * sizeof(i64))
    w.piv_row = <int*>malloc(m * sizeof(int))
    w.vec = <i64*>malloc(m * sizeof(i64))
    if w.rows == NULL or w.piv_row == NULL or w.vec == NULL:
        raise MemoryError()
    work_reset(w)
    return 0


cdef void work_free(Work* w) noexcept:
    free(w.rows)
    free(w.piv_row)
    free(w.vec)


cdef inline void work_reset(Work* w) noexcept nogil:
    cdef int c
    w.rank = 0
    for c in range(w.n):
        w.piv_row[c] = -1


cdef int ech_insert(Work* w) noexcept nogil:
    """Reduce ``w.vec`` (entries in [0,p)) against the echelon; keep it if new."""
    cdef int n = w.n, c, j, ri
    cdef i64 p = w.p, f, g, nf
    cdef i64* v = w.vec
    cdef i64* row
    for c in range(n):
        f = v[c]
        if f == 0:
            continue
        ri = w.piv_row[c]
        if ri < 0:
            if f != 1:
                g = _inv(f, p)
                for j in range(c, n):
                    v[j] = (v[j] * g) % p
            row = w.rows + w.rank * n
            for j in range(n):
                row[j] = v[j]
            w.piv_row[c] = w.rank
            w.rank += 1
            return 1
        row = w.rows + ri * n
        nf = p - f
        for j in range(c, n):
            if row[j] != 0:
                v[j] = (v[j] + nf * row[j]) % p
    return 0


cdef int ech_finish(Work* w, i64* out) noexcept nogil:
    """Back-substitute to RREF and copy rows (pivot order) into ``out``."""
    cdef int n = w.n, idx, idx2, c, j, k = 0
    cdef i64 p = w.p, f, nf
    cdef i64* prow
    cdef i64* row
    # gather pivots in increasing column order into a small stack array
    cdef int npiv = 0
    cdef int[512] stackpiv
    cdef int* order = stackpiv
    cdef bint heap = n > 512
    if heap:
        order = <int*>malloc(n * sizeof(int))
    for c in range(n):
        if w.piv_row[c] >= 0:
            order[npiv] = c
            npiv += 1
    for idx in range(npiv - 1, -1, -1):
        c = order[idx]
        prow = w.rows + w.piv_row[c] * n
        for idx2 in range(idx):
            row = w.rows + w.piv_row[order[idx2]] * n
            f = row[c]
            if f != 0:
                nf = p - f
                for j in range(c, n):
                    if prow[j] != 0:
                        row[j] = (row[j] + nf * prow[j]) % p
    for idx in range(npiv):
        memcpy(out + idx * n, w.rows + w.piv_row[order[idx]] * n, n * sizeof(i64))
    if heap:
        free(order)
    return npiv


cdef int c_schur(Work* w, i64* a, int ra, i64* b, int rb, bint same, i64* out) noexcept nogil:
    cdef int n = w.n, i, j, jstart, t
    cdef i64 p = w.p
    cdef i64* x
    cdef i64* y
    work_reset(w)
    for i in range(ra):
        x = a + i * n
        jstart = i if same else 0
        for j in range(jstart, rb):
            y = b + j * n
            for t in range(n):
                w.vec[t] = (x[t] * y[t]) % p
            ech_insert(w)
            if w.rank == n:
                return ech_finish(w, out)
    return ech_finish(w, out)


cdef int c_power(Work* w, i64* base, int r, int k, i64* cur, i64* nxt, int* dims, int* ndims) noexcept nogil:
    """``base`` must be RREF.  Leaves the k-th power in ``cur``; returns its rank."""
    cdef int n = w.n, rc = r, rn, step
    cdef i64* tmp
    memcpy(cur, base, r * n * sizeof(i64))
    dims[0] = r
    ndims[0] = 1
    for step in range(2, k + 1):
        rn = c_schur(w, cur, rc, base, r, False, nxt)
        if rn == rc and memcmp(cur, nxt, rc * n * sizeof(i64)) == 0:
            break
        memcpy(cur, nxt, rn * n * sizeof(i64))
        rc = rn
        dims[ndims[0]] = rc
        ndims[0] += 1
    return rc


cdef i64* _load(rows, int n, i64 p, int* m_out) except NULL:
    cdef list lrows = [tuple(r) for r in rows]
    cdef int m = len(lrows), i, j
    cdef i64* buf = <i64*>malloc((m * n if m * n > 0 else 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    for i in range(m):
        r = lrows[i]
        if len(r) != n:
            free(buf)
            raise ValueError("row length mismatch")
        for j in range(n):
            buf[i * n + j] = r[j] % p
    m_out[0] = m
    return buf


cdef tuple _dump(i64* buf, int m, int n):
    cdef int i, j
    return tuple(tuple([buf[i * n + j] for j in range(n)]) for i in range(m))


cdef tuple _pivots_of(i64* buf, int m, int n):
    cdef int i, j
    out = []
    for i in range(m):
        for j in range(n):
            if buf[i * n + j] != 0:
                out.append(j)
                break
    return tuple(out)


def rref(rows, int n, long long p):
    cdef int m, i, r
    cdef Work w
    cdef i64* src = _load(rows, n, p, &m)
    cdef i64* out = <i64*>malloc((n * n if n > 0 else 1) * sizeof(i64))
    work_init(&w, n, p)
    try:
        for i in range(m):
            if w.rank == n:
                break
            memcpy(w.vec, src + i * n, n * sizeof(i64))
            ech_insert(&w)
        r = ech_finish(&w, out)
        return _dump(out, r, n), _pivots_of(out, r, n)
    finally:
        work_free(&w)
        free(src)
        free(out)


def schur_span(a, b, int n, long long p, bint same=False):
    cdef int ra, rb, r
    cdef Work w
    cdef i64* abuf = _load(a, n, p, &ra)
    cdef i64* bbuf = abuf
    cdef i64* out = <i64*>malloc((n * n if n > 0 else 1) * sizeof(i64))
    if not same:
        bbuf = _load(b, n, p, &rb)
    else:
        rb = ra
    work_init(&w, n, p)
    try:
        r = c_schur(&w, abuf, ra, bbuf, rb, same, out)
        return _dump(out, r, n), _pivots_of(out, r, n)
    finally:
        work_free(&w)
        if not same:
            free(bbuf)
        free(abuf)
        free(out)


def power_chain(basis, int n, long long p, int k):
    cdef int m, r, i, nd
    cdef Work w
    cdef i64* src = _load(basis, n, p, &m)
    cdef int sz = n * n if n > 0 else 1
    cdef i64* base = <i64*>malloc(sz * sizeof(i64))
    cdef i64* cur = <i64*>malloc(sz * sizeof(i64))
    cdef i64* nxt = <i64*>malloc(sz * sizeof(i64))
    cdef int* dims = <int*>malloc((k + 1) * sizeof(int))
    work_init(&w, n, p)
    try:
        for i in range(m):
            if w.rank == n:
                break
            memcpy(w.vec, src + i * n, n * sizeof(i64))
            ech_insert(&w)
        r = ech_finish(&w, base)
        r = c_power(&w, base, r, k, cur, nxt, dims, &nd)
        return _dump(cur, r, n), _pivots_of(cur, r, n), tuple([dims[i] for i in range(nd)])
    finally:
        work_free(&w)
        free(src)
        free(base)
        free(cur)
        free(nxt)
        free(dims)


# -- binary points ----------------------------------------------------------


cdef void _schedule(i64* g, int r, int n, int* last) noexcept nogil:
    cdef int i, j
    for j in range(n):
        last[j] = -1
        for i in range(r):
            if g[i * n + j] != 0:
                last[j] = i


cdef i64 _count_bin(i64* g, int r, int n, i64 p, int* last, i64* acc, int i) noexcept nogil:
    if i == r:
        return 1
    cdef i64* cur = acc + i * n
    cdef i64* nxt = acc + (i + 1) * n
    cdef i64* row = g + i * n
    cdef i64 total = 0
    cdef int j
    cdef bint ok = True
    for j in range(n):
        if last[j] == i and cur[j] > 1:
            ok = False
            break
    if ok:
        memcpy(nxt, cur, n * sizeof(i64))
        total += _count_bin(g, r, n, p, last, acc, i + 1)
    ok = True
    for j in range(n):
        nxt[j] = (cur[j] + row[j]) % p
        if last[j] == i and nxt[j] > 1:
            ok = False
    if ok:
        total += _count_bin(g, r, n, p, last, acc, i + 1)
    return total


cdef void _collect_bin(i64* g, int r, int n, i64 p, int* last, i64* acc, int i, list out):
    cdef int j
    cdef i64* cur = acc + i * n
    cdef i64* nxt = acc + (i + 1) * n
    cdef i64* row = g + i * n
    cdef bint ok = True
    if i == r:
        out.append(tuple([cur[j] for j in range(n)]))
        return
    for j in range(n):
        if last[j] == i and cur[j] > 1:
            ok = False
            break
    if ok:
        memcpy(nxt, cur, n * sizeof(i64))
        _collect_bin(g, r, n, p, last, acc, i + 1, out)
    ok = True
    for j in range(n):
        nxt[j] = (cur[j] + row[j]) % p
        if last[j] == i and nxt[j] > 1:
            ok = False
    if ok:
        _collect_bin(g, r, n, p, last, acc, i + 1, out)


def binary_points(basis, int n, long long p):
    cdef int r
    cdef i64* g = _load(basis, n, p, &r)
    cdef int* last = <int*>malloc((n if n > 0 else 1) * sizeof(int))
    cdef i64* acc = <i64*>calloc((r + 1) * n + 1, sizeof(i64))
    cdef list out = []
    try:
        _schedule(g, r, n, last)
        _collect_bin(g, r, n, p, last, acc, 0, out)
        out.sort()
        return out
    finally:
        free(g)
        free(last)
        free(acc)


def count_binary_points(basis, int n, long long p):
    cdef int r
    cdef i64* g = _load(basis, n, p, &r)
    cdef int* last = <int*>malloc((n if n > 0 else 1) * sizeof(int))
    cdef i64* acc = <i64*>calloc((r + 1) * n + 1, sizeof(i64))
    try:
        if p == 2:
            return 1 << r
        _schedule(g, r, n, last)
        return _count_bin(g, r, n, p, last, acc, 0)
    finally:
        free(g)
        free(last)
        free(acc)


# -- subspace sweep ---------------------------------------------------------


def free_positions(int n, pivots):
    pivset = set(pivots)
    return [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivset]


def scan_block(long long p, int n, pivots, int k, long long keep_above):
    cdef tuple piv = tuple(pivots)
    cdef int r = len(piv)
    cdef list free_pos = free_positions(n, piv)
    cdef int nf = len(free_pos), t, i, rc, nd
    cdef int sz = n * n if n > 0 else 1
    cdef Work w
    cdef i64* g = <i64*>calloc(sz, sizeof(i64))
    cdef i64* cur = <i64*>malloc(sz * sizeof(i64))
    cdef i64* nxt = <i64*>malloc(sz * sizeof(i64))
    cdef int* dims = <int*>malloc((k + 1) * sizeof(int))
    cdef int* fidx = <int*>malloc((nf if nf > 0 else 1) * sizeof(int))
    cdef i64* vals = <i64*>calloc((nf if nf > 0 else 1), sizeof(i64))
    cdef int* last = <int*>malloc((n if n > 0 else 1) * sizeof(int))
    cdef i64* acc = <i64*>calloc((r + 1) * n + 1, sizeof(i64))
    cdef i64 n_spaces = 0, n_pass = 0, cnt, s
    cdef bint cond
    cdef dict hist = {}
    cdef list kept = []
    work_init(&w, n, p)
    try:
        for i in range(r):
            g[i * n + <int>piv[i]] = 1
        for t in range(nf):
            fidx[t] = free_pos[t][0] * n + free_pos[t][1]
        while True:
            for t in range(nf):
                g[fidx[t]] = vals[t]
            n_spaces += 1
            rc = c_power(&w, g, r, k, cur, nxt, dims, &nd)
            cond = True
            for i in range(rc):
                s = 0
                for t in range(n):
                    s += cur[i * n + t]
                if s % p != 0:
                    cond = False
                    break
            if cond:
                n_pass += 1
                if p == 2:
                    cnt = (<i64>1) << r
                else:
                    _schedule(g, r, n, last)
                    cnt = _count_bin(g, r, n, p, last, acc, 0)
                hist[cnt] = hist.get(cnt, 0) + 1
                if cnt > keep_above:
                    kept.append((_dump(g, r, n), cnt))
            # odometer, last position fastest (matches itertools.product)
            t = nf - 1
            while t >= 0:
                vals[t] += 1
                if vals[t] < p:
                    break
                vals[t] = 0
                t -= 1
            if t < 0:
                break
        return n_spaces, n_pass, hist, kept
    finally:
        work_free(&w)
        free(g)
        free(cur)
        free(nxt)
        free(dims)
        free(fidx)
        free(vals)
        free(last)
        free(acc)


# -- intersection-closure DFS -----------------------------------------------


def atom_sizes(members, int n):
    cdef list ms = list(members)
    cdef u64 full = 0, m, c, a, b
    cdef int i, nc, nn
    cdef u64[64] classes
    cdef u64[64] tmp
    for m in ms:
        full |= m
    if full == 0:
        return []
    nc = 1
    classes[0] = full
    for m in ms:
        nn = 0
        for i in range(nc):
            c = classes[i]
            a = c & m
            b = c & ~m
            if a:
                tmp[nn] = a
                nn += 1
            if b:
                tmp[nn] = b
                nn += 1
        for i in range(nn):
            classes[i] = tmp[i]
        nc = nn
    return sorted([__builtin_popcountll(classes[i]) for i in range(nc)])


cdef bint _atoms_all(u64* members, int nm, int ell) noexcept nogil:
    cdef u64 full = 0, m, c, a, b
    cdef int i, j, nc, nn
    cdef u64[64] classes
    cdef u64[64] tmp
    for j in range(nm):
        full |= members[j]
    if full == 0:
        return True
    nc = 1
    classes[0] = full
    for j in range(nm):
        m = members[j]
        nn = 0
        for i in range(nc):
            c = classes[i]
            a = c & m
            b = c & ~m
            if a:
                tmp[nn] = a
                nn += 1
            if b:
                tmp[nn] = b
                nn += 1
        for i in range(nn):
            classes[i] = tmp[i]
        nc = nn
    for i in range(nc):
        if __builtin_popcountll(classes[i]) != ell:
            return False
    return True


cdef class _Dfs:
    cdef int n, ell, ncand, nm, clen, threshold, keep_cap
    cdef long long budget
    cdef u64* cands
    cdef u64* members
    cdef unsigned char* present
    cdef u64* closure
    cdef public long long nodes, n_max, n_above, n_violations
    cdef public int max_size
    cdef public bint exhausted
    cdef public list max_families, violations

    def __cinit__(self, int n, int ell, cands, int threshold, long long budget, int keep_cap):
        cdef int i
        self.n = n
        self.ell = ell
        self.ncand = len(cands)
        self.threshold = threshold
        self.budget = budget
        self.keep_cap = keep_cap
        self.cands = <u64*>malloc((self.ncand + 1) * sizeof(u64))
        self.members = <u64*>malloc((self.ncand + 1) * sizeof(u64))
        self.present = <unsigned char*>calloc((<size_t>1) << n, 1)
        self.closure = <u64*>malloc(((<size_t>1) << n) * sizeof(u64))
        if self.cands == NULL or self.members == NULL or self.present == NULL or self.closure == NULL:
            raise MemoryError()
        for i in range(self.ncand):
            self.cands[i] = cands[i]
        self.nm = 0
        self.clen = 0
        self.nodes = 0
        self.max_size = 0
        self.n_max = 0
        self.n_above = 0
        self.n_violations = 0
        self.exhausted = True
        self.max_families = []
        self.violations = []

    def __dealloc__(self):
        free(self.cands)
        free(self.members)
        free(self.present)
        free(self.closure)

    cdef tuple _members_tuple(self):
        cdef int i
        return tuple([self.members[i] for i in range(self.nm)])

    cdef int _visit(self) except -1:
        cdef int size = self.nm
        if size > self.max_size:
            self.max_size = size
            self.n_max = 0
            self.max_families = []
        if size == self.max_size:
            self.n_max += 1
            if len(self.max_families) < self.keep_cap:
                self.max_families.append(self._members_tuple())
        if size > self.threshold:
            self.n_above += 1
            if not _atoms_all(self.members, self.nm, self.ell):
                self.n_violations += 1
                if len(self.violations) < self.keep_cap:
                    self.violations.append(self._members_tuple())
        return 0

    cdef int _rec(self, int start) except -1:
        cdef int idx, base_len, i, top
        cdef u64 s, y
        cdef bint ok
        self.nodes += 1
        if self.nodes > self.budget:
            self.exhausted = False
            return 0
        self._visit()
        for idx in range(start, self.ncand):
            s = self.cands[idx]
            base_len = self.clen
            ok = True
            if not self.present[s]:
                self.present[s] = 1
                self.closure[self.clen] = s
                self.clen += 1
            for i in range(base_len):
                y = self.closure[i] & s
                if not self.present[y]:
                    if __builtin_popcountll(y) % self.ell != 0:
                        ok = False
                        break
                    self.present[y] = 1
                    self.closure[self.clen] = y
                    self.clen += 1
            if ok:
                self.members[self.nm] = s
                self.nm += 1
                ok = self._rec(idx + 1)
                self.nm -= 1
                if not ok:
                    self._undo(base_len)
                    return 0
            self._undo(base_len)
        return 1

    cdef void _undo(self, int base_len):
        while self.clen > base_len:
            self.clen -= 1
            self.present[self.closure[self.clen]] = 0

    def run(self, int first):
        cdef u64 s = self.cands[first]
        self.members[0] = s
        self.nm = 1
        self.present[s] = 1
        self.closure[0] = s
        self.clen = 1
        self._rec(first + 1)
        self._undo(0)
        self.nm = 0


def closure_dfs(int n, int ell, candidates, int first, int threshold,
                long long budget, int keep_cap):
    if n > 24:
        raise ValueError("closure_dfs supports n <= 24")
    cdef _Dfs d = _Dfs(n, ell, list(candidates), threshold, budget, keep_cap)
    d.run(first)
    return {
        "nodes": d.nodes, "max_size": d.max_size, "n_max": d.n_max,
        "max_families": d.max_families, "n_above": d.n_above,
        "violations": d.violations, "n_violations": d.n_violations,
        "exhausted": d.exhausted,
    }
