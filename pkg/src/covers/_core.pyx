# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coset enumeration core.

Mirrors ``covers._core_py`` operation for operation: same definition order,
same coincidence handling, same step accounting, so both cores produce
identical tables and identical NotClosed statistics.
"""

import numpy as np

cimport numpy as cnp

cdef int UNDEF = -1


class _LimitReached(Exception):
    def __init__(self, limit):
        self.limit = limit


def _build_rotations(relators):
    seen = set()
    rotations = []
    for r in relators:
        n = len(r)
        for i in range(n):
            rot = r[i:] + r[:i]
            if rot not in seen:
                seen.add(rot)
                rotations.append(rot)
    return rotations


cdef class _Words:
    """Words flattened into one int32 buffer with offsets."""
    cdef cnp.int32_t[::1] flat
    cdef cnp.int32_t[::1] start
    cdef cnp.int32_t[::1] length
    cdef int count

    def __init__(self, words):
        cdef list offsets = []
        cdef list lens = []
        cdef list flat = []
        for w in words:
            offsets.append(len(flat))
            lens.append(len(w))
            flat.extend(w)
        self.flat = np.asarray(flat, dtype=np.int32) if flat else np.empty(0, dtype=np.int32)
        self.start = np.asarray(offsets, dtype=np.int32) if offsets else np.empty(0, dtype=np.int32)
        self.length = np.asarray(lens, dtype=np.int32) if lens else np.empty(0, dtype=np.int32)
        self.count = len(words)


cdef class _Enumerator:
    cdef int ncols
    cdef bint felsch
    cdef long long max_cosets, max_steps
    cdef long long defined, steps, merges
    cdef cnp.int32_t[::1] table
    cdef cnp.int32_t[::1] parent
    cdef long long n_rows, cap_rows
    # deduction stack
    cdef cnp.int32_t[::1] ded_c
    cdef cnp.int32_t[::1] ded_x
    cdef long long ded_top, ded_cap
    # relators / subgroup words / felsch rotation tables
    cdef _Words rel
    cdef _Words sub
    cdef _Words rot
    cdef cnp.int32_t[::1] edp_start
    cdef cnp.int32_t[::1] edp_len
    cdef cnp.int32_t[::1] edp_rot

    def __init__(self, int ncols, relators, subgroup_words, long long max_cosets,
                 long long max_steps, bint felsch):
        self.ncols = ncols
        self.felsch = felsch
        self.max_cosets = max_cosets
        self.max_steps = max_steps
        self.defined = 1
        self.steps = 0
        self.merges = 0
        self.cap_rows = 1024
        self.n_rows = 1
        self.table = np.full(self.cap_rows * max(ncols, 1), UNDEF, dtype=np.int32)
        self.parent = np.zeros(self.cap_rows, dtype=np.int32)
        self.ded_cap = 1024
        self.ded_top = 0
        self.ded_c = np.empty(self.ded_cap, dtype=np.int32)
        self.ded_x = np.empty(self.ded_cap, dtype=np.int32)
        self.rel = _Words(relators)
        self.sub = _Words(subgroup_words)
        rotations = _build_rotations(relators) if felsch else []
        self.rot = _Words(rotations)
        # group rotation ids by first column
        by_col = [[] for _ in range(ncols)]
        for idx, rot in enumerate(rotations):
            by_col[rot[0]].append(idx)
        starts, lens, rot_ids = [], [], []
        for col in range(ncols):
            starts.append(len(rot_ids))
            lens.append(len(by_col[col]))
            rot_ids.extend(by_col[col])
        self.edp_start = np.asarray(starts, dtype=np.int32) if ncols else np.empty(0, dtype=np.int32)
        self.edp_len = np.asarray(lens, dtype=np.int32) if ncols else np.empty(0, dtype=np.int32)
        self.edp_rot = np.asarray(rot_ids, dtype=np.int32) if rot_ids else np.empty(0, dtype=np.int32)

    cdef inline int find(self, int c) nogil:
        while self.parent[c] != c:
            self.parent[c] = self.parent[self.parent[c]]
            c = self.parent[c]
        return c

    cdef void _grow_rows(self):
        cdef long long newcap = self.cap_rows * 2
        cdef cnp.int32_t[::1] t2 = np.full(newcap * max(self.ncols, 1), UNDEF, dtype=np.int32)
        cdef cnp.int32_t[::1] p2 = np.empty(newcap, dtype=np.int32)
        t2[: self.n_rows * self.ncols] = self.table[: self.n_rows * self.ncols]
        p2[: self.n_rows] = self.parent[: self.n_rows]
        self.table = t2
        self.parent = p2
        self.cap_rows = newcap

    cdef void _push_ded(self, int c, int x):
        cdef cnp.int32_t[::1] c2, x2
        if self.ded_top == self.ded_cap:
            self.ded_cap *= 2
            c2 = np.empty(self.ded_cap, dtype=np.int32)
            x2 = np.empty(self.ded_cap, dtype=np.int32)
            c2[: self.ded_top] = self.ded_c[: self.ded_top]
            x2[: self.ded_top] = self.ded_x[: self.ded_top]
            self.ded_c = c2
            self.ded_x = x2
        self.ded_c[self.ded_top] = c
        self.ded_x[self.ded_top] = x
        self.ded_top += 1

    cdef int define(self, int c, int x) except -2:
        if self.defined >= self.max_cosets:
            raise _LimitReached("max_cosets")
        self.defined += 1
        self.steps += 1
        if self.steps > self.max_steps:
            raise _LimitReached("max_steps")
        if self.n_rows == self.cap_rows:
            self._grow_rows()
        cdef int b = <int> self.n_rows
        self.parent[b] = b
        self.n_rows += 1
        self.table[c * self.ncols + x] = b
        self.table[b * self.ncols + (x ^ 1)] = c
        if self.felsch:
            self._push_ded(c, x)
            self._push_ded(b, x ^ 1)
        return b

    cdef void coincide(self, int a, int b):
        cdef cnp.int32_t[::1] queue = np.empty(64, dtype=np.int32)
        cdef long long q_cap = 64, q_len = 0, qi = 0
        cdef int c, d, dead, x, delta, mu, nu, e1, e2
        cdef cnp.int32_t[::1] q2

        # inline merge of (a, b)
        c = self.find(a)
        d = self.find(b)
        if c != d:
            if c > d:
                c, d = d, c
            self.parent[d] = c
            self.merges += 1
            queue[q_len] = d
            q_len += 1

        while qi < q_len:
            dead = queue[qi]
            qi += 1
            for x in range(self.ncols):
                delta = self.table[dead * self.ncols + x]
                if delta == UNDEF:
                    continue
                self.table[dead * self.ncols + x] = UNDEF
                self.table[delta * self.ncols + (x ^ 1)] = UNDEF
                mu = self.find(dead)
                nu = self.find(delta)
                e1 = self.table[mu * self.ncols + x]
                if e1 != UNDEF:
                    # merge(nu, e1)
                    c = self.find(nu)
                    d = self.find(e1)
                    if c != d:
                        if c > d:
                            c, d = d, c
                        self.parent[d] = c
                        self.merges += 1
                        if q_len == q_cap:
                            q_cap *= 2
                            q2 = np.empty(q_cap, dtype=np.int32)
                            q2[:q_len] = queue[:q_len]
                            queue = q2
                        queue[q_len] = d
                        q_len += 1
                else:
                    e2 = self.table[nu * self.ncols + (x ^ 1)]
                    if e2 != UNDEF:
                        c = self.find(mu)
                        d = self.find(e2)
                        if c != d:
                            if c > d:
                                c, d = d, c
                            self.parent[d] = c
                            self.merges += 1
                            if q_len == q_cap:
                                q_cap *= 2
                                q2 = np.empty(q_cap, dtype=np.int32)
                                q2[:q_len] = queue[:q_len]
                                queue = q2
                            queue[q_len] = d
                            q_len += 1
                    else:
                        self.table[mu * self.ncols + x] = nu
                        self.table[nu * self.ncols + (x ^ 1)] = mu
                        if self.felsch:
                            self._push_ded(mu, x)
                            self._push_ded(nu, x ^ 1)

    cdef int scan(self, int a, cnp.int32_t[::1] flat, int off, int m, bint fill) except -2:
        self.steps += 1
        if self.steps > self.max_steps:
            raise _LimitReached("max_steps")
        cdef int i = 0, j = m - 1
        cdef int f = a, b = a, nxt, w_i
        while True:
            while i <= j:
                nxt = self.table[f * self.ncols + flat[off + i]]
                if nxt == UNDEF:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincide(f, b)
                return 0
            while j >= i:
                nxt = self.table[b * self.ncols + (flat[off + j] ^ 1)]
                if nxt == UNDEF:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincide(f, b)
                return 0
            w_i = flat[off + i]
            if j == i:
                self.table[f * self.ncols + w_i] = b
                self.table[b * self.ncols + (w_i ^ 1)] = f
                if self.felsch:
                    self._push_ded(f, w_i)
                    self._push_ded(b, w_i ^ 1)
                return 0
            if not fill:
                return 0
            self.define(f, w_i)

    cdef int process_deductions(self) except -2:
        cdef int c, x, k, rid
        while self.ded_top > 0:
            self.ded_top -= 1
            c = self.ded_c[self.ded_top]
            x = self.ded_x[self.ded_top]
            if self.parent[c] != c:
                continue
            for k in range(self.edp_len[x]):
                rid = self.edp_rot[self.edp_start[x] + k]
                self.scan(c, self.rot.flat, self.rot.start[rid], self.rot.length[rid], False)
                if self.parent[c] != c:
                    break
        return 0

    cdef int run_felsch(self) except -2:
        cdef long long alpha = 0
        cdef int x, gap
        self.process_deductions()
        while alpha < self.n_rows:
            if self.parent[alpha] != alpha:
                alpha += 1
                continue
            gap = UNDEF
            for x in range(self.ncols):
                if self.table[alpha * self.ncols + x] == UNDEF:
                    gap = x
                    break
            if gap == UNDEF:
                alpha += 1
                continue
            self.define(<int> alpha, gap)
            self.process_deductions()
        return 0

    cdef int run_hlt(self) except -2:
        cdef long long alpha = 0
        cdef int k, x
        while alpha < self.n_rows:
            if self.parent[alpha] != alpha:
                alpha += 1
                continue
            for k in range(self.rel.count):
                self.scan(<int> alpha, self.rel.flat, self.rel.start[k], self.rel.length[k], True)
                if self.parent[alpha] != alpha:
                    break
            if self.parent[alpha] == alpha:
                for x in range(self.ncols):
                    if self.table[alpha * self.ncols + x] == UNDEF:
                        self.define(<int> alpha, x)
            alpha += 1
        return 0

    def run(self):
        cdef long long c, merges_before
        cdef int k
        cdef bint total
        limit = None
        try:
            for k in range(self.sub.count):
                self.scan(self.find(0), self.sub.flat, self.sub.start[k], self.sub.length[k], True)
            while True:
                if self.felsch:
                    self.run_felsch()
                else:
                    self.run_hlt()
                merges_before = self.merges
                for k in range(self.sub.count):
                    self.scan(self.find(0), self.sub.flat, self.sub.start[k], self.sub.length[k], False)
                c = 0
                while c < self.n_rows:
                    if self.parent[c] == c:
                        for k in range(self.rel.count):
                            self.scan(<int> c, self.rel.flat, self.rel.start[k], self.rel.length[k], False)
                            if self.parent[c] != c:
                                break
                    c += 1
                if self.merges != merges_before:
                    continue
                total = True
                c = 0
                while total and c < self.n_rows:
                    if self.parent[c] == c:
                        for k in range(self.ncols):
                            if self.table[c * self.ncols + k] == UNDEF:
                                total = False
                                break
                    c += 1
                if total:
                    break
        except _LimitReached as exc:
            limit = exc.limit

        if limit is not None:
            return False, None, int(self.defined), int(self.steps), limit

        live = [c for c in range(self.n_rows) if self.parent[c] == c]
        remap = {c: i for i, c in enumerate(live)}
        rows = []
        for c in live:
            rows.append(tuple(remap[self.find(self.table[c * self.ncols + x])] for x in range(self.ncols)))
        return True, rows, int(self.defined), int(self.steps), None


def enumerate_core(ncols, relators, subgroup_words, max_cosets, max_steps, felsch):
    """Run the enumeration; returns (closed, rows, defined, steps, limit)."""
    relators = [tuple(r) for r in relators]
    subgroup_words = [tuple(w) for w in subgroup_words if w]
    if max_cosets >= 2**31 - 1:
        raise ValueError("max_cosets too large for the compiled core")
    enum = _Enumerator(ncols, relators, subgroup_words, max_cosets, max_steps, felsch)
    return enum.run()
