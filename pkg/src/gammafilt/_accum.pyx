# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Row-echelon accumulator, compiled int64 backend.

Same contract as ``_accum_pure.Accumulator``.  All stored entries are
kept below GUARD = 2**31 so that every intermediate product in the
row operations fits comfortably in a signed 64-bit integer; any value
that would breach the guard raises OverflowError and the caller
restarts the whole computation on the pure backend.
"""

from libc.string cimport memmove, memset

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef long long GUARD = 1LL << 31


cdef inline long long fdiv(long long a, long long b) noexcept:
    # floored division, matching Python's //
    cdef long long q = a / b
    cdef long long r = a - q * b
    if r != 0 and ((r < 0) != (b < 0)):
        q -= 1
    return q


cdef inline void c_xgcd(long long a, long long b,
                        long long *g, long long *x, long long *y) noexcept:
    cdef long long old_r = a, r = b
    cdef long long old_s = 1, s = 0
    cdef long long old_t = 0, t = 1
    cdef long long q, tmp
    while r != 0:
        q = old_r / r
        tmp = old_r - q * r; old_r = r; r = tmp
        tmp = old_s - q * s; old_s = s; s = tmp
        tmp = old_t - q * t; old_t = t; t = tmp
    if old_r < 0:
        old_r = -old_r; old_s = -old_s; old_t = -old_t
    g[0] = old_r; x[0] = old_s; y[0] = old_t


cdef class Accumulator:
    cdef cnp.ndarray _buf          # int64, capacity x width
    cdef cnp.ndarray _pivs         # int64, capacity
    cdef cnp.ndarray _piv_of_col   # int64, width, -1 when free
    cdef cnp.ndarray _scratch      # int64, width
    cdef public int width
    cdef int _nrows, _capacity

    backend_name = "compiled"

    def __init__(self, width):
        if width < 0:
            raise ValueError("width must be >= 0")
        self.width = width
        self._nrows = 0
        self._capacity = 16
        self._buf = np.zeros((self._capacity, max(width, 1)), dtype=np.int64)
        self._pivs = np.zeros(self._capacity, dtype=np.int64)
        self._piv_of_col = np.full(max(width, 1), -1, dtype=np.int64)
        self._scratch = np.zeros(max(width, 1), dtype=np.int64)

    @property
    def rank(self):
        return self._nrows

    cdef void _grow(self):
        cdef int newcap = self._capacity * 2
        newbuf = np.zeros((newcap, max(self.width, 1)), dtype=np.int64)
        newbuf[:self._nrows] = self._buf[:self._nrows]
        newpivs = np.zeros(newcap, dtype=np.int64)
        newpivs[:self._nrows] = self._pivs[:self._nrows]
        self._buf = newbuf
        self._pivs = newpivs
        self._capacity = newcap

    cdef void _reduce_tail(self, int ri) except *:
        cdef long long[:, ::1] buf = self._buf
        cdef long long[::1] pivs = self._pivs
        cdef int rj, t, pj
        cdef long long q, val
        cdef int width = self.width
        for rj in range(ri + 1, self._nrows):
            pj = <int> pivs[rj]
            q = fdiv(buf[ri, pj], buf[rj, pj])
            if q != 0:
                for t in range(pj, width):
                    val = buf[ri, t] - q * buf[rj, t]
                    if val >= GUARD or val <= -GUARD:
                        raise OverflowError("accumulator entry guard")
                    buf[ri, t] = val

    cdef void _insert(self, long long[::1] v) except *:
        cdef int width = self.width
        cdef long long[:, ::1] buf
        cdef long long[::1] pivs
        cdef long long[::1] pcol = self._piv_of_col
        cdef int j = 0, ri, at, t, k
        cdef long long a, b, q, g, x, y, ag, bg, aa, bb, val
        while j < width:
            if v[j] == 0:
                j += 1
                continue
            ri = <int> pcol[j]
            if ri < 0:
                if self._nrows == self._capacity:
                    self._grow()
                buf = self._buf
                pivs = self._pivs
                at = 0
                while at < self._nrows and pivs[at] < j:
                    at += 1
                if at < self._nrows:
                    memmove(&buf[at + 1, 0], &buf[at, 0],
                            (self._nrows - at) * buf.strides[0])
                    memmove(&pivs[at + 1], &pivs[at],
                            (self._nrows - at) * sizeof(long long))
                for t in range(width):
                    buf[at, t] = v[t]
                pivs[at] = j
                self._nrows += 1
                for k in range(at, self._nrows):
                    pcol[pivs[k]] = k
                self._reduce_tail(at)
                return
            buf = self._buf
            a = buf[ri, j]
            b = v[j]
            if b % a == 0:
                q = b / a
                for t in range(j, width):
                    val = v[t] - q * buf[ri, t]
                    if val >= GUARD or val <= -GUARD:
                        raise OverflowError("accumulator entry guard")
                    v[t] = val
            else:
                c_xgcd(a, b, &g, &x, &y)
                ag = a / g
                bg = b / g
                for t in range(j, width):
                    aa = buf[ri, t]
                    bb = v[t]
                    val = x * aa + y * bb
                    if val >= GUARD or val <= -GUARD:
                        raise OverflowError("accumulator entry guard")
                    buf[ri, t] = val
                    val = ag * bb - bg * aa
                    if val >= GUARD or val <= -GUARD:
                        raise OverflowError("accumulator entry guard")
                    v[t] = val
                self._reduce_tail(ri)

    cdef void _load_scratch(self, object row) except *:
        cdef long long[::1] s = self._scratch
        cdef int t = 0
        cdef long long val
        for item in row:
            if t >= self.width:
                raise ValueError("row width mismatch")
            val = item   # raises OverflowError for ints beyond int64
            if val >= GUARD or val <= -GUARD:
                raise OverflowError("accumulator entry guard")
            s[t] = val
            t += 1
        if t != self.width:
            raise ValueError("row width mismatch")

    def add_row(self, row):
        self._load_scratch(row)
        self._insert(self._scratch)

    def add_multiplied_rows(self, rows, terms):
        cdef int width = self.width
        cdef int nterms = len(terms)
        cdef cnp.ndarray gathers = np.empty((nterms, max(width, 1)), dtype=np.int64)
        cdef cnp.ndarray coeffs = np.empty(max(nterms, 1), dtype=np.int64)
        cdef long long[:, ::1] gv = gathers
        cdef long long[::1] cv = coeffs
        cdef long long[::1] scratch = self._scratch
        cdef cnp.ndarray rowbuf = np.empty(max(width, 1), dtype=np.int64)
        cdef long long[::1] rb = rowbuf
        cdef int ti, t
        cdef long long c, val
        for ti, (gather, c_obj) in enumerate(terms):
            cv[ti] = c_obj
            if len(gather) != width:
                raise ValueError("gather width mismatch")
            for t in range(width):
                gv[ti, t] = gather[t]
                if gv[ti, t] < 0 or gv[ti, t] >= width:
                    raise ValueError("gather index out of range")
        for b in rows:
            t = 0
            for item in b:
                if t >= width:
                    raise ValueError("row width mismatch")
                val = item
                if val >= GUARD or val <= -GUARD:
                    raise OverflowError("accumulator entry guard")
                rb[t] = val
                t += 1
            if t != width:
                raise ValueError("row width mismatch")
            memset(&scratch[0], 0, width * sizeof(long long))
            for ti in range(nterms):
                c = cv[ti]
                for t in range(width):
                    val = scratch[t] + c * rb[gv[ti, t]]
                    if val >= (1LL << 62) or val <= -(1LL << 62):
                        raise OverflowError("accumulator entry guard")
                    scratch[t] = val
            for t in range(width):
                if scratch[t] >= GUARD or scratch[t] <= -GUARD:
                    raise OverflowError("accumulator entry guard")
            self._insert(scratch)

    cdef object _coords_into(self, object row, bint record):
        self._load_scratch(row)
        cdef long long[::1] v = self._scratch
        cdef long long[:, ::1] buf = self._buf
        cdef long long[::1] pivs = self._pivs
        cdef int width = self.width
        cdef int j = 0, ri, t, pj
        cdef long long a, b, q, val
        out = [0] * self._nrows if record else None
        for ri in range(self._nrows):
            pj = <int> pivs[ri]
            while j < pj:
                if v[j] != 0:
                    return None
                j += 1
            if v[pj] == 0:
                continue
            a = buf[ri, pj]
            b = v[pj]
            if b % a != 0:
                return None
            q = b / a
            for t in range(pj, width):
                val = v[t] - q * buf[ri, t]
                if val >= GUARD or val <= -GUARD:
                    raise OverflowError("accumulator entry guard")
                v[t] = val
            if record:
                out[ri] = q
        for t in range(j, width):
            if v[t] != 0:
                return None
        return out if record else True

    def contains(self, row):
        return self._coords_into(row, False) is True

    def coords(self, row):
        return self._coords_into(row, True)

    def pivot_columns(self):
        return [int(self._pivs[i]) for i in range(self._nrows)]

    def hnf_rows(self):
        cdef long long[:, ::1] buf = self._buf
        cdef long long[::1] pivs = self._pivs
        cdef int width = self.width
        cdef int ri, rk, t, pj
        cdef long long piv, q, val
        for ri in range(self._nrows):
            pj = <int> pivs[ri]
            if buf[ri, pj] < 0:
                for t in range(pj, width):
                    buf[ri, t] = -buf[ri, t]
        for ri in range(self._nrows):
            pj = <int> pivs[ri]
            piv = buf[ri, pj]
            for rk in range(ri):
                q = fdiv(buf[rk, pj], piv)
                if q != 0:
                    for t in range(pj, width):
                        val = buf[rk, t] - q * buf[ri, t]
                        if val >= GUARD or val <= -GUARD:
                            raise OverflowError("accumulator entry guard")
                        buf[rk, t] = val
        return [[int(buf[ri, t]) for t in range(width)]
                for ri in range(self._nrows)]
