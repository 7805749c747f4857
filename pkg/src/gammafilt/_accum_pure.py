"""Row-echelon accumulator over the integers, pure-Python backend.

An Accumulator holds the span of every row fed to it, as an integer
row-echelon basis with strictly increasing pivot columns.  Rows are
inserted one at a time (or in bulk through gather products); the basis
is updated with exact integer row operations only, so the row span is
preserved at every step.  Calling :meth:`hnf_rows` normalizes the basis
to the canonical Hermite form (positive pivots, entries above each
pivot reduced into ``[0, pivot)``).

Basis rows are stored pivot-anchored: row ``i`` keeps only the entries
from its pivot column onward, so reduction steps combine aligned tails
without re-slicing the basis row.  Candidate rows shed their consumed
prefix as the reduction walk advances for the same reason.

Arithmetic is arbitrary-precision.  The compiled backend in
``_accum.pyx`` implements the same interface over int64 and raises
``OverflowError`` when entries outgrow its guard bound; callers restart
on this backend, which never overflows.
"""

from __future__ import annotations

from bisect import bisect_left


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class Accumulator:
    backend_name = "pure"

    def __init__(self, width: int):
        if width < 0:
            raise ValueError("width must be >= 0")
        self.width = width
        self._rows: list[list[int]] = []   # row i holds columns _pivs[i]..width-1
        self._pivs: list[int] = []
        self._piv_of_col: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reindex_from(self, start: int) -> None:
        for idx in range(start, len(self._pivs)):
            self._piv_of_col[self._pivs[idx]] = idx

    def _reduce_tail(self, ri: int) -> None:
        # Keep entries of row ri small at later pivot columns; without this
        # the xgcd combinations blow up entry sizes on long insert streams.
        row = self._rows[ri]
        pi = self._pivs[ri]
        for rj in range(ri + 1, len(self._rows)):
            off = self._pivs[rj] - pi
            w = self._rows[rj]
            q = row[off] // w[0]
            if q:
                row[off:] = [a - q * b for a, b in zip(row[off:], w)]

    def _insert(self, v: list[int]) -> None:
        """Reduce v against the basis and insert what remains (may be nothing).

        v is consumed; it must be a fresh full-width list.
        """
        width = self.width
        tail = v          # entries for columns base..width-1
        base = 0
        j = 0
        while j < width:
            if tail[j - base] == 0:
                j += 1
                continue
            ri = self._piv_of_col.get(j)
            if ri is None:
                nt = tail[j - base:] if j != base else tail
                at = bisect_left(self._pivs, j)
                self._rows.insert(at, nt)
                self._pivs.insert(at, j)
                self._reindex_from(at)
                self._reduce_tail(at)
                return
            if j != base:
                tail = tail[j - base:]
                base = j
            w = self._rows[ri]
            a, b = w[0], tail[0]
            if b % a == 0:
                q = b // a
                tail = [bb - q * aa for aa, bb in zip(w, tail)]
            else:
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                self._rows[ri] = [x * aa + y * bb for aa, bb in zip(w, tail)]
                tail = [ag * bb - bg * aa for aa, bb in zip(w, tail)]
                self._reduce_tail(ri)
            j += 1

    def add_row(self, row) -> None:
        v = list(row)
        if len(v) != self.width:
            raise ValueError("row width mismatch")
        self._insert(v)

    def add_multiplied_rows(self, rows, terms) -> None:
        """Insert sum(c * row[gather]) for each row.

        ``terms`` is a list of (gather, c) pairs where gather is an index
        tuple of length width; the produced row has entries
        ``sum(c * row[gather[t]] for (gather, c) in terms)``.
        """
        if not terms:
            return
        for gather, _c in terms:
            if len(gather) != self.width:
                raise ValueError("gather width mismatch")
        (g0, c0), rest = terms[0], terms[1:]
        for b in rows:
            v = [c0 * b[t] for t in g0]
            for gather, c in rest:
                v = [a + c * b[t] for a, t in zip(v, gather)]
            self._insert(v)

    def _coords_into(self, row, record: bool):
        v = list(row)
        if len(v) != self.width:
            raise ValueError("row width mismatch")
        out = [0] * len(self._rows) if record else None
        tail = v
        base = 0
        j = 0
        for ri, pj in enumerate(self._pivs):
            while j < pj:
                if tail[j - base]:
                    return None
                j += 1
            if tail[pj - base] == 0:
                continue
            if pj != base:
                tail = tail[pj - base:]
                base = pj
            w = self._rows[ri]
            a, b = w[0], tail[0]
            if b % a != 0:
                return None
            q = b // a
            tail = [bb - q * aa for aa, bb in zip(w, tail)]
            if record:
                out[ri] = q
        if any(tail[t - base] for t in range(j, self.width)):
            return None
        return out if record else True

    def contains(self, row) -> bool:
        return self._coords_into(row, record=False) is True

    def coords(self, row):
        """Coefficients of row over the current basis rows, or None."""
        return self._coords_into(row, record=True)

    def pivot_columns(self) -> list[int]:
        return list(self._pivs)

    def hnf_rows(self) -> list[list[int]]:
        """Normalize to canonical Hermite form and return full-width rows."""
        rows, pivs = self._rows, self._pivs
        for ri in range(len(rows)):
            if rows[ri][0] < 0:
                rows[ri] = [-x for x in rows[ri]]
        for ri, pj in enumerate(pivs):
            w = rows[ri]
            piv = w[0]
            for rk in range(ri):
                u = rows[rk]
                off = pj - pivs[rk]
                q = u[off] // piv
                if q:
                    u[off:] = [uu - q * ww for uu, ww in zip(u[off:], w)]
        return [[0] * pj + list(r) for pj, r in zip(pivs, rows)]
