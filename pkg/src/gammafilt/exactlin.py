"""Exact integer linear algebra: HNF, SNF, lattice spans and quotients.

Everything is exact over Z.  Row spans go through the accumulator
kernels (compiled backend when available, with automatic fallback to
arbitrary precision if the int64 guard trips).  Smith forms run in
plain Python: they only ever see small dense coordinate matrices, and
their intermediate entries routinely outgrow 64 bits.
"""

import operator
from fractions import Fraction
from math import lcm

from . import kernels
from .errors import DimensionMismatchError, NotSublatticeError
from .kernels import xgcd


def echelon_with_fallback(ncols, fill, finish=None):
    """Build an accumulator by running fill(acc), restarting on the pure
    backend if the compiled one overflows its entry guard.

    finish(acc), when given, runs inside the protected region too (HNF
    normalization can trip the guard as well) and its value is returned.
    fill must be re-runnable from scratch: it may be invoked twice.
    """
    acc = kernels.Accumulator(ncols)
    if kernels.Accumulator is not kernels.PureAccumulator:
        try:
            fill(acc)
            return finish(acc) if finish is not None else acc
        except OverflowError:
            acc = kernels.PureAccumulator(ncols)
    fill(acc)
    return finish(acc) if finish is not None else acc


def _as_entry(x):
    # operator.index keeps exactness: ints and numpy ints pass, floats don't
    return operator.index(x)


class IntMatrix:
    """Dense integer matrix, rows in row-major order; zero rows allowed."""

    __slots__ = ("entries", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        ents = tuple(tuple(_as_entry(x) for x in r) for r in rows)
        if ncols is None:
            if not ents:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(ents[0])
        for r in ents:
            if len(r) != ncols:
                raise DimensionMismatchError(
                    f"row of length {len(r)} in a {ncols}-column matrix")
        self.entries = ents
        self.nrows = len(ents)
        self.ncols = ncols

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        return f"IntMatrix({self.nrows}x{self.ncols})"


def _coerce_rows(m, ncols=None):
    if isinstance(m, IntMatrix):
        return [list(r) for r in m.entries], m.ncols
    rows = [[_as_entry(x) for x in r] for r in m]
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise DimensionMismatchError(
                f"row of length {len(r)} in a {ncols}-column matrix")
    return rows, ncols


class InvariantFactors:
    """Divisibility chain d_1 | d_2 | ... of a f.g. abelian group.

    Factors of 1 are dropped; a 0 denotes an infinite cyclic summand and
    sorts after every nonzero factor.
    """

    __slots__ = ("factors",)

    def __init__(self, factors):
        fs = [_as_entry(d) for d in factors]
        if any(d < 0 for d in fs):
            raise ValueError("invariant factors must be nonnegative")
        nz = [d for d in fs if d not in (0, 1)]
        zeros = fs.count(0)
        for a, b in zip(nz, nz[1:]):
            if b % a != 0:
                raise ValueError(f"broken divisibility chain: {a} does not divide {b}")
        self.factors = tuple(nz) + (0,) * zeros

    def order(self):
        """Group order, or None for an infinite group."""
        if 0 in self.factors:
            return None
        n = 1
        for d in self.factors:
            n *= d
        return n

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __eq__(self, other):
        if isinstance(other, InvariantFactors):
            return self.factors == other.factors
        if isinstance(other, (tuple, list)):
            return self.factors == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"InvariantFactors{self.factors}"


class IntegerLattice:
    """Sublattice of Z^m held as a canonical row-HNF basis.

    Canonical means: pivot columns strictly increase, pivots are
    positive, and every entry above a pivot lies in [0, pivot).  Two
    constructions of the same lattice compare equal tuple-for-tuple.
    """

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim, basis_rows):
        self.ambient_dim = _as_entry(ambient_dim)
        basis = tuple(tuple(_as_entry(x) for x in r) for r in basis_rows)
        pivots = []
        for r in basis:
            if len(r) != self.ambient_dim:
                raise DimensionMismatchError(
                    f"basis row of length {len(r)} in ambient Z^{self.ambient_dim}")
            pj = next((j for j, x in enumerate(r) if x), None)
            if pj is None:
                raise ValueError("zero row in lattice basis")
            if r[pj] < 0:
                raise ValueError("lattice basis is not in canonical HNF")
            if pivots and pj <= pivots[-1]:
                raise ValueError("pivot columns must strictly increase")
            pivots.append(pj)
        self.basis = basis
        self._pivots = tuple(pivots)

    @classmethod
    def span(cls, rows, ambient_dim=None):
        rows, ncols = _coerce_rows(rows, ambient_dim)

        def fill(acc):
            for r in rows:
                acc.add_row(r)

        basis = echelon_with_fallback(ncols, fill, finish=lambda a: a.hnf_rows())
        return cls(ncols, basis)

    @classmethod
    def from_accumulator(cls, acc):
        return cls(acc.width, acc.hnf_rows())

    @classmethod
    def full(cls, ambient_dim):
        eye = [[1 if i == j else 0 for j in range(ambient_dim)]
               for i in range(ambient_dim)]
        return cls(ambient_dim, eye)

    @property
    def rank(self):
        return len(self.basis)

    def _check_dim(self, v):
        v = [_as_entry(x) for x in v]
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(
                f"vector of length {len(v)} in ambient Z^{self.ambient_dim}")
        return v

    def _int_coords(self, v):
        w = self._check_dim(v)
        out = []
        j = 0
        for row, pj in zip(self.basis, self._pivots):
            while j < pj:
                if w[j]:
                    return None
                j += 1
            q, rem = divmod(w[pj], row[pj])
            if rem:
                return None
            if q:
                for t in range(pj, self.ambient_dim):
                    w[t] -= q * row[t]
            out.append(q)
        if any(w[j:]):
            return None
        return out

    def _rat_coords(self, v):
        w = [Fraction(x) for x in self._check_dim(v)]
        out = []
        j = 0
        for row, pj in zip(self.basis, self._pivots):
            while j < pj:
                if w[j]:
                    return None
                j += 1
            q = w[pj] / row[pj]
            if q:
                for t in range(pj, self.ambient_dim):
                    w[t] -= q * row[t]
            out.append(q)
        if any(w[j:]):
            return None
        return out

    def member(self, v) -> bool:
        return self._int_coords(v) is not None

    __contains__ = member

    def coords(self, v):
        """Integer coordinates of v in the basis, or None."""
        return self._int_coords(v)

    def denominator_index(self, v):
        """Smallest d >= 1 with d*v in the lattice, or None if v is
        outside the rational span."""
        rc = self._rat_coords(v)
        if rc is None:
            return None
        return lcm(*(q.denominator for q in rc)) if rc else 1

    def member_p_local(self, v, p) -> bool:
        """Membership after inverting every prime except p."""
        d = self.denominator_index(v)
        return d is not None and d % p != 0

    def quotient(self, inner):
        """Invariant factors of self/inner; inner must be a sublattice."""
        if inner.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError(
                f"ambient Z^{inner.ambient_dim} vs Z^{self.ambient_dim}")
        coord_rows = []
        for b in inner.basis:
            c = self._int_coords(b)
            if c is None:
                raise NotSublatticeError(
                    "inner basis vector outside the outer lattice")
            coord_rows.append(c)
        return snf(coord_rows, ncols=self.rank)

    def __eq__(self, other):
        if not isinstance(other, IntegerLattice):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"IntegerLattice(dim={self.ambient_dim}, rank={self.rank})"


def hnf(m, ncols=None) -> IntegerLattice:
    """Canonical HNF basis of the row span."""
    return IntegerLattice.span(m, ncols)


def member(l: IntegerLattice, v) -> bool:
    return l.member(v)


def lattice_quotient(outer: IntegerLattice, inner: IntegerLattice) -> InvariantFactors:
    return outer.quotient(inner)


def _row_sub(work, i, k, q, start=0):
    wi, wk = work[i], work[k]
    for t in range(start, len(wi)):
        wi[t] -= q * wk[t]


def _smith_diagonal(work, n):
    """Diagonal of the Smith form; entries nonzero, chain d_i | d_{i+1}."""
    work = [r for r in work if any(r)]
    m = len(work)
    diag = []
    t = 0
    while t < m and t < n:
        # smallest nonzero entry of the trailing submatrix as pivot
        best = None
        pi = pj = -1
        for i in range(t, m):
            for j in range(t, n):
                a = work[i][j]
                if a and (best is None or abs(a) < best):
                    best = abs(a)
                    pi, pj = i, j
        if best is None:
            break
        work[t], work[pi] = work[pi], work[t]
        if pj != t:
            for r in work:
                r[t], r[pj] = r[pj], r[t]
        while True:
            for i in range(t + 1, m):
                a, b = work[t][t], work[i][t]
                if b == 0:
                    continue
                if b % a == 0:
                    _row_sub(work, i, t, b // a)
                else:
                    g, x, y = xgcd(a, b)
                    ag, bg = a // g, b // g
                    rt, ri = work[t], work[i]
                    for s in range(n):
                        u, w = rt[s], ri[s]
                        rt[s] = x * u + y * w
                        ri[s] = ag * w - bg * u
            # column t is clear below; row ops to the right may undo it,
            # hence the outer loop
            row_clear = True
            for j in range(t + 1, n):
                a, b = work[t][t], work[t][j]
                if b == 0:
                    continue
                if b % a == 0:
                    q = b // a
                    for r in work:
                        r[j] -= q * r[t]
                else:
                    g, x, y = xgcd(a, b)
                    ag, bg = a // g, b // g
                    for r in work:
                        u, w = r[t], r[j]
                        r[t] = x * u + y * w
                        r[j] = ag * w - bg * u
                    row_clear = False
            if not row_clear:
                continue
            if any(work[i][t] for i in range(t + 1, m)):
                continue
            # pivot must divide the rest of the submatrix for the chain
            a = work[t][t]
            bad = None
            for i in range(t + 1, m):
                if any(x % a for x in work[i][t + 1:n]):
                    bad = i
                    break
            if bad is None:
                break
            _row_sub(work, t, bad, -1)
        diag.append(abs(work[t][t]))
        t += 1
    return diag


def snf(m, ncols=None) -> InvariantFactors:
    """Invariant factors of the cokernel Z^ncols / rowspan(m)."""
    rows, n = _coerce_rows(m, ncols)
    diag = _smith_diagonal(rows, n)
    return InvariantFactors(tuple(diag) + (0,) * (n - len(diag)))
