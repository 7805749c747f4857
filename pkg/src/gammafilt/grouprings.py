"""Representation rings of finite abelian p-groups.

R(G) for G = Z/p^{r_1} x ... x Z/p^{r_n} is the group ring Z[G^] of the
character group, held as dense integer coefficient vectors indexed by
characters in lexicographic order of exponent tuples.  On top of the
ring structure this module provides the lambda/gamma operations, powers
of the augmentation ideal, the gamma filtration built from its
definition, and the associated graded ring.
"""

import threading
from math import comb
from operator import index as _as_int

from .errors import (BudgetExceededError, GroupMismatchError,
                     InvalidParamsError)
from .exactlin import IntegerLattice, InvariantFactors, echelon_with_fallback

DEFAULT_SIZE_BUDGET = 4096
MAX_TOPDEG = 64
DEFAULT_FILTRATION_CAP = 14  # max_topdeg/2 + 2 at the default max_topdeg 24


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Character:
    """A character of G^, written multiplicatively as x_1^{e_1}...x_n^{e_n}."""

    __slots__ = ("exps",)

    def __init__(self, exps):
        self.exps = tuple(_as_int(e) for e in exps)

    def __eq__(self, other):
        if isinstance(other, Character):
            return self.exps == other.exps
        return NotImplemented

    def __hash__(self):
        return hash(self.exps)

    def __repr__(self):
        return f"Character{self.exps}"


class AbelianPGroup:
    """G = Z/p^{r_1} x ... x Z/p^{r_n}, with p prime and r_i >= 1."""

    __slots__ = ("p", "exponents", "orders", "order", "_strides",
                 "_gathers", "_gather_lock")

    def __init__(self, p, exponents, size_budget=DEFAULT_SIZE_BUDGET):
        p = _as_int(p)
        if not _is_prime(p) or p > 13:
            raise InvalidParamsError(f"p must be a prime <= 13, got {p}")
        exps = tuple(_as_int(r) for r in exponents)
        if not exps or any(r < 1 for r in exps):
            raise InvalidParamsError("exponents must be a nonempty list of r >= 1")
        self.p = p
        self.exponents = exps
        self.orders = tuple(p ** r for r in exps)
        self.order = 1
        for q in self.orders:
            self.order *= q
        if self.order > size_budget:
            raise BudgetExceededError(
                f"|G| = {self.order} exceeds the size budget {size_budget}")
        # strides for lexicographic indexing: last coordinate fastest
        strides = [1] * len(exps)
        for i in range(len(exps) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.orders[i + 1]
        self._strides = tuple(strides)
        self._gathers = {}
        self._gather_lock = threading.Lock()

    @property
    def n(self):
        return len(self.exponents)

    def key(self):
        return (self.p, self.exponents)

    def index_of(self, exps):
        idx = 0
        for e, q, s in zip(exps, self.orders, self._strides):
            idx += (e % q) * s
        return idx

    def exps_of(self, idx):
        out = []
        for q, s in zip(self.orders, self._strides):
            out.append((idx // s) % q)
        return tuple(out)

    def characters(self):
        return [Character(self.exps_of(i)) for i in range(self.order)]

    def generator(self, i):
        """The character dual to the i-th cyclic factor."""
        e = [0] * self.n
        e[i] = 1
        return Character(e)

    def gather(self, j):
        """Index table for division by character j: table[t] = idx(t - j)."""
        j = _as_int(j)
        with self._gather_lock:
            tab = self._gathers.get(j)
            if tab is None:
                je = self.exps_of(j)
                tab = [0] * self.order
                for t in range(self.order):
                    te = self.exps_of(t)
                    tab[t] = self.index_of(
                        tuple(a - b for a, b in zip(te, je)))
                self._gathers[j] = tab
            return tab

    def __eq__(self, other):
        if isinstance(other, AbelianPGroup):
            return self.key() == other.key()
        return NotImplemented

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"AbelianPGroup(p={self.p}, exponents={self.exponents})"


class RepRingElement:
    """Element of R(G) = Z[G^] as a dense integer coefficient vector."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs):
        coeffs = tuple(_as_int(c) for c in coeffs)
        if len(coeffs) != group.order:
            raise GroupMismatchError(
                f"{len(coeffs)} coefficients for a group of order {group.order}")
        self.group = group
        self.coeffs = coeffs

    @classmethod
    def _make(cls, group, coeffs):
        # trusted internal path: coeffs is already a clean int tuple
        self = cls.__new__(cls)
        self.group = group
        self.coeffs = coeffs
        return self

    @classmethod
    def zero(cls, group):
        return cls._make(group, (0,) * group.order)

    @classmethod
    def one(cls, group):
        return cls.from_character(group, Character((0,) * group.n))

    @classmethod
    def from_character(cls, group, chi):
        v = [0] * group.order
        v[group.index_of(chi.exps)] = 1
        return cls._make(group, tuple(v))

    def _same_group(self, other):
        if self.group != other.group:
            raise GroupMismatchError(
                f"{self.group!r} vs {other.group!r}")

    def __add__(self, other):
        self._same_group(other)
        return RepRingElement._make(
            self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same_group(other)
        return RepRingElement._make(
            self.group, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return RepRingElement._make(self.group, tuple(-a for a in self.coeffs))

    def scaled(self, c):
        c = _as_int(c)
        return RepRingElement._make(self.group, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scaled(other)
        self._same_group(other)
        g = self.group
        # convolution, walking the sparser factor's support
        a, b = self.coeffs, other.coeffs
        if sum(1 for x in a if x) < sum(1 for x in b if x):
            a, b = b, a
        out = [0] * g.order
        for j, bj in enumerate(b):
            if bj == 0:
                continue
            tab = g.gather(j)   # out[t] += bj * a[t - j]
            for t in range(g.order):
                aj = a[tab[t]]
                if aj:
                    out[t] += bj * aj
        return RepRingElement._make(g, tuple(out))

    __rmul__ = __mul__

    def augmentation(self):
        return sum(self.coeffs)

    def is_effective(self):
        return all(c >= 0 for c in self.coeffs)

    def support(self):
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def __eq__(self, other):
        if isinstance(other, RepRingElement):
            return self.group == other.group and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.group, self.coeffs))

    def __repr__(self):
        g = self.group
        parts = []
        for i, c in self.support():
            exps = g.exps_of(i)
            mono = "*".join(f"x{k+1}^{e}" if e > 1 else f"x{k+1}"
                            for k, e in enumerate(exps) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def multiply(g, a, b):
    if a.group != g or b.group != g:
        raise GroupMismatchError("elements do not belong to the given group")
    return a * b


def augmentation(a):
    return a.augmentation()


def _series_invert(a_series, k):
    """Inverse of a power series over R(G) with constant term 1, to t^k."""
    g = a_series[0].group
    out = [RepRingElement.one(g)]
    for m in range(1, k + 1):
        acc = RepRingElement.zero(g)
        for i in range(1, min(m, len(a_series) - 1) + 1):
            acc = acc + a_series[i] * out[m - i]
        out.append(-acc)
    return out


def _series_mul(s, t_, k):
    g = s[0].group
    out = []
    for m in range(k + 1):
        acc = RepRingElement.zero(g)
        for i in range(m + 1):
            if i < len(s) and m - i < len(t_):
                acc = acc + s[i] * t_[m - i]
        out.append(acc)
    return out


def lambda_series(a, k):
    """[lambda^0(a), ..., lambda^k(a)].

    For an effective element this is the product of (1 + chi*t) over the
    summands; a virtual element a = b - c contributes the exact series
    inverse of the c factor (well defined: constant term 1).
    """
    g = a.group
    pos = [RepRingElement.one(g)]
    neg = [RepRingElement.one(g)]
    for i, c in a.support():
        chi = RepRingElement.from_character(g, Character(g.exps_of(i)))
        m = abs(c)
        # (1 + chi t)^m truncated at t^k
        factor = [chi.scaled(comb(m, d)) if d else RepRingElement.one(g)
                  for d in range(min(m, k) + 1)]
        if c > 0:
            pos = _series_mul(pos, factor, k)
        else:
            neg = _series_mul(neg, factor, k)
    out = pos
    if len(neg) > 1 or any(n.support() for n in neg[1:]):
        out = _series_mul(pos, _series_invert(neg, k), k)
    return out


def lambda_op(k, a):
    k = _as_int(k)
    if k < 0:
        raise InvalidParamsError("lambda weight must be >= 0")
    return lambda_series(a, k)[k]


def gamma_op(k, a):
    """gamma^k(a) = sum_{j=1..k} C(k-1, k-j) * lambda^j(a); gamma^0 = 1."""
    k = _as_int(k)
    if k < 0:
        raise InvalidParamsError("gamma weight must be >= 0")
    if k == 0:
        return RepRingElement.one(a.group)
    lam = lambda_series(a, k)
    out = RepRingElement.zero(a.group)
    for j in range(1, k + 1):
        out = out + lam[j].scaled(comb(k - 1, k - j))
    return out


# ---------------------------------------------------------------------------
# ideal powers and the gamma filtration

_IDEAL_CACHE = {}
_GAMMA_CACHE = {}
_GEN_CACHE = {}
_REPS_CACHE = {}
_COLLAPSE_CACHE = {}
_CACHE_LOCK = threading.Lock()

_IDENTITY_GATHER = {}


def _identity_gather(g):
    tab = _IDENTITY_GATHER.get(g.order)
    if tab is None:
        tab = list(range(g.order))
        _IDENTITY_GATHER[g.order] = tab
    return tab


def char_reps(g):
    """One nontrivial character per inverse pair {chi, chi^-1}.

    chi^-1 - 1 = -chi^-1 * (chi - 1), a unit multiple, so against any
    character-stable span the two generate the same products; both the
    ideal chain and the gamma spans keep their intermediate spans
    character-stable by construction (the recursion bottoms out at the
    full lattice R(G)), which the tests assert against the full
    character set.
    """
    key = g.key()
    with _CACHE_LOCK:
        reps = _REPS_CACHE.get(key)
        if reps is None:
            reps = []
            seen = set()
            for i in range(1, g.order):
                if i in seen:
                    continue
                inv = g.index_of(tuple(-e for e in g.exps_of(i)))
                seen.add(i)
                seen.add(inv)
                reps.append(i)
            _REPS_CACHE[key] = reps
    return reps


def ideal_power(g, n):
    """I^n as an HNF lattice in Z^{|G|}; I^0 = R(G).

    Built iteratively: I^{n+1} is spanned by b*(chi - 1) over a basis b
    of I^n and all nontrivial characters chi, which by bilinearity
    equals the span of all n+1-fold products of basis elements chi - 1.
    Results are cached per (group, n).
    """
    n = _as_int(n)
    if n < 0:
        raise InvalidParamsError("ideal power must be >= 0")
    key = g.key()
    with _CACHE_LOCK:
        cached = list(_IDEAL_CACHE.get(key, ()))
        if n < len(cached):
            return cached[n]
    if not cached:
        cached = [IntegerLattice.full(g.order)]
    ident = _identity_gather(g)
    reps = char_reps(g)
    while len(cached) <= n:
        prev = cached[-1].basis
        if not prev:
            cached.append(cached[-1])
            continue

        def fill(acc, prev=prev):
            for j in reps:
                acc.add_multiplied_rows(prev, [(g.gather(j), 1), (ident, -1)])

        basis = echelon_with_fallback(g.order, fill,
                                      finish=lambda a: a.hnf_rows())
        cached.append(IntegerLattice(g.order, basis))
    with _CACHE_LOCK:
        have = _IDEAL_CACHE.get(key, [])
        if len(cached) > len(have):
            _IDEAL_CACHE[key] = cached
    return cached[n]


def _gamma_generators(g, k):
    """Nonzero vectors gamma^k(s*(chi-1)) with their gather term lists.

    Deduplicated up to sign and up to the inverse-pairing of char_reps;
    both reductions leave every span f*P unchanged when P is
    character-stable.  Cached per (group, k): building these runs the
    whole lambda-series machinery per character.
    """
    key = (g.key(), k)
    with _CACHE_LOCK:
        hit = _GEN_CACHE.get(key)
    if hit is not None:
        return hit
    one = RepRingElement.one(g)
    seen = {}
    for i in char_reps(g):
        chi = RepRingElement.from_character(g, Character(g.exps_of(i)))
        base = chi - one
        for a in (base, -base):
            v = list(gamma_op(k, a).coeffs)
            lead = next((x for x in v if x), None)
            if lead is None:
                continue
            if lead < 0:
                v = [-x for x in v]
            seen[tuple(v)] = None
    gens = [(f, [(g.gather(j), fj) for j, fj in enumerate(f) if fj])
            for f in seen]
    with _CACHE_LOCK:
        _GEN_CACHE.setdefault(key, gens)
    return gens


def _collapse_verified(g, kmax):
    """Check gamma^k(chi-1) = 0 and gamma^k(-(chi-1)) = (-1)^k (chi-1)^k.

    Verified exactly, per representative character, for every 2 <= k <=
    kmax (extending any depth already certified).  Returns False, and
    remembers the failure, the moment one identity breaks; the weight
    lattices then fall back to the generic product recursion.
    """
    key = g.key()
    with _CACHE_LOCK:
        depth = _COLLAPSE_CACHE.get(key, 0)
    if depth is None:
        return False
    if depth >= kmax:
        return True
    one = RepRingElement.one(g)
    ok = True
    for i in char_reps(g):
        chi = RepRingElement.from_character(g, Character(g.exps_of(i)))
        base = chi - one
        power = base
        for k in range(2, kmax + 1):
            power = power * base
            if k <= depth:
                continue
            want = power if k % 2 == 0 else -power
            if gamma_op(k, base).coeffs != RepRingElement.zero(g).coeffs \
                    or gamma_op(k, -base).coeffs != want.coeffs:
                ok = False
                break
        if not ok:
            break
    with _CACHE_LOCK:
        _COLLAPSE_CACHE[key] = kmax if ok else None
    return ok


def _weight_lattice(g, w):
    """Span of all products of gamma-generator values of total weight w."""
    key = (g.key(), w)
    with _CACHE_LOCK:
        lat = _GAMMA_CACHE.get(key)
    if lat is not None:
        return lat
    if w == 0:
        lat = IntegerLattice.full(g.order)
    else:
        ops = []
        if _collapse_verified(g, w):
            # With the collapse identities certified up to weight w, each
            # weight-k generator (k >= 2) is (chi-1) times a weight-(k-1)
            # generator, so F_k * P_{w-k} lands inside F_1 * P_{w-1} by
            # induction and the recursion's sum equals its k = 1 term.
            gens = _gamma_generators(g, 1)
            rest = _weight_lattice(g, w - 1)
            if rest.basis:
                ops = [(rest.basis, terms) for _f, terms in gens]
        else:
            for k in range(1, w + 1):
                gens = _gamma_generators(g, k)
                if not gens:
                    continue
                rest = _weight_lattice(g, w - k)
                if not rest.basis:
                    continue
                for _f, terms in gens:
                    ops.append((rest.basis, terms))

        def fill(acc):
            for rows, terms in ops:
                acc.add_multiplied_rows(rows, terms)

        basis = echelon_with_fallback(g.order, fill,
                                      finish=lambda a: a.hnf_rows())
        lat = IntegerLattice(g.order, basis)
    with _CACHE_LOCK:
        _GAMMA_CACHE.setdefault(key, lat)
    return lat


def gamma_span(g, n, weight_cap=None):
    """Gamma filtration stage: the ideal generated by products of
    gamma-operations on the signed generators +-(chi - 1) with total
    weight in [n, weight_cap]."""
    n = _as_int(n)
    if n < 1:
        raise InvalidParamsError("gamma filtration stage must be >= 1")
    if weight_cap is None:
        weight_cap = n + 2
    weight_cap = _as_int(weight_cap)
    if weight_cap < n:
        raise InvalidParamsError("weight_cap must be >= n")
    rows = []
    for w in range(n, weight_cap + 1):
        rows.extend(_weight_lattice(g, w).basis)

    def fill(acc):
        # no separate R(G)-module closure pass is needed: each weight
        # lattice is already an ideal, by induction through the product
        # recursion (chi*(f*b) = f*(chi*b), and the recursion bottoms
        # out at the full lattice R(G)), and a sum of ideals is an ideal
        for r in rows:
            acc.add_row(r)

    basis = echelon_with_fallback(g.order, fill, finish=lambda a: a.hnf_rows())
    return IntegerLattice(g.order, basis)


def gr_gamma(g, max_topdeg):
    """[(2n, invariant factors of I^n/I^{n+1})] for 2n <= max_topdeg."""
    max_topdeg = _as_int(max_topdeg)
    if max_topdeg < 2 or max_topdeg % 2:
        raise InvalidParamsError("max_topdeg must be even and >= 2")
    if max_topdeg > MAX_TOPDEG:
        raise BudgetExceededError(
            f"max_topdeg {max_topdeg} exceeds the limit {MAX_TOPDEG}")
    out = []
    for n in range(max_topdeg // 2 + 1):
        piece = ideal_power(g, n).quotient(ideal_power(g, n + 1))
        out.append((2 * n, piece))
    return out


def in_ideal_power(g, a, n):
    if a.group != g:
        raise GroupMismatchError("element does not belong to the given group")
    return ideal_power(g, n).member(a.coeffs)


def element_filtration(g, a, cap=DEFAULT_FILTRATION_CAP):
    """Largest n <= cap with a in I^n; a return equal to cap means the
    membership still holds there (filtration >= cap)."""
    if a.group != g:
        raise GroupMismatchError("element does not belong to the given group")
    n = 0
    while n < cap and in_ideal_power(g, a, n + 1):
        n += 1
    return n
