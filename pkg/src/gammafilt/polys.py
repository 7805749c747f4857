"""Integer multivariate polynomials keyed by exponent tuples.

Carries the small amount of polynomial algebra the presentation and
formal-group-law modules need: exact arithmetic over Z, homogeneity
bookkeeping, a plain-text grammar for relation files, rendering under a
fixed monomial order, evaluation into any commutative ring, and exact
mod-p division.

Monomial order everywhere: graded lexicographic with the first variable
largest, highest terms rendered first.
"""

from __future__ import annotations

import operator
import re

from .errors import InvalidParamsError


def _as_int(x):
    return operator.index(x)


def _order_key(exps):
    return (sum(exps), exps)


class IntPolynomial:
    """Polynomial in nvars variables over Z, exponent-tuple keyed."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars, coeffs=None):
        self.nvars = _as_int(nvars)
        if self.nvars < 0:
            raise InvalidParamsError("nvars must be >= 0")
        clean = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(_as_int(e) for e in exps)
            if len(exps) != self.nvars:
                raise InvalidParamsError(
                    f"exponent tuple {exps} in {self.nvars} variables")
            if any(e < 0 for e in exps):
                raise InvalidParamsError("negative exponent")
            c = _as_int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.coeffs = clean

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps, c=1):
        exps = tuple(exps)
        return cls(len(exps), {exps: c})

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def _same_arity(self, other):
        if self.nvars != other.nvars:
            raise InvalidParamsError(
                f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        self._same_arity(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return IntPolynomial(self.nvars, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IntPolynomial(self.nvars,
                             {e: -c for e, c in self.coeffs.items()})

    def scaled(self, c):
        c = _as_int(c)
        return IntPolynomial(self.nvars,
                             {e: c * v for e, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scaled(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        self._same_arity(other)
        out = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return IntPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        n = _as_int(n)
        if n < 0:
            raise InvalidParamsError("negative power")
        out = IntPolynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def homogeneous_degree(self):
        """The common total degree of all terms, or None."""
        degs = {sum(e) for e in self.coeffs}
        if len(degs) != 1:
            return None
        return degs.pop()

    def is_homogeneous(self):
        return self.homogeneous_degree() is not None

    def terms(self):
        """[(exps, coeff)] sorted highest monomial first."""
        return sorted(self.coeffs.items(),
                      key=lambda t: _order_key(t[0]), reverse=True)

    def leading(self):
        """(exps, coeff) of the highest monomial; None when zero."""
        if not self.coeffs:
            return None
        e = max(self.coeffs, key=_order_key)
        return e, self.coeffs[e]

    def map_coeffs(self, fn):
        return IntPolynomial(self.nvars,
                             {e: fn(c) for e, c in self.coeffs.items()})

    def reduced_mod(self, p):
        return self.map_coeffs(lambda c: c % p)

    def substituted(self, replacements):
        """Substitute variable i by the polynomial replacements[i]."""
        if len(replacements) != self.nvars:
            raise InvalidParamsError("one replacement per variable required")
        reps = []
        for i in range(self.nvars):
            r = replacements[i]
            if isinstance(r, int):
                r = IntPolynomial.constant(self.nvars, r)
            reps.append(r)
        out = None
        for exps, c in self.coeffs.items():
            term = IntPolynomial.constant(self.nvars, c)
            for r, e in zip(reps, exps):
                if e:
                    term = term * (r ** e)
            out = term if out is None else out + term
        return out if out is not None else IntPolynomial.zero(self.nvars)

    def eval_at(self, values, one):
        """Evaluate with variable i := values[i] in the ring of ``one``.

        The ring only needs + between its elements and * by ring
        elements and ints, so group-ring elements and plain ints both
        work.
        """
        if len(values) != self.nvars:
            raise InvalidParamsError("one value per variable required")
        total = one * 0
        for exps, c in self.coeffs.items():
            term = one * c
            for v, e in zip(values, exps):
                for _ in range(e):
                    term = term * v
            total = total + term
        return total

    def __repr__(self):
        names = tuple(f"y{i + 1}" for i in range(self.nvars))
        return f"IntPolynomial({render_poly(self, names)!r})"


def render_poly(poly, names):
    """Canonical text for a polynomial, graded-lex highest terms first."""
    if len(names) != poly.nvars:
        raise InvalidParamsError("one name per variable required")
    if not poly.coeffs:
        return "0"
    parts = []
    for exps, c in poly.terms():
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        text = "*".join(factors)
        if not parts:
            parts.append(text if c > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*^()]))")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            tail = text[pos:].strip()
            if not tail:
                break
            raise InvalidParamsError(f"cannot tokenize {tail[:20]!r}")
        if m.group(1) is not None:
            out.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            out.append(("name", m.group(2)))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(("op", op))
        pos = m.end()
    return out


def parse_poly(text, names):
    """Parse the relation grammar: integer coefficients, ``*``, ``^``, signs.

    Examples of accepted input: ``4*y1``, ``2*y1^2*y2 - 2*y1*y2^2``,
    ``y1*y2^4 + y1^2*y2^3``.  Parenthesized subexpressions are allowed.
    """
    names = tuple(names)
    index = {n: i for i, n in enumerate(names)}
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def parse_sum():
        nonlocal pos
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = parse_product().scaled(sign)
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                nxt = parse_product()
                acc = acc + (nxt if val == "+" else -nxt)
            else:
                return acc

    def parse_product():
        acc = parse_power()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * parse_power()
            elif kind in ("int", "name") or (kind == "op" and val == "("):
                # juxtaposition like 2(y1 - y2)
                acc = acc * parse_power()
            else:
                return acc

    def parse_power():
        base = parse_atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            kind, val = take()
            if kind != "int":
                raise InvalidParamsError("exponent must be an integer")
            return base ** val
        return base

    def parse_atom():
        kind, val = take() if pos < len(toks) else (None, None)
        if kind == "int":
            return IntPolynomial.constant(len(names), val)
        if kind == "name":
            if val not in index:
                raise InvalidParamsError(f"unknown variable {val!r}")
            return IntPolynomial.variable(len(names), index[val])
        if kind == "op" and val == "(":
            inner = parse_sum()
            kind, val = take() if pos < len(toks) else (None, None)
            if kind != "op" or val != ")":
                raise InvalidParamsError("unbalanced parenthesis")
            return inner
        raise InvalidParamsError("malformed polynomial text")

    if not toks:
        raise InvalidParamsError("empty polynomial text")
    out = parse_sum()
    if pos != len(toks):
        raise InvalidParamsError(f"trailing input near token {toks[pos]!r}")
    return out


def divide_exact_modp(a, b, p):
    """Quotient q with a = q*b in Z/p[y...]; (q, remainder) returned.

    Long division by the leading monomial of b, all coefficient work
    mod the prime p.
    """
    if a.nvars != b.nvars:
        raise InvalidParamsError("arity mismatch in division")
    b = b.reduced_mod(p)
    lead = b.leading()
    if lead is None:
        raise InvalidParamsError("division by zero polynomial")
    (le, lc) = lead
    linv = pow(lc, -1, p)
    rem = a.reduced_mod(p)
    q = IntPolynomial.zero(a.nvars)
    while rem.coeffs:
        re, rc = rem.leading()
        diff = tuple(x - y for x, y in zip(re, le))
        if any(d < 0 for d in diff):
            break
        c = (rc * linv) % p
        t = IntPolynomial.monomial(diff, c)
        q = (q + t).reduced_mod(p)
        rem = (rem - t * b).reduced_mod(p)
    return q, rem
