"""Graded polynomial presentations and their certified comparison.

A GradedPresentation is Z[y_1..y_n] modulo finitely many homogeneous
integer relations, with every variable in topological degree 2.  Each
even degree is a finitely generated abelian group whose invariant
factors come from the Smith normal form of the relation-multiples
matrix; compare() checks such a presentation degreewise against the
graded ring of a finite abelian p-group computed by grouprings,
certifying on the way that every relation actually vanishes in the
graded ring (that is, its substitution lands one filtration step
deeper than its degree).
"""

from __future__ import annotations

import json
import operator
from typing import NamedTuple

from .errors import ArityMismatchError, InvalidParamsError
from .exactlin import IntegerLattice, InvariantFactors, lattice_quotient
from .grouprings import (
    RepRingElement, element_filtration, gr_gamma, _is_prime,
)
from .polys import IntPolynomial, parse_poly, render_poly


def _as_int(x):
    return operator.index(x)


def var_names(n):
    return tuple(f"y{i + 1}" for i in range(n))


class GradedPresentation:
    """Z[y_1..y_n] / (relations), |y_i| = 2, relations homogeneous.

    Relations of y-degree 0 (constants) are rejected along with zero
    polynomials: the presented ring is connected, its degree-0 piece
    is always Z.
    """

    __slots__ = ("n_vars", "relations")

    def __init__(self, n_vars, relations):
        self.n_vars = _as_int(n_vars)
        if self.n_vars < 1:
            raise InvalidParamsError("need at least one variable")
        rels = []
        for rel in relations:
            if not isinstance(rel, IntPolynomial):
                raise InvalidParamsError("relations must be IntPolynomial")
            if rel.nvars != self.n_vars:
                raise ArityMismatchError(
                    f"relation in {rel.nvars} variables against "
                    f"{self.n_vars} declared")
            if rel.is_zero():
                raise InvalidParamsError("zero relation")
            d = rel.homogeneous_degree()
            if d is None:
                raise InvalidParamsError(
                    f"inhomogeneous relation {render_poly(rel, var_names(self.n_vars))}")
            if d == 0:
                raise InvalidParamsError("constant relation")
            rels.append(rel)
        self.relations = tuple(rels)

    def relation_texts(self):
        names = var_names(self.n_vars)
        return [render_poly(r, names) for r in self.relations]

    def __eq__(self, other):
        if not isinstance(other, GradedPresentation):
            return NotImplemented
        return (self.n_vars == other.n_vars
                and self.relations == other.relations)

    def __repr__(self):
        return (f"GradedPresentation(n_vars={self.n_vars}, "
                f"relations={self.relation_texts()})")


def _degree_monomials(n, m):
    """Exponent tuples of total degree m, graded-lex y1 > y2 > ... ."""
    if n == 1:
        return [(m,)]
    out = []
    for e in range(m, -1, -1):
        out.extend((e,) + rest for rest in _degree_monomials(n - 1, m - e))
    return out


def graded_piece(pres, topdeg):
    """Invariant factors of the presented ring in one even degree."""
    topdeg = _as_int(topdeg)
    if topdeg < 0 or topdeg % 2:
        raise InvalidParamsError("topdeg must be even and >= 0")
    m = topdeg // 2
    if m == 0:
        return InvariantFactors((0,))
    n = pres.n_vars
    monos = _degree_monomials(n, m)
    index = {e: t for t, e in enumerate(monos)}
    width = len(monos)
    rows = []
    for rel in pres.relations:
        d = rel.homogeneous_degree()
        if d > m:
            continue
        for mult in _degree_monomials(n, m - d):
            prod = rel * IntPolynomial.monomial(mult)
            row = [0] * width
            for e, c in prod.coeffs.items():
                row[index[e]] = c
            rows.append(row)
    return lattice_quotient(IntegerLattice.full(width),
                            IntegerLattice.span(rows, width))


class DegreeRecord(NamedTuple):
    degree: int
    presentation_factors: InvariantFactors
    groundtruth_factors: InvariantFactors
    match: bool


class RelationCertificate(NamedTuple):
    relation: str
    required_filtration: int
    achieved: bool
    depth: int  # measured filtration depth, capped at required_filtration

    @property
    def holds(self):
        return self.achieved


class ComparisonReport:
    """Degreewise comparison outcome plus relation certificates."""

    __slots__ = ("degrees", "relation_certificates", "verdict")

    def __init__(self, degrees, relation_certificates):
        self.degrees = tuple(degrees)
        self.relation_certificates = tuple(relation_certificates)
        self.verdict = (all(r.match for r in self.degrees)
                        and all(c.holds for c in self.relation_certificates))

    @property
    def first_mismatch(self):
        """The lowest non-matching degree record, or None."""
        for rec in self.degrees:
            if not rec.match:
                return rec
        return None

    def __repr__(self):
        return (f"ComparisonReport(verdict={self.verdict}, "
                f"degrees={len(self.degrees)})")


def _shape(factors):
    """(free rank, torsion order) of an invariant-factor list."""
    free = sum(1 for d in factors if d == 0)
    tor = 1
    for d in factors:
        if d:
            tor *= d
    return free, tor


def _check_generating(g, chars):
    """The substitution characters must generate the character group."""
    n = g.n
    rows = [list(chi.exps) for chi in chars]
    for i, q in enumerate(g.orders):
        row = [0] * n
        row[i] = q
        rows.append(row)
    quo = lattice_quotient(IntegerLattice.full(n),
                           IntegerLattice.span(rows, n))
    if len(quo.factors):
        raise InvalidParamsError(
            "substitution characters do not generate the dual group")


def compare(pres, g, substitution=None, max_topdeg=24, threads=1):
    """Certified degreewise comparison of a presentation with gr of BG.

    For each relation r of y-degree d the substitution y_i := chi_i - 1
    must land in I^(d+1): that makes the degreewise ring map
    well-defined, and since generating characters make the monomials in
    chi_i - 1 span every I^d/I^(d+1), it is onto.  Degrees match on
    (free rank, order); combined with the surjection this certifies a
    degreewise isomorphism wherever every record matches.  threads > 1
    computes the independent presentation-side pieces in a worker pool.
    """
    if substitution is None:
        substitution = [g.generator(i) for i in range(g.n)]
    substitution = list(substitution)
    if pres.n_vars != g.n:
        raise ArityMismatchError(
            f"{pres.n_vars} variables against {g.n} group factors")
    if len(substitution) != pres.n_vars:
        raise ArityMismatchError(
            f"{len(substitution)} substitution characters against "
            f"{pres.n_vars} variables")
    max_topdeg = _as_int(max_topdeg)
    if max_topdeg < 2 or max_topdeg % 2:
        raise InvalidParamsError("max_topdeg must be even and >= 2")
    _check_generating(g, substitution)

    one = RepRingElement.one(g)
    vals = [RepRingElement.from_character(g, chi) - one
            for chi in substitution]
    names = var_names(pres.n_vars)
    certs = []
    for rel in pres.relations:
        d = rel.homogeneous_degree()
        elem = rel.eval_at(vals, one)
        need = d + 1
        got = element_filtration(g, elem, cap=need)
        certs.append(RelationCertificate(render_poly(rel, names), need,
                                         got >= need, got))
    truth = dict(gr_gamma(g, max_topdeg))
    degs = list(range(0, max_topdeg + 1, 2))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pieces = list(pool.map(lambda d: graded_piece(pres, d), degs))
    else:
        pieces = [graded_piece(pres, d) for d in degs]
    records = []
    for deg, pf in zip(degs, pieces):
        gf = truth[deg]
        records.append(DegreeRecord(deg, pf, gf, _shape(pf) == _shape(gf)))
    return ComparisonReport(records, certs)


# ---------------------------------------------------------------------------
# presets


def _y(n, i):
    return IntPolynomial.variable(n, i)


def thm11(p, r, n):
    """(Z/p^r)^n presentation: p^r y_i and y_i^(p^r) y_j - y_i y_j^(p^r)."""
    p, r, n = _as_int(p), _as_int(r), _as_int(n)
    if not _is_prime(p) or r < 1 or n < 1:
        raise InvalidParamsError("need a prime p, r >= 1, n >= 1")
    q = p ** r
    rels = [_y(n, i).scaled(q) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rels.append(_y(n, i) ** q * _y(n, j) - _y(n, i) * _y(n, j) ** q)
    return GradedPresentation(n, rels)


def thm12(p):
    """(Z/p^2)^2 presentation: p^2 y_i, p*w and w^p for w = y1^p y2 - y1 y2^p."""
    p = _as_int(p)
    if not _is_prime(p):
        raise InvalidParamsError(f"{p} is not prime")
    w = _y(2, 0) ** p * _y(2, 1) - _y(2, 0) * _y(2, 1) ** p
    return GradedPresentation(
        2, [_y(2, 0).scaled(p * p), _y(2, 1).scaled(p * p),
            w.scaled(p), w ** p])


def thm13(p, r, s_r):
    """Z/p^r x Z/p presentation: p^r y1, p y2 and a supplied relation s_r."""
    p, r = _as_int(p), _as_int(r)
    if not _is_prime(p) or r < 1:
        raise InvalidParamsError("need a prime p and r >= 1")
    if not isinstance(s_r, IntPolynomial) or s_r.nvars != 2:
        raise InvalidParamsError("s_r must be an IntPolynomial in y1, y2")
    return GradedPresentation(
        2, [_y(2, 0).scaled(p ** r), _y(2, 1).scaled(p), s_r])


def chetard44():
    """The verified presentation for Z/4 x Z/4."""
    y1, y2 = _y(2, 0), _y(2, 1)
    return GradedPresentation(
        2, [y1.scaled(4), y2.scaled(4),
            (y1 ** 2 * y2).scaled(2) + (y1 * y2 ** 2).scaled(2),
            y1 ** 4 * y2 ** 2 - y1 ** 2 * y2 ** 4])


def chetard_conj(r):
    """The conjectured Z/2^r x Z/2 presentation: 2^r y1, 2 y2,
    y1 y2^(r+1) + y1^2 y2^r."""
    r = _as_int(r)
    if r < 1:
        raise InvalidParamsError("need r >= 1")
    y1, y2 = _y(2, 0), _y(2, 1)
    return GradedPresentation(
        2, [y1.scaled(2 ** r), y2.scaled(2),
            y1 * y2 ** (r + 1) + y1 ** 2 * y2 ** r])


def old_thm11(q, n):
    """The refuted presentation: q y_i and y_i^q y_j - y_i y_j^q only."""
    q, n = _as_int(q), _as_int(n)
    if q < 2 or n < 1:
        raise InvalidParamsError("need q >= 2 and n >= 1")
    rels = [_y(n, i).scaled(q) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rels.append(_y(n, i) ** q * _y(n, j) - _y(n, i) * _y(n, j) ** q)
    return GradedPresentation(n, rels)


# ---------------------------------------------------------------------------
# presentation files: {"vars": n, "relations": ["4*y1", ...]}


def save_presentation(pres, path):
    doc = {"vars": pres.n_vars, "relations": pres.relation_texts()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_presentation(path):
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        n = _as_int(doc["vars"])
        texts = doc["relations"]
    except (KeyError, TypeError) as exc:
        raise InvalidParamsError(f"malformed presentation file: {exc}")
    names = var_names(n)
    return GradedPresentation(n, [parse_poly(t, names) for t in texts])
