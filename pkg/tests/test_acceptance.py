"""End-to-end acceptance runs: each test is one criterion, timed against
its stated budget and printing a single pass line with the measurement."""

import json
import random
import time

from gammafilt.cli import main
from gammafilt.exactlin import hnf, snf
from gammafilt.fgl import (GradedSeries, QuotientSpec, descent_check,
                           dickson_quotient, p_series, reduce, render_series,
                           restrict, star_identity, y1p_identity)
from gammafilt.gradedpres import chetard44, compare, thm12, _shape
from gammafilt.grouprings import AbelianPGroup, gamma_span, ideal_power
from gammafilt.polys import IntPolynomial


class Budget:
    def __init__(self, name, seconds):
        self.name = name
        self.seconds = seconds
        self.t0 = time.monotonic()

    def done(self):
        dt = time.monotonic() - self.t0
        print(f"[{self.name}] PASS in {dt:.1f}s (budget {self.seconds:.0f}s)")
        assert dt < self.seconds, \
            f"{self.name} took {dt:.1f}s, budget {self.seconds:.0f}s"


def run_json(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_criterion_1_thm12_both_primes(capsys):
    b = Budget("criterion 1: thm1.2 p=2,3 to degree 24", 120)
    for p in ("2", "3"):
        code, doc = run_json(capsys, "verify", "--preset", "thm1.2",
                             "--p", p, "--max-degree", "24")
        assert code == 0 and doc["verdict"] is True, p
        assert len(doc["degrees"]) == 13
        assert all(row["match"] for row in doc["degrees"])
    b.done()


def test_criterion_2_chetard_cross_check():
    b = Budget("criterion 2: chetard 4x4 cross-check to degree 24", 30)
    g = AbelianPGroup(2, [2, 2])
    rep_a = compare(chetard44(), g, max_topdeg=24)
    rep_b = compare(thm12(2), g, max_topdeg=24)
    assert rep_a.verdict and rep_b.verdict
    for ra, rb in zip(rep_a.degrees, rep_b.degrees):
        assert _shape(ra.presentation_factors) == \
            _shape(rb.presentation_factors), ra.degree
        assert ra.match and rb.match
    b.done()


def test_criterion_3_old_thm11_refuted(capsys):
    b = Budget("criterion 3: old-thm1.1 q=4 n=2 refutation", 30)
    code, doc = run_json(capsys, "verify", "--preset", "old-thm1.1",
                         "--q", "4", "--n", "2")
    assert code == 1
    assert doc["verdict"] is False
    fm = doc["first_mismatch"]
    assert fm["degree"] == 6
    assert fm["presentation_order"] == 256
    assert fm["groundtruth_order"] == 128
    b.done()


def test_criterion_4_thm11_prime_exponent(capsys):
    b = Budget("criterion 4: thm1.1 q=p panel", 120)
    for p, n in ((2, 2), (2, 3), (3, 2), (5, 2)):
        deg = 2 * (p + 2)
        code, doc = run_json(capsys, "verify", "--preset", "thm1.1",
                             "--p", str(p), "--r", "1", "--n", str(n),
                             "--max-degree", str(deg))
        assert code == 0 and doc["verdict"] is True, (p, n)
        assert doc["degrees"][-1]["degree"] >= 2 * (p + 2)
    b.done()


def test_criterion_5_thm31_panel(capsys):
    b = Budget("criterion 5: thm3.1 panel + conjectured displays", 120)
    for p, r in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2)):
        code, doc = run_json(capsys, "verify", "--preset", "thm3.1",
                             "--p", str(p), "--r", str(r),
                             "--max-degree", "20")
        assert code == 0 and doc["verdict"] is True, (p, r)
        # the congruence check runs inside the derivation; the embedded
        # relation and any logged refinement land in the report
        assert doc["s_r"]
        assert doc["augmented_relations"] == [], (p, r)
    for r in ("2", "3"):
        code, doc = run_json(capsys, "verify", "--preset", "chetard-conj",
                             "--r", r, "--max-degree", "20")
        assert code == 0 and doc["verdict"] is True, r
    b.done()


def test_criterion_6_fgl_identity_suite():
    b = Budget("criterion 6: fgl identity suite", 60)
    assert render_series(p_series(2, 2, 10), names=("y", "y2")) == \
        "4*y + 6*v1*y^2 + 4*v1^2*y^3 + v1^3*y^4"
    for p in (2, 3):
        for r in (1, 2, 3):
            q = QuotientSpec(p, 3, 1, 64, periodic=True)
            red = reduce(GradedSeries(p, {(0, 1, 0): p ** r}, True), q)
            assert red == GradedSeries(
                p, {(0, r * (p - 1) + 1, r): (-1) ** r}, True), (p, r)
        star_identity(p)      # raises on any failed shape assertion
        y1p_identity(p)
        cert = descent_check(p)
        assert cert.member and cert.k_cap == p + 2
    b.done()


def test_criterion_7_dickson_suite():
    b = Budget("criterion 7: dickson suite", 10)
    y1 = IntPolynomial.variable(2, 0)
    y2 = IntPolynomial.variable(2, 1)
    for p in (2, 3, 5, 7):
        d = dickson_quotient(p)
        want = IntPolynomial(2, {((p - 1) * i, (p - 1) * (p - i)): 1
                                 for i in range(p + 1)})
        assert d == want.reduced_mod(p)
        assert restrict(d, axis=1) == \
            IntPolynomial(2, {(p * (p - 1), 0): 1})
        trans = d.substituted({0: y1 + y2, 1: y2}).reduced_mod(p)
        assert trans == d.reduced_mod(p)
    b.done()


def _partitions(total):
    def rec(left, cap):
        if left == 0:
            yield ()
            return
        for first in range(min(left, cap), 0, -1):
            for rest in rec(left - first, first):
                yield (first,) + rest
    return rec(total, total)


def test_criterion_8_gamma_equals_ideal_powers():
    b = Budget("criterion 8: gamma span = ideal power, |G| <= 81", 300)
    groups = []
    for p in (2, 3):
        k = 1
        while p ** k <= 81:
            for part in _partitions(k):
                groups.append(AbelianPGroup(p, list(part)))
            k += 1
    assert len(groups) == 40
    for g in groups:
        for n in range(1, 9):
            assert gamma_span(g, n, n + 2) == ideal_power(g, n), \
                (g.p, g.exponents, n)
    b.done()


def test_criterion_9_exactlin_random_suite():
    b = Budget("criterion 9: exactlin 500-matrix property suite", 60)
    rng = random.Random(20260822)

    def unimodular(n):
        u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for _ in range(5):
            i, j = rng.randrange(n), rng.randrange(n)
            if i == j:
                continue
            c = rng.randint(-3, 3)
            for t in range(n):
                u[i][t] += c * u[j][t]
        return u

    for trial in range(500):
        nr = rng.randint(1, 8)
        nc = rng.randint(1, 8)
        m = [[rng.randint(-10**6, 10**6) for _ in range(nc)]
             for _ in range(nr)]
        f = snf(m)
        nz = [d for d in f.factors if d]
        for x, y in zip(nz, nz[1:]):
            assert y % x == 0, trial
        lat = hnf(m)
        assert f.factors.count(0) == nc - lat.rank
        for row in m:
            assert lat.member(row), trial
        u = unimodular(nr)
        um = [[sum(u[i][t] * m[t][j] for t in range(nr))
               for j in range(nc)] for i in range(nr)]
        assert snf(um) == f, trial
        assert hnf(um) == lat, trial
        v = [rng.randint(-100, 100) for _ in range(nc)]
        d = lat.denominator_index(v)
        if d is None:
            assert not lat.member(v)
        else:
            assert lat.member([d * x for x in v])
            assert lat.member(v) == (d == 1)
    b.done()
