"""Graded presentations, degreewise comparison, and the named presets."""

import json
import os

import pytest

from gammafilt.errors import ArityMismatchError, InvalidParamsError
from gammafilt.fgl import derive_sr
from gammafilt.gradedpres import (ComparisonReport, GradedPresentation,
                                  chetard44, chetard_conj, compare,
                                  graded_piece, load_presentation, old_thm11,
                                  save_presentation, thm11, thm12, thm13,
                                  var_names, _shape)
from gammafilt.grouprings import (AbelianPGroup, Character, RepRingElement,
                                  element_filtration)
from gammafilt.polys import IntPolynomial, parse_poly


def P(text):
    return parse_poly(text, var_names(2))


def test_presentation_validation():
    ok = GradedPresentation(2, [P("4*y1"), P("y1^2*y2 - y1*y2^2")])
    assert ok.n_vars == 2 and len(ok.relations) == 2
    with pytest.raises(InvalidParamsError):
        GradedPresentation(2, [IntPolynomial.zero(2)])
    with pytest.raises(InvalidParamsError):
        GradedPresentation(2, [P("y1 + y1*y2")])      # inhomogeneous
    with pytest.raises(InvalidParamsError):
        GradedPresentation(2, [P("3")])               # degree-0 constant
    with pytest.raises(ArityMismatchError):
        GradedPresentation(2, [IntPolynomial.variable(3, 0)])
    with pytest.raises(InvalidParamsError):
        GradedPresentation(2, ["4*y1"])
    with pytest.raises(InvalidParamsError):
        GradedPresentation(0, [])


def test_var_names():
    assert var_names(3) == ("y1", "y2", "y3")


def test_preset_relation_texts():
    assert thm12(2).relation_texts() == [
        "4*y1", "4*y2", "2*y1^2*y2 - 2*y1*y2^2",
        "y1^4*y2^2 - 2*y1^3*y2^3 + y1^2*y2^4"]
    assert thm11(3, 1, 2).relation_texts() == [
        "3*y1", "3*y2", "y1^3*y2 - y1*y2^3"]
    assert chetard44().relation_texts() == [
        "4*y1", "4*y2", "2*y1^2*y2 + 2*y1*y2^2", "y1^4*y2^2 - y1^2*y2^4"]
    assert chetard_conj(3).relation_texts() == [
        "8*y1", "2*y2", "y1^2*y2^3 + y1*y2^4"]
    assert old_thm11(4, 2).relation_texts() == [
        "4*y1", "4*y2", "y1^4*y2 - y1*y2^4"]
    assert thm11(2, 1, 3).relation_texts() == [
        "2*y1", "2*y2", "2*y3", "y1^2*y2 - y1*y2^2",
        "y1^2*y3 - y1*y3^2", "y2^2*y3 - y2*y3^2"]
    lead, _ = derive_sr(2, 2)
    assert thm13(2, 2, lead).relation_texts() == [
        "4*y1", "2*y2", "-y1^2*y2^2 + y1*y2^3"]


def test_preset_validation():
    with pytest.raises(InvalidParamsError):
        thm11(4, 1, 2)
    with pytest.raises(InvalidParamsError):
        thm12(6)
    with pytest.raises(InvalidParamsError):
        chetard_conj(0)
    with pytest.raises(InvalidParamsError):
        old_thm11(1, 2)
    with pytest.raises(InvalidParamsError):
        old_thm11(4, 0)
    # q only needs to be a prime power when a group is attached; the
    # bare presentation accepts any q >= 2
    assert old_thm11(6, 2).relation_texts()[0] == "6*y1"
    with pytest.raises(InvalidParamsError):
        thm13(2, 1, P("y1 + y1^2"))     # s_r must be homogeneous
    with pytest.raises(InvalidParamsError):
        thm13(2, 1, IntPolynomial.zero(2))


def test_graded_piece_golden():
    t12 = thm12(2)
    assert graded_piece(t12, 0) == (0,)
    assert graded_piece(t12, 2) == (4, 4)
    assert graded_piece(t12, 4) == (4, 4, 4)
    assert graded_piece(t12, 6) == (2, 4, 4, 4)
    with pytest.raises(InvalidParamsError):
        graded_piece(t12, 3)
    with pytest.raises(InvalidParamsError):
        graded_piece(t12, -2)


def test_graded_piece_monotone_under_deletion():
    full = thm12(2)
    for drop in range(len(full.relations)):
        sub = GradedPresentation(
            2, [r for i, r in enumerate(full.relations) if i != drop])
        for deg in range(0, 13, 2):
            a = _shape(graded_piece(sub, deg))
            b = _shape(graded_piece(full, deg))
            # fewer relations never shrink a degree
            assert a[0] > b[0] or (a[0] == b[0] and a[1] >= b[1]), \
                (drop, deg)


def test_element_filtration_bridge():
    g = AbelianPGroup(2, [2, 2])
    one = RepRingElement.one(g)
    x = RepRingElement.from_character(g, g.generator(0)) - one
    y = RepRingElement.from_character(g, g.generator(1)) - one
    a = (x * x * y - x * y * y) * 2
    assert element_filtration(g, a, cap=4) == 4


def test_compare_verifies_chetard_and_thm12():
    g = AbelianPGroup(2, [2, 2])
    rep_a = compare(chetard44(), g, max_topdeg=16)
    rep_b = compare(thm12(2), g, max_topdeg=16)
    assert rep_a.verdict and rep_b.verdict
    assert rep_a.first_mismatch is None
    for ra, rb in zip(rep_a.degrees, rep_b.degrees):
        assert ra.groundtruth_factors == rb.groundtruth_factors
        assert _shape(ra.presentation_factors) == \
            _shape(rb.presentation_factors)
        assert ra.match and rb.match
    for cert in rep_a.relation_certificates:
        assert cert.achieved and cert.depth >= cert.required_filtration


def test_compare_report_structure():
    g = AbelianPGroup(2, [1, 1])
    rep = compare(thm11(2, 1, 2), g, max_topdeg=8)
    assert isinstance(rep, ComparisonReport)
    assert rep.verdict
    assert [d.degree for d in rep.degrees] == [0, 2, 4, 6, 8]
    assert rep.degrees[0].presentation_factors == (0,)
    assert rep.degrees[0].groundtruth_factors == (0,)
    texts = [c.relation for c in rep.relation_certificates]
    assert texts == ["2*y1", "2*y2", "y1^2*y2 - y1*y2^2"]
    assert [c.required_filtration for c in rep.relation_certificates] == \
        [2, 2, 4]


def test_compare_refutes_old_thm11():
    g = AbelianPGroup(2, [2, 2])
    rep = compare(old_thm11(4, 2), g, max_topdeg=8)
    assert not rep.verdict
    fm = rep.first_mismatch
    assert fm.degree == 6
    assert _shape(fm.presentation_factors) == (0, 256)
    assert _shape(fm.groundtruth_factors) == (0, 128)
    # the degree-5 relation also fails its filtration certificate
    cert = {c.relation: c for c in rep.relation_certificates}
    bad = cert["y1^4*y2 - y1*y2^4"]
    assert bad.achieved is False
    assert bad.depth == 5 and bad.required_filtration == 6


def test_compare_thm13_presets():
    for p, r in ((2, 1), (2, 2), (3, 1)):
        lead, _corr = derive_sr(p, r)
        g = AbelianPGroup(p, [r, 1])
        rep = compare(thm13(p, r, lead), g, max_topdeg=12)
        assert rep.verdict, (p, r)


def test_compare_threads_agree():
    g = AbelianPGroup(2, [2, 2])
    rep1 = compare(thm12(2), g, max_topdeg=12, threads=1)
    rep2 = compare(thm12(2), g, max_topdeg=12, threads=2)
    assert rep1.verdict == rep2.verdict
    assert [tuple(d.presentation_factors) for d in rep1.degrees] == \
        [tuple(d.presentation_factors) for d in rep2.degrees]


def test_compare_permutation_equivariance():
    g = AbelianPGroup(2, [2, 1])
    lead, _ = derive_sr(2, 2)
    pres = thm13(2, 2, lead)
    swapped = GradedPresentation(
        2, [IntPolynomial(2, {(j, i): c for (i, j), c in r.coeffs.items()})
            for r in pres.relations])
    subs = [g.generator(1), g.generator(0)]
    rep_a = compare(pres, g, max_topdeg=12)
    rep_b = compare(swapped, g, substitution=subs, max_topdeg=12)
    assert rep_a.verdict == rep_b.verdict
    assert [tuple(d.presentation_factors) for d in rep_a.degrees] == \
        [tuple(d.presentation_factors) for d in rep_b.degrees]


def test_compare_error_paths():
    g44 = AbelianPGroup(2, [2, 2])
    with pytest.raises(ArityMismatchError):
        compare(thm12(2), AbelianPGroup(2, [1]), max_topdeg=8)
    with pytest.raises(ArityMismatchError):
        compare(thm12(2), g44, substitution=[g44.generator(0)], max_topdeg=8)
    with pytest.raises(InvalidParamsError):
        compare(thm12(2), g44, max_topdeg=7)
    with pytest.raises(InvalidParamsError):
        # (x^2, y) does not generate the character group
        compare(thm12(2), g44,
                substitution=[Character((2, 0)), Character((0, 1))],
                max_topdeg=8)


def test_presentation_file_round_trip(tmp_path):
    path = os.path.join(tmp_path, "pres.json")
    save_presentation(chetard44(), path)
    with open(path) as fh:
        doc = json.load(fh)
    assert doc["vars"] == 2
    assert doc["relations"] == chetard44().relation_texts()
    assert load_presentation(path) == chetard44()


def test_load_presentation_rejects_bad_files(tmp_path):
    path = os.path.join(tmp_path, "bad.json")
    with open(path, "w") as fh:
        json.dump({"vars": 2, "relations": ["y1 + 1"]}, fh)
    with pytest.raises(InvalidParamsError):
        load_presentation(path)
