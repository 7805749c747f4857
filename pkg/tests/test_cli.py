"""Command-line interface: golden outputs, report schema, exit codes."""

import json
import subprocess
import sys

import pytest

from gammafilt.cli import main

pytestmark = pytest.mark.usefixtures("capsys")


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _err = run_cli(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def strip_timings(doc):
    doc = dict(doc)
    doc.pop("timings", None)
    return doc


def no_floats_outside_timings(node, in_timings=False):
    if isinstance(node, dict):
        return all(no_floats_outside_timings(v, in_timings or k == "timings")
                   for k, v in node.items())
    if isinstance(node, (list, tuple)):
        return all(no_floats_outside_timings(v, in_timings) for v in node)
    if isinstance(node, float):
        return in_timings
    return True


def test_grgamma_table_golden(capsys):
    code, out, _ = run_cli(capsys, "grgamma", "--p", "2", "--exponents",
                           "2,2", "--max-degree", "8")
    assert code == 0
    body = [ln for ln in out.splitlines() if ln.strip()]
    assert any("(4, 4)" in ln for ln in body)
    assert any("(2, 2, 4, 4, 4)" in ln for ln in body)
    assert body[-1] == "verdict: True"


def test_grgamma_json_shape(capsys):
    code, doc = run_json(capsys, "grgamma", "--p", "5", "--exponents", "1,1",
                         "--max-degree", "4")
    assert code == 0
    assert doc["schema"] == 1
    assert doc["tool"]["name"] == "gammafilt"
    assert doc["command"] == "grgamma"
    degrees = {d["degree"]: d for d in doc["degrees"]}
    assert degrees[0]["invariant_factors"] == [0]
    assert degrees[0]["order"] is None
    assert degrees[2]["invariant_factors"] == [5, 5]
    assert degrees[2]["order"] == 25
    assert degrees[4]["invariant_factors"] == [5, 5, 5]
    assert doc["verdict"] is True
    assert no_floats_outside_timings(doc)
    assert all(isinstance(v, float) for v in doc["timings"].values())


def test_json_determinism(capsys):
    _c1, d1 = run_json(capsys, "grgamma", "--p", "2", "--exponents", "2,2",
                       "--max-degree", "8")
    _c2, d2 = run_json(capsys, "grgamma", "--p", "2", "--exponents", "2,2",
                       "--max-degree", "8")
    assert strip_timings(d1) == strip_timings(d2)
    a = json.dumps(strip_timings(d1), sort_keys=True)
    b = json.dumps(strip_timings(d2), sort_keys=True)
    assert a == b


def test_json_keys_sorted(capsys):
    _c, out, _e = run_cli(capsys, "grgamma", "--p", "2", "--exponents", "1",
                          "--max-degree", "4", "--format", "json")
    doc = json.loads(out)
    assert out == json.dumps(doc, sort_keys=True, indent=2) + "\n"


def test_verify_thm12_passes(capsys):
    code, doc = run_json(capsys, "verify", "--preset", "thm1.2", "--p", "2",
                         "--max-degree", "8")
    assert code == 0
    assert doc["verdict"] is True
    assert doc["preset"] == "thm1.2"
    assert doc["group"] == {"p": 2, "exponents": [2, 2]}
    assert doc["relations"] == [
        "4*y1", "4*y2", "2*y1^2*y2 - 2*y1*y2^2",
        "y1^4*y2^2 - 2*y1^3*y2^3 + y1^2*y2^4"]
    assert doc["augmented_relations"] == []
    assert doc["first_mismatch"] is None
    for cert in doc["certificates"]:
        assert cert["achieved"] is True
        assert cert["depth"] >= cert["required_filtration"]
    assert no_floats_outside_timings(doc)


def test_verify_old_thm11_refuted(capsys):
    code, doc = run_json(capsys, "verify", "--preset", "old-thm1.1",
                         "--q", "4", "--n", "2")
    assert code == 1
    assert doc["verdict"] is False
    fm = doc["first_mismatch"]
    assert fm["degree"] == 6
    assert fm["presentation_order"] == 256
    assert fm["groundtruth_order"] == 128


def test_verify_old_thm11_table(capsys):
    code, out, _ = run_cli(capsys, "verify", "--preset", "old-thm1.1",
                           "--q", "4", "--n", "2", "--max-degree", "8")
    assert code == 1
    assert "first mismatch at degree 6: order 256 vs 128" in out
    assert "relation y1^4*y2 - y1*y2^4 in filtration >= 6: FAILED" in out
    assert out.rstrip().endswith("verdict: False")


def test_verify_thm31_embeds_relation(capsys):
    code, doc = run_json(capsys, "verify", "--preset", "thm3.1", "--p", "2",
                         "--r", "1", "--max-degree", "10")
    assert code == 0
    assert doc["s_r"] == "-y1^2*y2 + y1*y2^2"
    assert doc["s_r_corrections"] == "0"
    assert doc["relations"][-1] == "-y1^2*y2 + y1*y2^2"
    assert doc["verdict"] is True


def test_verify_chetard_conj(capsys):
    code, doc = run_json(capsys, "verify", "--preset", "chetard-conj",
                         "--r", "2", "--max-degree", "12")
    assert code == 0
    assert doc["group"] == {"p": 2, "exponents": [2, 1]}
    assert doc["relations"] == ["4*y1", "2*y2", "y1^2*y2^2 + y1*y2^3"]
    assert doc["verdict"] is True


def test_fgl_pseries_golden(capsys):
    code, out, _ = run_cli(capsys, "fgl", "pseries", "--p", "2", "--r", "2")
    assert code == 0
    assert "series: 4*y + 6*v1*y^2 + 4*v1^2*y^3 + v1^3*y^4" in out


def test_fgl_sr_golden(capsys):
    code, doc = run_json(capsys, "fgl", "sr", "--p", "2", "--r", "2")
    assert code == 0
    assert doc["leading"] == "-y1^2*y2^2 + y1*y2^3"
    assert doc["corrections"] == \
        "v1*y1^2*y2^3 + v1*y1^4*y2 + v1^2*y1^3*y2^3"
    assert doc["congruence_modulus"] == "y1^2*y2^3"
    assert doc["verdict"] is True


def test_fgl_star_and_y1p(capsys):
    code, doc = run_json(capsys, "fgl", "star", "--p", "2")
    assert code == 0
    assert doc["checks"]["no_v1_0_term"] is True
    assert doc["checks"]["v1_coefficient_exact"] == "6*y1^2*y2 - 6*y1*y2^2"
    code, doc = run_json(capsys, "fgl", "y1p", "--p", "2")
    assert code == 0
    assert doc["checks"]["v1_0_part_is_minus_p2_y1"] is True


def test_fgl_descent(capsys):
    code, doc = run_json(capsys, "fgl", "descent", "--p", "2")
    assert code == 0
    assert doc["member"] is True
    assert doc["k_cap"] == 4
    assert len(doc["generators"]) == 4


def test_fgl_dickson(capsys):
    code, doc = run_json(capsys, "fgl", "dickson", "--p", "3")
    assert code == 0
    assert doc["quotient"] == "y1^6 + y1^4*y2^2 + y1^2*y2^4 + y2^6"
    assert doc["restriction_y2_zero"] == "y1^6"
    assert doc["transvection_invariant"] is True
    assert doc["swap_invariant"] is True


def test_gamma_vs_ideal(capsys):
    code, doc = run_json(capsys, "gamma-vs-ideal", "--p", "2",
                         "--exponents", "2", "--max-n", "4")
    assert code == 0
    assert doc["checks"] == [{"n": k, "equal": True} for k in range(1, 5)]
    assert doc["verdict"] is True
    assert set(doc["timings"]) >= {f"n_{k}" for k in range(1, 5)}


def test_out_file_written(capsys, tmp_path):
    path = str(tmp_path / "report.json")
    code, out, _ = run_cli(capsys, "grgamma", "--p", "2", "--exponents", "1",
                           "--max-degree", "4", "--out", path)
    assert code == 0
    assert "verdict" in out            # table still on stdout
    with open(path) as fh:
        doc = json.load(fh)
    assert doc["schema"] == 1 and doc["verdict"] is True


def test_exit_usage_on_bad_params(capsys):
    code, _out, err = run_cli(capsys, "grgamma", "--p", "4",
                              "--exponents", "1")
    assert code == 2
    assert "invalid configuration" in err
    code, _out, err = run_cli(capsys, "verify", "--preset", "old-thm1.1",
                              "--q", "6", "--n", "2")
    assert code == 2
    code, _out, err = run_cli(capsys, "verify", "--preset", "thm3.1",
                              "--p", "2")   # missing --r
    assert code == 2


def test_exit_usage_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["grgamma", "--p", "2", "--exponents", "zz"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--preset", "nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["not-a-command"])
    assert exc.value.code == 2


def test_exit_budget(capsys):
    code, _out, err = run_cli(capsys, "grgamma", "--p", "2", "--exponents",
                              "2,2", "--max-degree", "8",
                              "--size-budget", "10")
    assert code == 3
    assert "budget exceeded" in err


def test_threads_env_override(capsys, monkeypatch):
    monkeypatch.setenv("GAMMAFILT_THREADS", "2")
    code, doc = run_json(capsys, "verify", "--preset", "thm1.2", "--p", "2",
                         "--max-degree", "8")
    assert code == 0 and doc["verdict"] is True
    monkeypatch.setenv("GAMMAFILT_THREADS", "zero")
    code, _out, err = run_cli(capsys, "grgamma", "--p", "2",
                              "--exponents", "1")
    assert code == 2
    assert "invalid configuration" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gammafilt", "grgamma", "--p", "2",
         "--exponents", "1", "--max-degree", "4", "--format", "json"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["schema"] == 1
