"""Command-line front end.

Subcommands: ``grgamma`` (graded ring of a group, degree by degree),
``verify`` (named presentation presets compared against ground truth),
``fgl`` (formal-group-law computations and certificates), and
``gamma-vs-ideal`` (span equality of the two filtration definitions).

Reports are JSON documents with sorted keys and a ``schema: 1`` marker;
apart from the ``timings`` block they are deterministic for a fixed
config, which is what the golden tests pin.  Tables are for humans.

Exit codes: 0 verified / computed, 1 refuted or failed certificate,
2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .errors import (
    ArityMismatchError,
    BudgetExceededError,
    CertificateFailureError,
    IdentityAssertionError,
    InvalidParamsError,
)
from .grouprings import AbelianPGroup, gamma_span, gr_gamma, ideal_power
from .gradedpres import (
    chetard44, chetard_conj, compare, old_thm11, thm11, thm12, thm13,
    var_names,
)
from .polys import render_poly
from . import fgl
from .fgl import render_series

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_PRESETS = ("thm1.2", "thm1.1", "old-thm1.1", "thm3.1", "chetard-4x4",
            "chetard-conj")


def _parse_exponents(text):
    try:
        exps = [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad exponent list {text!r}")
    if not exps:
        raise argparse.ArgumentTypeError("empty exponent list")
    return exps


def _threads_override():
    """Optional GAMMAFILT_THREADS; the only environment knob."""
    raw = os.environ.get("GAMMAFILT_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InvalidParamsError(f"GAMMAFILT_THREADS={raw!r} is not an int")
    if n < 1:
        raise InvalidParamsError("GAMMAFILT_THREADS must be >= 1")
    return n


def build_parser():
    top = argparse.ArgumentParser(
        prog="gammafilt",
        description="gamma filtrations of R(G), presentation verification, "
                    "and K-theory formal-group-law certificates")
    top.add_argument("--version", action="version", version=__version__)
    subs = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("table", "json"),
                       default="table", help="stdout rendering")
        p.add_argument("--out", help="also write the JSON report here")

    p = subs.add_parser("grgamma", help="graded ring of one group")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--exponents", type=_parse_exponents, required=True,
                   help="comma-separated cyclic factor exponents, e.g. 2,2")
    p.add_argument("--max-degree", type=int, default=24)
    p.add_argument("--size-budget", type=int, default=None,
                   help="override the |G| budget")
    common(p)

    p = subs.add_parser("verify", help="compare a preset against ground truth")
    p.add_argument("--preset", choices=_PRESETS, required=True)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=24)
    common(p)

    p = subs.add_parser("fgl", help="formal-group-law computations")
    fsubs = p.add_subparsers(dest="fgl_command", required=True)
    for name, need_r in (("pseries", True), ("sr", True), ("star", False),
                         ("y1p", False), ("descent", False),
                         ("dickson", False)):
        fp = fsubs.add_parser(name)
        fp.add_argument("--p", type=int, required=True)
        if need_r:
            fp.add_argument("--r", type=int, required=True)
        if name == "descent":
            fp.add_argument("--k-cap", type=int, default=None)
        common(fp)

    p = subs.add_parser("gamma-vs-ideal",
                        help="span equality of the filtration definitions")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--exponents", type=_parse_exponents, required=True)
    p.add_argument("--max-n", type=int, default=6)
    common(p)
    return top


def _factors_list(f):
    return [int(d) for d in f]


def _degree_row(rec):
    po = rec.presentation_factors.order()
    go = rec.groundtruth_factors.order()
    return {
        "degree": rec.degree,
        "presentation_factors": _factors_list(rec.presentation_factors),
        "presentation_order": po,
        "groundtruth_factors": _factors_list(rec.groundtruth_factors),
        "groundtruth_order": go,
        "match": rec.match,
    }


def _report(command, config, payload, verdict, timings):
    doc = {
        "schema": 1,
        "tool": {"name": "gammafilt", "version": __version__},
        "command": command,
        "config": config,
        "verdict": verdict,
        "timings": timings,
    }
    doc.update(payload)
    return doc


# ---------------------------------------------------------------------------
# subcommand bodies; each returns (report dict, exit code)


def cmd_grgamma(args):
    t0 = time.perf_counter()
    kwargs = {}
    if args.size_budget is not None:
        kwargs["size_budget"] = args.size_budget
    g = AbelianPGroup(args.p, args.exponents, **kwargs)
    t1 = time.perf_counter()
    table = gr_gamma(g, args.max_degree)
    t2 = time.perf_counter()
    degrees = []
    for deg, factors in table:
        degrees.append({
            "degree": deg,
            "invariant_factors": _factors_list(factors),
            "order": factors.order(),
        })
    config = {"p": args.p, "exponents": list(args.exponents),
              "max_degree": args.max_degree}
    timings = {"setup": t1 - t0, "ground_truth": t2 - t1,
               "total": time.perf_counter() - t0}
    return _report("grgamma", config, {"degrees": degrees}, True,
                   timings), EXIT_OK


def _resolve_verify(args):
    """(group, presentation, extra payload) for one preset."""
    preset = args.preset
    extra = {}

    def need(flag, value, default=None):
        if value is None:
            if default is None:
                raise InvalidParamsError(
                    f"preset {preset} requires --{flag}")
            return default
        return value

    if preset == "thm1.2":
        p = need("p", args.p, 2)
        g = AbelianPGroup(p, [2, 2])
        pres = thm12(p)
    elif preset == "thm1.1":
        p = need("p", args.p, 2)
        r = need("r", args.r, 1)
        n = need("n", args.n, 2)
        g = AbelianPGroup(p, [r] * n)
        pres = thm11(p, r, n)
    elif preset == "old-thm1.1":
        q = need("q", args.q)
        n = need("n", args.n, 2)
        p, r = _prime_power(q)
        g = AbelianPGroup(p, [r] * n)
        pres = old_thm11(q, n)
    elif preset == "thm3.1":
        p = need("p", args.p)
        r = need("r", args.r)
        lead, corr = fgl.derive_sr(p, r)
        g = AbelianPGroup(p, [r, 1])
        pres = thm13(p, r, lead)
        extra["s_r"] = render_poly(lead, var_names(2))
        extra["s_r_corrections"] = render_series(corr)
        extra["corrections"] = corr
    elif preset == "chetard-conj":
        r = need("r", args.r)
        g = AbelianPGroup(2, [r, 1])
        pres = chetard_conj(r)
    else:
        g = AbelianPGroup(2, [2, 2])
        pres = chetard44()
    return g, pres, extra


def _prime_power(q):
    if q < 2:
        raise InvalidParamsError(f"--q must be >= 2, got {q}")
    for p in (2, 3, 5, 7, 11, 13):
        if q % p == 0:
            r = 0
            m = q
            while m % p == 0:
                m //= p
                r += 1
            if m != 1:
                break
            return p, r
    raise InvalidParamsError(f"--q must be a prime power, got {q}")


def cmd_verify(args):
    t0 = time.perf_counter()
    g, pres, extra = _resolve_verify(args)
    corrections = extra.pop("corrections", None)
    t1 = time.perf_counter()
    report = compare(pres, g, max_topdeg=args.max_degree,
                     threads=args.threads)
    augmented = []
    if not report.verdict and corrections is not None:
        # retry with the correction terms appended as relation candidates:
        # each v1^k layer of the reduction tail is itself a homogeneous
        # y-polynomial one degree step deeper per k
        from .gradedpres import GradedPresentation
        rels = list(pres.relations)
        for k in range(1, (corrections.max_v1() or 0) + 1):
            part = corrections.v1_part(k)
            if part.is_zero():
                continue
            poly = part.poly_part()
            rels.append(poly)
            augmented.append(render_poly(poly, var_names(2)))
        if augmented:
            pres = GradedPresentation(pres.n_vars, rels)
            report = compare(pres, g, max_topdeg=args.max_degree,
                             threads=args.threads)
    t2 = time.perf_counter()

    payload = {
        "preset": args.preset,
        "group": {"p": g.p, "exponents": list(g.exponents)},
        "relations": pres.relation_texts(),
        "augmented_relations": augmented,
        "degrees": [_degree_row(rec) for rec in report.degrees],
        "certificates": [
            {"relation": c.relation,
             "required_filtration": c.required_filtration,
             "achieved": c.achieved,
             "depth": c.depth}
            for c in report.relation_certificates],
        "first_mismatch": None,
    }
    payload.update(extra)
    fm = report.first_mismatch
    if fm is not None:
        payload["first_mismatch"] = {
            "degree": fm.degree,
            "presentation_order": fm.presentation_factors.order(),
            "groundtruth_order": fm.groundtruth_factors.order(),
        }
    config = {"preset": args.preset, "max_degree": args.max_degree}
    for flag in ("p", "q", "n", "r"):
        v = getattr(args, flag)
        if v is not None:
            config[flag] = v
    timings = {"setup": t1 - t0, "comparison": t2 - t1,
               "total": time.perf_counter() - t0}
    code = EXIT_OK if report.verdict else EXIT_REFUTED
    return _report("verify", config, payload, report.verdict,
                   timings), code


def cmd_fgl(args):
    t0 = time.perf_counter()
    sub = args.fgl_command
    p = args.p
    config = {"subcommand": sub, "p": p}
    payload = {}
    code = EXIT_OK
    verdict = True
    if sub == "pseries":
        config["r"] = args.r
        series = fgl.p_series(p, args.r, p ** args.r)
        payload["series"] = render_series(series, names=("y", "y2"))
    elif sub == "sr":
        config["r"] = args.r
        lead, corr = fgl.derive_sr(p, args.r)
        payload["leading"] = render_poly(lead, var_names(2))
        payload["corrections"] = render_series(corr)
        jmin = (args.r - 1) * (p - 1) + 2
        payload["congruence_modulus"] = f"y1^2*y2^{jmin}"
    elif sub == "star":
        series = fgl.star_identity(p)
        payload["series"] = render_series(series)
        payload["checks"] = {
            "no_v1_0_term": True,
            "v1_coefficient_is_p_y1_mod_p2": True,
            "v1_coefficient_exact":
                render_poly(series.v1_part(1).poly_part(), var_names(2)),
            "v1_p_plus_1_coefficient_is_y2": True,
            "other_terms_divisible_by_p2": True,
        }
    elif sub == "y1p":
        series = fgl.y1p_identity(p)
        payload["series"] = render_series(series)
        payload["checks"] = {
            "v1_0_part_is_minus_p2_y1": True,
            "v1_p_plus_1_part_is_y1_pth_power_mod_p": True,
            "other_terms_divisible_by_p2": True,
        }
    elif sub == "descent":
        try:
            cert = fgl.descent_check(p, args.k_cap)
        except CertificateFailureError as exc:
            payload["member"] = False
            payload["residual"] = [int(x) for x in (exc.residual or [])]
            payload["error"] = str(exc)
            verdict = False
            code = EXIT_REFUTED
        else:
            payload["member"] = True
            payload["target"] = cert.target_text
            payload["generators"] = list(cert.generators)
            payload["dimension"] = cert.dimension
            payload["span_rows"] = cert.n_span_rows
            payload["k_cap"] = cert.k_cap
    else:
        quo = fgl.dickson_quotient(p)
        payload["quotient"] = render_poly(quo, var_names(2))
        payload["restriction_y2_zero"] = render_poly(
            fgl.restrict(quo, axis=1), var_names(2))
        from .polys import IntPolynomial
        y1 = IntPolynomial.variable(2, 0)
        y2 = IntPolynomial.variable(2, 1)
        trans = quo.substituted({0: y1 + y2, 1: y2}).reduced_mod(p)
        swap = quo.substituted({0: y2, 1: y1}).reduced_mod(p)
        payload["transvection_invariant"] = trans == quo.reduced_mod(p)
        payload["swap_invariant"] = swap == quo.reduced_mod(p)
        if not (payload["transvection_invariant"]
                and payload["swap_invariant"]):
            verdict = False
            code = EXIT_REFUTED
    timings = {"total": time.perf_counter() - t0}
    return _report("fgl", config, payload, verdict, timings), code


def cmd_gamma_vs_ideal(args):
    t0 = time.perf_counter()
    g = AbelianPGroup(args.p, args.exponents)
    checks = []
    all_equal = True
    timings = {}
    for n in range(1, args.max_n + 1):
        tn = time.perf_counter()
        equal = gamma_span(g, n, n + 2) == ideal_power(g, n)
        checks.append({"n": n, "equal": equal})
        timings[f"n_{n}"] = time.perf_counter() - tn
        all_equal = all_equal and equal
    config = {"p": args.p, "exponents": list(args.exponents),
              "max_n": args.max_n}
    timings["total"] = time.perf_counter() - t0
    payload = {"checks": checks}
    code = EXIT_OK if all_equal else EXIT_REFUTED
    return _report("gamma-vs-ideal", config, payload, all_equal,
                   timings), code


# ---------------------------------------------------------------------------
# rendering


def render_json(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _fmt_factors(fs):
    return "(" + ", ".join(str(d) for d in fs) + ")"


def render_table(doc):
    lines = [f"gammafilt {doc['tool']['version']} - {doc['command']}"]
    cfg = doc["config"]
    lines.append("config: " + ", ".join(
        f"{k}={cfg[k]}" for k in sorted(cfg)))
    if "degrees" in doc and doc["command"] == "grgamma":
        lines.append(f"{'degree':>6}  {'factors':<24} order")
        for row in doc["degrees"]:
            order = row["order"] if row["order"] is not None else "-"
            lines.append(f"{row['degree']:>6}  "
                         f"{_fmt_factors(row['invariant_factors']):<24} "
                         f"{order}")
    elif doc["command"] == "verify":
        lines.append(f"{'degree':>6}  {'presentation':<20} "
                     f"{'ground truth':<20} match")
        for row in doc["degrees"]:
            lines.append(
                f"{row['degree']:>6}  "
                f"{_fmt_factors(row['presentation_factors']):<20} "
                f"{_fmt_factors(row['groundtruth_factors']):<20} "
                f"{'yes' if row['match'] else 'NO'}")
        for cert in doc["certificates"]:
            ok = "ok" if cert["achieved"] else "FAILED"
            lines.append(f"relation {cert['relation']} in filtration "
                         f">= {cert['required_filtration']}: {ok}")
        fm = doc.get("first_mismatch")
        if fm:
            lines.append(
                f"first mismatch at degree {fm['degree']}: order "
                f"{fm['presentation_order']} vs {fm['groundtruth_order']}")
    elif doc["command"] == "gamma-vs-ideal":
        for row in doc["checks"]:
            lines.append(f"n={row['n']}: "
                         f"{'equal' if row['equal'] else 'DIFFER'}")
    else:
        for key in sorted(doc):
            if key in ("schema", "tool", "command", "config", "timings",
                       "verdict"):
                continue
            lines.append(f"{key}: {doc[key]}")
    lines.append(f"verdict: {doc['verdict']}")
    return "\n".join(lines) + "\n"


_DISPATCH = {
    "grgamma": cmd_grgamma,
    "verify": cmd_verify,
    "fgl": cmd_fgl,
    "gamma-vs-ideal": cmd_gamma_vs_ideal,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.threads = _threads_override()
        doc, code = _DISPATCH[args.command](args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidParamsError, ArityMismatchError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IdentityAssertionError, CertificateFailureError) as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    text = render_json(doc) if args.format == "json" else render_table(doc)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(render_json(doc))
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
