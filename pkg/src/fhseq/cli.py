"""Command-line front end: ``fhseq {generate,analyze,verify,bounds,cyclotomy}``.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 brute-force length gate exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from typing import Optional, Sequence

import numpy as np

from fhseq.construction import FHSequenceSet, build_partition, build_sequence_set
from fhseq.correlation import GateExceeded, correlation_profile, resolve_gate
from fhseq.cyclotomy import build_params, build_tables, cyclotomic_matrix, verify_structure_lemmas
from fhseq.published import compare_published, is_reference_set
from fhseq.theory import (
    optimality_report,
    verify_average_optimality,
    verify_correlation_distribution,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GATE = 0, 1, 2, 3

# covers e = 2, 4, 6 and both parities of |f1 - f2|
SWEEP = [(3, 5), (3, 7), (5, 17), (5, 13), (7, 13), (7, 19), (13, 17)]


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _stamp(payload: dict, args) -> dict:
    if getattr(args, "timestamp", False):
        payload["generated_at"] = datetime.now(timezone.utc).isoformat()
    return payload


def _fmt_frac(x) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _check_gate(p: int, q: int, args) -> None:
    # refuse before any construction work, so oversized requests fail fast
    if hasattr(args, "force") and not args.force and p * q > resolve_gate(args.gate):
        raise GateExceeded(f"L = {p * q} exceeds the brute-force limit {resolve_gate(args.gate)}")


def _load_set(args) -> FHSequenceSet:
    if getattr(args, "input", None):
        with open(args.input, encoding="utf-8") as fh:
            return FHSequenceSet.from_json_dict(json.load(fh))
    if args.p is None or args.q is None:
        raise UsageError("--p and --q are required")
    _check_gate(args.p, args.q, args)
    return build_sequence_set(build_partition(build_tables(build_params(args.p, args.q, args.g))))


def _profile(seqset, args):
    gate = None if args.force else resolve_gate(args.gate)
    return correlation_profile(seqset, gate=gate, workers=args.workers)


# ---------------------------------------------------------------- commands


def cmd_generate(args) -> int:
    seqset = _load_set(args)
    fmt = args.format or ("digits" if seqset.v <= 10 else "csv")
    if fmt == "digits":
        if seqset.v > 10:
            raise UsageError(f"digits format needs e <= 10, got e = {seqset.v}")
        text = seqset.to_digits()
    elif fmt == "csv":
        text = seqset.to_csv()
    elif fmt == "json":
        text = json.dumps(_stamp(seqset.to_json_dict(), args)) + "\n"
    else:
        prm = seqset.params
        lines = [f"p={prm.p} q={prm.q} e={prm.e} d={prm.d} f1={prm.f1} f2={prm.f2} L={prm.L} g={prm.g} x={prm.x}"]
        lines += [" ".join(map(str, row)) for row in seqset.sequences.tolist()]
        text = "\n".join(lines) + "\n"
    _emit(text, args)
    return EXIT_OK


def cmd_analyze(args) -> int:
    seqset = _load_set(args)
    profile = _profile(seqset, args)
    fmt = args.format or "text"
    if fmt == "csv":
        text = profile.to_csv()
    elif fmt == "json":
        text = _dump(_stamp(profile.to_json_dict(), args))
    elif fmt == "text":
        text = (
            f"p={profile.params.p} q={profile.params.q} M={profile.M} L={profile.L}\n"
            f"H_a = {profile.H_a}, H_c = {profile.H_c}\n"
            f"S_a = {profile.S_a}, S_c = {profile.S_c}\n"
            f"A_a = {_fmt_frac(profile.A_a)}, A_c = {_fmt_frac(profile.A_c)}\n"
            f"A_a ~ {float(profile.A_a):.6f}, A_c ~ {float(profile.A_c):.6f}\n"
        )
    else:
        raise UsageError(f"format {fmt!r} is not available for analyze")
    _emit(text, args)
    return EXIT_OK


def _verify_one(p, q, g, args) -> dict:
    _check_gate(p, q, args)
    prm = build_params(p, q, g)
    tables = build_tables(prm)
    seqset = build_sequence_set(build_partition(tables))
    profile = _profile(seqset, args)
    lemmas = verify_structure_lemmas(tables)
    distribution = verify_correlation_distribution(seqset, tables, profile)
    averages = verify_average_optimality(profile, prm)
    result = {
        "params": prm.to_dict(),
        "lemmas": [rep.to_dict() for rep in lemmas],
        "correlation_distribution": distribution.to_json_dict(),
        "averages": averages.to_json_dict(),
    }
    passed = all(rep.passed for rep in lemmas) and distribution.passed and averages.passed
    if is_reference_set(seqset):
        published = compare_published(seqset, profile)
        result["published_reference"] = published.to_json_dict()
        passed = passed and published.values_agree
    result["passed"] = passed
    return result


def _verify_text(result: dict) -> str:
    prm = result["params"]
    lines = [f"p={prm['p']} q={prm['q']} e={prm['e']} g={prm['g']}"]
    for rep in result["lemmas"]:
        lines.append(f"  {'ok  ' if rep['passed'] else 'FAIL'} {rep['lemma']} ({rep['cases_checked']} cases)")
    dist = result["correlation_distribution"]
    lines.append(
        f"  {'ok  ' if dist['passed'] else 'FAIL'} correlation distribution "
        f"({dist['total_checks']} checks, {len(dist['mismatches'])} mismatches)"
    )
    families = sorted({tag.split('/')[0] for tag in dist["case_tags"]})
    lines.append(f"       branch families: {', '.join(families)}")
    av = result["averages"]
    lines.append(f"  {'ok  ' if av['passed'] else 'FAIL'} averages and average bound equality")
    if "published_reference" in result:
        pub = result["published_reference"]
        lines.append(f"  {'ok  ' if pub['values_agree'] else 'FAIL'} published reference tables")
        for listing in pub["listings"]:
            for sub in listing["substitutions"]:
                note = "known typo, brute force authoritative" if sub["known_typo"] else "UNEXPECTED"
                lines.append(
                    f"       listing {tuple(listing['pair'])} tau={sub['tau']}: printed {sub['printed']}, "
                    f"computed {sub['computed']} ({note})"
                )
            if listing["insertions"] or listing["deletions"]:
                lines.append(
                    f"       listing {tuple(listing['pair'])}: printed length {listing['printed_length']}, "
                    f"{len(listing['insertions'])} inserted run(s), {len(listing['deletions'])} dropped run(s)"
                )
    lines.append(f"  => {'PASS' if result['passed'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    if args.seed_sweep:
        results = [_verify_one(p, q, None, args) for p, q in SWEEP]
    else:
        if args.p is None or args.q is None:
            raise UsageError("--p and --q are required (or use --seed-sweep)")
        results = [_verify_one(args.p, args.q, args.g, args)]
    passed = all(r["passed"] for r in results)
    fmt = args.format or "text"
    if fmt == "json":
        payload = results[0] if len(results) == 1 else {"runs": results, "passed": passed}
        text = _dump(_stamp(payload, args))
    elif fmt == "text":
        text = "".join(_verify_text(r) for r in results)
    else:
        raise UsageError(f"format {fmt!r} is not available for verify")
    _emit(text, args)
    if not passed:
        path = args.output
        if path is None:
            path = os.path.abspath("fhseq-verify-report.json")
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(_dump({"runs": results, "passed": passed}))
        print(f"verification failed; report: {path}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_bounds(args) -> int:
    seqset = _load_set(args)
    profile = _profile(seqset, args)
    report = optimality_report(profile, seqset.params)
    fmt = args.format or "text"
    if fmt == "json":
        text = _dump(_stamp(report.to_json_dict(), args))
    elif fmt == "text":
        b = report.bounds
        lg = b.lempel_greenberger
        pf = b.peng_fan
        av = b.average_bound
        lines = [
            f"Lempel-Greenberger bound {lg[0].bound}; achieved per sequence "
            f"{[e.achieved for e in lg]}; optimal: {'yes' if report.lg_optimal else 'no'}",
            f"Peng-Fan: lhs {pf.lhs} {'>=' if pf.satisfied else '<'} rhs {pf.rhs}; "
            f"(H_a, H_c) = ({profile.H_a}, {profile.H_c}) Pareto-minimal: {'yes' if pf.minimal_pair else 'no'}; "
            f"minimal pairs {list(pf.pareto_pairs)}",
            f"Average bound: lhs {_fmt_frac(av.lhs)}, rhs {_fmt_frac(av.rhs)}; "
            f"equality: {'yes' if av.met_with_equality else 'no'}",
            f"average-optimal = {'yes' if report.average_optimal else 'no'}, "
            f"LG-optimal = {'yes' if report.lg_optimal else 'no'}, "
            f"Peng-Fan-optimal = {'yes' if report.peng_fan_optimal else 'no'}",
        ]
        text = "\n".join(lines) + "\n"
    else:
        raise UsageError(f"format {fmt!r} is not available for bounds")
    _emit(text, args)
    return EXIT_OK


def cmd_cyclotomy(args) -> int:
    if args.p is None or args.q is None:
        raise UsageError("--p and --q are required")
    prm = build_params(args.p, args.q, args.g)
    tables = build_tables(prm)
    matrix = cyclotomic_matrix(tables)
    minus_one = int(tables.cell_index[prm.L - 1])
    fmt = args.format or "text"
    if fmt == "json":
        payload = {
            "params": prm.to_dict(),
            "classes": [sorted(c.tolist()) for c in tables.classes],
            "P": tables.P.tolist(),
            "Q": tables.Q.tolist(),
            "R": tables.R.tolist(),
            "cyclotomic_numbers": matrix.tolist(),
            "minus_one_class": minus_one,
        }
        text = _dump(_stamp(payload, args))
    elif fmt == "csv":
        rows = ["residue,cell"]
        names = {-1: "P", -2: "Q", -3: "R"}
        for t, code in enumerate(tables.cell_index.tolist()):
            rows.append(f"{t},{names.get(code, f'D{code}')}")
        text = "\n".join(rows) + "\n"
    elif fmt == "text":
        lines = [f"p={prm.p} q={prm.q} e={prm.e} d={prm.d} f1={prm.f1} f2={prm.f2} L={prm.L} g={prm.g} x={prm.x}"]
        for i, c in enumerate(tables.classes):
            lines.append(f"D{i} ({len(c)}): {' '.join(map(str, sorted(c.tolist())))}")
        lines.append(f"P ({len(tables.P)}): {' '.join(map(str, tables.P.tolist()))}")
        lines.append(f"Q ({len(tables.Q)}): {' '.join(map(str, tables.Q.tolist()))}")
        lines.append("R (1): 0")
        lines.append("cyclotomic numbers (i, j), row i, column j:")
        width = max(2, len(str(int(matrix.max()))))
        for i, row in enumerate(matrix.tolist()):
            lines.append(f"  {i:>2} | " + " ".join(f"{v:>{width}}" for v in row))
        lines.append("  column sums: " + " ".join(map(str, np.asarray(matrix).sum(axis=0).tolist())))
        lines.append(f"-1 = {prm.L - 1} lies in D{minus_one}")
        text = "\n".join(lines) + "\n"
    else:
        raise UsageError(f"format {fmt!r} is not available for cyclotomy")
    _emit(text, args)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fhseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="first odd prime")
    common.add_argument("--q", type=int, help="second odd prime")
    common.add_argument("--g", type=int, default=None, help="common primitive root (default: smallest)")
    common.add_argument("--format", choices=["json", "csv", "digits", "text"], default=None)
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    common.add_argument("--timestamp", action="store_true", help="add a generated_at field to JSON output")

    heavy = argparse.ArgumentParser(add_help=False)
    heavy.add_argument("--gate", type=int, default=None,
                       help="brute-force length limit (default $FHSEQ_GATE or 50000)")
    heavy.add_argument("--force", action="store_true", help="ignore the length limit")
    heavy.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    reads = argparse.ArgumentParser(add_help=False)
    reads.add_argument("--input", "-i", default=None, help="sequence set JSON written by 'generate'")

    sub.add_parser("generate", parents=[common], help="build and export the sequence set").set_defaults(
        func=cmd_generate)
    sub.add_parser("analyze", parents=[common, heavy, reads], help="brute-force correlation profile").set_defaults(
        func=cmd_analyze)
    verify = sub.add_parser("verify", parents=[common, heavy], help="check structure, distribution and averages")
    verify.add_argument("--seed-sweep", action="store_true", help="verify the built-in parameter sweep")
    verify.set_defaults(func=cmd_verify)
    sub.add_parser("bounds", parents=[common, heavy, reads], help="evaluate the three correlation bounds").set_defaults(
        func=cmd_bounds)
    sub.add_parser("cyclotomy", parents=[common], help="cyclotomic classes and numbers").set_defaults(
        func=cmd_cyclotomy)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GateExceeded as exc:
        print(f"fhseq: {exc} (use --force or raise --gate / FHSEQ_GATE)", file=sys.stderr)
        return EXIT_GATE
    except (UsageError, ValueError, OSError) as exc:
        print(f"fhseq: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
