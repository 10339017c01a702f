"""Command-line interface.

Exit codes: 0 analyzed (any verdict), 1 invalid input, 2 internal defect.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import linalg
from .analyzer import AnalysisOptions, AnalysisReport, analyze
from .documents import bundled_fixtures, dumps_json, load_instance, rational_str, report_to_dict
from .errors import InternalDefect, MultispinalError, ValidationError
from .randomized import random_instances
from .selftest import run_selftest

EXIT_OK, EXIT_INVALID, EXIT_DEFECT = 0, 1, 2


def _witness_bound(text: str) -> tuple[int, int]:
    try:
        p, q = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected P,Q (two integers)") from None
    if p < 0 or q < 0:
        raise argparse.ArgumentTypeError("bounds must be nonnegative")
    return p, q


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multispinal",
        description="Decide simplicity of O_G_max for multispinal self-similar groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("analyze", help="analyze an instance file")
    p.add_argument("file", help="instance JSON file, or the name of a bundled fixture")
    add_format(p)
    p.add_argument("--truncation-depth", type=int, default=12, metavar="N")
    p.add_argument("--no-truncation", action="store_true", help="skip the truncation checks")
    p.add_argument("--witness-bound", type=_witness_bound, default=(3, 4), metavar="P,Q",
                   help="max period and preperiod length for the non-Hausdorff witness search")
    p.add_argument("--emit-matrix", action="store_true", help="print the scaled Gram matrix (text format)")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings (output is then not reproducible)")

    p = sub.add_parser("check", help="validate an instance file only")
    p.add_argument("file")
    add_format(p)

    p = sub.add_parser("selftest", help="check the bundled fixtures against their known values")
    add_format(p)

    p = sub.add_parser("random-check", help="cross-check both criteria on seeded random instances")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    add_format(p)

    sub.add_parser("fixtures", help="list bundled fixtures")
    return parser


def format_text(r: AnalysisReport, emit_matrix: bool = False) -> str:
    lines = [
        f"|A| = {r.A_order}, |B| = {r.B_order}, X = {{{', '.join(r.alphabet)}}}, Y = {{{', '.join(r.Y)}}}",
        f"|B·A| = {r.BA_size}, nucleus ({r.nucleus_size} agents): {', '.join(r.nucleus)}",
        "psi:",
    ]
    lines += [f"  psi({a}) = {rational_str(v)}" for a, v in zip(r.A_elements, r.psi)]
    lines.append(f"Gram matrix = (1/{r.scale}) N, det N = {r.scaled_determinant}")
    if emit_matrix:
        width = max(len(str(v)) for row in r.scaled_matrix for v in row)
        lines += ["  " + " ".join(str(v).rjust(width) for v in row) for row in r.scaled_matrix]
    lines += [
        f"Gram matrix positive semidefinite: {r.gram_psd}",
        f"matrix criterion: {r.matrix_criterion}",
        f"kernel criterion: {r.kernel_criterion} (rank {r.kernel_rank} of {r.A_order})",
        f"amenability (sufficient condition): {r.amenability}",
        f"verdict: {r.verdict}",
        f"Kirchberg algebra: {r.kirchberg}",
    ]
    if r.witness is not None:
        w = r.witness
        lines.append(
            f"non-Hausdorff witness: {w.agent} at ({w.period})^inf, escape letter {w.escape}, "
            f"cycle {' -> '.join(w.phases)}"
        )
    elif r.options.witness_period:
        lines.append("non-Hausdorff witness: none within bound")
    if r.truncation is not None:
        lines.append(f"truncation at depth {r.truncation[0].depth if r.truncation else '-'}:")
        for t in r.truncation:
            lines.append(f"  {t.agent}: fixed {t.count}, ratio - psi = {rational_str(t.gap)}")
    if r.timing is not None:
        lines.append("timing: " + ", ".join(f"{k} {v:.4f}s" for k, v in r.timing))
    return "\n".join(lines) + "\n"


def _emit_error(exc: MultispinalError, fmt: str) -> None:
    print(f"{exc.kind}: {exc.message}", file=sys.stderr)
    if fmt == "json":
        sys.stdout.write(dumps_json(exc.to_dict()))


def _analyze(args) -> int:
    period, preperiod = args.witness_bound
    options = AnalysisOptions(
        truncation_depth=None if args.no_truncation else args.truncation_depth,
        witness_period=period,
        witness_preperiod=preperiod,
        timing=args.timing,
    )
    report = analyze(load_instance(args.file), options)
    if args.format == "json":
        sys.stdout.write(dumps_json(report_to_dict(report)))
    else:
        sys.stdout.write(format_text(report, args.emit_matrix))
    return EXIT_OK


def _check(args) -> int:
    inst = load_instance(args.file)
    summary = {
        "valid": True,
        "A_order": inst.A.order,
        "B_order": inst.B.order,
        "alphabet": list(inst.X),
        "Y": [inst.X[y] for y in sorted(inst.Y)],
        "BA_size": len(inst.BA),
        "nucleus_size": len(inst.nucleus),
    }
    if args.format == "json":
        sys.stdout.write(dumps_json(summary))
    else:
        sys.stdout.write(f"valid instance: |A|={inst.A.order}, |B|={inst.B.order}, |X|={len(inst.X)}, "
                         f"Y={summary['Y']}\n")
    return EXIT_OK


def _selftest(args) -> int:
    results = run_selftest()
    if args.format == "json":
        sys.stdout.write(dumps_json({"checks": [{"name": n, "pass": ok} for n, ok in results]}))
    else:
        for name, ok in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_OK if all(ok for _, ok in results) else EXIT_DEFECT


def _random_check(args) -> int:
    opts = AnalysisOptions(truncation_depth=None, witness_period=None)
    verdicts: dict[str, int] = {}
    bad_gram = 0
    for inst in random_instances(args.count, args.seed):
        r = analyze(inst, opts)  # raises CriteriaDisagreement on mismatch
        verdicts[r.verdict] = verdicts.get(r.verdict, 0) + 1
        entries_ok = all(0 <= v <= 1 for row in r.gram for v in row)
        if not (r.gram_psd and entries_ok):
            bad_gram += 1
    payload = {
        "count": args.count,
        "seed": args.seed,
        "criteria_agree": True,
        "gram_property_failures": bad_gram,
        "verdicts": dict(sorted(verdicts.items())),
    }
    if args.format == "json":
        sys.stdout.write(dumps_json(payload))
    else:
        print(f"{args.count} random instances (seed {args.seed}): criteria agree on all")
        print(f"Gram property failures: {bad_gram}")
        for k, v in payload["verdicts"].items():
            print(f"  {k}: {v}")
    return EXIT_OK if bad_gram == 0 else EXIT_DEFECT


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "fixtures":
        for name in bundled_fixtures():
            print(name)
        return EXIT_OK
    handler = {"analyze": _analyze, "check": _check, "selftest": _selftest, "random-check": _random_check}
    try:
        return handler[args.command](args)
    except ValidationError as exc:
        _emit_error(exc, args.format)
        return EXIT_INVALID
    except (InternalDefect, linalg.Singular) as exc:
        _emit_error(exc, args.format)
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())
