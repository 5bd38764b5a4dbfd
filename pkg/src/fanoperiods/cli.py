"""Command-line pipeline.

Subcommands wrap the library one stage at a time (period, fit, ramify,
type, mink, reflexive-check, quantum, regularize, match) plus the batch
driver (survey).  Exit codes: 0 success, 1 computation failure, 2
parse/configuration failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fuchs, minkowski, pf, quantum, survey
from .errors import FanoperiodsError, ParseError
from .laurent import (
    format_period,
    format_polynomial,
    parse_period,
    parse_polynomial,
    period_sequence,
)
from .polytope import parse_polytope


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc}", path=path) from None


def _emit(text: str, output=None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _structured(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _add_format(sub):
    sub.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="human-readable text or canonical JSON",
    )


def _add_fit_flags(sub):
    sub.add_argument("--max-order", type=int, default=6, metavar="K")
    sub.add_argument("--max-degree", type=int, default=12, metavar="Dg")
    sub.add_argument("--slack", type=int, default=10, metavar="s")


def _fit_config(args) -> pf.FitConfig:
    return pf.FitConfig(
        max_order=args.max_order,
        max_degree=args.max_degree,
        slack=args.slack,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanoperiods",
        description="periods of Laurent polynomials and toric Fano manifolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("period", help="classical period sequence of f")
    p.add_argument("polynomial")
    p.add_argument("--terms", type=int, default=None, metavar="M")
    p.add_argument("-o", "--output")
    _add_format(p)

    p = sub.add_parser("fit", help="fit the minimal annihilating operator")
    p.add_argument("period")
    _add_fit_flags(p)
    p.add_argument("-o", "--output")
    _add_format(p)

    p = sub.add_parser("ramify", help="ramification report of an operator")
    p.add_argument("operator")
    _add_format(p)

    p = sub.add_parser("type", help="manifold/orbifold type of L(0)")
    p.add_argument("operator")
    _add_format(p)

    p = sub.add_parser("mink", help="Minkowski polynomials of a polytope")
    p.add_argument("polytope")
    p.add_argument("-o", "--output-dir", default=".")
    _add_format(p)

    p = sub.add_parser("reflexive-check", help="reflexivity/admissibility")
    p.add_argument("polytope")
    _add_format(p)

    p = sub.add_parser("quantum", help="quantum period from toric data")
    p.add_argument("toric")
    p.add_argument("--terms", type=int, default=20, metavar="M")
    p.add_argument("-o", "--output")
    _add_format(p)

    p = sub.add_parser("regularize", help="termwise m! twist of a period")
    p.add_argument("period")
    p.add_argument("-o", "--output")
    _add_format(p)

    p = sub.add_parser("match", help="mirror-match a polynomial and toric data")
    p.add_argument("toric")
    p.add_argument("polynomial")
    p.add_argument("--terms", type=int, default=30, metavar="M")
    p.add_argument("--min-overlap", type=int, default=20)
    p.add_argument(
        "--operators",
        action="store_true",
        help="also fit and compare the operators on both sides",
    )
    _add_fit_flags(p)
    _add_format(p)

    p = sub.add_parser("survey", help="batch pipeline over polytope files")
    p.add_argument("inputs", help="directory of polytope files")
    p.add_argument("--store", required=True, metavar="DIR")
    p.add_argument("--terms", type=int, default=50, metavar="M")
    p.add_argument("--fit-terms", type=int, default=41)
    _add_fit_flags(p)
    p.add_argument("--dedup-depth", type=int, default=20, metavar="N")
    _add_format(p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _dispatch(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FanoperiodsError, ValueError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    return {
        "period": _cmd_period,
        "fit": _cmd_fit,
        "ramify": _cmd_ramify,
        "type": _cmd_type,
        "mink": _cmd_mink,
        "reflexive-check": _cmd_reflexive_check,
        "quantum": _cmd_quantum,
        "regularize": _cmd_regularize,
        "match": _cmd_match,
        "survey": _cmd_survey,
    }[args.command](args)


def _cmd_period(args) -> int:
    f = parse_polynomial(_read(args.polynomial), path=args.polynomial)
    terms = args.terms
    if terms is None:
        terms = 60 if f.dimension >= 3 else 40
    seq = period_sequence(f, terms)
    if args.format == "structured":
        _emit(
            _structured({"coefficients": [str(c) for c in seq]}), args.output
        )
    else:
        _emit(format_period(seq), args.output)
    return 0


def _cmd_fit(args) -> int:
    seq = parse_period(_read(args.period), path=args.period)
    op = pf.fit_operator(seq, _fit_config(args))
    if args.format == "structured":
        payload = {
            "order": op.order,
            "degree": op.tdegree,
            "grid": {
                f"{k} {j}": str(c) for (k, j), c in sorted(op.grid().items())
            },
            "pretty": op.pretty(),
        }
        _emit(_structured(payload), args.output)
    else:
        _emit(pf.format_operator(op), args.output)
    return 0


def _cmd_ramify(args) -> int:
    op = pf.parse_operator(_read(args.operator), path=args.operator)
    report = fuchs.ramification_report(op)
    if args.format == "structured":
        _emit(_structured(report.to_dict()))
    else:
        _emit(report.as_table())
    return 0


def _cmd_type(args) -> int:
    op = pf.parse_operator(_read(args.operator), path=args.operator)
    report = pf.operator_at_zero(op)
    if args.format == "structured":
        payload = {
            "p0": [str(c) for c in report.p0],
            "roots": [[str(r), m] for r, m in report.roots],
            "verdict": report.verdict,
        }
        _emit(_structured(payload))
    else:
        roots = ", ".join(
            (str(r) if m == 1 else f"{r} (x{m})") for r, m in report.roots
        )
        _emit(f"P_0 roots: {roots}\ntype: {report.verdict}")
    return 0


def _cmd_mink(args) -> int:
    p = parse_polytope(_read(args.polytope), path=args.polytope)
    result = minkowski.minkowski_polynomials(p)
    stem = p.id or Path(args.polytope).stem
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for idx, f in enumerate(result.polynomials):
        path = outdir / f"{stem}.mp{idx}.poly"
        path.write_text(format_polynomial(f))
        written.append(str(path))
    provenance = {
        "polytope": stem,
        "count": len(result.polynomials),
        "facet_options": {
            " ".join(map(str, verts)): n
            for verts, n in sorted(result.diagnostics.items())
        },
        "choices": [
            [
                {
                    "facet": " ".join(map(str, verts)),
                    "decomposition": [list(map(list, s)) for s in dec],
                }
                for verts, dec in sorted(choice.items())
            ]
            for choices in result.provenance
            for choice in choices
        ],
        "files": written,
    }
    side = outdir / f"{stem}.provenance.json"
    side.write_text(json.dumps(provenance, indent=2, sort_keys=True) + "\n")
    if args.format == "structured":
        _emit(_structured(provenance))
    elif not result.polynomials:
        lines = ["no Minkowski polynomials: facet without admissible decomposition"]
        for verts, n in sorted(result.diagnostics.items()):
            lines.append(
                f"  facet {' '.join(map(str, verts))}: {n} admissible decompositions"
            )
        _emit("\n".join(lines))
    else:
        _emit("\n".join(written))
    return 0


def _cmd_reflexive_check(args) -> int:
    p = parse_polytope(_read(args.polytope), path=args.polytope)
    payload = {
        "dimension": p.dim(),
        "vertices": [list(v) for v in p.vertices],
        "reflexive": p.is_reflexive(),
        "admissible": p.is_admissible(),
        "lattice_points": len(p.lattice_points()),
    }
    if p.dim() == p.ambient_dimension:
        payload["normalized_volume"] = p.normalized_volume()
    if args.format == "structured":
        _emit(_structured(payload))
    else:
        _emit(
            "\n".join(f"{key}: {value}" for key, value in payload.items())
        )
    return 0


def _cmd_quantum(args) -> int:
    data, bundles = quantum.parse_toric(_read(args.toric), path=args.toric)
    if bundles is None:
        seq = quantum.toric_quantum_period(data, args.terms)
    else:
        seq = quantum.ci_quantum_period(data, bundles, args.terms)
    if args.format == "structured":
        _emit(
            _structured({"coefficients": [str(c) for c in seq]}), args.output
        )
    else:
        _emit(format_period(seq), args.output)
    return 0


def _cmd_regularize(args) -> int:
    seq = parse_period(_read(args.period), path=args.period)
    _emit(format_period(quantum.regularize(seq)), args.output)
    return 0


def _cmd_match(args) -> int:
    data, bundles = quantum.parse_toric(_read(args.toric), path=args.toric)
    f = parse_polynomial(_read(args.polynomial), path=args.polynomial)
    classical = period_sequence(f, args.terms)
    if bundles is None:
        q = quantum.toric_quantum_period(data, args.terms)
    else:
        q = quantum.ci_quantum_period(data, bundles, args.terms)
    verdict = quantum.mirror_match(
        classical,
        q,
        min_overlap=args.min_overlap,
        compare_operators=args.operators,
        fit_cfg=_fit_config(args),
    )
    if args.format == "structured":
        _emit(
            _structured(
                {
                    "matched": verdict.matched,
                    "depth": verdict.depth,
                    "mismatch_index": verdict.mismatch_index,
                    "operators_equal": verdict.operators_equal,
                }
            )
        )
    else:
        _emit(verdict.describe())
    return 0


def _cmd_survey(args) -> int:
    indir = Path(args.inputs)
    if not indir.is_dir():
        raise ParseError("survey input must be a directory", path=args.inputs)
    paths = sorted(p for p in indir.iterdir() if p.is_file())
    config = survey.SurveyConfig(
        terms=args.terms,
        fit_terms=args.fit_terms,
        max_order=args.max_order,
        max_degree=args.max_degree,
        slack=args.slack,
        dedup_depth=args.dedup_depth,
    )
    store = survey.SurveyStore(args.store)
    summary = survey.run_survey(paths, store, config)
    if args.format == "structured":
        _emit(_structured(summary.to_dict()))
    else:
        _emit(summary.describe())
    return 0


if __name__ == "__main__":
    sys.exit(main())
