"""Command-line front end.

Commands: ``synth`` (build the product function and export JSON/CSV),
``verify`` (exit 0 iff the synthesized sections match the envelopes exactly),
``sections`` (exact tail sections of a spec with limit/tail directives),
``rank`` (scattered rank of an ordinal literal), and ``alphat-demo``.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .alphat import at_baire_one_cocountable, at_is_continuous, at_sections, diag_example
from .builder import synthesize, verify_synthesis
from .sections import brute_sections, tail_sections
from .spaces import OrdinalCompact, parse_ordinal, scattered_rank
from .specdsl import (
    SpecError,
    family_from_spec,
    grid_from_spec,
    parse_spec,
    tail_family_from_spec,
)

OK, VERIFY_FAILED, PARSE_ERROR, IO_ERROR = 0, 1, 2, 3


def _load_spec(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_spec(text)


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


def cmd_synth(args: argparse.Namespace) -> int:
    ast = _load_spec(args.spec)
    family = family_from_spec(ast)
    grid = grid_from_spec(ast, args.grid)
    f = synthesize(family)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "function.json").write_text(
        json.dumps(f.to_json(), indent=2) + "\n", encoding="utf-8"
    )
    _write_csv(
        out / "samples.csv",
        ["x", "y", "value", "value_float"],
        f.sample_rows(grid, args.samples),
    )
    print(f"wrote {out / 'function.json'} and {out / 'samples.csv'}")
    return OK


def cmd_verify(args: argparse.Namespace) -> int:
    ast = _load_spec(args.spec)
    family = family_from_spec(ast)
    grid = grid_from_spec(ast, args.grid)
    report = verify_synthesis(synthesize(family), family, grid)
    for failure in report.failures:
        print(f"FAIL {failure}")
    print(
        f"verified {len(report.entries)} grid points: "
        + ("all sections match" if report.passed else f"{len(report.failures)} failures")
    )
    return OK if report.passed else VERIFY_FAILED


def cmd_sections(args: argparse.Namespace) -> int:
    ast = _load_spec(args.spec)
    family = tail_family_from_spec(ast)
    grid = grid_from_spec(ast, args.grid)
    if args.brute is not None:
        pair, bound = brute_sections(family, args.brute, grid)
        data = pair.to_json()
        data["bound"] = f"{bound.numerator}/{bound.denominator}"
    else:
        pair = tail_sections(family, grid)
        data = pair.to_json()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "sections.json").write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        _write_csv(out / "sections.csv", ["x", "g", "h", "min_witness", "max_witness"], pair.rows())
        print(f"wrote {out / 'sections.json'} and {out / 'sections.csv'}")
    else:
        print(json.dumps(data, indent=2))
    return OK


def cmd_rank(args: argparse.Namespace) -> int:
    try:
        top = parse_ordinal(args.ordinal)
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    print(scattered_rank(OrdinalCompact(top)))
    return OK


def cmd_alphat_demo(args: argparse.Namespace) -> int:
    f = diag_example()
    for region in ("T0", "T1", "T2", "infinity"):
        verdict = at_is_continuous(f.x_section(region))
        print(f"x-section over {region}: {'continuous' if verdict.ok else 'discontinuous'}")
    lo, hi = at_sections(f)
    for name, func in (("h = χ_{T1}", hi), ("g = -χ_{T2}", lo)):
        baire = at_baire_one_cocountable(func)
        print(f"{name}: {'Baire-one candidate' if baire is not None else 'not Baire-one'}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hahnforge",
        description="Exact envelope pairs and separately continuous synthesis on [0,1] x alphaN",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize and export the product function")
    synth.add_argument("spec")
    synth.add_argument("--grid", type=int, default=None, help="grid denominator (default 64)")
    synth.add_argument("--samples", type=int, default=32, help="naturals per slice in the CSV")
    synth.add_argument("--out", default="out", help="output directory")
    synth.set_defaults(func=cmd_synth)

    verify = sub.add_parser("verify", help="synthesize, then check sections == envelopes")
    verify.add_argument("spec")
    verify.add_argument("--grid", type=int, default=None)
    verify.set_defaults(func=cmd_verify)

    sections = sub.add_parser("sections", help="exact tail sections of a slice family")
    sections.add_argument("spec")
    sections.add_argument("--grid", type=int, default=None)
    sections.add_argument("--brute", type=int, default=None, help="enumerate up to this cutoff")
    sections.add_argument("--out", default=None)
    sections.set_defaults(func=cmd_sections)

    rank = sub.add_parser("rank", help="scattered rank of an ordinal literal like 'w^2*3'")
    rank.add_argument("ordinal")
    rank.set_defaults(func=cmd_rank)

    demo = sub.add_parser("alphat-demo", help="diagonal example on an uncountable discrete space")
    demo.set_defaults(func=cmd_alphat_demo)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"parse error: {exc} [{exc.kind}]", file=sys.stderr)
        return PARSE_ERROR
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
