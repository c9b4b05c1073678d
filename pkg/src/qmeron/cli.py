"""Command line: ``qmeron verify <id>`` and ``qmeron list``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .report import run_scenario
from .scalars import ScalarError, parse_rational
from .scenarios import ScenarioError, get_scenario, list_scenarios

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ScalarError as exc:
        raise UsageError(str(exc)) from exc


def _param(text: str) -> tuple[str, Fraction]:
    if "=" not in text:
        raise UsageError(f"--param expects name=p/r, got {text!r}")
    name, value = text.split("=", 1)
    return name.strip(), _rational(value)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qmeron", description="exact verification of classical and quantum meron solutions")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run one scenario")
    v.add_argument("scenario")
    v.add_argument("--param", action="append", default=[], metavar="NAME=P/R")
    v.add_argument("--q", metavar="P/R", help="exact rational q in (0, 1)")
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--out", metavar="FILE")
    ls = sub.add_parser("list", help="list the scenario catalog")
    ls.add_argument("--format", choices=("json", "text"), default="text")
    return ap


def catalog_json() -> str:
    items = []
    for s in list_scenarios():
        items.append(
            {
                "id": s.id,
                "description": s.description,
                "paper_anchors": list(s.anchors),
                "parameters": [
                    {
                        "name": p.name,
                        "description": p.description,
                        "default": "symbolic" if p.default is None else str(p.default),
                        "admissible": p.admissible(),
                    }
                    for p in s.params
                ]
                + [{"name": "q", "description": "deformation parameter", "default": "symbolic", "admissible": "rational in (0, 1)"}],
                "expected": s.expected,
            }
        )
    return json.dumps(items, ensure_ascii=False, indent=2) + "\n"


def catalog_text() -> str:
    lines = []
    for s in list_scenarios():
        ps = ", ".join(p.name for p in s.params)
        lines.append(f"{s.id:24s} {s.description} [{', '.join(s.anchors)}]" + (f" params: {ps}" if ps else ""))
    return "\n".join(lines) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.command == "list":
            _emit(catalog_json() if args.format == "json" else catalog_text(), None)
            return EXIT_PASS
        scenario = get_scenario(args.scenario)
        params: dict[str, Fraction] = {}
        for item in args.param:
            name, value = _param(item)
            if name == "q":
                raise UsageError("use --q for the deformation parameter")
            if name in params:
                raise UsageError(f"parameter {name} given twice")
            params[name] = value
        q = None
        if args.q is not None:
            q = _rational(args.q)
            if not 0 < q < 1:
                raise UsageError(f"q = {args.q} is outside (0, 1)")
        report = run_scenario(scenario, params, q)
    except (UsageError, ScenarioError) as exc:
        print(f"qmeron: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report.to_json() if args.format == "json" else report.to_text(), args.out)
    return EXIT_PASS if report.status == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
