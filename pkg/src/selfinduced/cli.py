"""Command line front end: ``selfinduced decide|singularities|rauzy-class|simulate|verify``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .automorphisms import Endomorphism
from .ciet import Ciet, cross_validate, simulate
from .config import DEFAULT, Config
from .decision import ACCEPTED, INCONCLUSIVE, DecisionReport, decide
from .errors import DepthExceededError, InputError, IntervalConnectionError, SelfInducedError
from .prefix_suffix import constant_developments, detect_singularities
from .rauzy import PermutationPair, enumerate_class
from .words import Word

EXIT_INPUT = 3


@dataclass
class InputSpec:
    alphabet: tuple[str, ...]
    rules: dict[str, str]

    def endomorphism(self) -> Endomorphism:
        return Endomorphism.from_strings(self.rules, self.alphabet)


def parse_input(text: str) -> InputSpec:
    """Rules ``x -> word``, one per line; ``#`` starts a comment."""
    rules: dict[str, str] = {}
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise InputError(f"line {lineno}: expected 'x -> word'")
        head, body = (part.strip() for part in line.split("->", 1))
        if len(head) != 1 or head.isspace():
            raise InputError(f"line {lineno}: the left side must be a single symbol, got {head!r}")
        if head in rules:
            raise InputError(f"line {lineno}: duplicate rule for {head!r} (first on line {lines[head]})")
        body = "".join(body.split())
        if not body:
            raise InputError(f"line {lineno}: empty image for {head!r}")
        rules[head] = body
        lines[head] = lineno
    for head, body in rules.items():
        try:
            Word.parse(body, tuple(rules))
        except InputError as exc:
            raise InputError(f"line {lines[head]}: {exc}") from None
    if len(rules) < 2:
        raise InputError(f"need at least 2 rules, found {len(rules)}")
    return InputSpec(tuple(rules), rules)


def read_substitution(path: str) -> Endomorphism:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_input(text).endomorphism()


def _config(args) -> Config:
    cfg = DEFAULT
    if args.max_depth is not None:
        cfg = replace(cfg, max_depth=args.max_depth)
    if args.gamma_cap is not None:
        cfg = replace(cfg, gamma_cap=args.gamma_cap)
    if args.k_max is not None:
        cfg = replace(cfg, k_max=args.k_max)
    if args.tol is not None:
        cfg = replace(cfg, tol=args.tol)
    if args.no_verify:
        cfg = replace(cfg, verify=False)
    return cfg


def _emit(doc: dict, pretty: bool) -> None:
    if pretty:
        print(_render(doc))
    else:
        print(json.dumps(doc, ensure_ascii=False))


def _render(doc: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict) and value:
            lines.append(f"{pad}{key}:")
            lines.append(_render(value, indent + 1))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{pad}{key}:")
            for v in value:
                lines.append(f"{pad}  -")
                lines.append(_render(v, indent + 2))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {', '.join(map(str, value)) or '-'}")
        else:
            lines.append(f"{pad}{key}: {'-' if value is None else value}")
    return "\n".join(lines)


def cmd_decide(args) -> int:
    cfg = _config(args)
    report = decide(read_substitution(args.file), cfg)
    _emit(report.as_dict(), args.pretty)
    return report.exit_code


def cmd_verify(args) -> int:
    cfg = replace(_config(args), verify=False)
    auto = read_substitution(args.file)
    report: DecisionReport = decide(auto, cfg)
    doc = report.as_dict()
    code = report.exit_code
    if report.verdict == ACCEPTED:
        c = Ciet.build(report.pair, report.lengths, auto.alphabet)
        cv = cross_validate(auto, c, cfg.verify_max_len, cfg.verify_depth)
        doc["cross_validation"] = {"ok": cv.ok, "max_len": cv.max_len,
                                   "first_difference": cv.first_difference}
        if not cv.ok:
            code = 1
    _emit(doc, args.pretty)
    return code


def cmd_singularities(args) -> int:
    cfg = _config(args)
    auto = read_substitution(args.file)
    try:
        result = detect_singularities(auto, cfg)
    except DepthExceededError as exc:
        _emit({"verdict": INCONCLUSIVE, "condition": "max-depth", "message": str(exc)}, args.pretty)
        return 2
    doc = {
        "k": result.k,
        "developments": [str(d) for d in constant_developments(auto, 1)],
        "singularities": [s.as_dict() for s in result.singularities],
        "diagnostics": {key: value for key, value in result.diagnostics.items() if key != "developments"},
    }
    _emit(json.loads(json.dumps(doc, default=str)), args.pretty)
    return 0


def cmd_rauzy_class(args) -> int:
    pair = PermutationPair.parse(args.pair)
    cls = enumerate_class(pair)
    _emit(cls.as_dict(), args.pretty)
    return 0


def _parse_lengths(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise InputError(f"lengths must be comma-separated numbers, got {text!r}") from None


def cmd_simulate(args) -> int:
    pair = PermutationPair.parse(args.pair)
    letters = pair.top
    c = Ciet.build(pair, _parse_lengths(args.lengths), letters)
    tol = args.tol if args.tol is not None else DEFAULT.tol
    rows = [{"step": 0, "pair": str(c.pair), "lengths": dict(zip(c.letters, c.lengths))}]
    code = 0
    try:
        traj = simulate(c, args.steps, tol)
    except IntervalConnectionError as exc:
        traj = None
        code = 2
        message = str(exc)
    if traj is not None:
        for i, st in enumerate(traj.steps, 1):
            rows.append({"step": i, "type": st.kind, "twist": str(st.twist), "pair": str(st.ciet.pair),
                         "lengths": dict(zip(st.ciet.letters, st.ciet.lengths))})
    doc = {"letters": list(letters), "trajectory": rows}
    if code:
        doc["message"] = message
    _emit(doc, args.pretty)
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-depth", type=int, help="cap on lazily generated letters")
    common.add_argument("--gamma-cap", type=int, help="γ-orbit iterations per development")
    common.add_argument("--k-max", type=int, help="largest power scanned for singularities")
    common.add_argument("--tol", type=float, help="relative tolerance for numeric comparisons")
    common.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    common.add_argument("--no-verify", action="store_true", help="skip the numeric cross-check")

    parser = argparse.ArgumentParser(
        prog="selfinduced",
        description="Decide whether a positive primitive automorphism comes from a self-induced CIET.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("decide", parents=[common], help="run the decision procedure")
    p.add_argument("file")
    p.set_defaults(func=cmd_decide)
    p = sub.add_parser("singularities", parents=[common], help="list the singularities")
    p.add_argument("file")
    p.set_defaults(func=cmd_singularities)
    p = sub.add_parser("rauzy-class", parents=[common], help="enumerate a Rauzy class")
    p.add_argument("--pair", required=True, help='e.g. "abcd/dacb"')
    p.set_defaults(func=cmd_rauzy_class)
    p = sub.add_parser("simulate", parents=[common], help="numeric Rauzy induction")
    p.add_argument("--pair", required=True)
    p.add_argument("--lengths", required=True, help="comma-separated, in top-row order")
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_simulate)
    p = sub.add_parser("verify", parents=[common], help="decide, then compare factor languages")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SelfInducedError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
