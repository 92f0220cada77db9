"""Command line entry point: one-shot evaluation, REPL and batch fixtures."""
from __future__ import annotations

import argparse
import json
import sys

from ..errors import SurrealError
from .session import Session, SessionConfig, render, render_error


def build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surreals", description="Exact surreal-number calculator.")
    p.add_argument("expr", nargs="*", help="expression to evaluate; starts a REPL when omitted")
    p.add_argument("--mode", choices=("exact", "truncated"), default="exact")
    p.add_argument("--order", type=int, default=4, metavar="K", help="truncation order")
    p.add_argument("--oracle-depth", type=int, default=7, metavar="N",
                   help="birthday bound for the Conway oracle")
    p.add_argument("--eps-ceiling", type=int, default=8, metavar="K",
                   help="largest epsilon atom index accepted")
    p.add_argument("--batch", metavar="FILE", help="JSON array of {input, expect, tag} fixtures")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def evaluate_line(session: Session, line: str, fmt: str) -> tuple:
    """(ok, output text) for one input line."""
    try:
        return True, render(session.run(line), fmt)
    except (SurrealError, ValueError) as err:
        return False, render_error(err)


def _matches(ok: bool, output: str, expect) -> bool:
    if expect is None:
        return ok
    if isinstance(expect, str) and expect.startswith("error"):
        wanted = expect.split(":", 1)[1].strip() if ":" in expect else ""
        return not ok and wanted in output
    if not isinstance(expect, str):
        expect = json.dumps(expect, sort_keys=True)
    return ok and output == expect


def run_batch(path: str, config: SessionConfig, fmt: str) -> dict:
    with open(path) as fh:
        fixtures = json.load(fh)
    session = Session(config)
    results = []
    for fx in fixtures:
        ok, out = evaluate_line(session, fx["input"], fmt)
        results.append({
            "tag": fx.get("tag"), "input": fx["input"], "output": out,
            "expect": fx.get("expect"), "pass": _matches(ok, out, fx.get("expect")),
        })
    passed = sum(r["pass"] for r in results)
    return {"results": results, "passed": passed, "failed": len(results) - passed}


def repl(session: Session, fmt: str, stdin=sys.stdin, stdout=sys.stdout):
    interactive = stdin.isatty()
    while True:
        if interactive:
            stdout.write("surreal> ")
            stdout.flush()
        line = stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith(":"):
            cmd, *rest = line[1:].split()
            if cmd in ("q", "quit", "exit"):
                break
            try:
                if cmd == "show":
                    print(session.config, file=stdout)
                else:
                    session.set_option(cmd, rest[0] if rest else "")
            except (SurrealError, ValueError, IndexError) as err:
                print(render_error(err), file=stdout)
            continue
        print(evaluate_line(session, line, fmt)[1], file=stdout)


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        config = SessionConfig(args.mode, args.order, args.oracle_depth, args.eps_ceiling)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if args.batch:
        report = run_batch(args.batch, config, args.format)
        print(json.dumps(report, indent=2))
        return 0 if report["failed"] == 0 else 1
    session = Session(config)
    if args.expr:
        ok, out = evaluate_line(session, " ".join(args.expr), args.format)
        print(out)
        return 0 if ok else 1
    repl(session, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
