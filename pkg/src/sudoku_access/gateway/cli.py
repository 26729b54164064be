"""Command line front end.

Subcommands: serve, generate, solve, count, simulate.  Flag defaults
can be overridden through environment variables (SUDOKU_ACCESS_HOST,
_PORT, _ORDER, _DIFFICULTY, _SEED, _CAP).  Exit codes: 0 success,
1 unsolvable input, 2 usage, IO or parse problems.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from ..engine import (
    DIFFICULTIES,
    dumps_grid,
    generate,
    loads_grid,
    new_grid,
    count_solutions,
    solve,
)
from ..errors import SudokuError
from ..scanning import (
    ScanConfig,
    build_scan_tree,
    dumps_transcript,
    load_script,
    simulate,
)
from .server import serve

EXIT_OK = 0
EXIT_UNSOLVABLE = 1
EXIT_USAGE = 2


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"environment variable {name} must be an integer, got {raw!r}")


def _env_str(name: str, fallback: str) -> str:
    return os.environ.get(name, fallback)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sudoku-access",
        description="Accessible Sudoku: puzzle tools and the session gateway",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the socket gateway")
    p.add_argument("--host", default=_env_str("SUDOKU_ACCESS_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=_env_int("SUDOKU_ACCESS_PORT", 7675))
    p.add_argument(
        "--no-timers",
        action="store_true",
        help="disable wall-clock scan ticks (deterministic replay mode)",
    )

    p = sub.add_parser("generate", help="write a puzzle in the text format")
    p.add_argument("--order", type=int, default=_env_int("SUDOKU_ACCESS_ORDER", 3))
    p.add_argument(
        "--difficulty",
        choices=DIFFICULTIES,
        default=_env_str("SUDOKU_ACCESS_DIFFICULTY", "easy"),
    )
    p.add_argument("--seed", type=int, default=_env_int("SUDOKU_ACCESS_SEED", 0))
    p.add_argument("--out", help="output path (stdout when omitted)")

    p = sub.add_parser("solve", help="print the solved grid or UNSOLVABLE")
    p.add_argument("puzzle", help="puzzle file in the text format")

    p = sub.add_parser("count", help="count completions up to a cap")
    p.add_argument("puzzle", help="puzzle file in the text format")
    p.add_argument("--cap", type=int, default=_env_int("SUDOKU_ACCESS_CAP", 2))

    p = sub.add_parser("simulate", help="run a scan script and print the transcript")
    p.add_argument("config", help="JSON scan config (see README)")
    p.add_argument("script", help="line-delimited tick/press script")
    return parser


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def cmd_serve(args) -> int:
    try:
        server = serve(args.host, args.port, tick_scheduling=not args.no_timers)
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"listening on {server.host}:{server.port}", flush=True)
    server.wait()
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        puzzle = generate(args.order, args.difficulty, args.seed)
    except (SudokuError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = dumps_grid(puzzle.grid, seed=puzzle.seed, difficulty=puzzle.difficulty)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args) -> int:
    grid, _, _ = loads_grid(_read_file(args.puzzle))
    solved = solve(grid)
    if solved is None:
        print("UNSOLVABLE")
        return EXIT_UNSOLVABLE
    sys.stdout.write(dumps_grid(solved))
    return EXIT_OK


def cmd_count(args) -> int:
    if args.cap < 1:
        print("error: --cap must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    grid, _, _ = loads_grid(_read_file(args.puzzle))
    print(count_solutions(grid, args.cap))
    return EXIT_OK


def cmd_simulate(args) -> int:
    config_text = _read_file(args.config)
    try:
        raw = json.loads(config_text)
        config = ScanConfig(
            dwell_ms=raw.get("dwell_ms", 800),
            repeat_cycles=raw.get("repeat_cycles", 2),
            sound_enabled=raw.get("sound", True),
            highlight_color=raw.get("highlight_color", "yellow"),
        )
        if "puzzle" in raw and raw["puzzle"]:
            grid, _, _ = loads_grid(_read_file(raw["puzzle"]))
        else:
            grid = new_grid(raw.get("order", 3))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        print(f"error: bad simulate config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        script = load_script(_read_file(args.script))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    tree = build_scan_tree(grid)
    sys.stdout.write(dumps_transcript(simulate(config, tree, script)))
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        handler = {
            "serve": cmd_serve,
            "generate": cmd_generate,
            "solve": cmd_solve,
            "count": cmd_count,
            "simulate": cmd_simulate,
        }[args.command]
        return handler(args)
    except SudokuError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
