#!/usr/bin/env python3
"""启动脚本：codeglab 命令行。

示例：
    python main.py analyze --builtin symmetric:4 --prime 2
    python main.py chartab --builtin mathieu11
    python main.py classify --file g.pgr --prime 5
    python main.py verify-corpus --workers 4 --out reports.json
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from dotenv import load_dotenv
from pydantic import ValidationError

from codeglab.cli.app import EXIT_DATA, fail, run
from codeglab.cli.schemas import RunConfig


class _Parser(argparse.ArgumentParser):
    """用法错误统一为退出码 1 和一行 error: usage: ..."""

    def error(self, message: str) -> None:  # type: ignore[override]
        fail("usage", message)
        raise SystemExit(EXIT_DATA)


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", help="Builtin group, e.g. symmetric:4, sl2:9, mathieu11")
    src.add_argument("--file", help="Path to a .pgr generator file")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="Also write the output to this file")
    p.add_argument("--log-level", default=None, help="Log level (default: $CODEGLAB_LOG_LEVEL or warning)")
    p.add_argument("--timings", action="store_true", help="Include per-phase timings in reports")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="codeglab", description="Character degrees vs codegrees: decision procedures and cross-checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    analyze = sub.add_parser("analyze", help="Cross-check one group at the given primes")
    _add_source(analyze)
    analyze.add_argument("--prime", type=int, action="append", dest="primes", required=True, help="Prime p (repeatable)")
    _add_common(analyze)

    chartab = sub.add_parser("chartab", help="Dump the exact character table")
    _add_source(chartab)
    _add_common(chartab)

    classify = sub.add_parser("classify", help="Structural classification only (no character table)")
    _add_source(classify)
    classify.add_argument("--prime", type=int, action="append", dest="primes", required=True, help="Prime p (repeatable)")
    _add_common(classify)

    verify = sub.add_parser("verify-corpus", help="Run cross-checks and hereditary checks over the corpus manifest")
    verify.add_argument("--manifest", default=None, help="Manifest JSON (default: $CODEGLAB_MANIFEST or the shipped corpus)")
    verify.add_argument("--workers", type=int, default=None, help="Worker processes (default: $CODEGLAB_WORKERS or CPU count)")
    verify.add_argument("--fail-fast", action="store_true", help="Stop at the first failing pair")
    verify.add_argument("--progress", action="store_true", help="Show a progress bar on stderr")
    _add_common(verify)
    return p


def _default_workers() -> int:
    env = os.getenv("CODEGLAB_WORKERS")
    if env:
        try:
            return int(env)
        except ValueError:
            fail("usage", f"CODEGLAB_WORKERS must be an integer: {env!r}")
            raise SystemExit(EXIT_DATA)
    return os.cpu_count() or 1


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    level = (args.log_level or os.getenv("CODEGLAB_LOG_LEVEL") or "warning").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )

    options = vars(args)
    options.pop("log_level", None)
    if args.command == "verify-corpus" and options.get("workers") is None:
        try:
            options["workers"] = _default_workers()
        except SystemExit as exc:
            return int(exc.code)
    try:
        config = RunConfig(**{k: v for k, v in options.items() if v is not None})
    except ValidationError as exc:
        fail("usage", exc.errors()[0]["msg"].removeprefix("Value error, "))
        return EXIT_DATA
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
