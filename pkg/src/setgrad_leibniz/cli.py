#!/usr/bin/env python3
"""setgrad-leibniz - CLI Entry Point

Batch interface over algebra files: validate the axioms, compute supports,
connections, ideals and decompositions, and check the simplicity criteria.
Machine-readable output with --json; logs always go to stderr.
"""

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from setgrad_leibniz import __version__
from setgrad_leibniz.commands import (
    COMMANDS,
    EXIT_PARSE,
    MODES,
    generate_corpus,
    run_command,
)
from setgrad_leibniz.utils.config import get_settings

# Commands that take extra positional symbols after the file path
SYMBOL_COMMANDS = {
    "star": "two support symbols, e.g. `a b~`",
    "classes": "optional pair of labels to connect",
    "maxlen": "optional pair of cells `a^0 b^1` for a ¬𝕴-connection",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setgrad-leibniz",
        description="Analyses of set-graded Leibniz superalgebras given by structure constants",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Check the axioms of an algebra file
  setgrad-leibniz validate n2.json

  # Full dossier as JSON
  setgrad-leibniz report hsd_so3.json --json

  # Oracle verdict and theorem table with a fixed sampling seed
  setgrad-leibniz simplicity n2.json --mode both --seed 7

  # Write the acceptance corpus
  setgrad-leibniz generate corpus/ --seed 0
""",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--seed", type=int, default=None, help="seed for sampling/generation")
    # the field is part of the file; accepted here only to reject it explicitly
    common.add_argument("--field", default=None, help=argparse.SUPPRESS)

    for name in COMMANDS:
        cmd = sub.add_parser(name, parents=[common], help=f"run `{name}` on an algebra file")
        cmd.add_argument("path", help="algebra file (JSON)")
        if name in SYMBOL_COMMANDS:
            cmd.add_argument("symbols", nargs="*", help=SYMBOL_COMMANDS[name])
        if name in ("lie-annihilator", "maxlen", "report"):
            cmd.add_argument(
                "--include-o", dest="include_o", action=argparse.BooleanOptionalAction,
                default=True, help="quantify over the distinguished label too",
            )
        if name in ("maxlen", "report"):
            cmd.add_argument(
                "--allow-tilde", dest="allow_tilde", action="store_true",
                help="allow tilde symbols in ¬𝕴-connections",
            )
        if name in ("simplicity", "report"):
            cmd.add_argument("--mode", choices=MODES, default="both")

    gen = sub.add_parser("generate", parents=[common], help="write the generated corpus")
    gen.add_argument("out_dir", help="output directory")
    return parser


def render_text(value: object, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}-")
                lines.extend(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


def _scalar(value: object) -> str:
    if value is None:
        return "-"
    if isinstance(value, (dict, list)):
        return "[]" if isinstance(value, list) else "{}"
    return str(value)


def emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, ensure_ascii=False, indent=2))
        return
    print(f"== {report['command']} ==")
    if report.get("input_digest"):
        print(f"input: {report['input_digest']}")
    if not report["success"]:
        print(f"错误: {report.get('error', '')} ({report.get('detail', '')})")
    print("\n".join(render_text(report["results"])))
    if report["checks"]:
        print("checks:")
        for check in report["checks"]:
            state = "n/a" if not check["applicable"] else ("ok" if check["holds"] else "FAILED")
            detail = f"  {check['detail']}" if check["detail"] else ""
            print(f"  [{state}] {check['name']}{detail}")
    print(f"exit: {report['exit_code']}  ({report['wall_time_ms']} ms)")


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()

    # 配置日志输出到 stderr，避免干扰报告输出
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    if args.field is not None:
        print("错误: 不支持 --field，域由代数文件的 field 字段决定", file=sys.stderr)
        return EXIT_PARSE

    if args.command == "generate":
        report = generate_corpus(args.out_dir, args.seed)
    else:
        options = {
            "seed": args.seed,
            "symbols": getattr(args, "symbols", None),
            "include_o": getattr(args, "include_o", True),
            "allow_tilde": getattr(args, "allow_tilde", False),
            "mode": getattr(args, "mode", "both"),
        }
        report = run_command(args.command, args.path, options)
    emit(report, args.json)
    return report["exit_code"]


def main():
    """Main entry point for the CLI command"""
    try:
        sys.exit(run())
    except KeyboardInterrupt:
        logging.info("收到中断信号，退出")
        sys.exit(130)


if __name__ == "__main__":
    main()
