"""Command line entry point: ``prunetest run|sweep|stats``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from prunetest.pipeline import RunConfig, read_report, run


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="CoNLL-U corpus, or raw sentences (one per line) with --parser-url")
    p.add_argument("--parser-url", help="HTTP parser endpoint; switches input to raw text")
    p.add_argument("--translator", default="identity",
                   help="identity | dict:<path> | cache:<path> | http:<url> | fault:<spec>")
    p.add_argument("--target-lang", default="zh")
    p.add_argument("-t", "--threshold", type=int, default=0)
    p.add_argument("--max-depth", type=int, default=10)
    p.add_argument("--max-sentences", type=int, default=64)
    p.add_argument("--seed", type=int, default=0, help="seed for fault backends without an explicit seed")
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--policy", help="JSON file overriding relation actions")
    p.add_argument("--rate", type=float, help="max requests per second for the http backend")
    p.add_argument("--cache", help="JSONL translation cache for the http backend")
    p.add_argument("-v", "--verbose", action="store_true")


def _config(args, output=None) -> RunConfig:
    return RunConfig(
        input_path=args.input,
        input_kind="raw" if args.parser_url else "conllu",
        parser_url=args.parser_url,
        translator=args.translator,
        target_lang=args.target_lang,
        threshold=args.threshold,
        max_depth=args.max_depth,
        max_sentences=args.max_sentences,
        output_path=output,
        seed=args.seed,
        workers=args.workers,
        policy_path=args.policy,
        rate=args.rate,
        cache_path=args.cache,
    )


def _print_timings(report) -> None:
    for stage, seconds in report.timings.items():
        print(f"{stage:>26}: {seconds:.4f}s", file=sys.stderr)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="prunetest", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the pipeline and write a JSONL issue report")
    _add_run_flags(p_run)
    p_run.add_argument("-o", "--output", required=True)

    p_sweep = sub.add_parser("sweep", help="issue counts for t = 0, 2, ..., 12 as CSV")
    _add_run_flags(p_sweep)
    p_sweep.add_argument("-o", "--output", help="CSV path (stdout if omitted)")

    p_stats = sub.add_parser("stats", help="summarise a JSONL report")
    p_stats.add_argument("report")

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING)

    if args.command == "stats":
        header, issues = read_report(args.report)
        print(json.dumps({"stats": header["stats"], "issues_in_file": len(issues)}, indent=2, ensure_ascii=False))
        return 0

    try:
        if args.command == "run":
            report = run(_config(args, args.output))
            print(f"{report.stats['issues_count']} issue(s) written to {args.output}")
        else:
            report = run(_config(args))
            text = report.sweep_csv()
            if args.output:
                with open(args.output, "w", encoding="utf-8") as f:
                    f.write(text)
            else:
                sys.stdout.write(text)
    except (OSError, ValueError) as exc:
        print(f"prunetest: error: {exc}", file=sys.stderr)
        return 2
    _print_timings(report)
    return 0


if __name__ == "__main__":
    sys.exit(main())
