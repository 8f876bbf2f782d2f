"""
Command line entry point.

    python cli.py stats DICT
    python cli.py match DICT [TEXT|-] [--engine orientation|threshold] [--witnesses]
                             [--counters PATH] [--online-flush]
    python cli.py triangles GRAPH (--vertex N | --all) [--bounded --alpha N]
    python cli.py bench [--families F ...] [--no-timing] [--output PATH]

Results go to standard output, logs to standard error. Exit status: 0 on success,
1 on invalid input, 2 on I/O errors.
"""
import argparse
import json
import logging
import random
import sys
from typing import BinaryIO, Iterator, List, Optional, TextIO

import settings
from bench import FAMILIES, bench_table
from dictionary import read_dictionary
from entity.occurrence import EngineKind, ReportMode
from errors import GapMatchError
from service.match_service import MatchService
from service.triangle_service import TriangleService
from triangles import read_edge_list

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IO = 2

CHUNK = 1 << 16


def read_symbols(stream: BinaryIO, online: bool) -> Iterator[int]:
    """Bytes of `stream`; in online mode one read per byte, so nothing is read ahead."""
    while True:
        block = stream.read(1 if online else CHUNK)
        if not block:
            return
        yield from block


def cmd_stats(args: argparse.Namespace, out: TextIO) -> int:
    service = MatchService()
    stats = service.stats(read_dictionary(args.dictionary))
    out.write(stats.model_dump_json(indent=2) + "\n")
    return EXIT_OK


def cmd_match(args: argparse.Namespace, out: TextIO) -> int:
    service = MatchService()
    patterns = read_dictionary(args.dictionary)
    mode = ReportMode.WITNESS if args.witnesses else ReportMode.DEDUP
    engine = service.build_engine(patterns, EngineKind(args.engine), mode)

    source: BinaryIO
    if args.text in (None, "-"):
        source = sys.stdin.buffer
    else:
        source = open(args.text, "rb")
    try:
        for _, occurrences in service.stream(engine, read_symbols(source, args.online_flush)):
            for occurrence in occurrences:
                out.write(occurrence.line() + "\n")
            if args.online_flush:
                out.flush()
    finally:
        if source is not sys.stdin.buffer:
            source.close()

    if args.counters:
        with open(args.counters, "w", encoding="utf-8") as f:
            json.dump(engine.counter.summary(), f, indent=2)
    logger.info("Engine summary: %s", engine.summary().model_dump_json())
    return EXIT_OK


def cmd_triangles(args: argparse.Namespace, out: TextIO) -> int:
    graph = read_edge_list(args.graph)
    found = TriangleService().query(
        graph, vertex=args.vertex, everything=args.all, bounded=args.bounded, alpha=args.alpha
    )
    for a, b, c in found:
        out.write(f"{a} {b} {c}\n")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, out: TextIO) -> int:
    frame = bench_table(args.families, seed=args.seed, timing=not args.no_timing, workers=args.workers)
    if args.output:
        frame.to_csv(args.output, index=False)
    else:
        frame.to_csv(out, index=False)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gapmatch", description="Online dictionary matching with one gap.")
    parser.add_argument("--seed", type=int, default=0, help="Seed for every random choice.")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)
    sub = parser.add_subparsers(dest="command", required=True)

    stats = sub.add_parser("stats", help="Dictionary statistics as JSON.")
    stats.add_argument("dictionary")
    stats.set_defaults(handler=cmd_stats)

    match = sub.add_parser("match", help="Stream a text and print occurrences.")
    match.add_argument("dictionary")
    match.add_argument("text", nargs="?", help="Text file; standard input when absent or '-'.")
    match.add_argument("--engine", choices=[k.value for k in EngineKind], default=EngineKind.ORIENTATION.value)
    match.add_argument("--witnesses", action="store_true", help="One line per witness position.")
    match.add_argument("--counters", metavar="PATH", help="Write the work-counter summary as JSON.")
    match.add_argument("--online-flush", action="store_true", help="Flush after every position.")
    match.set_defaults(handler=cmd_match)

    tri = sub.add_parser("triangles", help="Triangle queries over an edge-list graph.")
    tri.add_argument("graph")
    which = tri.add_mutually_exclusive_group(required=True)
    which.add_argument("--vertex", type=int)
    which.add_argument("--all", action="store_true")
    tri.add_argument("--bounded", action="store_true", help="Use the tripartite form and the bounded engine.")
    tri.add_argument("--alpha", type=int, default=0)
    tri.set_defaults(handler=cmd_triangles)

    bench = sub.add_parser("bench", help="Work counters per benchmark family as CSV.")
    bench.add_argument("--families", nargs="*", default=list(FAMILIES), choices=list(FAMILIES))
    bench.add_argument("--no-timing", action="store_true", help="Drop the throughput column.")
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--output", metavar="PATH")
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    random.seed(args.seed)
    out = out or sys.stdout
    try:
        return args.handler(args, out)
    except OSError as e:
        logger.error("I/O error: %s", e)
        return EXIT_IO
    except (GapMatchError, ValueError) as e:
        logger.error("%s", e)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
