"""Command-line front end.

Exit codes: 0 success (zero matches included), 1 usage error, 2 I/O or parse
error, 3 corrupted index.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from collections.abc import Iterator, Sequence
from typing import Optional

from cartmatch import multi, signature, single, suffixtree
from cartmatch.core import INT64_MAX, INT64_MIN, format_pd, parent_distance
from cartmatch.errors import CorruptIndex, InvalidPattern

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CORRUPT = 3

ENGINES = ("kmp", "signature", "automaton", "index")


class UsageError(Exception):
    pass


class SeriesParseError(Exception):
    def __init__(self, path: str, line: int, column: int, message: str):
        super().__init__(f"{path}:{line}:{column}: {message}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _to_int(token: str, path: str, line: int, column: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise SeriesParseError(path, line, column, f"not an integer: {token!r}") from None
    if not INT64_MIN <= value <= INT64_MAX:
        raise SeriesParseError(path, line, column, f"{token} does not fit in 64 bits")
    return value


def _open(path: str):
    return sys.stdin if path == "-" else open(path, encoding="utf-8", newline="")


def read_series(path: str, column: Optional[str] = None) -> Iterator[int]:
    """Stream integers from a whitespace-separated file or one CSV column.

    ``column`` is a 1-based field number or a header name.  Positions in
    parse errors are 1-indexed (line, character column for plain files,
    field number for CSV).
    """
    fh = _open(path)
    try:
        if column is None:
            for lineno, line in enumerate(fh, 1):
                col = 0
                for token in line.split():
                    col = line.index(token, col)
                    yield _to_int(token, path, lineno, col + 1)
                    col += len(token)
            return
        rows = csv.reader(fh)
        if column.isdigit():
            field_no = int(column)
            if field_no < 1:
                raise UsageError("--column is 1-based")
        else:
            header = next(rows, None)
            if header is None or column not in header:
                raise SeriesParseError(path, 1, 1, f"no column named {column!r}")
            field_no = header.index(column) + 1
        for row in rows:
            lineno = rows.line_num
            if not row:
                continue
            if len(row) < field_no:
                raise SeriesParseError(path, lineno, field_no, "missing field")
            yield _to_int(row[field_no - 1].strip(), path, lineno, field_no)
    finally:
        if fh is not sys.stdin:
            fh.close()


def read_pattern_list(path: str) -> list[list[int]]:
    """One pattern per nonblank line."""
    out = []
    with _open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            col = 0
            pattern = []
            for token in line.split():
                col = line.index(token, col)
                pattern.append(_to_int(token, path, lineno, col + 1))
                col += len(token)
            out.append(pattern)
    return out


class _Text:
    """Re-iterable view of the text; files are re-read, stdin is buffered once."""

    def __init__(self, path: str, column: Optional[str]):
        self.path, self.column = path, column
        self._cache = list(read_series(path, column)) if path == "-" else None

    def __iter__(self):
        if self._cache is not None:
            return iter(self._cache)
        return read_series(self.path, self.column)


def run_match(text, patterns: Sequence[Sequence[int]], engine: str) -> list[tuple[int, int]]:
    if not patterns:
        raise UsageError("at least one pattern is required")
    for pid, p in enumerate(patterns, 1):
        if not p:
            raise UsageError(f"pattern {pid} is empty")
    hits: list[tuple[int, int]] = []
    if engine == "kmp":
        for pid, p in enumerate(patterns, 1):
            hits.extend((i, pid) for i in single.search(iter(text), p))
    elif engine == "signature":
        for pid, p in enumerate(patterns, 1):
            hits.extend((i, pid) for i in signature.signature_search(iter(text), p))
    elif engine == "automaton":
        hits = multi.multi_search(iter(text), multi.build_automaton(patterns))
    elif engine == "index":
        values = list(text)
        if values:
            tree = suffixtree.build(values)
            for pid, p in enumerate(patterns, 1):
                hits.extend((i, pid) for i in suffixtree.query(tree, p))
    else:
        raise UsageError(f"unknown engine {engine!r}")
    return sorted(hits)


def cmd_pd(args) -> int:
    print(format_pd(parent_distance(list(read_series(args.input, args.column)))))
    return EXIT_OK


def cmd_signature(args) -> int:
    values = list(read_series(args.input, args.column))
    if not values:
        raise UsageError("signature needs a nonempty input")
    sig = signature.signature(values)
    print("L", format_pd(sig.L))
    print("D", format_pd(sig.D))
    print("bits", signature.encode_bits(sig.L))
    return EXIT_OK


def cmd_match(args) -> int:
    patterns = []
    if args.pattern is not None:
        patterns.append(list(read_series(args.pattern, args.column)))
    if args.multi is not None:
        patterns.extend(read_pattern_list(args.multi))
    hits = run_match(_Text(args.text, args.column), patterns, args.engine)
    if args.json:
        print(json.dumps([{"position": i, "pattern": j} for i, j in hits]))
    else:
        for i, j in hits:
            print(f"{i}\t{j}")
    return EXIT_OK


def cmd_index_build(args) -> int:
    values = list(read_series(args.text, args.column))
    if not values:
        raise UsageError("cannot index an empty text")
    tree = suffixtree.build(values)
    with open(args.index, "wb") as fh:
        suffixtree.dump(tree, fh)
    return EXIT_OK


def cmd_index_query(args) -> int:
    with open(args.index, "rb") as fh:
        tree = suffixtree.load(fh)
    pattern = list(read_series(args.pattern, args.column))
    if not pattern:
        raise UsageError("pattern is empty")
    if args.any:
        hit = suffixtree.query_any(tree, pattern)
        if hit is not None:
            print(hit)
        return EXIT_OK
    for i in suffixtree.query(tree, pattern):
        print(i)
    return EXIT_OK


def bench(text, pattern: Sequence[int]) -> dict:
    counters = single.SearchCounters()
    n = 0

    def counted():
        nonlocal n
        for c in text:
            n += 1
            yield c

    t0 = time.perf_counter()
    single.search(counted(), pattern, counters)
    elapsed = time.perf_counter() - t0
    report = {
        "n": n,
        "m": len(pattern),
        "seconds": elapsed,
        "matches": counters.matches,
        "comparisons": counters.comparisons,
        "pushes": counters.pushes,
        "back_pops": counters.back_pops,
        "front_pops": counters.front_pops,
        "pops": counters.pops,
        "failure_links": counters.failure_links,
        "max_deque": counters.max_deque,
    }
    report["linear_bounds_ok"] = (
        counters.pushes == n
        and counters.pops <= n
        and counters.failure_links <= n
        and counters.max_deque <= len(pattern)
    )
    return report


def cmd_bench(args) -> int:
    pattern = list(read_series(args.pattern, args.column))
    if not pattern:
        raise UsageError("pattern is empty")
    report = bench(_Text(args.text, args.column), pattern)
    if not args.counters:
        report = {k: report[k] for k in ("n", "m", "seconds", "matches")}
    if args.json:
        print(json.dumps(report))
    else:
        for key, value in report.items():
            print(f"{key}\t{value:.6f}" if isinstance(value, float) else f"{key}\t{value}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cartmatch", description="Cartesian tree matching on integer series.")
    parser.add_argument("--column", help="read this CSV column (1-based number or header name)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pd", help="print the parent-distance representation")
    p.add_argument("input")
    p.set_defaults(func=cmd_pd)

    p = sub.add_parser("signature", help="print the Cartesian tree signature")
    p.add_argument("input")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("match", help="find Cartesian tree matches")
    p.add_argument("text")
    p.add_argument("pattern", nargs="?")
    p.add_argument("--multi", metavar="LIST", help="file with one pattern per line")
    p.add_argument("--engine", choices=ENGINES, default="kmp")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("index", help="build or query a Cartesian suffix tree index")
    isub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    b = isub.add_parser("build")
    b.add_argument("text")
    b.add_argument("index")
    b.set_defaults(func=cmd_index_build)
    q = isub.add_parser("query")
    q.add_argument("index")
    q.add_argument("pattern")
    q.add_argument("--any", action="store_true", help="print a single occurrence")
    q.set_defaults(func=cmd_index_query)

    p = sub.add_parser("bench", help="time the single-pattern matcher")
    p.add_argument("text")
    p.add_argument("pattern")
    p.add_argument("--counters", action="store_true", help="include operation counters")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, InvalidPattern) as exc:
        print(f"cartmatch: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CorruptIndex as exc:
        print(f"cartmatch: corrupted index: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except (OSError, SeriesParseError) as exc:
        print(f"cartmatch: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
