"""``rrix``: build, extend and query dynamic r-index files.

Index files hold the reversed collection ``T^R END`` so that appending records
to ``T`` becomes prepending to the indexed text; every position printed is a
1-based position in the forward collection.

Exit codes: 0 success, 1 usage, 2 bad input or I/O, 3 corrupt index,
4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path
from typing import Sequence

from . import lz77
from .errors import (ByteNotInAlphabet, EmptyInput, IndexFormatError, InconsistentEffects,
                     SentinelReuse, SymbolAbsentFromText)
from .ms import FrozenIndex, mems, minimal_absent
from .oracle import naive_bwt, naive_lz77, naive_occurrences, naive_sa
from .rindex import DynamicIndex
from .serialize import dumps, image_of, index_of, load, loads, offline_image
from .text import END, Alphabet, Text, ingest, is_special, record_of, sentinel

log = logging.getLogger("rrix")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CORRUPT, EXIT_INVARIANT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- coordinate helpers --------------------------------------------------------

def forward_position(n: int, q: int, m: int) -> int:
    """Forward start of an occurrence found at ``q`` in ``T^R END`` (``n = |T|``)."""
    return n - q - m + 2


def forward_text(idx: DynamicIndex) -> list[int]:
    u = idx.text()
    return u[-2::-1]


def next_record(idx: DynamicIndex) -> int:
    specials = [c for c in idx.runs.counts.symbols() if is_special(c) and c != END]
    return max((record_of(c) for c in specials), default=0) + 1


def _read_input(path: str, args) -> Text:
    raw = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    alphabet = Alphabet.of(args.alphabet) if getattr(args, "alphabet", None) else None
    sep = None
    if getattr(args, "separator", None) is not None:
        sep = args.separator.encode().decode("unicode_escape").encode("latin-1")
        if len(sep) != 1:
            raise UsageError("--separator must be a single byte")
        sep = sep[0]
    return ingest(raw, getattr(args, "format", "plain"), alphabet, sep)


def _read_query(path: str) -> list[int]:
    raw = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    lines = [ln for ln in raw.splitlines() if not ln.startswith(b">")]
    return list(b"".join(lines))


def _load_index(path: str) -> DynamicIndex:
    img = load(path)
    if not img.reversed:
        raise IndexFormatError("index file is not in reversed orientation")
    return index_of(img)


def _pattern(s: str) -> list[int]:
    return list(s.encode())


def _emit(lines) -> None:
    out = sys.stdout
    for row in lines:
        out.write("\t".join(map(str, row)) if isinstance(row, tuple) else str(row))
        out.write("\n")


# -- commands ------------------------------------------------------------------

def build_reversed(text: Sequence[int], offline: bool = False) -> DynamicIndex:
    if offline:
        return index_of(offline_image(list(text)[::-1] + [END], reversed=True))
    return DynamicIndex.reversed_of(text)


def cmd_build(args) -> int:
    text = _read_input(args.input, args)
    idx = build_reversed(text.symbols, args.offline)
    Path(args.output).write_bytes(dumps(image_of(idx, reversed=True)))
    _emit([(len(text), idx.r, len(idx.boundary))])
    return EXIT_OK


def cmd_extend(args) -> int:
    idx = _load_index(args.index)
    text = _read_input(args.input, args)
    first = next_record(idx)
    r0 = idx.r
    for k, pos in enumerate(text.records):
        start = text.records[k - 1] if k else 0
        for c in text.symbols[start:pos - 1]:
            idx.extend(c)
        idx.extend(sentinel(first + k))
    log.info("runs %d -> %d", r0, idx.r)
    Path(args.output or args.index).write_bytes(dumps(image_of(idx, reversed=True)))
    _emit([(idx.n - 1, idx.r)])
    return EXIT_OK


def cmd_count(args) -> int:
    idx = _load_index(args.index)
    p = _pattern(args.pattern)
    _emit([count(idx, p)])
    return EXIT_OK


def count(idx: DynamicIndex, p: Sequence[int]) -> int:
    if not p:
        return idx.n - idx.sentinel_count()
    return idx.count(list(reversed(p)))


def locate(idx: DynamicIndex, p: Sequence[int]) -> list[int]:
    n = idx.n - 1
    if not p:
        return [i + 1 for i, c in enumerate(forward_text(idx)) if not is_special(c)]
    m = len(p)
    return sorted(forward_position(n, q, m) for q in idx.locate_all(list(reversed(p))))


def cmd_locate(args) -> int:
    idx = _load_index(args.index)
    _emit(locate(idx, _pattern(args.pattern)))
    return EXIT_OK


def cmd_lz77(args) -> int:
    text = _read_input(args.input, args)
    phrases = lz77.parse(text.symbols)
    if args.binary:
        data = lz77.to_binary(phrases)
        if args.output:
            Path(args.output).write_bytes(data)
        else:
            sys.stdout.buffer.write(data)
    else:
        tsv = lz77.to_tsv(phrases)
        if args.output:
            Path(args.output).write_text(tsv)
        else:
            sys.stdout.write(tsv)
    log.info("%d phrases", len(phrases))
    return EXIT_OK


def _frozen(args) -> tuple[FrozenIndex, list[int]]:
    idx = _load_index(args.index)
    f = FrozenIndex.freeze(forward_text(idx))
    return f, _read_query(args.query)


def cmd_ms(args) -> int:
    f, q = _frozen(args)
    _emit(f.matching_statistics(q).rows())
    return EXIT_OK


def cmd_mems(args) -> int:
    f, q = _frozen(args)
    _emit(mems(f.matching_statistics(q), args.min_len))
    return EXIT_OK


def cmd_absent(args) -> int:
    f, q = _frozen(args)
    _emit(minimal_absent(q, f.matching_statistics(q, strict=True)))
    return EXIT_OK


def selfcheck(text: Sequence[int], seed: int = 0) -> list[str]:
    """Cross-check every component against the oracles; returns failure messages."""
    text = list(text)
    problems = []
    fwd = DynamicIndex.from_text(text)
    if fwd.bwt() != naive_bwt(text):
        problems.append("forward BWT differs from the oracle")
    if fwd.sa() != naive_sa(text):
        problems.append("suffix array chain differs from the oracle")
    rev = build_reversed(text)
    if dumps(image_of(rev, True)) != dumps(image_of(build_reversed(text, offline=True), True)):
        problems.append("online and offline builds differ")
    if dumps(image_of(index_of(loads(dumps(image_of(rev, True)))), True)) != dumps(image_of(rev, True)):
        problems.append("save/load round trip changed the index")
    got = [(p.source, p.length, p.mismatch) for p in lz77.parse(text)]
    if got != naive_lz77(text):
        problems.append("LZ77 parse differs from the oracle")
    rng = random.Random(seed)
    for _ in range(50):
        a = rng.randrange(len(text))
        pat = [c for c in text[a:a + rng.randint(1, 8)] if not is_special(c)]
        if pat and locate(rev, pat) != naive_occurrences(text, pat):
            problems.append(f"locate mismatch for pattern at {a + 1}")
            break
    return problems


def cmd_selfcheck(args) -> int:
    text = _read_input(args.input, args)
    problems = selfcheck(text.symbols)
    for msg in problems:
        print(msg, file=sys.stderr)
    return EXIT_INVARIANT if problems else EXIT_OK


# -- entry point -----------------------------------------------------------------

def _input_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["plain", "fasta-lite"], default="plain")
    p.add_argument("--alphabet", help="restrict input to these bytes")
    p.add_argument("--separator", help="record separator byte for plain input (e.g. '\\n')")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rrix", description=__doc__.split("\n\n")[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser,
                            metavar="{build,extend,count,locate,lz77,ms,mems,absent}")

    p = sub.add_parser("build", help="index a text collection")
    p.add_argument("input")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--online", action="store_true", default=True)
    mode.add_argument("--offline", action="store_true")
    p.add_argument("-o", "--output", required=True)
    _input_opts(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("extend", help="append records to an index")
    p.add_argument("index")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="write here instead of updating in place")
    _input_opts(p)
    p.set_defaults(func=cmd_extend)

    for name, func, hlp in (("count", cmd_count, "number of occurrences"),
                            ("locate", cmd_locate, "positions of all occurrences")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("index")
        p.add_argument("pattern")
        p.set_defaults(func=func)

    p = sub.add_parser("lz77", help="online LZ77 parse of a text")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--binary", action="store_true")
    _input_opts(p)
    p.set_defaults(func=cmd_lz77)

    for name, func, hlp in (("ms", cmd_ms, "matching statistics of a query"),
                            ("mems", cmd_mems, "maximal exact matches"),
                            ("absent", cmd_absent, "minimal absent substrings")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("index")
        p.add_argument("query")
        if name == "mems":
            p.add_argument("--min-len", type=int, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("selfcheck")
    p.add_argument("input")
    _input_opts(p)
    p.set_defaults(func=cmd_selfcheck)
    # keep the oracle cross-check out of the help listing
    sub._choices_actions = [a for a in sub._choices_actions if a.dest != "selfcheck"]
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rrix: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IndexFormatError as exc:
        print(f"rrix: corrupt index: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except (EmptyInput, ByteNotInAlphabet, SentinelReuse, SymbolAbsentFromText, OSError, ValueError) as exc:
        print(f"rrix: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InconsistentEffects, AssertionError) as exc:
        print(f"rrix: internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
