from __future__ import annotations

import random

import pytest

from rindex.text import Text

DNA = b"ACGT"
LATIN = bytes(range(ord("a"), ord("z") + 1))


def codes(s: str | bytes) -> list[int]:
    return list(s.encode() if isinstance(s, str) else s)


def text_of(*records: str | bytes) -> list[int]:
    """Codes of ``records`` joined with per-record sentinels."""
    return list(Text.from_records([r.encode() if isinstance(r, str) else r for r in records]).symbols)


def random_text(rng: random.Random, alphabet: bytes, n: int, records: int = 1) -> list[int]:
    cuts = sorted(rng.sample(range(1, n), records - 1)) if records > 1 and n > records else []
    body = bytes(rng.choice(alphabet) for _ in range(max(n - len(cuts) - 1, 1)))
    recs, prev = [], 0
    for c in cuts:
        recs.append(body[prev:c])
        prev = c
    recs.append(body[prev:])
    return list(Text.from_records([r for r in recs if r] or [body]).symbols)


def mutate(rng: random.Random, seq: list[int], rate: float, alphabet: bytes) -> list[int]:
    return [rng.choice(alphabet) if (c >= 0 and rng.random() < rate) else c for c in seq]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


_VERDICTS: list[str] = []


@pytest.fixture(scope="session")
def verdict():
    """Record one PASS/FAIL line per acceptance criterion; echoed in the summary."""
    def emit(tag: str, ok: bool, detail: str) -> bool:
        line = f"{tag} {'PASS' if ok else 'FAIL'}: {detail}"
        print(line)
        _VERDICTS.append(line)
        return ok
    return emit


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
