"""Underlined-codeword tables: the UCODE format, verification and decoding.

A table for parameters ``(m, u)`` holds one m-bit codeword per u-subset of
``1..m``. Each row carries its u *underlined* positions, all holding ones.
The punctured ball of a row is the row itself plus every string obtained by
flipping one non-underlined bit. A usable table has pairwise disjoint balls,
so a word that is at most one non-underlined flip away from some row can be
decoded back to that row and flip position.

Positions and row numbers are 1-indexed throughout.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from math import comb
from pathlib import Path
from typing import Iterable, Sequence, Union

from .errors import (
    BadCharacter,
    HeaderMissing,
    LengthMismatch,
    NotFound,
    UnderlineCountMismatch,
    UnderlinedZero,
)
from .report import VerificationReport

Bits = tuple[int, ...]
WordLike = Union[str, Sequence[int]]

CANONICAL_TABLE = "gks_12_3.ucode"


def to_bits(word: WordLike) -> Bits:
    if isinstance(word, str):
        if set(word) - {"0", "1"}:
            raise ValueError(f"not a bit string: {word!r}")
        return tuple(1 if ch == "1" else 0 for ch in word)
    return tuple(word)


def bits_to_str(bits: Iterable[int]) -> str:
    return "".join("1" if b else "0" for b in bits)


@dataclass(frozen=True)
class Codeword:
    bits: Bits
    underline: frozenset[int]

    def __post_init__(self):
        m = len(self.bits)
        for p in self.underline:
            if not 1 <= p <= m:
                raise ValueError(f"underlined position {p} outside 1..{m}")
            if self.bits[p - 1] != 1:
                raise UnderlinedZero(f"position {p} is underlined but holds 0")

    @classmethod
    def from_strings(cls, bits: str, mask: str) -> Codeword:
        return cls(to_bits(bits), frozenset(i for i, ch in enumerate(mask, 1) if ch == "^"))

    @property
    def m(self) -> int:
        return len(self.bits)

    @property
    def string(self) -> str:
        return bits_to_str(self.bits)

    @property
    def mask(self) -> str:
        return "".join("^" if i in self.underline else "." for i in range(1, self.m + 1))

    @property
    def free_positions(self) -> tuple[int, ...]:
        return tuple(p for p in range(1, self.m + 1) if p not in self.underline)

    def flip(self, position: int) -> Bits:
        b = list(self.bits)
        b[position - 1] ^= 1
        return tuple(b)

    def ball(self) -> list[tuple[Bits, int | None]]:
        """Ball members paired with the flipped position (None for the row itself)."""
        return [(self.bits, None)] + [(self.flip(p), p) for p in self.free_positions]

    def __str__(self) -> str:
        return f"{self.string} {self.mask}"


@dataclass(frozen=True)
class Exact:
    row: int


@dataclass(frozen=True)
class OneError:
    row: int
    position: int


@dataclass(frozen=True)
class NoMatch:
    pass


DecodeResult = Union[Exact, OneError, NoMatch]


@dataclass(frozen=True)
class CodeTable:
    m: int
    u: int
    rows: tuple[Codeword, ...]

    def __post_init__(self):
        if not 1 <= self.u <= self.m:
            raise ValueError(f"need 1 <= u <= m, got m={self.m} u={self.u}")
        for i, row in enumerate(self.rows, 1):
            if row.m != self.m:
                raise LengthMismatch(f"row {i} has length {row.m}, expected {self.m}")
            if len(row.underline) != self.u:
                raise UnderlineCountMismatch(
                    f"row {i} has {len(row.underline)} underlines, expected {self.u}"
                )

    def __len__(self) -> int:
        return len(self.rows)

    @cached_property
    def by_underline(self) -> dict[frozenset[int], int]:
        """Underline set -> 1-based row number (first occurrence wins)."""
        index: dict[frozenset[int], int] = {}
        for i, row in enumerate(self.rows, 1):
            index.setdefault(row.underline, i)
        return index

    @cached_property
    def ball_index(self) -> dict[Bits, DecodeResult]:
        index: dict[Bits, DecodeResult] = {}
        for i, row in enumerate(self.rows, 1):
            for member, pos in row.ball():
                index.setdefault(member, Exact(i) if pos is None else OneError(i, pos))
        return index


def parse_table(text: str) -> CodeTable:
    """Parse UCODE v1 text.

    >>> t = parse_table("m=4 u=1\\n1000 ^...\\n")
    >>> t.rows[0].underline
    frozenset({1})
    """
    m = u = None
    rows: list[Codeword] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if m is None:
            m, u = _parse_header(line, lineno)
            continue
        rows.append(_parse_row(line, lineno, m, u))
    if m is None:
        raise HeaderMissing("no 'm=<int> u=<int>' header line")
    return CodeTable(m, u, tuple(rows))


def _parse_header(line: str, lineno: int) -> tuple[int, int]:
    fields = dict(part.split("=", 1) for part in line.split() if "=" in part)
    try:
        m, u = int(fields["m"]), int(fields["u"])
    except (KeyError, ValueError):
        raise HeaderMissing(f"expected 'm=<int> u=<int>', got {line!r}", lineno) from None
    if not 1 <= u <= m:
        raise HeaderMissing(f"header needs 1 <= u <= m, got m={m} u={u}", lineno)
    return m, u


def _parse_row(line: str, lineno: int, m: int, u: int) -> Codeword:
    parts = line.split(" ")
    if len(parts) != 2:
        raise BadCharacter("expected '<bits> <mask>' separated by a single space", lineno)
    bits, mask = parts
    if set(bits) - {"0", "1"}:
        raise BadCharacter(f"bit field {bits!r} may only contain '0'/'1'", lineno)
    if set(mask) - {".", "^"}:
        raise BadCharacter(f"mask field {mask!r} may only contain '.'/'^'", lineno)
    if len(bits) != m or len(mask) != m:
        raise LengthMismatch(
            f"expected {m} characters per field, got {len(bits)} and {len(mask)}", lineno
        )
    for i, (b, c) in enumerate(zip(bits, mask), 1):
        if c == "^" and b == "0":
            raise UnderlinedZero(f"position {i} is underlined but holds 0", lineno)
    if mask.count("^") != u:
        raise UnderlineCountMismatch(f"expected {u} carets, got {mask.count('^')}", lineno)
    return Codeword.from_strings(bits, mask)


def serialize_table(table: CodeTable) -> str:
    lines = [f"m={table.m} u={table.u}"]
    lines.extend(str(row) for row in table.rows)
    return "\n".join(lines) + "\n"


def load_table(path: str | Path) -> CodeTable:
    return parse_table(Path(path).read_text())


def canonical_table() -> CodeTable:
    """The bundled 220-row (m=12, u=3) table."""
    text = resources.files("gks").joinpath("tables").joinpath(CANONICAL_TABLE).read_text()
    return parse_table(text)


def verify_table(table: CodeTable) -> VerificationReport:
    """Check coverage of all u-subsets and disjointness of the punctured balls.

    Every violation is reported, not just the first.
    """
    report = VerificationReport("verify_table")
    m, u = table.m, table.u
    expected_rows = comb(m, u)

    rows_by_set: dict[frozenset[int], list[int]] = defaultdict(list)
    for i, row in enumerate(table.rows, 1):
        rows_by_set[row.underline].append(i)
    if len(table.rows) != expected_rows:
        report.fail(f"coverage: {len(table.rows)} rows, expected C({m},{u}) = {expected_rows}")
    for subset, where in rows_by_set.items():
        if len(where) > 1:
            report.fail(f"coverage: underline set {_fmt_set(subset)} appears in rows {where}")
    for subset in itertools.combinations(range(1, m + 1), u):
        if frozenset(subset) not in rows_by_set:
            report.fail(f"coverage: underline set {_fmt_set(subset)} missing")

    owners: dict[Bits, list[tuple[int, int | None]]] = defaultdict(list)
    for i, row in enumerate(table.rows, 1):
        for member, pos in row.ball():
            owners[member].append((i, pos))
    for member, who in owners.items():
        for (a, pa), (b, pb) in itertools.combinations(who, 2):
            report.fail(
                f"disjointness: rows {a} and {b} share {bits_to_str(member)} "
                f"({_fmt_flip(pa)} of row {a}, {_fmt_flip(pb)} of row {b})"
            )

    report.stats.update(
        rows=len(table.rows),
        expected_rows=expected_rows,
        ball_members=sum(len(row.ball()) for row in table.rows),
        distinct_ball_members=len(owners),
    )
    return report


def _fmt_set(subset: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(subset))) + "}"


def _fmt_flip(pos: int | None) -> str:
    return "codeword" if pos is None else f"flip {pos}"


def lookup_by_underline(table: CodeTable, subset: Iterable[int]) -> Codeword:
    key = frozenset(subset)
    try:
        return table.rows[table.by_underline[key] - 1]
    except KeyError:
        raise NotFound(f"no row underlines {_fmt_set(key)}") from None


def decode(table: CodeTable, word: WordLike) -> DecodeResult:
    return table.ball_index.get(to_bits(word), NoMatch())


def decode_scan(table: CodeTable, word: WordLike) -> DecodeResult:
    """Row-by-row decoder; slower than :func:`decode` but shares no index with it."""
    w = to_bits(word)
    if len(w) != table.m:
        return NoMatch()
    for i, row in enumerate(table.rows, 1):
        diff = [p for p in range(1, table.m + 1) if w[p - 1] != row.bits[p - 1]]
        if not diff:
            return Exact(i)
        if len(diff) == 1 and diff[0] not in row.underline:
            return OneError(i, diff[0])
    return NoMatch()
