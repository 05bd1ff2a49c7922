"""Single-block protocol over an underlined-codeword table.

Alice writes ones at the first ``u`` positions revealed in the block, then
looks up the row whose underline set is exactly those positions and copies
it. When she fills the block's last position herself she either matches the
row (transmitting 1) or differs from it (transmitting 0). Bob decodes the
block against the table: a row means Merlin hid among its non-underlined
positions; a row with one flipped bit means that flip was the last position.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

import numpy as np

from .code_table import CodeTable, Exact, OneError, decode, lookup_by_underline, verify_table
from .errors import NoMatchError
from .game import AugmentedStrategy, BobOutput
from .report import VerificationReport


class BlockSession:
    __slots__ = ("_table", "_u", "_first", "_assigned", "_count")

    def __init__(self, table: CodeTable):
        self._table = table
        self._u = table.u
        self._first: list[int] = []
        self._assigned: tuple[int, ...] | None = None
        self._count = 0

    @property
    def assigned(self) -> tuple[int, ...] | None:
        return self._assigned

    def fill(self, index: int) -> int:
        self._count += 1
        if self._count <= self._u:
            self._first.append(index)
            if self._count == self._u:
                self._assigned = lookup_by_underline(self._table, self._first).bits
            return 1
        return self._assigned[index - 1]

    def fill_final(self, index: int, bit: int) -> int:
        self._count += 1
        if self._assigned is None:
            raise RuntimeError("fill_final before a codeword was assigned")
        b = self._assigned[index - 1]
        return b if bit else 1 - b


class CodeBlockStrategy(AugmentedStrategy):
    """Augmented (m-u, m)-strategy for one block."""

    structural_exact = True

    def __init__(self, table: CodeTable, descriptor: str | None = None):
        if table.u >= table.m:
            raise ValueError("a block strategy needs at least one non-underlined position")
        self.table = table
        self.n = table.m
        self.k = table.m - table.u
        self.descriptor = descriptor or f"block:<table m={table.m} u={table.u}>"
        # Bob's answer for every ball member, keyed like the engine's board slices.
        self._bob: dict[tuple[int, ...], BobOutput] = {}
        for word, result in table.ball_index.items():
            self._bob[word] = _bob_output(table, result)

    def session(self) -> BlockSession:
        return BlockSession(self.table)

    def decode(self, word: Sequence[int]) -> BobOutput:
        try:
            return self._bob[tuple(word)]
        except KeyError:
            raise NoMatchError(f"block {''.join(map(str, word))} is in no ball") from None

    def structural_games(self) -> Iterator[tuple[list[int], int]]:
        # Canonical middle order suffices: the block depends on (T, p, mode) only.
        for first, last, middle in _configurations(self.table.m, self.table.u):
            for bit in (0, 1):
                yield list(first) + middle + [last], bit


def _bob_output(table: CodeTable, result) -> BobOutput:
    if isinstance(result, Exact):
        return frozenset(table.rows[result.row - 1].free_positions), 1
    return frozenset((result.position,)), 0


def code_block_strategy(table: CodeTable) -> CodeBlockStrategy:
    return CodeBlockStrategy(table)


def _configurations(m: int, u: int):
    for first in itertools.combinations(range(1, m + 1), u):
        rest = [p for p in range(1, m + 1) if p not in first]
        for last in rest:
            yield first, last, [p for p in rest if p != last]


def _play_block(table: CodeTable, first, middle, last, mode: str) -> list[int]:
    """Fill one block; mode is 'alice0', 'alice1', 'merlin0' or 'merlin1'."""
    word = [0] * table.m
    s = BlockSession(table)
    for idx in list(first) + list(middle):
        word[idx - 1] = s.fill(idx)
    if mode.startswith("alice"):
        word[last - 1] = s.fill_final(last, int(mode[-1]))
    else:
        word[last - 1] = int(mode[-1])
    return word


MODES = ("alice0", "alice1", "merlin0", "merlin1")


def structural_verify_block(
    table: CodeTable, order_samples: int = 10_000, seed: int = 0
) -> VerificationReport:
    """Check every (first-u set, last position, completion mode) of a block.

    Alice's b=0 blocks must decode to (assigned row, last position), her b=1
    blocks must equal the assigned row, and Merlin's blocks must be covered by
    Bob's set within k = m - u. Random reorderings of the middle arrivals then
    confirm that the block depends on nothing else.
    """
    report = VerificationReport(
        "structural_verify_block", stats={"cases": 0, "passed": 0, "order_samples": 0}
    )
    strategy = CodeBlockStrategy(table)
    m, u, k = table.m, table.u, strategy.k
    missing: set[tuple[int, ...]] = set()

    for first, last, middle in _configurations(m, u):
        for mode in MODES:
            report.stats["cases"] += 1
            where = f"T={set(first)} p={last} {mode}"
            if first in missing:
                continue
            try:
                row_no = table.by_underline[frozenset(first)]
            except KeyError:
                missing.add(first)
                report.fail(f"T={set(first)}: lookup NotFound")
                continue
            word = _play_block(table, first, middle, last, mode)
            result = decode(table, word)
            ok = True
            if mode == "alice0":
                ok = result == OneError(row_no, last)
                if ok:
                    ok = strategy.decode(word) == (frozenset({last}), 0)
            elif mode == "alice1":
                ok = result == Exact(row_no) and strategy.decode(word)[1] == 1
            else:
                try:
                    S, _ = strategy.decode(word)
                    ok = last in S and len(S) <= k
                except NoMatchError:
                    ok = False
            if ok:
                report.stats["passed"] += 1
            else:
                report.fail(f"{where}: decoded {result}")

    rng = np.random.default_rng(seed)
    configs = list(_configurations(m, u))
    for _ in range(order_samples):
        first, last, middle = configs[rng.integers(len(configs))]
        if first in missing or not middle:
            continue
        mode = MODES[rng.integers(len(MODES))]
        shuffled = [middle[i] for i in rng.permutation(len(middle))]
        first_shuffled = [first[i] for i in rng.permutation(len(first))]
        report.stats["order_samples"] += 1
        a = _play_block(table, first, middle, last, mode)
        b = _play_block(table, first_shuffled, shuffled, last, mode)
        if a != b:
            report.fail(f"order dependence at T={set(first)} p={last} {mode}: {shuffled}")
    return report


def verify_block_table(table: CodeTable, order_samples: int = 10_000, seed: int = 0) -> VerificationReport:
    """verify_table followed by structural_verify_block, as one report."""
    report = VerificationReport("verify")
    report.merge(verify_table(table))
    report.merge(structural_verify_block(table, order_samples, seed))
    return report


__all__ = [
    "BlockSession",
    "CodeBlockStrategy",
    "code_block_strategy",
    "structural_verify_block",
    "verify_block_table",
]
