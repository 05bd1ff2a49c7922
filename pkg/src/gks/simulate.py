"""Strategy descriptors, batch simulation and interactive (human Merlin) play.

Descriptor grammar::

    flood:<n>
    block:<tablefile>
    theorem2[:<tablefile>]
    compose(<desc>,<desc>)

A table path that does not exist but names the bundled table
(``gks_12_3.ucode``) falls back to the packaged copy.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterator, TextIO

import numpy as np

from .block import CodeBlockStrategy
from .code_table import CANONICAL_TABLE, CodeTable, canonical_table, load_table, verify_table
from .compose import ComposedStrategy, theorem2
from .errors import DescriptorError, TableError, TableFormatError
from .game import (
    Adversary,
    AugmentedStrategy,
    FloodStrategy,
    GameResult,
    RandomAdversary,
    SweepAdversary,
    run_game,
)

log = logging.getLogger(__name__)

_TABLE_CACHE: dict[str, CodeTable] = {}


def load_verified_table(path: str | None) -> CodeTable:
    key = path or ""
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    try:
        if not path:
            table = canonical_table()
        elif Path(path).exists():
            table = load_table(path)
        elif Path(path).name == CANONICAL_TABLE:
            table = canonical_table()
        else:
            raise TableError(f"table file not found: {path}")
    except (OSError, TableFormatError) as exc:
        raise TableError(f"cannot load table {path!r}: {exc}") from exc
    report = verify_table(table)
    if not report.passed:
        raise TableError(f"table {path!r} fails verification: {report.violations[:3]}")
    _TABLE_CACHE[key] = table
    return table


def parse_descriptor(desc: str) -> AugmentedStrategy:
    desc = desc.strip()
    if desc.startswith("compose(") and desc.endswith(")"):
        left, right = _split_top_level(desc[len("compose(") : -1])
        outer, inner = parse_descriptor(left), parse_descriptor(right)
        return ComposedStrategy(outer, inner, f"compose({outer.descriptor},{inner.descriptor})")
    name, _, arg = desc.partition(":")
    if name == "flood":
        try:
            n = int(arg)
        except ValueError:
            raise DescriptorError(f"flood needs an integer size, got {arg!r}") from None
        if n < 1:
            raise DescriptorError("flood needs n >= 1")
        return FloodStrategy(n)
    if name == "block":
        if not arg:
            raise DescriptorError("block needs a table file")
        return CodeBlockStrategy(load_verified_table(arg), desc)
    if name == "theorem2":
        return theorem2(load_verified_table(arg or None), desc)
    raise DescriptorError(f"unknown strategy descriptor {desc!r}")


def _split_top_level(body: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1 :]
    raise DescriptorError(f"compose needs two comma-separated operands: {body!r}")


ADVERSARIES: dict[str, Callable[[int], Adversary]] = {
    "random": RandomAdversary,
    "sweep": SweepAdversary,
}


@dataclass
class BatchReport:
    strategy: str
    adversary: str
    seed: int
    games: int = 0
    wins: int = 0
    max_set_size: int = 0
    histogram: dict[int, int] = field(default_factory=dict)
    losses: list[dict] = field(default_factory=list)

    def to_json(self) -> str:
        d = asdict(self)
        d["histogram"] = {str(k): v for k, v in sorted(self.histogram.items())}
        return json.dumps(d, indent=2)

    def to_text(self) -> str:
        hist = ", ".join(f"{k}: {v}" for k, v in sorted(self.histogram.items()))
        return (
            f"strategy {self.strategy}  adversary {self.adversary}  seed {self.seed}\n"
            f"games {self.games}  wins {self.wins}  max |S| {self.max_set_size}\n"
            f"set sizes {{{hist}}}"
        )


def simulate_batch(
    strategy: str | AugmentedStrategy, adversary: str = "random", trials: int = 1000, seed: int = 0
) -> BatchReport:
    """Play ``trials`` games; trial i uses adversary seed/id ``seed + i``."""
    strat = parse_descriptor(strategy) if isinstance(strategy, str) else strategy
    try:
        make = ADVERSARIES[adversary]
    except KeyError:
        raise DescriptorError(f"unknown adversary {adversary!r}") from None
    report = BatchReport(strat.descriptor, adversary, seed)
    sizes: Counter[int] = Counter()
    for i in range(trials):
        result = run_game(strat, make(seed + i))
        report.games += 1
        sizes[result.set_size] += 1
        if result.win:
            report.wins += 1
        elif len(report.losses) < 10:
            report.losses.append(result.transcript.to_dict())
    report.histogram = dict(sizes)
    report.max_set_size = max(sizes, default=0)
    return report


# --- interactive play ------------------------------------------------------


class Aborted(Exception):
    """The interactive session hit end of input."""


def _tokens(stream: TextIO) -> Iterator[str]:
    for line in stream:
        for tok in line.replace(",", " ").split():
            yield tok


def render_board(board: list[int | None]) -> str:
    return "".join("." if b is None else str(b) for b in board)


class InteractiveAdversary(Adversary):
    """A human Merlin reading indices (or ``auto``) and finally ``bit=<0|1>``."""

    def __init__(self, tokens: Iterator[str], out: TextIO, seed: int = 0):
        self._tokens = tokens
        self._out = out
        self._rng = np.random.default_rng(seed)
        self._auto = False

    def _next(self, prompt: str) -> str:
        self._out.write(prompt)
        try:
            return next(self._tokens)
        except StopIteration:
            raise Aborted from None

    def arrivals(self, n, board):
        while board.count(None) > 1:
            empty = [i for i, b in enumerate(board, 1) if b is None]
            if self._auto:
                yield int(self._rng.choice(empty))
                continue
            tok = self._next(f"board {render_board(board)}\nindex (1..{n}) or auto> ")
            if tok == "auto":
                self._auto = True
                continue
            try:
                idx = int(tok)
            except ValueError:
                self._out.write(f"not an index: {tok!r}\n")
                continue
            if not 1 <= idx <= n:
                self._out.write(f"index {idx} out of range 1..{n}\n")
            elif board[idx - 1] is not None:
                self._out.write(f"index {idx} already filled\n")
            else:
                yield idx

    def final_bit(self, board, position):
        if self._auto:
            return int(self._rng.integers(2))
        while True:
            tok = self._next(f"board {render_board(board)}\nMerlin's bit for position {position}> ")
            tok = tok.removeprefix("bit=")
            if tok in ("0", "1"):
                return int(tok)
            self._out.write("enter 0 or 1\n")


def interactive_play(
    strategy: str | AugmentedStrategy,
    stdin: TextIO,
    stdout: TextIO,
    record: str | Path | None = None,
    seed: int = 0,
) -> GameResult | None:
    """Run one game with a human Merlin. Returns None if input ends early."""
    strat = parse_descriptor(strategy) if isinstance(strategy, str) else strategy
    merlin = InteractiveAdversary(_tokens(stdin), stdout, seed)
    try:
        result = run_game(strat, merlin)
    except Aborted:
        stdout.write("\naborted: end of input\n")
        return None
    t = result.transcript
    stdout.write(f"board {render_board(t.written_bits)}\n")
    stdout.write(f"Merlin wrote {t.merlin_bit} at {t.merlin_pos}\n")
    stdout.write(f"Bob: S={sorted(t.bob_set)} bit={t.bob_bit}\n")
    stdout.write("Alice and Bob win\n" if result.win else "Merlin wins\n")
    if not result.win:
        log.error("interactive loss against %s: %s", strat.descriptor, json.dumps(t.to_dict()))
    if record:
        Path(record).write_text(json.dumps(t.to_dict(), indent=2) + "\n")
    return result
