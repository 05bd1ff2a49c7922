"""Composition of augmented strategies and cost exponents.

``compose(outer, inner)`` cuts a string of length ``n * n'`` into ``n`` blocks
of length ``n'`` and plays the inner strategy in each. Whenever a block is
completed by Alice, the bit she transmits through it is whatever the outer
strategy would have written at that block's index; the outer game therefore
sees its indices in block-completion order and Merlin's block as its own last
index. Bob decodes each block, runs the outer decoder on the transmitted bits
and returns the union of the inner sets of the selected blocks.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence, Union

import numpy as np

from .block import CodeBlockStrategy
from .code_table import CodeTable, canonical_table
from .errors import BudgetExceeded, DomainError
from .game import (
    DEFAULT_GAME_BUDGET,
    AugmentedStrategy,
    BobOutput,
    FixedAdversary,
    FloodStrategy,
    RandomAdversary,
    Sampled,
    run_game,
    verify_exhaustive,
)


class ComposedSession:
    __slots__ = ("_outer", "_inner", "_factory", "_counts", "_n_in", "_block", "_local")

    def __init__(self, strategy: ComposedStrategy):
        self._outer = strategy.outer.session()
        self._factory = strategy.inner.session
        self._n_in = strategy.inner.n
        self._block = strategy._block
        self._local = strategy._local
        self._inner = [None] * strategy.outer.n
        self._counts = [0] * strategy.outer.n

    def fill(self, index: int) -> int:
        q = self._block[index]
        s = self._inner[q]
        if s is None:
            s = self._inner[q] = self._factory()
        counts = self._counts
        counts[q] += 1
        if counts[q] == self._n_in:
            return s.fill_final(self._local[index], self._outer.fill(q + 1))
        return s.fill(self._local[index])

    def fill_final(self, index: int, bit: int) -> int:
        q = self._block[index]
        s = self._inner[q]
        if s is None:
            s = self._inner[q] = self._factory()
        self._counts[q] += 1
        return s.fill_final(self._local[index], self._outer.fill_final(q + 1, bit))


class ComposedStrategy(AugmentedStrategy):
    def __init__(self, outer: AugmentedStrategy, inner: AugmentedStrategy, descriptor: str | None = None):
        self.outer = outer
        self.inner = inner
        self.n = outer.n * inner.n
        self.k = outer.k * inner.k
        self.descriptor = descriptor or f"compose({outer.descriptor},{inner.descriptor})"
        self.structural_exact = outer.structural_exact and inner.structural_exact
        # Global position -> 0-based block and 1-based local position; slot 0 unused.
        self._block = [0] + [(j - 1) // inner.n for j in range(1, self.n + 1)]
        self._local = [0] + [(j - 1) % inner.n + 1 for j in range(1, self.n + 1)]

    def block_of(self, position: int) -> tuple[int, int]:
        """Global position -> (1-based block, local position)."""
        q, r = divmod(position - 1, self.inner.n)
        return q + 1, r + 1

    def session(self) -> ComposedSession:
        return ComposedSession(self)

    def decode(self, word: Sequence[int]) -> BobOutput:
        n_in = self.inner.n
        inner_decode = self.inner.decode
        sets = []
        bits = []
        for start in range(0, self.n, n_in):
            S, c = inner_decode(word[start : start + n_in])
            sets.append(S)
            bits.append(c)
        T, t = self.outer.decode(bits)
        return frozenset((i - 1) * n_in + p for i in T for p in sets[i - 1]), t

    def structural_games(self) -> Iterator[tuple[list[int], int]]:
        """Every outer game shape crossed with every inner Merlin configuration.

        Alice-completed blocks cycle through the inner representative orders so
        that their contents vary across games.
        """
        n_in = self.inner.n
        inner_games = list(self.inner.structural_games())
        outer_orders: dict[tuple[int, ...], None] = {}
        for order, _ in self.outer.structural_games():
            outer_orders.setdefault(tuple(order), None)
        for outer_order in outer_orders:
            *alice_blocks, merlin_block = outer_order
            for g, (inner_order, bit) in enumerate(inner_games):
                order: list[int] = []
                for j, q in enumerate(alice_blocks):
                    filler, _ = inner_games[(g + j + 1) % len(inner_games)]
                    order.extend((q - 1) * n_in + p for p in filler)
                order.extend((merlin_block - 1) * n_in + p for p in inner_order)
                yield order, bit


def compose(outer: AugmentedStrategy, inner: AugmentedStrategy) -> ComposedStrategy:
    return ComposedStrategy(outer, inner)


def theorem2(table: CodeTable | None = None, descriptor: str | None = None) -> ComposedStrategy:
    """The (m-u, (m-u)*m) strategy: m-u blocks of the block protocol under flood.

    With the bundled 12/3 table this is the (9, 108)-strategy.
    """
    table = canonical_table() if table is None else table
    block = CodeBlockStrategy(table)
    return ComposedStrategy(FloodStrategy(block.k), block, descriptor or "theorem2")


class MeasuredK(int):
    """Largest Bob set seen; ``exact`` is False when it is only a lower bound."""

    exact: bool

    def __new__(cls, value: int, exact: bool):
        obj = super().__new__(cls, value)
        obj.exact = exact
        return obj

    def __repr__(self) -> str:
        return f"MeasuredK({int(self)}, exact={self.exact})"


Probe = Union[str, Sampled]


def measured_k(
    strategy: AugmentedStrategy, probe: Probe = "structural", budget: int = DEFAULT_GAME_BUDGET
) -> MeasuredK:
    if isinstance(probe, Sampled):
        rng = np.random.default_rng(probe.seed)
        seeds = rng.integers(2**63, size=probe.count)
        worst = max(
            (run_game(strategy, RandomAdversary(int(s))).set_size for s in seeds), default=0
        )
        return MeasuredK(worst, False)
    if probe == "exhaustive":
        return MeasuredK(verify_exhaustive(strategy, budget).stats["max_set_size"], True)
    if probe == "structural":
        try:
            games = strategy.structural_games()
            worst = max(run_game(strategy, FixedAdversary(o, b)).set_size for o, b in games)
        except NotImplementedError:
            raise BudgetExceeded(f"{strategy.descriptor} has no structural probe") from None
        return MeasuredK(worst, strategy.structural_exact)
    raise ValueError(f"unknown probe {probe!r}")


def exponent(k: int, n: int) -> float:
    """log base n of k: a (k, n)-strategy gives cost O(N ** exponent(k, n)) for the N-game."""
    if n < 2:
        raise DomainError(f"exponent needs n >= 2, got {n}")
    if k < 1:
        raise DomainError(f"exponent needs k >= 1, got {k}")
    return math.log(k) / math.log(n)
