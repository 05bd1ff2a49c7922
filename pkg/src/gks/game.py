"""The GKS game engine and the strategy contract every strategy follows.

Merlin reveals positions ``1..n`` one at a time. Alice fills each revealed
position immediately, except the last one, which Merlin fills himself. Bob
sees only the finished string and must name a set of at most ``k`` positions
that contains Merlin's.

Strategies here are *augmented*: when Alice fills all ``n`` positions herself
she can make the last one carry a chosen bit, and Bob's decoder returns that
bit alongside his set. Composition relies on this hook; a plain game never
uses it on the outermost strategy.
"""

from __future__ import annotations

import itertools
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Protocol, Sequence, Union

import numpy as np

from .code_table import bits_to_str
from .errors import AdversaryProtocolError, BudgetExceeded, DecodeError, MultipleOnes
from .report import VerificationReport

BobOutput = tuple[frozenset[int], int]

#: Largest number of games verify_exhaustive plays unless told otherwise (2 * 8!).
DEFAULT_GAME_BUDGET = 2 * math.factorial(8)


class AliceSession(Protocol):
    def fill(self, index: int) -> int: ...

    def fill_final(self, index: int, bit: int) -> int: ...


class AugmentedStrategy(ABC):
    """A (k, n)-strategy with the one-bit transmission hook.

    Subclasses set ``n``, ``k`` and ``descriptor`` and implement
    :meth:`session` and :meth:`decode`. Strategy objects hold no per-game
    state and may be shared between games.
    """

    n: int
    k: int
    descriptor: str

    @abstractmethod
    def session(self) -> AliceSession:
        """Fresh Alice for one game."""

    @abstractmethod
    def decode(self, word: Sequence[int]) -> BobOutput:
        """Bob: the set of candidate positions and the transmitted bit."""

    #: True when structural_games() covers every class of honest game.
    structural_exact = False

    def structural_games(self) -> Iterator[tuple[list[int], int]]:
        """Representative (arrival order, Merlin bit) pairs, when the strategy has them."""
        raise NotImplementedError(f"{self.descriptor} has no structural probe")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor} n={self.n} k={self.k}>"


class FloodSession:
    __slots__ = ()

    def fill(self, index: int) -> int:
        return 0

    def fill_final(self, index: int, bit: int) -> int:
        return bit


_FLOOD_SESSION = FloodSession()


class FloodStrategy(AugmentedStrategy):
    """The (n, n)-strategy: Alice writes zeros, so a lone 1 marks Merlin."""

    structural_exact = True

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("flood needs n >= 1")
        self.n = self.k = n
        self.descriptor = f"flood:{n}"
        self._everything = frozenset(range(1, n + 1))

    def session(self) -> FloodSession:
        return _FLOOD_SESSION

    def decode(self, word: Sequence[int]) -> BobOutput:
        ones = [i for i, b in enumerate(word, 1) if b]
        if not ones:
            return self._everything, 0
        if len(ones) > 1:
            raise MultipleOnes(f"flood word has ones at {ones}")
        return frozenset(ones), 1

    def structural_games(self) -> Iterator[tuple[list[int], int]]:
        # Bob's answer depends only on the written word, i.e. on (Merlin's position, bit).
        for p in range(1, self.n + 1):
            order = [i for i in range(1, self.n + 1) if i != p] + [p]
            for bit in (0, 1):
                yield order, bit


def flood_strategy(n: int) -> FloodStrategy:
    return FloodStrategy(n)


# --- adversaries -----------------------------------------------------------


class Adversary(ABC):
    """Merlin. ``board`` is the live list of written bits (None where empty).

    The engine reads indices from :meth:`arrivals` one at a time and writes
    Alice's answer into ``board`` before asking for the next, so a generator
    implementation may adapt to what Alice has written so far.
    """

    @abstractmethod
    def arrivals(self, n: int, board: list[int | None]) -> Iterable[int]: ...

    @abstractmethod
    def final_bit(self, board: list[int | None], position: int) -> int: ...


class FixedAdversary(Adversary):
    def __init__(self, order: Sequence[int], bit: int):
        self.order = list(order)
        self.bit = bit

    def arrivals(self, n, board):
        return self.order

    def final_bit(self, board, position):
        return self.bit


class RandomAdversary(Adversary):
    """Uniform random permutation and Merlin bit, reproducible from ``seed``."""

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = np.random.default_rng(seed)

    def arrivals(self, n, board):
        return (self._rng.permutation(n) + 1).tolist()

    def final_bit(self, board, position):
        return int(self._rng.integers(2))


class SweepAdversary(Adversary):
    """Member ``family_id`` of a fixed deterministic family.

    Ids walk the n rotations of ``1..n``, then the same rotations reversed,
    first with Merlin bit 0 and then with bit 1; the family has 4n members.
    """

    def __init__(self, family_id: int):
        self.family_id = family_id
        self._n = 1

    def arrivals(self, n, board):
        self._n = n
        shift, rest = self.family_id % n, self.family_id // n
        order = list(range(1, n + 1))
        order = order[shift:] + order[:shift]
        return order[::-1] if rest % 2 else order

    def final_bit(self, board, position):
        return (self.family_id // (2 * self._n)) % 2


# --- engine ----------------------------------------------------------------


@dataclass
class Transcript:
    arrival_order: list[int]
    written_bits: list[int]
    merlin_pos: int
    merlin_bit: int
    bob_set: frozenset[int]
    bob_bit: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "arrival_order": list(self.arrival_order),
            "written_bits": bits_to_str(self.written_bits),
            "merlin_pos": self.merlin_pos,
            "merlin_bit": self.merlin_bit,
            "bob_set": sorted(self.bob_set),
            "bob_bit": self.bob_bit,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Transcript:
        return cls(
            arrival_order=list(d["arrival_order"]),
            written_bits=[int(ch) for ch in d["written_bits"]],
            merlin_pos=d["merlin_pos"],
            merlin_bit=d["merlin_bit"],
            bob_set=frozenset(d["bob_set"]),
            bob_bit=d["bob_bit"],
        )

    def to_text(self) -> str:
        return "\n".join(
            [
                "order " + " ".join(map(str, self.arrival_order)),
                "bits " + bits_to_str(self.written_bits),
                f"merlin {self.merlin_pos} {self.merlin_bit}",
                "bob " + " ".join(map(str, sorted(self.bob_set))) + f" bit={self.bob_bit}",
            ]
        )


@dataclass
class GameResult:
    transcript: Transcript
    win: bool
    set_size: int


def run_game(strategy: AugmentedStrategy, merlin: Adversary) -> GameResult:
    """Play one game: Alice fills n-1 positions, Merlin the last, then Bob decodes."""
    n = strategy.n
    board: list[int | None] = [None] * n
    order: list[int] = []
    fill = strategy.session().fill
    append = order.append
    for idx in itertools.islice(merlin.arrivals(n, board), n - 1):
        try:
            if idx < 1 or board[idx - 1] is not None:
                raise AdversaryProtocolError(
                    f"index {idx} sent twice" if idx >= 1 else f"index {idx} outside 1..{n}"
                )
        except (IndexError, TypeError):
            raise AdversaryProtocolError(f"index {idx!r} outside 1..{n}") from None
        board[idx - 1] = fill(idx)
        append(idx)
    if len(order) != n - 1:
        raise AdversaryProtocolError(f"adversary stopped after {len(order)} of {n - 1} indices")
    merlin_pos = board.index(None) + 1
    bit = merlin.final_bit(board, merlin_pos)
    if bit not in (0, 1):
        raise AdversaryProtocolError(f"Merlin bit must be 0 or 1, got {bit!r}")
    board[merlin_pos - 1] = bit
    order.append(merlin_pos)
    bob_set, bob_bit = strategy.decode(board)
    transcript = Transcript(order, board, merlin_pos, bit, bob_set, bob_bit)
    size = len(bob_set)
    return GameResult(transcript, merlin_pos in bob_set and size <= strategy.k, size)


# --- verification ----------------------------------------------------------


@dataclass(frozen=True)
class Sampled:
    """Probe/order mode: ``count`` random orders drawn from ``seed``."""

    count: int
    seed: int = 0


OrderMode = Union[str, Sampled]


def iter_orders(n: int, mode: OrderMode, budget: int | None = None) -> Iterator[list[int]]:
    if isinstance(mode, Sampled):
        rng = np.random.default_rng(mode.seed)
        for _ in range(mode.count):
            yield (rng.permutation(n) + 1).tolist()
    elif mode == "exhaustive":
        if budget is not None and math.factorial(n) > budget:
            raise BudgetExceeded(f"{n}! orders exceed the budget of {budget}")
        for perm in itertools.permutations(range(1, n + 1)):
            yield list(perm)
    else:
        raise ValueError(f"unknown order mode {mode!r}")


def _tally(report: VerificationReport, result: GameResult) -> None:
    report.stats["games"] += 1
    report.stats["wins"] += result.win
    report.stats["max_set_size"] = max(report.stats["max_set_size"], result.set_size)
    if not result.win and report.counterexample is None:
        report.counterexample = result.transcript.to_dict()
        report.fail(
            f"Merlin at {result.transcript.merlin_pos} escaped "
            f"S={sorted(result.transcript.bob_set)} (k={result.set_size})"
        )


def _new_game_report(name: str) -> VerificationReport:
    return VerificationReport(name, stats={"games": 0, "wins": 0, "max_set_size": 0})


def verify_exhaustive(
    strategy: AugmentedStrategy, budget: int = DEFAULT_GAME_BUDGET
) -> VerificationReport:
    """Play every arrival order with both Merlin bits."""
    n = strategy.n
    if 2 * math.factorial(n) > budget:
        raise BudgetExceeded(f"2 * {n}! games exceed the budget of {budget}")
    report = _new_game_report(f"verify_exhaustive[{strategy.descriptor}]")
    for order in iter_orders(n, "exhaustive"):
        for bit in (0, 1):
            _tally(report, _safe_game(strategy, FixedAdversary(order, bit), report))
    report.stats["losses"] = report.stats["games"] - report.stats["wins"]
    return report


def _safe_game(strategy, adversary: FixedAdversary, report) -> GameResult:
    try:
        return run_game(strategy, adversary)
    except DecodeError as exc:
        # Honest play never reaches an undecodable word; count it as a loss.
        report.violations.append(f"decoder error on order {adversary.order}: {exc}")
        order = adversary.order
        transcript = Transcript(order, [], order[-1], adversary.bit, frozenset(), -1)
        return GameResult(transcript, False, 0)


def verify_augmented(
    strategy: AugmentedStrategy,
    orders: OrderMode = "exhaustive",
    bits: Iterable[int] = (0, 1),
    budget: int = math.factorial(8),
) -> VerificationReport:
    """Let Alice fill all n positions, ending with fill_final(last, b), and check Bob reads b."""
    report = VerificationReport(
        f"verify_augmented[{strategy.descriptor}]", stats={"runs": 0, "failures": 0}
    )
    bits = tuple(bits)
    for order in iter_orders(strategy.n, orders, budget):
        for b in bits:
            report.stats["runs"] += 1
            word = complete_as_alice(strategy, order, b)
            try:
                _, t = strategy.decode(word)
            except DecodeError as exc:
                t = f"error: {exc}"
            if t != b:
                report.stats["failures"] += 1
                report.fail(f"order {order[:12]}{'...' if len(order) > 12 else ''} b={b}: decoded {t}")
                if report.counterexample is None:
                    report.counterexample = {"order": order, "bit": b, "word": bits_to_str(word)}
    return report


def complete_as_alice(strategy: AugmentedStrategy, order: Sequence[int], bit: int) -> list[int]:
    """The word Alice writes when she also fills the last index, transmitting ``bit``."""
    word = [0] * strategy.n
    session = strategy.session()
    fill = session.fill
    for idx in order[:-1]:
        word[idx - 1] = fill(idx)
    last = order[-1]
    word[last - 1] = session.fill_final(last, bit)
    return word
