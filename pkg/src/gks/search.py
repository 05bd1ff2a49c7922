"""Search for underlined-codeword tables with disjoint punctured balls.

Rows are placed one u-subset at a time in colexicographic order. For each
subset the search tries assignments of the m-u free bits; a candidate row is
admissible when none of its m-u+1 ball members is already occupied. Value
order is shuffled per restart from the seed, and restarts follow a geometric
node-limit schedule until the wall-clock or node budget runs out.

Internally a word is an int whose most significant of m bits is position 1.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, replace
from math import comb

from .code_table import CodeTable, Codeword, verify_table
from .errors import BudgetExceeded

#: Largest number of complete assignments brute_force_oracle will enumerate.
ORACLE_BUDGET = 2_000_000


@dataclass(frozen=True)
class SearchProblem:
    m: int
    u: int
    seed: int = 0
    budget_ms: float | None = 10_000
    node_budget: int | None = None
    symmetry_breaking: bool = False
    first_restart_nodes: int = 2_000
    restart_growth: float = 1.5

    def __post_init__(self):
        if not 1 <= self.u <= self.m:
            raise ValueError(f"need 1 <= u <= m, got m={self.m} u={self.u}")


@dataclass(kw_only=True)
class SearchOutcome:
    nodes: int = 0
    restarts: int = 0
    wall_ms: float = 0.0

    @property
    def kind(self) -> str:
        return type(self).__name__

    def summary(self) -> dict:
        return {"outcome": self.kind, "nodes": self.nodes, "restarts": self.restarts,
                "wall_ms": round(self.wall_ms, 3)}


@dataclass(kw_only=True)
class Found(SearchOutcome):
    table: CodeTable
    symmetry_broken: bool = False

    def summary(self) -> dict:
        return {**super().summary(), "rows": len(self.table), "symmetry_broken": self.symmetry_broken}


@dataclass(kw_only=True)
class Unsat(SearchOutcome):
    proof: str  # "counting" or "exhausted"

    def summary(self) -> dict:
        return {**super().summary(), "proof": self.proof}


@dataclass(kw_only=True)
class Timeout(SearchOutcome):
    best_depth: int = 0

    def summary(self) -> dict:
        return {**super().summary(), "best_depth": self.best_depth}


def counting_bound(m: int, u: int) -> tuple[int, int, bool]:
    """C(m,u) disjoint balls of size m-u+1 must fit in the 2**m cube."""
    if not 1 <= u <= m:
        raise ValueError(f"need 1 <= u <= m, got m={m} u={u}")
    lhs, rhs = comb(m, u) * (m - u + 1), 2**m
    return lhs, rhs, lhs <= rhs


def colex_subsets(m: int, u: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(1, m + 1), u), key=lambda s: s[::-1])


def _bit(m: int, p: int) -> int:
    return 1 << (m - p)


def _candidates(m: int, subset: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Every row with ones on ``subset``, as its ball (row first, then single flips)."""
    base = sum(_bit(m, p) for p in subset)
    free = [_bit(m, p) for p in range(1, m + 1) if p not in subset]
    balls = []
    for values in itertools.product((0, 1), repeat=len(free)):
        row = base + sum(b for b, v in zip(free, values) if v)
        balls.append((row,) + tuple(row ^ b for b in free))
    return balls


def _to_table(m: int, u: int, subsets, rows: list[int]) -> CodeTable:
    order = sorted(range(len(subsets)), key=lambda i: subsets[i])
    return CodeTable(
        m,
        u,
        tuple(
            Codeword(tuple((rows[i] >> (m - p)) & 1 for p in range(1, m + 1)), frozenset(subsets[i]))
            for i in order
        ),
    )


class _Limit(Exception):
    pass


class _Backtracker:
    def __init__(self, problem: SearchProblem):
        self.p = problem
        self.subsets = colex_subsets(problem.m, problem.u)
        self.balls = [_candidates(problem.m, s) for s in self.subsets]
        self.nodes = 0
        self.best_depth = 0
        self.deadline = (
            None if problem.budget_ms is None else time.perf_counter() + problem.budget_ms / 1000
        )

    def run_once(self, rng: random.Random, node_limit: float, symmetry: bool):
        """One restart. Returns the row list, None when the tree is exhausted."""
        orders = []
        for depth, cands in enumerate(self.balls):
            if symmetry and depth == 0:
                # All free bits zero: the lowest-valued candidate.
                orders.append([min(cands)])
                continue
            shuffled = list(cands)
            rng.shuffle(shuffled)
            orders.append(shuffled)
        occupied: set[int] = set()
        chosen: list[int] = []
        limit = self.nodes + node_limit
        total_limit = self.p.node_budget
        n_rows = len(self.subsets)

        def dfs(depth: int) -> bool:
            if depth == n_rows:
                return True
            for ball in orders[depth]:
                if not occupied.isdisjoint(ball):
                    continue
                self.nodes += 1
                if self.nodes > limit or (total_limit is not None and self.nodes > total_limit):
                    raise _Limit
                if self.deadline is not None and not self.nodes & 127:
                    if time.perf_counter() > self.deadline:
                        raise _Limit
                occupied.update(ball)
                chosen.append(ball[0])
                if depth + 1 > self.best_depth:
                    self.best_depth = depth + 1
                if dfs(depth + 1):
                    return True
                occupied.difference_update(ball)
                chosen.pop()
            return False

        return chosen if dfs(0) else None

    def out_of_budget(self) -> bool:
        if self.p.node_budget is not None and self.nodes >= self.p.node_budget:
            return True
        return self.deadline is not None and time.perf_counter() > self.deadline


def search_table(problem: SearchProblem) -> SearchOutcome:
    """Sequential randomized backtracking with restarts.

    Unsat("exhausted") is returned only when a restart finishes its whole tree
    without symmetry breaking, which proves no table exists.
    """
    start = time.perf_counter()
    lhs, rhs, feasible = counting_bound(problem.m, problem.u)
    if not feasible:
        return Unsat(proof="counting", wall_ms=_ms(start))

    bt = _Backtracker(problem)
    rng = random.Random(problem.seed)
    symmetry = problem.symmetry_breaking
    limit = float(problem.first_restart_nodes)
    restarts = 0
    while True:
        try:
            rows = bt.run_once(rng, limit, symmetry)
        except _Limit:
            if bt.out_of_budget():
                return Timeout(best_depth=bt.best_depth, nodes=bt.nodes, restarts=restarts,
                               wall_ms=_ms(start))
            restarts += 1
            limit *= problem.restart_growth
            continue
        if rows is None:
            if symmetry:
                # Symmetry breaking may have excluded every table; retry in full.
                symmetry = False
                restarts += 1
                continue
            return Unsat(proof="exhausted", nodes=bt.nodes, restarts=restarts, wall_ms=_ms(start))
        table = _to_table(problem.m, problem.u, bt.subsets, rows)
        report = verify_table(table)
        assert report.passed, report.violations
        return Found(table=table, symmetry_broken=symmetry, nodes=bt.nodes, restarts=restarts,
                     wall_ms=_ms(start))


def search_table_parallel(problem: SearchProblem, workers: int = 2) -> SearchOutcome:
    """Independent seeded restarts in worker processes; first verified Found wins.

    Exhaustion in a worker is not trusted here: the verdict is re-derived by
    a sequential run.
    """
    start = time.perf_counter()
    problems = [replace(problem, seed=problem.seed + i) for i in range(workers)]
    outcomes: list[SearchOutcome] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = {pool.submit(search_table, p) for p in problems}
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                outcome = fut.result()
                if isinstance(outcome, Found):
                    for other in pending:
                        other.cancel()
                    outcome.wall_ms = _ms(start)
                    return outcome
                outcomes.append(outcome)
    if any(isinstance(o, Unsat) for o in outcomes):
        return search_table(problem)
    best = max((o.best_depth for o in outcomes if isinstance(o, Timeout)), default=0)
    return Timeout(best_depth=best, nodes=sum(o.nodes for o in outcomes),
                   restarts=sum(o.restarts for o in outcomes), wall_ms=_ms(start))


def brute_force_oracle(m: int, u: int, budget: int = ORACLE_BUDGET) -> SearchOutcome:
    """Enumerate every free-bit assignment of every row; no pruning, no ordering tricks."""
    start = time.perf_counter()
    subsets = list(itertools.combinations(range(1, m + 1), u))
    per_row = 2 ** (m - u)
    total = per_row ** len(subsets)
    if total > budget:
        raise BudgetExceeded(f"{total} assignments exceed the oracle budget of {budget}")
    choices = []
    for s in subsets:
        free = [p for p in range(1, m + 1) if p not in s]
        rows = []
        for values in itertools.product((0, 1), repeat=len(free)):
            bits = [1] * m
            for p, v in zip(free, values):
                bits[p - 1] = v
            rows.append(Codeword(tuple(bits), frozenset(s)))
        choices.append(rows)
    ball_total = len(subsets) * (m - u + 1)
    checked = 0
    for assignment in itertools.product(*choices):
        checked += 1
        members = {member for row in assignment for member, _ in row.ball()}
        if len(members) == ball_total:
            return Found(table=CodeTable(m, u, tuple(assignment)), nodes=checked,
                         wall_ms=_ms(start))
    return Unsat(proof="exhausted", nodes=checked, wall_ms=_ms(start))


def _ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000
