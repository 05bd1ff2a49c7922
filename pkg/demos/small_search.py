"""
Searching for tables
====================

The counting bound rules out many (m, u) at once. For the rest, randomized
backtracking either builds a table or exhausts the tree, and the brute-force
oracle agrees wherever it can finish.
"""

from gks import serialize_table
from gks.search import SearchProblem, brute_force_oracle, counting_bound, search_table

for m, u in [(3, 1), (4, 1), (4, 4), (5, 4), (12, 3)]:
    lhs, rhs, ok = counting_bound(m, u)
    print(f"({m},{u}) balls need {lhs} of {rhs} words:", "fits" if ok else "does not fit")

for m, u in [(2, 1), (4, 1), (4, 4)]:
    out = search_table(SearchProblem(m, u, seed=0))
    print((m, u), out.summary(), "oracle:", brute_force_oracle(m, u).kind)
    if out.kind == "Found":
        print(serialize_table(out.table), end="")

# the full-size problem is hard; a short budget ends in a Timeout value
print(search_table(SearchProblem(12, 3, seed=0, budget_ms=2000)).summary())
