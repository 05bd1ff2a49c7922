"""
Playing the (9,108) strategy
============================

Nine blocks of twelve positions, flood on top. Bob always answers with nine
positions, whichever way Merlin plays.
"""

from collections import Counter

from gks import RandomAdversary, run_game, theorem2

strategy = theorem2()
print(strategy, "n =", strategy.n)

result = run_game(strategy, RandomAdversary(seed=1))
print(result.transcript.to_text())
print("win:", result.win, " |S| =", result.set_size)

# a few thousand more games: the set size never moves off 9
sizes = Counter(run_game(strategy, RandomAdversary(s)).set_size for s in range(2000))
print("set sizes:", dict(sizes))
