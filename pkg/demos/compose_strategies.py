"""
Composing strategies
====================

A (k,n) and a (k',n') strategy give a (kk',nn') one. Squaring the (9,108)
strategy reaches n = 11664 while Bob's sets stay small.
"""

from gks import FloodStrategy, RandomAdversary, compose, exponent, measured_k, run_game, theorem2

small = compose(FloodStrategy(2), FloodStrategy(3))
print("flood(2) o flood(3): n =", small.n, " worst |S| =", measured_k(small, "exhaustive"))

t2 = theorem2()
big = compose(t2, t2)
print("theorem2 o theorem2: n =", big.n, " declared k =", big.k)

worst = max(run_game(big, RandomAdversary(s)).set_size for s in range(50))
print("largest |S| over 50 games:", worst)

for k, n in [(9, 108), (81, 11664), (5, 30), (11, 165)]:
    print(f"exponent({k}, {n}) = {exponent(k, n):.6f}")
