"""Build a 40-queens solution with the two-phase pipeline and draw it."""

import numpy as np

from randqueens import GreedyParams, Rule, default_stop, run_absorption, run_greedy, verify

n = 40
stop = default_stop(n)  # n - ceil(n^0.7) = 27 queens from the greedy phase
print(f"n={n}, greedy stops after {stop} queens, leaving {n - stop} rows to absorb")

for seed in range(10):
    greedy = run_greedy(GreedyParams(n, stop, seed))
    if greedy.aborted:
        print(f"seed {seed}: greedy ran dry after {greedy.placed} queens")
        continue
    result = run_absorption(greedy.config, seed=seed)
    print(f"seed {seed}: {result.report()}")
    if result.completed:
        break

board = np.full((n, n), ".")
for r, c in greedy.config:
    board[r - 1, c - 1] = "o"  # placed by the greedy phase
for r, c in set(result.config.queens) - set(greedy.config.queens):
    board[r - 1, c - 1] = "Q"  # added by absorber swaps
print("\n".join(" ".join(row) for row in board))
print("valid classical solution:", verify(result.config, Rule.CLASSICAL) and len(result.config) == n)

# the absorber each swap used, and how many choices were live at that moment
for (r, c), a, live in zip(result.plan.matching, result.plan.choices, result.live_counts):
    print(f"  covered row {r:2d} / col {c:2d} by moving {tuple(a)}  ({live} absorbers available)")
