"""Absorbers, safe absorbers and the balanced region on small boards."""

import numpy as np

from randqueens import PartialConfig, Rule, absorbers, apply_absorber, balanced_pair_count, safe_absorbers
from randqueens.absorption import absorber_counts, balanced_mask, balanced_region_mask
from randqueens.oracles import brute_safe_absorbers

# five queens on an 8x8 board; (8,8) can be traded for (5,8) and (8,4)
R = {(4, 1), (7, 2), (1, 3), (3, 7), (8, 8)}
print("safe absorbers for (5,4):", safe_absorbers(R, (5, 4), 8))
print("brute force agrees:", safe_absorbers(R, (5, 4), 8) == brute_safe_absorbers(R, (5, 4), 8))

cfg = PartialConfig(8, R)
print("plain absorbers for (5,4):", absorbers(cfg, (5, 4)))
swapped = apply_absorber(cfg, (5, 4), (8, 8))
print("after the swap:", sorted(swapped.queens))

# absorber counts over every query of a sparse random config
rng = np.random.default_rng(0)
n = 30
cfg = PartialConfig(n)
for cell in rng.permutation(n * n)[:200]:
    p = (int(cell) // n + 1, int(cell) % n + 1)
    if not cfg.conflicts(p, Rule.TOROIDAL):
        cfg.place(p)
counts = absorber_counts(cfg)
print(f"\n{len(cfg)} queens on {n}x{n}: absorbers per query min {counts.min()}, "
      f"median {np.median(counts):.0f}, max {counts.max()}")

# balanced squares versus the band-free set S
n = 20
B = balanced_mask(n)
S = balanced_region_mask(n)
print(f"\nn={n}: {B.sum()} balanced squares, {S.sum()} in S")
for row_b, row_s in zip(B, S):
    print("".join("#" if s else ("+" if b else ".") for b, s in zip(row_b, row_s)))
low = min(balanced_pair_count(n, (r, c)) for r in range(1, n + 1) for c in range(1, n + 1))
low_s = min(balanced_pair_count(n, (r, c), S) for r in range(1, n + 1) for c in range(1, n + 1))
print(f"fewest balanced pairs over all queries: {low} (n^2/5 = {n * n / 5:.0f}); inside S only: {low_s}")
