"""Per-run counting witness: log X from the realised availabilities against log Y."""

import math

import numpy as np

from randqueens import GreedyParams, counting_witness, run_greedy
from randqueens.oracles import enumerate_classic

# small n: compare exp(witness) with the exact count (it is a heuristic certificate, not a bound per run)
for n in (10, 12):
    stop = n - 2
    ws = []
    for seed in range(200):
        out = run_greedy(GreedyParams(n, stop, seed))
        if not out.aborted:
            ws.append(counting_witness(out.trajectory, n, n - stop).witness)
    exact = enumerate_classic(n).count
    print(f"n={n}: mean witness {np.mean(ws):.2f} over {len(ws)} runs, ln Q(n) = {math.log(exact):.2f}")

# large n: normalised witness as the stop moves toward n
n = 1000
for expo in (0.7, 0.65):
    stop = n - math.ceil(n ** expo)
    w = counting_witness(run_greedy(GreedyParams(n, stop, 0)).trajectory, n, n - stop)
    print(f"n={n}, stop={stop}: witness/(n ln n) = {w.witness / (n * math.log(n)):.4f}, "
          f"band-formula log X = {w.log_x_band:.1f} vs realised {w.log_x:.1f}, "
          f"n(ln n - 3) = {w.theoretical:.1f}")
