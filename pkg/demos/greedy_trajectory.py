"""How closely does the toroidal greedy process follow n^2 p^4?"""

import numpy as np

from randqueens import GreedyParams, concentration_report, predict, run_greedy

n = 1000
out = run_greedy(GreedyParams(n, 874, seed=1, record_lines=True, keep_line_matrix=False))
rep = concentration_report(out.trajectory, n, rel_tol=0.1)

print(" t      |A(t)|   n^2 p^4   rel.err   min S   max S   n p^3     eps")
for t in (0, 100, 250, 500, 700, 850):
    pr = predict(t, n)
    a = rep.available[t]
    print(f"{t:4d} {a:10d} {pr.a_pred:9.0f} {abs(a - pr.a_pred) / pr.a_pred:9.4f} "
          f"{rep.s_min[t]:7.0f} {rep.s_max[t]:7.0f} {pr.s:7.1f} {pr.eps:9.3g}")

# the analytic band is honest but only informative very early
print("\nsummary:", rep.summary)
print("first step where eps exceeds a line length:", rep.summary["first_vacuous_step"])

# relative error of the whole trajectory, a quick picture of the drift near the end
rel = np.abs(rep.available - rep.pred_available) / rep.pred_available
for lo in range(0, 874, 125):
    print(f"t in [{lo},{lo + 125}): max rel.err {rel[lo:lo + 125].max():.3f}")
