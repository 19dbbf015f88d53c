"""Two-phase solver: random greedy on the torus, then absorber swaps to fill the gaps."""

from __future__ import annotations

import numpy as np

from .absorption import run_absorption
from .analysis import counting_witness
from .board import Rule, verify
from .greedy import GreedyParams, default_stop, run_greedy

SCHEMA_VERSION = "1"
_MASK64 = (1 << 64) - 1


def trial_seed(master_seed: int, index: int) -> int:
    """64-bit seed for trial ``index`` of a campaign, independent of scheduling."""
    ss = np.random.SeedSequence([master_seed, index])
    return int(ss.generate_state(1, np.uint64)[0])


def _attempt(n: int, stop: int, seed: int, strategy: str, lookahead: int) -> dict:
    greedy = run_greedy(GreedyParams(n, stop, seed))
    att = {
        "seed": seed,
        "phase1": {"placed": greedy.placed, "aborted": greedy.aborted},
        "phase2": {"completed": False, "abort_step": None},
        "greedy": greedy,
        "config": greedy.config,
    }
    if greedy.aborted:
        return att
    res = run_absorption(greedy.config, seed=seed, strategy=strategy, lookahead=lookahead)
    att["phase2"] = {"completed": res.completed, "abort_step": res.abort_step}
    att["config"] = res.config
    return att


def solve(n: int, seed: int = 0, stop: int | None = None, retries: int = 3, *,
          strategy: str = "adaptive", lookahead: int = 8, with_witness: bool = True) -> dict:
    """Run the pipeline, retrying with ``seed + i`` after either phase aborts.

    Returns a RunRecord dict. The top-level fields describe the last attempt;
    ``attempts`` lists every one. ``witness`` is null when the greedy phase
    aborted or when ``2k > n`` leaves the pairing count undefined.
    """
    return solve_with_trace(n, seed, stop, retries, strategy=strategy, lookahead=lookahead,
                            with_witness=with_witness)[0]


def solve_with_trace(n: int, seed: int = 0, stop: int | None = None, retries: int = 3, *,
                     strategy: str = "adaptive", lookahead: int = 8, with_witness: bool = True):
    """Like :func:`solve` but also returns the greedy outcome of every attempt."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if retries < 0:
        raise ValueError("retries must be non-negative")
    stop = default_stop(n) if stop is None else stop
    if not 0 <= stop <= n:
        raise ValueError(f"stop must lie in [0, {n}], got {stop}")
    k = n - stop
    attempts = []
    for i in range(retries + 1):
        att = _attempt(n, stop, (seed + i) & _MASK64, strategy, lookahead)
        attempts.append(att)
        if att["phase2"]["completed"]:
            break
    last = attempts[-1]
    cfg = last["config"]
    completed = last["phase2"]["completed"]
    if completed and not (len(cfg) == n and verify(cfg, Rule.CLASSICAL)):
        raise AssertionError(f"pipeline emitted an invalid board (n={n}, seed={last['seed']})")
    witness = None
    if with_witness and not last["phase1"]["aborted"] and 2 * k <= n:
        witness = counting_witness(last["greedy"].trajectory, n, k).as_dict()
    xs, ys = cfg.as_arrays()
    record = {
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "stop": stop,
        "k": k,
        "seed": seed,
        "phase1": last["phase1"],
        "phase2": last["phase2"],
        "queens": [[int(x), int(y)] for x, y in zip(xs, ys)],
        "witness": witness,
        "attempts": [
            {"seed": a["seed"], "phase1": a["phase1"], "phase2": a["phase2"]} for a in attempts
        ],
    }
    return record, [a["greedy"] for a in attempts]
