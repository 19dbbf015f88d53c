"""Command-line entry point: ``randqueens <command> [flags]``.

Exit status is 0 on success, 1 when the pipeline aborts, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import oracles
from .analysis import concentration_report, counting_witness, coupling_experiment, predict
from .greedy import GreedyParams, alpha_stop, default_stop, run_greedy
from .pipeline import SCHEMA_VERSION, solve, solve_with_trace, trial_seed

EXIT_OK, EXIT_ABORT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_stop(text: str | None, n: int) -> int:
    """``None`` gives the default; otherwise an integer, ``pow:E`` for ``n - ceil(n^E)`` or ``alpha:A``."""
    if text is None:
        return default_stop(n)
    try:
        if text.startswith("pow:"):
            stop = n - math.ceil(n ** float(text[4:]))
        elif text.startswith("alpha:"):
            stop = alpha_stop(n, float(text[6:]))
        else:
            stop = int(text)
    except ValueError:
        raise UsageError(f"cannot parse --stop {text!r}; use an integer, pow:E or alpha:A") from None
    if not 0 <= stop <= n:
        raise UsageError(f"--stop resolves to {stop}, outside [0, {n}]")
    return stop


def _dump_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def cmd_solve(args) -> int:
    stop = parse_stop(args.stop, args.n)
    record = solve(args.n, args.seed, stop, args.retries)
    _emit(_dump_json(record), args.out)
    if not record["phase2"]["completed"]:
        last = record["attempts"][-1]
        where = "greedy phase" if last["phase1"]["aborted"] else f"absorption step {last['phase2']['abort_step']}"
        print(f"aborted after {len(record['attempts'])} attempts; last failure in {where}", file=sys.stderr)
        return EXIT_ABORT
    return EXIT_OK


TRAJECTORY_COLUMNS = ["t", "available", "pred_available", "paper_band", "desk_band_pass",
                      "min_s_ell", "max_s_ell", "pred_s", "eps", "band_vacuous"]


def cmd_trajectory(args) -> int:
    if args.n < 2:
        raise UsageError("trajectory needs --n >= 2")
    if args.rel_tol <= 0:
        raise UsageError("--rel-tol must be positive")
    stop = parse_stop(args.stop, args.n)
    outcome = run_greedy(GreedyParams(args.n, stop, args.seed, record_lines=True, keep_line_matrix=False))
    report = concentration_report(outcome.trajectory, args.n, args.rel_tol)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRAJECTORY_COLUMNS)
    for row in report.rows():
        w.writerow([_fmt(row[c]) for c in TRAJECTORY_COLUMNS])
    _emit(buf.getvalue(), args.out)
    if outcome.aborted:
        print(f"greedy phase aborted after {outcome.placed} placements", file=sys.stderr)
        return EXIT_ABORT
    return EXIT_OK


def cmd_enumerate(args) -> int:
    fn = oracles.enumerate_toroidal if args.toroidal else oracles.enumerate_classic
    try:
        res = fn(args.n, allow_large=args.allow_large)
    except oracles.SizeGuardError:
        raise UsageError(f"enumeration is limited to n <= {oracles.MAX_ENUMERATE}; "
                         "pass --allow-large to override") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = {"n": res.n, "rule": res.rule.value, "count": res.count, "schema_version": SCHEMA_VERSION}
    _emit(_dump_json(doc), args.out)
    return EXIT_OK


def _campaign_trial(job):
    n, seed, stop, retries, coupling_p = job
    record, greedy_runs = solve_with_trace(n, seed, stop, retries)
    traj = greedy_runs[-1].trajectory
    deciles = [int(traj.available[d * stop // 10]) if d * stop // 10 < traj.available.size else None
               for d in range(10)]
    out = {
        "seed": seed,
        "completed": record["phase2"]["completed"],
        "attempts": len(record["attempts"]),
        "witness": None if record["witness"] is None else record["witness"]["witness"],
        "deciles": deciles,
    }
    if coupling_p is not None:
        rep = coupling_experiment(n, coupling_p, seed, stop)
        out["coupling"] = {"r_size": rep.r_size, "r_tilde_size": rep.r_tilde_size,
                           "inclusion_holds": rep.inclusion_holds, "safe_mean": rep.safe_counts["mean"]}
    return out


def _stats(values):
    if not values:
        return {"count": 0, "mean": None, "std": None, "min": None, "max": None}
    a = np.asarray(values, dtype=np.float64)
    return {"count": int(a.size), "mean": float(a.mean()), "std": float(a.std(ddof=1)) if a.size > 1 else 0.0,
            "min": float(a.min()), "max": float(a.max())}


def run_campaign(n: int, trials: int, seed: int, stop: int, retries: int = 3, jobs: int = 1,
                 coupling_p: float | None = None) -> dict:
    """Independent pipelines with seeds ``trial_seed(seed, i)``; results reduced in trial order."""
    jobs_list = [(n, trial_seed(seed, i), stop, retries, coupling_p) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_campaign_trial, jobs_list))
    else:
        results = [_campaign_trial(j) for j in jobs_list]

    deciles = []
    for d in range(10):
        t = d * stop // 10
        vals = [r["deciles"][d] for r in results if r["deciles"][d] is not None]
        deciles.append({
            "decile": d,
            "t": t,
            "mean_available": float(np.mean(vals)) if vals else None,
            "pred_available": predict(t, n).a_pred,
            "runs": len(vals),
        })
    witnesses = [r["witness"] for r in results if r["witness"] is not None]
    scale = n * math.log(n)
    wstats = _stats(witnesses)
    norm = _stats([w / scale for w in witnesses]) if scale > 0 else _stats([])
    wstats.update({
        "mean_normalized": norm["mean"],
        "std_normalized": norm["std"],
        "all_positive": bool(witnesses) and min(witnesses) > 0,
        "theoretical": n * (math.log(n) - 3.0),
    })
    summary = {
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "trials": trials,
        "seed": seed,
        "stop": stop,
        "success_rate": sum(r["completed"] for r in results) / trials,
        "mean_attempts": float(np.mean([r["attempts"] for r in results])),
        "mean_available_by_decile": deciles,
        "witness_stats": wstats,
    }
    if coupling_p is not None:
        cs = [r["coupling"] for r in results]
        eligible = [c for c in cs if c["r_size"] <= stop]
        r_sizes = [c["r_size"] for c in cs]
        summary["coupling_stats"] = {
            "p_param": coupling_p,
            "expected_r_size": coupling_p * n * n,
            "r_size": _stats(r_sizes),
            "r_tilde_size": _stats([c["r_tilde_size"] for c in cs]),
            "eligible_trials": len(eligible),
            "inclusion_rate": (sum(c["inclusion_holds"] for c in eligible) / len(eligible)) if eligible else None,
            "safe_count_mean": float(np.mean([c["safe_mean"] for c in cs])),
        }
    return summary


def cmd_campaign(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    stop = parse_stop(args.stop, args.n)
    summary = run_campaign(args.n, args.trials, args.seed, stop, args.retries, args.jobs, args.coupling_p)
    _emit(_dump_json(summary), args.out)
    return EXIT_OK


def cmd_coupling(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    p = args.coupling_p if args.coupling_p is not None else 1.0 / (4 * args.n)
    stop = parse_stop(args.stop, args.n)
    reports = []
    for i in range(args.trials):
        try:
            rep = coupling_experiment(args.n, p, (args.seed + i) % 2 ** 64, stop)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        reports.append(rep.as_dict())
    doc = {"schema_version": SCHEMA_VERSION, "n": args.n, "p_param": p, "stop": stop, "trials": reports}
    _emit(_dump_json(doc), args.out)
    return EXIT_OK


def cmd_bound(args) -> int:
    try:
        with (sys.stdin if args.record == "-" else open(args.record, encoding="utf-8")) as fh:
            record = json.load(fh)
        n, stop, k = int(record["n"]), int(record["stop"]), int(record["k"])
        seed = int(record["attempts"][-1]["seed"]) if record.get("attempts") else int(record["seed"])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read RunRecord: {exc}") from None
    if record.get("schema_version") != SCHEMA_VERSION:
        raise UsageError(f"unsupported schema_version {record.get('schema_version')!r}")
    if n - stop != k or 2 * k > n:
        raise UsageError("record needs k = n - stop and 2k <= n for a witness")
    outcome = run_greedy(GreedyParams(n, stop, seed))
    if outcome.aborted:
        print("greedy phase of this record aborted; no witness", file=sys.stderr)
        return EXIT_ABORT
    w = counting_witness(outcome.trajectory, n, k).as_dict()
    w["schema_version"] = SCHEMA_VERSION
    w["seed"] = seed
    _emit(_dump_json(w), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="randqueens", description="Random greedy plus absorption n-queens tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_required=True):
        p.add_argument("--n", type=int, required=n_required)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="write to this path instead of stdout")

    p = sub.add_parser("solve", help="run both phases and print a RunRecord")
    common(p)
    p.add_argument("--stop", default=None, help="integer, pow:E or alpha:A (default pow:0.7)")
    p.add_argument("--retries", type=int, default=3)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("trajectory", help="CSV of the greedy phase against the predicted trajectory")
    common(p)
    p.add_argument("--stop", default=None)
    p.add_argument("--rel-tol", type=float, default=0.1)
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("enumerate", help="exact solution count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--toroidal", action="store_true")
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("campaign", help="many seeded pipelines, summarised")
    common(p)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--stop", default=None)
    p.add_argument("--retries", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--coupling-p", type=float, default=None)
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("coupling", help="rank-grid coupling experiment")
    common(p)
    p.add_argument("--stop", default=None)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--coupling-p", type=float, default=None, help="threshold (default 1/(4n))")
    p.set_defaults(func=cmd_coupling)

    p = sub.add_parser("bound", help="counting witness for a stored RunRecord")
    p.add_argument("record", help="RunRecord JSON path, or - for stdin")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and args.n < 1:
        parser.error("--n must be positive")
    if getattr(args, "retries", 0) < 0:
        parser.error("--retries must be non-negative")
    if getattr(args, "seed", 0) < 0 or getattr(args, "seed", 0) >= 2 ** 64:
        parser.error("--seed must be a 64-bit unsigned integer")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
