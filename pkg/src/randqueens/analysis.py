"""Trajectory predictions, concentration checks, counting bounds and the rank coupling."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .absorption import _isolated, safe_absorbers
from .board import Position
from .greedy import RankGrid, Trajectory, run_greedy_coupled


@dataclass(frozen=True)
class TrajectoryPrediction:
    t: int
    n: int
    p: float
    s: float
    eps: float
    a_pred: float
    a_band: float

    @property
    def vacuous(self) -> bool:
        """The line band ``s +- eps`` says nothing once ``eps`` exceeds a line's length."""
        return self.eps > self.n


def predict(t: int, n: int) -> TrajectoryPrediction:
    """Deterministic trajectory at step ``t``.

    ``p = 1 - t/n`` is the unoccupied fraction of lines, ``s = n p^3`` the
    available squares on an unoccupied line, ``a_pred = n^2 p^4`` the total
    available count, with error ``eps = n^0.51 (p^-50 - 1)`` on ``s`` and
    ``n p eps`` on ``a_pred``.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= t <= n:
        raise ValueError(f"t must lie in [0, {n}], got {t}")
    p = 1.0 - t / n
    if t == 0:
        eps = 0.0
    elif p == 0.0:
        eps = math.inf
    else:
        eps = n ** 0.51 * (p ** -50 - 1.0)
    a_band = math.inf if p == 0.0 else n * p * eps
    return TrajectoryPrediction(t, n, p, n * p ** 3, eps, float(n) ** 2 * p ** 4, a_band)


@dataclass
class ConcentrationReport:
    n: int
    rel_tol: float
    t: np.ndarray
    available: np.ndarray
    pred_available: np.ndarray
    a_band: np.ndarray
    band_pass: np.ndarray
    desk_pass: np.ndarray
    s_min: np.ndarray
    s_max: np.ndarray
    pred_s: np.ndarray
    eps: np.ndarray
    s_band_pass: np.ndarray
    s_desk_pass: np.ndarray
    vacuous: np.ndarray
    summary: dict = field(default_factory=dict)

    def rows(self):
        for i in range(self.t.size):
            yield {
                "t": int(self.t[i]),
                "available": int(self.available[i]),
                "pred_available": float(self.pred_available[i]),
                "paper_band": bool(self.band_pass[i]),
                "desk_band_pass": bool(self.desk_pass[i]),
                "min_s_ell": float(self.s_min[i]),
                "max_s_ell": float(self.s_max[i]),
                "pred_s": float(self.pred_s[i]),
                "eps": float(self.eps[i]),
                "band_vacuous": bool(self.vacuous[i]),
            }


def concentration_report(traj: Trajectory, n: int, rel_tol: float = 0.1) -> ConcentrationReport:
    """Check each recorded step against the predicted band and a relative desk band.

    Steps where ``eps > n`` are flagged vacuous: the analytic band holds there
    trivially for the line counts.
    """
    if not traj.has_lines:
        raise ValueError("trajectory was recorded without line statistics")
    steps = int(np.count_nonzero(traj.available))
    t = np.arange(steps)
    preds = [predict(int(i), n) for i in t]
    avail = traj.available[:steps].astype(np.float64)
    a_pred = np.array([q.a_pred for q in preds])
    a_band = np.array([q.a_band for q in preds])
    s_pred = np.array([q.s for q in preds])
    eps = np.array([q.eps for q in preds])
    s_min = traj.s_min[:steps]
    s_max = traj.s_max[:steps]
    inside = np.abs(avail - a_pred) <= a_band
    desk = np.abs(avail - a_pred) <= rel_tol * a_pred
    s_inside = (s_min >= s_pred - eps) & (s_max <= s_pred + eps)
    s_desk = (np.abs(s_min - s_pred) <= rel_tol * s_pred) & (np.abs(s_max - s_pred) <= rel_tol * s_pred)
    vacuous = eps > n
    frac = (lambda m: float(m.mean()) if m.size else 1.0)
    summary = {
        "steps": steps,
        "rel_tol": rel_tol,
        "band_pass": frac(inside),
        "desk_band_pass": frac(desk),
        "line_band_pass": frac(s_inside),
        "line_desk_band_pass": frac(s_desk),
        "vacuous_steps": int(vacuous.sum()),
        "first_vacuous_step": int(np.argmax(vacuous)) if vacuous.any() else None,
    }
    return ConcentrationReport(n, rel_tol, t, traj.available[:steps].copy(), a_pred, a_band, inside, desk,
                               s_min, s_max, s_pred, eps, s_inside, s_desk, vacuous, summary)


@dataclass(frozen=True)
class BoundWitness:
    """Log-space counting certificate for one greedy trajectory (natural logs)."""

    n: int
    k: int
    log_x: float
    log_y: float
    witness: float
    theoretical: float
    log_x_band: float

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "log_x": self.log_x,
            "log_y": self.log_y,
            "witness": self.witness,
            "theoretical": self.theoretical,
            "log_x_band": self.log_x_band,
        }


def log_multiplicity(n: int, k: int) -> float:
    """``ln Y`` for ``Y = C(n, 2k) * (2k)!! * 2^k * (n - k)!`` with ``(2k)!! = (2k)! / (2^k k!)``."""
    if not 0 <= 2 * k <= n:
        raise ValueError(f"need 0 <= 2k <= n, got n={n}, k={k}")
    lg = math.lgamma
    log_binom = lg(n + 1) - lg(2 * k + 1) - lg(n - 2 * k + 1)
    log_pairings = lg(2 * k + 1) - k * math.log(2) - lg(k + 1)
    return log_binom + log_pairings + k * math.log(2) + lg(n - k + 1)


def counting_witness(traj: Trajectory, n: int, k: int) -> BoundWitness:
    """``ln X - ln Y`` where ``X`` is the product of the run's availability counts."""
    stop = n - k
    avail = traj.available
    if avail.size != stop or (avail.size and avail.min() <= 0):
        raise ValueError("counting witness needs a non-aborted trajectory with stop = n - k")
    log_x = float(np.sum(np.log(avail.astype(np.float64))))
    t = np.arange(stop)
    log_x_band = float(np.sum(2.0 * math.log(n) + 4.0 * np.log1p(-t / n)))
    log_y = log_multiplicity(n, k)
    return BoundWitness(n, k, log_x, log_y, log_x - log_y, n * (math.log(n) - 3.0), log_x_band)


@dataclass
class CouplingReport:
    n: int
    p_param: float
    stop: int
    seed: int
    r_size: int
    r_tilde_size: int
    inclusion_holds: bool
    placed: int
    safe_counts: dict

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def coupling_experiment(n: int, p_param: float, seed: int, stop: int | None = None,
                        n_queries: int = 16) -> CouplingReport:
    """Draw one rank grid, threshold it at ``p_param`` and compare with the rank-driven greedy run.

    ``R`` is the set of squares ranked below ``p_param``; its members that
    share no line with another member must all be placed by the time the
    coupled process has made ``|R|`` placements, so inclusion is enforced
    whenever ``|R| <= stop``.
    """
    if not 0.0 <= p_param < 1.0:
        raise ValueError(f"p_param must lie in [0, 1), got {p_param}")
    stop = n if stop is None else stop
    grid = RankGrid.draw(n, seed)
    rows, cols = np.nonzero(grid.rank < p_param)
    R = {Position(int(i) + 1, int(j) + 1) for i, j in zip(rows, cols)}
    R_tilde = _isolated(R, n)
    outcome = run_greedy_coupled(grid, stop)
    inclusion = R_tilde <= outcome.config.queens
    if len(R) <= stop and not inclusion:
        raise RuntimeError(f"isolated threshold squares missing from the greedy outcome (seed {seed})")
    qrng = np.random.default_rng([seed, 1])
    queries = qrng.integers(1, n + 1, size=(n_queries, 2))
    counts = [len(safe_absorbers(R_tilde, (int(r), int(c)), n)) for r, c in queries]
    safe = {
        "queries": [[int(r), int(c)] for r, c in queries],
        "counts": counts,
        "min": min(counts) if counts else 0,
        "mean": float(np.mean(counts)) if counts else 0.0,
        "max": max(counts) if counts else 0,
    }
    return CouplingReport(n, p_param, stop, seed, len(R), len(R_tilde), bool(inclusion),
                          outcome.placed, safe)
