"""Figure sweeps, Monte-Carlo runs, verification suites and table output."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .beamforming import (DegenerateChannelError, EffectiveCluster, beamform,
                          effective_clusters, inter_cluster_gains)
from .channel import SystemConfig, draw_clusters
from .oracle import bisect_parity, grid_max_oma_sum, scan_dominance
from .power_allocation import (DofMode, equal_dof_bounds_vec, lemma1_margin_vec,
                               optimal_dof_bounds_vec)
from .rates import (PowerSplit, noma_rates_vec, oma_rates_vec, oma_sum_bound,
                    optimal_lambda1_vec)

__all__ = [
    "FIG1_RHO",
    "FIG1_GAINS",
    "ExperimentConfig",
    "Table",
    "Claim",
    "SuiteResult",
    "VerifyReport",
    "db_to_linear",
    "rho_grid_db",
    "run_fig1",
    "fig1_claims",
    "run_rho_sweep",
    "rho_sweep_claims",
    "simulate_gains",
    "run_montecarlo",
    "random_instances",
    "verify",
    "emit_output",
    "read_table",
]

FIG1_RHO = 1000.0
FIG1_GAINS = (0.052, 0.0052)
MAX_RESAMPLES = 100

BoundsFn = Callable[..., Tuple[np.ndarray, np.ndarray]]


@dataclass
class ExperimentConfig:
    experiment: str = "fig1"
    grid: int = 201
    rho_db: float = 30.0
    rho_range: Tuple[float, float, float] = (0.0, 40.0, 2.0)
    trials: int = 1000
    seed: int = 0
    out: Optional[str] = None
    fmt: str = "csv"
    gains: Tuple[float, float] = FIG1_GAINS
    oma_alpha2: float = 0.5
    mode: str = "fixed"
    workers: int = 1
    system: SystemConfig = field(default_factory=SystemConfig)

    def __post_init__(self):
        if self.experiment not in ("fig1", "rho-sweep", "montecarlo", "verify"):
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.grid < 2:
            raise ValueError("grid must have at least 2 points")
        start, stop, step = self.rho_range
        if not (step > 0 and stop >= start):
            raise ValueError("rho range must be non-empty with a positive step")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.mode not in ("fixed", "montecarlo"):
            raise ValueError("mode must be fixed or montecarlo")
        if not 0.0 <= self.oma_alpha2 <= 1.0:
            raise ValueError("oma_alpha2 must lie in [0, 1]")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class Table:
    """Column-ordered records; the unit handed to :func:`emit_output`."""

    columns: List[str]
    rows: List[list]
    name: str = "table"

    def column(self, key: str) -> np.ndarray:
        i = self.columns.index(key)
        return np.array([row[i] for row in self.rows])

    def records(self) -> List[dict]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    @classmethod
    def from_records(cls, records: Sequence[dict], name: str = "table") -> "Table":
        columns = list(records[0]) if records else []
        return cls(columns, [[rec[c] for c in columns] for rec in records], name)

    def __len__(self):
        return len(self.rows)


@dataclass
class Claim:
    name: str
    passed: bool
    worst_margin: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name} (worst margin {self.worst_margin:.3e})"


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def rho_grid_db(start: float, stop: float, step: float) -> np.ndarray:
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def _jain(r1, r2):
    total = r1 + r2
    return total**2 / (2.0 * (r1**2 + r2**2))


def _scheme_columns(schemes: Sequence[str]) -> List[str]:
    return [f"{s}_{q}" for s in schemes for q in ("r1", "r2", "sum", "jain")]


def _scheme_values(rates: Dict[str, Tuple[np.ndarray, np.ndarray]], schemes):
    out = []
    for s in schemes:
        r1, r2 = rates[s]
        out.extend([r1, r2, r1 + r2, _jain(r1, r2)])
    return out


# --- Figure 1: equal DoF, varying OMA power ----------------------------------

FIG1_SCHEMES = ("oma", "noma1", "noma2")


def run_fig1(cfg: Optional[ExperimentConfig] = None, rho: float = None,
             gains: Tuple[float, float] = None) -> Table:
    """Individual rates versus the OMA weak-user power under equal DoF.

    ``noma1`` uses the lower end of the feasible interval, ``noma2`` the
    upper end.
    """
    cfg = cfg or ExperimentConfig()
    rho = float(db_to_linear(cfg.rho_db)) if rho is None else rho
    g1, g2 = gains or cfg.gains
    a2 = np.linspace(0.0, 1.0, cfg.grid)
    lo, hi = equal_dof_bounds_vec(g1, g2, rho, a2)
    rates = {
        "oma": oma_rates_vec(g1, g2, rho, a2, 0.5),
        "noma1": noma_rates_vec(g1, g2, rho, lo),
        "noma2": noma_rates_vec(g1, g2, rho, hi),
    }
    values = [a2, lo, hi] + _scheme_values(rates, FIG1_SCHEMES)
    columns = ["oma_alpha2", "noma1_alpha1", "noma2_alpha1"] + _scheme_columns(FIG1_SCHEMES)
    rows = [[float(v[i]) for v in values] for i in range(cfg.grid)]
    return Table(columns, rows, name="fig1")


def _claim(name, margins):
    margins = np.asarray(margins, dtype=float)
    worst = float(margins.min()) if margins.size else 0.0
    return Claim(name, bool(margins.size == 0 or worst >= 0.0), worst)


def _parity_claim(name, a, b, tol=1e-10):
    diff = np.abs(np.asarray(a) - np.asarray(b))
    worst = float(diff.max()) if diff.size else 0.0
    return Claim(name, worst <= tol, tol - worst)


def fig1_claims(table: Table) -> List[Claim]:
    c = table.column
    fair = c("oma_alpha2") <= 0.8 + 1e-12
    return [
        _parity_claim("R1(NOMA1) = R1(OMA)", c("noma1_r1"), c("oma_r1")),
        _parity_claim("R2(NOMA2) = R2(OMA)", c("noma2_r2"), c("oma_r2")),
        _claim("R2(NOMA1) >= R2(OMA)", c("noma1_r2") - c("oma_r2")),
        _claim("R1(NOMA2) >= R1(OMA)", c("noma2_r1") - c("oma_r1")),
        Claim("R1(NOMA1) > R2(NOMA1) > R2(OMA) for alpha2' <= 0.8",
              bool(np.all(c("noma1_r1")[fair] > c("noma1_r2")[fair])
                   and np.all(c("noma1_r2")[fair] > c("oma_r2")[fair])),
              float(min((c("noma1_r1") - c("noma1_r2"))[fair].min(),
                        (c("noma1_r2") - c("oma_r2"))[fair].min()))),
    ]


# --- Figures 2-4: optimal DoF versus rho -------------------------------------

RHO_SCHEMES = ("noma3", "noma4", "oma", "oma_equal")


def _optimal_dof_schemes(g1, g2, rho, a2):
    lam1 = optimal_lambda1_vec(g1, g2, a2)
    lo, hi = optimal_dof_bounds_vec(g1, g2, rho, a2)
    return {
        "noma3": noma_rates_vec(g1, g2, rho, hi),
        "noma4": noma_rates_vec(g1, g2, rho, lo),
        "oma": oma_rates_vec(g1, g2, rho, a2, lam1),
        "oma_equal": oma_rates_vec(g1, g2, rho, 0.5, 0.5),
    }


def run_rho_sweep(cfg: Optional[ExperimentConfig] = None) -> Table:
    """Rates of NOMA3/NOMA4/OMA/OMA-equal versus rho.

    ``cfg.mode == "montecarlo"`` delegates to :func:`run_montecarlo`.
    """
    cfg = cfg or ExperimentConfig(experiment="rho-sweep")
    if cfg.mode == "montecarlo":
        return run_montecarlo(cfg)
    g1, g2 = cfg.gains
    rho_db = rho_grid_db(*cfg.rho_range)
    rho = db_to_linear(rho_db)
    rates = _optimal_dof_schemes(g1, g2, rho, cfg.oma_alpha2)
    values = [rho_db, rho] + _scheme_values(rates, RHO_SCHEMES)
    columns = ["rho_db", "rho"] + _scheme_columns(RHO_SCHEMES)
    rows = [[float(v[i]) for v in values] for i in range(rho_db.size)]
    return Table(columns, rows, name="rho-sweep")


def rho_sweep_claims(table: Table) -> List[Claim]:
    """Orderings shown in the rate-versus-rho figures; works on fixed or Monte-Carlo tables."""
    suffix = "_mean" if "noma3_r1_mean" in table.columns else ""

    def c(scheme, q):
        return table.column(f"{scheme}_{q}{suffix}")

    def strict(name, margins):
        margins = np.asarray(margins, dtype=float)
        return Claim(name, bool(np.all(margins > 0)), float(margins.min()))

    return [
        _parity_claim("R1(NOMA4) = R1(OMA)", c("noma4", "r1"), c("oma", "r1")),
        _parity_claim("R2(NOMA3) = R2(OMA)", c("noma3", "r2"), c("oma", "r2")),
        strict("R1: NOMA3 above NOMA4, OMA, OMA-equal",
               c("noma3", "r1") - np.maximum.reduce(
                   [c("noma4", "r1"), c("oma", "r1"), c("oma_equal", "r1")])),
        strict("R2: NOMA4 above NOMA3, OMA, OMA-equal",
               c("noma4", "r2") - np.maximum.reduce(
                   [c("noma3", "r2"), c("oma", "r2"), c("oma_equal", "r2")])),
        _claim("R1(NOMA4) >= R1(OMA-equal)", c("noma4", "r1") - c("oma_equal", "r1")),
        _claim("sum: NOMA3 >= NOMA4", c("noma3", "sum") - c("noma4", "sum") + 1e-12),
        _claim("sum: NOMA4 >= OMA", c("noma4", "sum") - c("oma", "sum") + 1e-12),
        _claim("sum: OMA >= OMA-equal", c("oma", "sum") - c("oma_equal", "sum") + 1e-12),
    ]


# --- Monte Carlo --------------------------------------------------------------

@dataclass
class GainSamples:
    gamma1: np.ndarray  # (trials, M)
    gamma2: np.ndarray
    resampled: int
    max_residual: float
    max_cross_gain: float


def _trial_gains(system: SystemConfig, trial_seed: int):
    for attempt in range(MAX_RESAMPLES):
        seq = trial_seed if attempt == 0 else [trial_seed, attempt]
        rng = np.random.default_rng(seq)
        clusters = draw_clusters(system, rng=rng)
        try:
            sol = beamform(clusters)
        except DegenerateChannelError:
            continue
        ecs = effective_clusters(clusters, sol, system.snr_rho)
        cross = inter_cluster_gains(clusters, sol)
        m = len(clusters)
        off = ~np.eye(m, dtype=bool)
        max_cross = float(max(cross[:, 0][off].max(), cross[:, 1][off].max())) if m > 1 else 0.0
        return ([e.gamma1 for e in ecs], [e.gamma2 for e in ecs], attempt,
                float(sol.alignment_residuals.max()), max_cross)
    raise DegenerateChannelError(f"trial seed {trial_seed}: {MAX_RESAMPLES} degenerate draws")


def simulate_gains(system: SystemConfig, trials: int, seed: int, workers: int = 1) -> GainSamples:
    """Effective gains for ``trials`` independent channel draws.

    Trial ``t`` is seeded with ``seed + t``; degenerate draws are redrawn
    from ``[seed + t, attempt]``.  Results do not depend on ``workers``.
    """
    seeds = [seed + t for t in range(trials)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: _trial_gains(system, s), seeds))
    else:
        results = [_trial_gains(system, s) for s in seeds]
    return GainSamples(
        gamma1=np.array([r[0] for r in results]),
        gamma2=np.array([r[1] for r in results]),
        resampled=int(sum(r[2] for r in results)),
        max_residual=max(r[3] for r in results),
        max_cross_gain=max(r[4] for r in results),
    )


def run_montecarlo(cfg: Optional[ExperimentConfig] = None,
                   samples: Optional[GainSamples] = None) -> Table:
    """Per-rho means and standard errors over synthesised channels.

    Every cluster of every trial is one sample.  ``dominance_violations``
    counts samples where a NOMA user falls below its OMA rate (optimal DoF).
    """
    cfg = cfg or ExperimentConfig(experiment="montecarlo")
    if samples is None:
        samples = simulate_gains(cfg.system, cfg.trials, cfg.seed, cfg.workers)
    g1 = samples.gamma1.ravel()
    g2 = samples.gamma2.ravel()
    n = g1.size
    columns = ["rho_db", "rho"]
    for name in _scheme_columns(RHO_SCHEMES):
        columns += [f"{name}_mean", f"{name}_stderr"]
    columns += ["dominance_violations", "samples", "trials", "seed", "resampled"]
    rows = []
    for rho_db in rho_grid_db(*cfg.rho_range):
        rho = float(db_to_linear(rho_db))
        rates = _optimal_dof_schemes(g1, g2, rho, cfg.oma_alpha2)
        row = [float(rho_db), rho]
        for v in _scheme_values(rates, RHO_SCHEMES):
            stderr = float(np.std(v, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
            row += [float(np.mean(v)), stderr]
        oma1, oma2 = rates["oma"]
        violations = 0
        for s in ("noma3", "noma4"):
            r1, r2 = rates[s]
            violations += int(np.sum((r1 < oma1 - 1e-10) | (r2 < oma2 - 1e-10)))
        row += [violations, n, cfg.trials, cfg.seed, samples.resampled]
        rows.append(row)
    return Table(columns, rows, name="montecarlo")


# --- Verification suites --------------------------------------------------------

@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int
    worst: Dict[str, float]

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        worst = ", ".join(f"{k}={v:.3e}" for k, v in self.worst.items())
        return f"[{status}] {self.name}: {self.cases} cases, {self.failures} failures; {worst}"


@dataclass
class VerifyReport:
    suites: List[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def lines(self) -> List[str]:
        return [s.line() for s in self.suites]


def random_instances(rng: np.random.Generator, n: int):
    """Random ``(EffectiveCluster, oma PowerSplit)`` pairs.

    Gains are log-uniform on ``[1e-3, 1]`` (ordered), rho log-uniform on
    ``[1, 1e4]``, the OMA weak-user power uniform on ``[0, 1]``.
    """
    out = []
    for _ in range(n):
        g = np.sort(10.0 ** rng.uniform(-3.0, 0.0, size=2))[::-1]
        rho = 10.0 ** rng.uniform(0.0, 4.0)
        ec = EffectiveCluster(float(g[0]), float(g[1]), float(rho))
        out.append((ec, PowerSplit.from_weak(rng.uniform())))
    return out


def _bounds_for(mode: DofMode, bounds: Optional[Dict[DofMode, BoundsFn]]):
    if bounds and mode in bounds:
        return bounds[mode]
    return optimal_dof_bounds_vec if mode is DofMode.OPTIMAL else equal_dof_bounds_vec


def _interval(ec, ps, mode, bounds):
    lo, hi = _bounds_for(mode, bounds)(ec.gamma1, ec.gamma2, ec.rho, ps.a2sq)
    return float(lo), float(hi)


def suite_lemma1(instances, grid=None) -> SuiteResult:
    grid = np.linspace(0.01, 0.99, 99) if grid is None else grid
    fails, cases = 0, 0
    min_margin, min_gap = np.inf, np.inf
    for ec, _ in instances:
        margin = lemma1_margin_vec(ec.gamma1, ec.gamma2, ec.rho, grid)
        lo, hi = optimal_dof_bounds_vec(ec.gamma1, ec.gamma2, ec.rho, grid)
        gap = hi - lo
        fails += int(np.sum((margin < -1e-12) | (gap < -1e-12)))
        cases += grid.size
        min_margin = min(min_margin, float(margin.min()))
        min_gap = min(min_gap, float(gap.min()))
    return SuiteResult("lemma1", cases, fails,
                       {"min_lemma1_margin": min_margin, "min_hi_minus_lo": min_gap})


def suite_bisection(instances, bounds=None, tol=1e-9) -> SuiteResult:
    fails, cases, worst = 0, 0, 0.0
    for ec, ps in instances:
        for mode in DofMode:
            lo, hi = _interval(ec, ps, mode, bounds)
            for user, closed in ((1, lo), (2, hi)):
                err = abs(bisect_parity(ec, ps, user, mode) - closed)
                worst = max(worst, err)
                fails += int(not err <= tol)
                cases += 1
    return SuiteResult("bisection-vs-closed-form", cases, fails, {"max_abs_error": worst})


def suite_containment(instances, bounds=None, step=1e-3) -> SuiteResult:
    """Closed-form interval inside the grid-scan dominance set widened by one step.

    An empty scan is only acceptable when the closed-form interval is too
    narrow to hold a grid point.
    """
    fails, cases, worst = 0, 0, 0.0
    for ec, ps in instances:
        for mode in DofMode:
            lo, hi = _interval(ec, ps, mode, bounds)
            scan = scan_dominance(ec, ps, mode, step)
            cases += 1
            if scan is None:
                fails += int(hi - lo >= step)
                continue
            excess = max(scan.lo - step - lo, hi - scan.hi - step, 0.0)
            worst = max(worst, excess)
            fails += int(excess > 0)
    return SuiteResult("containment", cases, fails, {"max_excess": worst})


def _oma_sum_slope(ec, ps, lam1):
    """Derivative of the OMA sum rate in ``lam1`` (``inf`` at a zero share)."""
    def part(lam, c):
        if lam <= 0:
            return np.inf if c > 0 else 0.0
        return (math.log1p(c / lam) - c / (lam + c)) / math.log(2.0)
    c1 = ec.rho * ps.a1sq * ec.gamma1
    c2 = ec.rho * ps.a2sq * ec.gamma2
    return part(lam1, c1) - part(1.0 - lam1, c2)


def grid_gap_bound(ec, ps, lam_star, step) -> float:
    """Concavity bound on ``f(lam_star) - max(grid)`` from the two neighbouring grid slopes."""
    n = int(round(1 / step))
    left = math.floor(lam_star * n) / n
    right = min(1.0, left + 1.0 / n)
    bounds = []
    for g in (left, right):
        slope = _oma_sum_slope(ec, ps, g)
        if np.isfinite(slope):
            bounds.append(slope * (lam_star - g))
    return max(0.0, min(bounds)) if bounds else np.inf


def suite_optimal_dof(instances, step=1e-3) -> SuiteResult:
    """Grid search against the OMA sum-rate bound.

    Per instance: no grid point above the bound, grid argmax within one step
    of the optimal share, and the grid shortfall within the concavity bound.
    ``over_1e-4`` counts instances whose shortfall exceeds 1e-4, which
    happens when one user's optimal share is a few grid steps or less.
    """
    fails, cases, coarse = 0, 0, 0
    worst_gap, worst_arg, worst_over, worst_slack = 0.0, 0.0, -np.inf, -np.inf
    lam = np.linspace(0.0, 1.0, int(round(1 / step)) + 1)
    for ec, ps in instances:
        if not (ps.a1sq * ec.gamma1 + ps.a2sq * ec.gamma2) > 0:
            continue
        df, best = grid_max_oma_sum(ec, ps, step)
        bound = oma_sum_bound(ec, ps)
        lam1 = float(optimal_lambda1_vec(ec.gamma1, ec.gamma2, ps.a2sq))
        r1, r2 = oma_rates_vec(ec.gamma1, ec.gamma2, ec.rho, ps.a2sq, lam)
        over = float((r1 + r2).max() - bound)
        gap = bound - best
        arg = abs(df.lam1 - lam1)
        slack = gap - grid_gap_bound(ec, ps, lam1, step)
        worst_gap, worst_arg = max(worst_gap, gap), max(worst_arg, arg)
        worst_over, worst_slack = max(worst_over, over), max(worst_slack, slack)
        coarse += int(gap > 1e-4)
        fails += int(over > 1e-12 or arg > step or slack > 1e-12)
        cases += 1
    return SuiteResult("optimal-dof-grid", cases, fails,
                       {"max_bound_gap": worst_gap, "max_argmax_error": worst_arg,
                        "max_over_bound": worst_over, "max_gap_minus_tangent_bound": worst_slack,
                        "over_1e-4": float(coarse)})


def suite_dominance(instances, rng: np.random.Generator, bounds=None) -> SuiteResult:
    fails, cases = 0, 0
    worst_margin, worst_parity = np.inf, 0.0
    for ec, ps in instances:
        for mode in DofMode:
            lo, hi = _interval(ec, ps, mode, bounds)
            if mode is DofMode.OPTIMAL:
                lam1 = optimal_lambda1_vec(ec.gamma1, ec.gamma2, ps.a2sq)
            else:
                lam1 = 0.5
            o1, o2 = oma_rates_vec(ec.gamma1, ec.gamma2, ec.rho, ps.a2sq, lam1)
            a = np.concatenate([[lo, hi], rng.uniform(lo, max(lo, hi), size=8)])
            r1, r2 = noma_rates_vec(ec.gamma1, ec.gamma2, ec.rho, a)
            margin = float(min((r1 - o1).min(), (r2 - o2).min()))
            parity = float(max(abs(r1[0] - o1), abs(r2[1] - o2)))
            worst_margin = min(worst_margin, margin)
            worst_parity = max(worst_parity, parity)
            fails += int(margin < -1e-10 or parity > 1e-10)
            cases += 1
    return SuiteResult("dominance", cases, fails,
                       {"min_rate_margin": worst_margin, "max_endpoint_parity_error": worst_parity})


def suite_beamforming(trials: int, seed: int) -> SuiteResult:
    system = SystemConfig(num_clusters=4, user_antennas=3)
    samples = simulate_gains(system, trials, seed)
    fails = int(samples.max_residual >= 1e-10) + int(samples.max_cross_gain >= 1e-18)
    return SuiteResult("beamforming", trials, fails,
                       {"max_alignment_residual": samples.max_residual,
                        "max_inter_cluster_gain": samples.max_cross_gain,
                        "resampled": float(samples.resampled)})


def verify(cfg: Optional[ExperimentConfig] = None,
           bounds: Optional[Dict[DofMode, BoundsFn]] = None) -> VerifyReport:
    """Run every oracle agreement and invariant suite.

    ``bounds`` replaces the interval endpoint functions, which lets tests
    check that a corrupted formula is caught.
    """
    cfg = cfg or ExperimentConfig(experiment="verify")
    rng = np.random.default_rng(cfg.seed)
    instances = random_instances(rng, cfg.trials)
    return VerifyReport([
        suite_lemma1(instances),
        suite_bisection(instances, bounds),
        suite_containment(instances, bounds),
        suite_optimal_dof(instances),
        suite_dominance(instances, rng, bounds),
        suite_beamforming(cfg.trials, cfg.seed),
    ])


# --- Output ---------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def table_to_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _plain(value):
    if isinstance(value, np.generic):
        return value.item()
    return value


def table_to_json(table: Table) -> str:
    records = [{k: _plain(v) for k, v in rec.items()} for rec in table.records()]
    return json.dumps(records, indent=1) + "\n"


_PLOT_HEADER = '''"""Plot script generated for {data}."""
import {loader}
import matplotlib.pyplot as plt

{load}
'''

_PLOT_FIG1 = '''fig, ax = plt.subplots()
x = col("oma_alpha2")
for scheme, style in (("oma", "k-"), ("noma1", "b--"), ("noma2", "r-.")):
    ax.plot(x, col(scheme + "_r1"), style, label=scheme.upper() + " R1")
    ax.plot(x, col(scheme + "_r2"), style, alpha=0.5, label=scheme.upper() + " R2")
ax.set_xlabel("OMA weak-user power fraction")
ax.set_ylabel("rate (bits/s/Hz)")
ax.legend()
fig.savefig("{stem}_fig1.png", dpi=150)
'''

_PLOT_RHO = '''x = col("rho_db")
for quantity, title in (("r1", "R1"), ("r2", "R2"), ("sum", "sum rate")):
    fig, ax = plt.subplots()
    for scheme in ("noma3", "noma4", "oma", "oma_equal"):
        ax.plot(x, col(scheme + "_" + quantity + "{suffix}"), marker="o", label=scheme)
    ax.set_xlabel("rho (dB)")
    ax.set_ylabel(title + " (bits/s/Hz)")
    ax.legend()
    fig.savefig("{stem}_" + quantity + ".png", dpi=150)
'''


def plot_script(table: Table, data_path: Path, fmt: str) -> str:
    if fmt == "csv":
        loader = "csv"
        load = (f'with open({str(data_path.name)!r}) as fh:\n'
                '    rows = list(csv.DictReader(fh))\n\n\n'
                'def col(name):\n    return [float(r[name]) for r in rows]\n')
    else:
        loader = "json"
        load = (f'with open({str(data_path.name)!r}) as fh:\n'
                '    rows = json.load(fh)\n\n\n'
                'def col(name):\n    return [float(r[name]) for r in rows]\n')
    text = _PLOT_HEADER.format(data=data_path.name, loader=loader, load=load)
    stem = data_path.stem
    if "oma_alpha2" in table.columns:
        return text + "\n" + _PLOT_FIG1.format(stem=stem)
    suffix = "_mean" if "noma3_r1_mean" in table.columns else ""
    return text + "\n" + _PLOT_RHO.format(stem=stem, suffix=suffix)


def emit_output(table: Table, fmt: str, path) -> Tuple[Path, Path]:
    """Write ``table`` as CSV or JSON plus a matplotlib script next to it."""
    if not table.rows:
        raise ValueError("refusing to write an empty table")
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    path = Path(path)
    text = table_to_csv(table) if fmt == "csv" else table_to_json(table)
    path.write_text(text)
    script = path.with_name(path.stem + "_plot.py")
    script.write_text(plot_script(table, path, fmt))
    return path, script


def read_table(path, name: str = "table") -> Table:
    """Load a table written by :func:`emit_output` (numbers come back as floats/ints)."""
    path = Path(path)
    if path.suffix == ".json":
        return Table.from_records(json.loads(path.read_text()), name)
    with path.open() as fh:
        reader = csv.reader(fh)
        columns = next(reader)
        rows = [[_parse(v) for v in row] for row in reader]
    return Table(columns, rows, name)


def _parse(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)
