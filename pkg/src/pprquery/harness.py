"""Experiment driver: (algorithm x instance x delta sweep x trials).

Runs are fully reproducible: the master seed and the (cell, trial)
indices determine every estimate and query count bit-exactly, and
adding cells never perturbs other cells' randomness.  Results are
emitted as CSV (default) or JSON with a stable column order; wall time
is kept in memory only so emitted files are byte-stable.
"""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass, field, asdict

import numpy as np

from .graph import load_edge_list
from .oracle import OracleHandle, Capabilities
from .exact import exact_single_source, exact_pagerank
from .classic import (monte_carlo_pair, bippr_pair, power_iteration_target,
                      rbs_single_target, rbs_levels, single_target_jump_mc,
                      single_target_bidir_jump, approx_contributions,
                      default_r_max_pair)
from .bidir import derive_params, single_pair_ppr
from .single_node import (single_node_adaptive, single_node_avg_jump,
                          single_node_avg_full)
from .instances import InstanceSpec, generate, parameter_presets


class CapabilityMismatch(ValueError):
    pass


class InstanceLoadError(ValueError):
    pass


class InsufficientPoints(ValueError):
    pass


def eq1_success(estimate, exact, eps, delta):
    """Single-pair correctness predicate: |est - pi| < eps*max(pi, delta)."""
    return abs(estimate - exact) < eps * max(exact, delta)


def eq5_success(estimate, exact, eps):
    """Single-node correctness predicate: |est - pi(t)| < eps*pi(t)."""
    return abs(estimate - exact) < eps * exact


@dataclass
class ExperimentConfig:
    algorithm: str
    instance: dict
    capabilities: list = field(default_factory=list)
    deltas: list = field(default_factory=lambda: [0.1])
    eps: float = 0.2
    p_f: float = 0.1
    alpha: float = 0.2
    multipliers: dict = field(default_factory=dict)
    trials: int = 1
    master_seed: int = 0
    exact_cap: int = 20000

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))

    @classmethod
    def load(cls, path):
        with open(path) as f:
            return cls.from_json(f.read())


@dataclass
class TrialResult:
    algorithm: str
    instance: str
    cell: int
    delta: float
    eps: float
    p_f: float
    alpha: float
    trial: int
    s: int
    t: int
    estimate: float
    exact: float | None
    abs_error: float | None
    rel_error: float | None
    success: bool | None
    queries: dict = field(default_factory=dict)
    wall_time_s: float = 0.0


# algorithm registry: name -> (variant, required capabilities, runner)
# runner(o, s, t, delta, eps, p_f, alpha, multipliers, rng) -> float

def _run_monte_carlo(o, s, t, delta, eps, p_f, alpha, mult, rng):
    est, _ = monte_carlo_pair(o, s, t, alpha, delta, eps, p_f, rng,
                              c=mult.get("c_walks", 16.0))
    return est


def _run_bippr(o, s, t, delta, eps, p_f, alpha, mult, rng):
    r_max = mult.get("r_max") or default_r_max_pair(o, delta)
    return bippr_pair(o, s, t, alpha, delta, eps, p_f, r_max, rng,
                      c=mult.get("c_walks", 16.0))


def _run_power_iteration(o, s, t, delta, eps, p_f, alpha, mult, rng):
    L = rbs_levels(alpha, delta, eps)
    return power_iteration_target(o, t, alpha, L).get(s, 0.0)


def _run_rbs(o, s, t, delta, eps, p_f, alpha, mult, rng):
    theta = mult.get("rbs_theta") or eps * delta
    return rbs_single_target(o, t, alpha, delta, theta, rng,
                             eps=eps).get(s, 0.0)


def _run_approx_contributions(o, s, t, delta, eps, p_f, alpha, mult, rng):
    return approx_contributions(o, t, alpha, eps * delta).p.get(s, 0.0)


def _run_st_jump_mc(o, s, t, delta, eps, p_f, alpha, mult, rng):
    return single_target_jump_mc(o, t, alpha, delta, eps, p_f, rng,
                                 c=mult.get("c_walks", 16.0)).get(s, 0.0)


def _run_st_bidir_jump(o, s, t, delta, eps, p_f, alpha, mult, rng):
    return single_target_bidir_jump(o, t, alpha, delta, eps, p_f, rng,
                                    c=mult.get("c_walks", 16.0)).get(s, 0.0)


def _run_single_pair_ppr(o, s, t, delta, eps, p_f, alpha, mult, rng):
    keys = ("c_theta", "c_L", "c_gamma", "c_nr", "c_ns", "c_tau")
    kw = {k: mult[k] for k in keys if k in mult}
    params = derive_params(alpha, delta, eps, p_f, o.node_count, **kw)
    return single_pair_ppr(o, s, t, params, rng)


def _run_sn_adaptive(o, s, t, delta, eps, p_f, alpha, mult, rng):
    return single_node_adaptive(o, t, alpha, eps, p_f, rng,
                                theta_mult=mult.get("rbs_theta_mult", 1.0))


def _run_sn_avg_jump(o, s, t, delta, eps, p_f, alpha, mult, rng):
    return single_node_avg_jump(o, t, alpha, eps, p_f, rng,
                                c=mult.get("c_walks"))


def _run_sn_avg_full(o, s, t, delta, eps, p_f, alpha, mult, rng):
    keys = ("c_theta", "c_L", "c_gamma", "c_nr", "c_ns", "c_tau")
    kw = {k: mult[k] for k in keys if k in mult}
    return single_node_avg_full(o, t, alpha, eps, p_f, rng, multipliers=kw)


ALGORITHMS = {
    "monte_carlo": ("pair", (), _run_monte_carlo),
    "bippr": ("pair", (), _run_bippr),
    "power_iteration": ("target", (), _run_power_iteration),
    "approx_contributions": ("target", (), _run_approx_contributions),
    "rbs": ("target", ("in_sorted",), _run_rbs),
    "st_jump_mc": ("target", ("jump",), _run_st_jump_mc),
    "st_bidir_jump": ("target", ("jump",), _run_st_bidir_jump),
    "single_pair_ppr": ("pair", ("in_sorted", "adj"), _run_single_pair_ppr),
    "sn_adaptive": ("node", ("in_sorted",), _run_sn_adaptive),
    "sn_avg_jump": ("node", ("jump",), _run_sn_avg_jump),
    "sn_avg_full": ("node", ("jump", "in_sorted", "adj"), _run_sn_avg_full),
}


def _resolve_instance(inst, delta, alpha):
    """(graph, s, t, label) for one cell."""
    if "file" in inst:
        try:
            g = load_edge_list(inst["file"])
        except OSError as e:
            raise InstanceLoadError(str(e))
        s = inst.get("s", 0)
        t = inst.get("t", g.node_count - 1)
        return g, s, t, inst["file"]
    if "family" not in inst:
        raise InstanceLoadError("instance needs 'file' or 'family'")
    if inst.get("preset"):
        spec = parameter_presets(inst["family"], inst["n"], inst["m"],
                                 delta, alpha)
    else:
        fields = {k: v for k, v in inst.items()
                  if k in ("family", "n", "m", "L", "D", "D2", "swap",
                           "variant", "padding", "flip_upper")}
        spec = InstanceSpec(alpha=alpha, **fields)
    g, meta = generate(spec)
    s = inst.get("s", meta.s if meta.s is not None else 0)
    t = inst.get("t", meta.t)
    return g, s, t, inst["family"]


def _check_config(cfg):
    if cfg.algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {cfg.algorithm!r}")
    variant, required, runner = ALGORITHMS[cfg.algorithm]
    missing = [c for c in required if c not in cfg.capabilities]
    if missing:
        raise CapabilityMismatch(f"{cfg.algorithm} needs capabilities {missing}")
    if cfg.trials < 1:
        raise ValueError("trials must be >= 1")
    return variant, required, runner


def _run_cell(cfg, cell):
    variant, _required, runner = _check_config(cfg)
    caps = Capabilities.from_names(cfg.capabilities)
    delta = cfg.deltas[cell]
    g, s, t, label = _resolve_instance(cfg.instance, delta, cfg.alpha)
    exact = None
    if g.node_count <= cfg.exact_cap:
        if variant == "node":
            exact = exact_pagerank(g, cfg.alpha)[t]
        else:
            exact = exact_single_source(g, s, cfg.alpha)[t]
    results = []
    for trial in range(cfg.trials):
        ss = np.random.SeedSequence((cfg.master_seed, cell, trial))
        algo_ss, oracle_ss = ss.spawn(2)
        o = OracleHandle(g, caps, rng=np.random.default_rng(oracle_ss))
        rng = np.random.default_rng(algo_ss)
        t0 = time.perf_counter()
        est = runner(o, s, t, delta, cfg.eps, cfg.p_f, cfg.alpha,
                     cfg.multipliers, rng)
        wall = time.perf_counter() - t0
        if exact is None:
            abs_err = rel_err = success = None
        else:
            abs_err = abs(est - exact)
            rel_err = abs_err / exact if exact > 0 else math.inf
            if variant == "node":
                success = eq5_success(est, exact, cfg.eps)
            else:
                success = eq1_success(est, exact, cfg.eps, delta)
        results.append(TrialResult(
            algorithm=cfg.algorithm, instance=label, cell=cell,
            delta=delta, eps=cfg.eps, p_f=cfg.p_f, alpha=cfg.alpha,
            trial=trial, s=s, t=t, estimate=est, exact=exact,
            abs_error=abs_err, rel_error=rel_err, success=success,
            queries=o.stats.as_dict(), wall_time_s=wall))
    return results


def run_experiment(cfg, threads=1):
    """One TrialResult per (cell, trial); deterministic given master seed.

    threads > 1 runs whole cells in worker processes; per-trial seeding
    depends only on (master seed, cell, trial), and assembly is sorted,
    so the output is identical to a sequential run.
    """
    _check_config(cfg)
    cells = range(len(cfg.deltas))
    if threads > 1 and len(cfg.deltas) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_run_cell, [cfg] * len(cfg.deltas), cells))
    else:
        chunks = [_run_cell(cfg, cell) for cell in cells]
    results = [r for chunk in chunks for r in chunk]
    results.sort(key=lambda r: (r.cell, r.trial))
    return results


CSV_COLUMNS = ("algorithm", "instance", "cell", "delta", "eps", "p_f",
               "alpha", "trial", "s", "t", "estimate", "exact", "abs_error",
               "rel_error", "success",
               "q_deg_in", "q_deg_out", "q_in", "q_out", "q_in_sorted",
               "q_adj", "q_jump", "q_total")


def _row(r):
    def fmt(x):
        if x is None:
            return ""
        if isinstance(x, bool):
            return "1" if x else "0"
        if isinstance(x, float):
            return repr(x)
        return str(x)

    q = r.queries
    vals = (r.algorithm, r.instance, r.cell, r.delta, r.eps, r.p_f, r.alpha,
            r.trial, r.s, r.t, r.estimate, r.exact, r.abs_error, r.rel_error,
            r.success, q.get("deg_in", 0), q.get("deg_out", 0),
            q.get("in", 0), q.get("out", 0), q.get("in_sorted", 0),
            q.get("adj", 0), q.get("jump", 0), q.get("total", 0))
    return [fmt(v) for v in vals]


def emit(results, fmt, path):
    """Write results with a stable column order; returns the path."""
    if fmt == "csv":
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(CSV_COLUMNS)
            for r in results:
                w.writerow(_row(r))
    elif fmt == "json":
        rows = [dict(zip(CSV_COLUMNS, _row(r))) for r in results]
        with open(path, "w") as f:
            json.dump(rows, f, indent=1)
            f.write("\n")
    else:
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    return path


def read_results(path):
    """Load an emitted CSV back into a list of dicts (strings kept)."""
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def fit_scaling(xs, ys):
    """Least-squares slope of log(y) vs log(x); returns (slope, stderr).

    Used to exhibit query-count scaling exponents from delta sweeps.
    """
    if len(xs) != len(ys):
        raise ValueError("xs and ys must have equal length")
    if len(xs) < 4:
        raise InsufficientPoints(f"need >= 4 sweep points, got {len(xs)}")
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    k = len(lx)
    mx = lx.mean()
    sxx = float(((lx - mx) ** 2).sum())
    if sxx == 0:
        raise ValueError("all x values identical")
    slope = float(((lx - mx) * (ly - ly.mean())).sum() / sxx)
    intercept = float(ly.mean() - slope * mx)
    resid = ly - (slope * lx + intercept)
    var = float((resid ** 2).sum()) / max(k - 2, 1)
    stderr = math.sqrt(var / sxx)
    return slope, stderr


def mean_queries_by_cell(results):
    """cell -> (delta, mean total queries) from TrialResults."""
    acc = {}
    for r in results:
        acc.setdefault(r.cell, (r.delta, []))[1].append(r.queries["total"])
    return {c: (d, sum(v) / len(v)) for c, (d, v) in acc.items()}
