"""Bidirectional randomized single-pair estimator.

Backward phase: leveled randomized PushBack from the target.  A node v
is pushed at level i when its independent residue copy exceeds the
level threshold; the push updates both residue copies of each
in-neighbor, deterministically when the increment is at least
gamma*theta for the receiving level and otherwise by two independent
sorted-scan Bernoulli passes (IN-SORTED gives in-neighbors by
non-decreasing out-degree, so each scan stops at the first increment
below its uniform threshold).

Forward phase: walks from the source; each terminal u_k is scored by an
estimate R_hat(u_k) of the derandomized residue R(u_k), combining exact
ADJ-checked contributions of heavy-reserve nodes with uniform sampling
of the remaining out-neighbors.

Indexing convention: a push from level i uses the receiving level's
threshold gamma_{i+1} * theta_{i+1} (immaterial for the default uniform
schedule).  chi values are never stored per edge; each pushed (v, i)
records its pushed amount, from which chi_{i+1}(u, v) =
(1-alpha) * amount / d_out(u) is reconstructed for any out-edge.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .classic import _walk_terminals
from .oracle import CapabilityDisabled

log = logging.getLogger(__name__)


class ConstraintViolation(ValueError):
    pass


@dataclass(frozen=True)
class LevelSchedule:
    """Per-level thresholds theta_i and sampling granularities gamma_i,
    i = 0..L (pushes happen at levels 0..L-1)."""

    theta: tuple
    gamma: tuple

    def __post_init__(self):
        if len(self.theta) != len(self.gamma) or len(self.theta) < 2:
            raise ValueError("theta/gamma must share a length >= 2")
        if any(t <= 0 for t in self.theta):
            raise ValueError("theta_i must be positive")
        if any(not 0 < g <= 1 for g in self.gamma):
            raise ValueError("gamma_i must be in (0,1]")

    @property
    def L(self):
        return len(self.theta) - 1

    @property
    def theta_sum(self):
        return sum(self.theta)

    @property
    def theta_floor(self):
        return min(g * t for g, t in zip(self.gamma, self.theta))

    @classmethod
    def uniform(cls, L, theta, gamma):
        return cls((theta,) * (L + 1), (gamma,) * (L + 1))


@dataclass
class NewAlgoParams:
    alpha: float
    delta: float
    eps: float
    p_f: float
    schedule: LevelSchedule
    n_r: int
    n_s: int
    tau: float
    multipliers: dict = field(default_factory=dict)
    constraint_margins: dict = field(default_factory=dict)


_CONSTRAINT_NAMES = ("gamma_theta_floor", "gamma_bound", "level_count",
                     "walk_count", "sample_ratio")


def verify_constraints(params, n):
    """Check the five parameter constraints; returns {name: margin}.

    Margins are (satisfied quantity) / (required quantity); a margin
    below 1 raises ConstraintViolation naming the constraint.
    """
    sched = params.schedule
    L = sched.L
    eps, delta, p_f, alpha = params.eps, params.delta, params.p_f, params.alpha
    lg = math.log(max(n * L, 2))
    floor = sched.theta_floor
    margins = {}
    margins["gamma_theta_floor"] = min(
        g * t for g, t in zip(sched.gamma, sched.theta)) / floor
    margins["gamma_bound"] = min(
        (eps * eps) / (g * L * L * lg) for g in sched.gamma)
    need_L = math.log(1.0 / sched.theta[L]) / alpha
    margins["level_count"] = L / need_L if need_L > 0 else math.inf
    need_nr = sched.theta_sum * math.log(1.0 / p_f) / (eps * delta)
    margins["walk_count"] = params.n_r / need_nr
    need_ratio = math.log(1.0 / p_f) / (alpha * eps * delta)
    margins["sample_ratio"] = (params.n_r * params.n_s / params.tau) / need_ratio
    for name in _CONSTRAINT_NAMES:
        if margins[name] < 1.0 - 1e-9:
            raise ConstraintViolation(
                f"constraint {name} violated: margin {margins[name]:.4g}")
    return margins


def derive_params(alpha, delta, eps, p_f, n, c_theta=1.0, c_L=1.0,
                  c_gamma=1.0, c_nr=1.0, c_ns=1.0, c_tau=1.0):
    """Concrete parameter schedule for the target error profile.

    theta_i = c_theta * delta^(2/3) uniformly; L covers the geometric
    decay of residues; gamma_i, n_r and tau are sized directly from
    their defining constraints (gamma_i <= eps^2/(L^2 log nL),
    n_r >= theta * log(1/p_f)/(eps*delta), n_r*n_s/tau >=
    log(1/p_f)/(alpha*eps*delta)); n_s = ceil(c_ns / delta^(1/3)).
    """
    for name, val in (("alpha", alpha), ("delta", delta), ("eps", eps),
                      ("p_f", p_f)):
        if not 0.0 < val < 1.0 and not (name == "delta" and val == 1.0):
            raise ValueError(f"{name} must be in (0,1), got {val}")
    if n < 1:
        raise ValueError("n must be >= 1")
    theta0 = c_theta * delta ** (2.0 / 3.0)
    L = 1 if theta0 >= 1.0 else max(1, math.ceil(c_L * math.log(1.0 / theta0) / alpha))
    lg = math.log(max(n * L, 2))
    gamma = min(1.0, c_gamma * eps * eps / (L * L * lg))
    sched = LevelSchedule.uniform(L, theta0, gamma)
    log_pf = math.log(1.0 / p_f)
    n_r = max(1, math.ceil(c_nr * sched.theta_sum * log_pf / (eps * delta)))
    n_s = max(1, math.ceil(c_ns / delta ** (1.0 / 3.0)))
    tau = c_tau * n_r * n_s * alpha * eps * delta / log_pf
    params = NewAlgoParams(
        alpha=alpha, delta=delta, eps=eps, p_f=p_f, schedule=sched,
        n_r=n_r, n_s=n_s, tau=tau,
        multipliers={"c_theta": c_theta, "c_L": c_L, "c_gamma": c_gamma,
                     "c_nr": c_nr, "c_ns": c_ns, "c_tau": c_tau})
    params.constraint_margins = verify_constraints(params, n)
    return params


@dataclass
class RandPushState:
    """State of one backward phase.

    r_hat / r_hat_prime hold per-level residues and their independent
    copies; pushed_amount[i] maps v to the residue amount pushed from
    (v, i), which doubles as the not-1_i(v) flag and reconstructs any
    chi_{i+1}(u, v).  heavy is V_P = {v : p_hat(v) > tau}.
    """

    schedule: LevelSchedule
    alpha: float
    target: int
    tau: float
    r_hat: list
    r_hat_prime: list
    p_hat: dict
    pushed_amount: list
    heavy: set
    push_counts: list
    graph: object = None
    _contrib: dict = None
    _heavy_sorted: list = None
    _cache_stamp: int = -1

    def indicator(self, u, i):
        """1_i(u): u was never pushed at level i."""
        return u not in self.pushed_amount[i]

    def r_hat_total(self, u):
        return sum(level.get(u, 0.0) for level in self.r_hat)

    def _fresh(self):
        # caches are valid only while no further push has happened
        stamp = sum(self.push_counts)
        if stamp != self._cache_stamp:
            self._contrib = None
            self._heavy_sorted = None
            self._cache_stamp = stamp

    def contrib(self):
        """v -> tuple of (receiving level, (1-alpha)*pushed amount)."""
        self._fresh()
        if self._contrib is None:
            out = {}
            f = 1.0 - self.alpha
            for i, level in enumerate(self.pushed_amount):
                for v, amt in level.items():
                    if amt > 0.0:
                        out.setdefault(v, []).append((i + 1, f * amt))
            self._contrib = {v: tuple(entries) for v, entries in out.items()}
        return self._contrib

    def heavy_sorted(self):
        self._fresh()
        if self._heavy_sorted is None:
            self._heavy_sorted = sorted(self.heavy)
        return self._heavy_sorted


def rand_push_threshold(o, v, i, state, rng):
    """Randomized PushBack of r_hat_i(v) into level i+1.

    Deterministic prefix of the out-degree-sorted in-list gets the exact
    increment in both copies; past it, two independent scans with their
    own uniform thresholds add gamma*theta increments, each stopping at
    the first in-neighbor whose increment falls below its threshold.
    """
    sched = state.schedule
    if i >= sched.L:
        raise ValueError(f"push level {i} out of range (L={sched.L})")
    alpha = state.alpha
    amount = state.r_hat[i].get(v, 0.0)
    state.pushed_amount[i][v] = amount
    state.push_counts[i] += 1
    if amount > 0.0:
        thr = sched.gamma[i + 1] * sched.theta[i + 1]
        spread = (1.0 - alpha) * amount
        rn = state.r_hat[i + 1]
        rpn = state.r_hat_prime[i + 1]
        d_in = o.deg_in(v)
        idx = 0
        while idx < d_in:
            u = o.in_sorted(v, idx)
            chi = spread / o.deg_out(u)
            if chi >= thr:
                rn[u] = rn.get(u, 0.0) + chi
                rpn[u] = rpn.get(u, 0.0) + chi
                idx += 1
            else:
                break
        if idx < d_in:
            for tgt in (rn, rpn):
                rand = rng.random() * thr
                j = idx
                while j < d_in:
                    u = o.in_sorted(v, j)
                    if spread / o.deg_out(u) > rand:
                        tgt[u] = tgt.get(u, 0.0) + thr
                        j += 1
                    else:
                        break
    pv = state.p_hat.get(v, 0.0) + alpha * amount
    state.p_hat[v] = pv
    if pv > state.tau:
        state.heavy.add(v)
    state.r_hat[i][v] = 0.0
    return state


def backward_phase(o, t, params, rng):
    """Run levels 0..L-1; eligibility r_hat_prime_i(v) > theta_i, nodes
    processed in ascending id within a level."""
    if not o.caps.in_sorted:
        raise CapabilityDisabled("backward_phase needs IN-SORTED")
    sched = params.schedule
    L = sched.L
    state = RandPushState(
        schedule=sched, alpha=params.alpha, target=t, tau=params.tau,
        r_hat=[{} for _ in range(L + 1)],
        r_hat_prime=[{} for _ in range(L + 1)],
        p_hat={}, pushed_amount=[{} for _ in range(L + 1)],
        heavy=set(), push_counts=[0] * (L + 1), graph=getattr(o, "graph", None))
    state.r_hat[0][t] = 1.0
    state.r_hat_prime[0][t] = 1.0
    for i in range(L):
        th = sched.theta[i]
        eligible = sorted(v for v, val in state.r_hat_prime[i].items() if val > th)
        for v in eligible:
            rand_push_threshold(o, v, i, state, rng)
    if len(state.heavy) > 8 * (params.n_r + 1):
        log.warning("heavy set V_P has %d nodes (tau=%.3g); R_hat cost degrades",
                    len(state.heavy), params.tau)
    return state


def unpushed_bound_holds(state):
    """Deterministic termination bound: r_hat_prime_i(u) <= theta_i for
    every unpushed (u, i) with i < L.  Returns (ok, worst_excess)."""
    sched = state.schedule
    worst = 0.0
    for i in range(sched.L):
        th = sched.theta[i]
        pushed = state.pushed_amount[i]
        for u, val in state.r_hat_prime[i].items():
            if u not in pushed and val > th:
                worst = max(worst, val - th)
    return worst == 0.0, worst


def _chi_num_sum(state, u, v):
    """sum_i 1_i(u) * (1-alpha) * pushed_amount_{i-1}(v); caller divides
    by d_out(u).  Levels >= 1 only (the level-0 seed is virtual)."""
    entries = state.contrib().get(v)
    if not entries:
        return 0.0
    pushed = state.pushed_amount
    tot = 0.0
    for lvl, val in entries:
        if u not in pushed[lvl]:
            tot += val
    return tot


def compute_R(state, u):
    """Exact derandomized residue R(u) from the stored push amounts.

    Testing aid: walks the full out-list of the stored graph, which the
    metered algorithm itself never does.
    """
    g = state.graph
    if g is None:
        raise ValueError("state has no graph reference")
    du = g.out_degrees[u]
    total = 0.0
    for v in g.out_lists[u]:
        total += _chi_num_sum(state, u, v)
    total /= du
    if u == state.target and state.indicator(u, 0):
        total += 1.0  # chi_0(t,t) = 1 seed convention
    return total


def estimate_R_hat(o, state, u_k, params, rng):
    """Unbiased estimate of R(u_k): exact contributions of heavy-reserve
    out-neighbors via ADJ, uniform sampling of the rest."""
    if not o.caps.adj:
        raise CapabilityDisabled("estimate_R_hat needs ADJ")
    du = o.deg_out(u_k)
    total = 0.0
    if u_k == state.target and state.indicator(u_k, 0):
        total += 1.0
    heavy = state.heavy
    n_heavy_nbrs = 0
    num = 0.0
    for v in state.heavy_sorted():
        if o.adj(u_k, v):
            n_heavy_nbrs += 1
            num += _chi_num_sum(state, u_k, v)
    pool = du - n_heavy_nbrs
    if pool > 0:
        n_s = params.n_s
        acc = 0.0
        if du >= 2 * len(heavy):
            # rejection sampling against the heavy set
            for _ in range(n_s):
                for _ in range(64):
                    v = o.out_nbr(u_k, int(rng.random() * du))
                    if v not in heavy:
                        break
                else:  # pragma: no cover - expected tries <= 2
                    v = _materialized_pick(o, u_k, du, heavy, rng)
                acc += _chi_num_sum(state, u_k, v)
        else:
            cand = [o.out_nbr(u_k, j) for j in range(du)]
            cand = [v for v in cand if v not in heavy]
            for _ in range(n_s):
                acc += _chi_num_sum(state, u_k, cand[int(rng.random() * len(cand))])
        num += acc * pool / n_s
    return total + num / du


def _materialized_pick(o, u_k, du, heavy, rng):
    cand = [o.out_nbr(u_k, j) for j in range(du)]
    cand = [v for v in cand if v not in heavy]
    return cand[int(rng.random() * len(cand))]


def single_pair_ppr(o, s, t, params, rng):
    """Full estimator: p_hat(s) plus the average of n_r independent
    R_hat scores of walk terminals (needs IN-SORTED and ADJ).

    Repeated terminals get fresh independent R_hat evaluations.
    """
    if not (o.caps.in_sorted and o.caps.adj):
        raise CapabilityDisabled("single_pair_ppr needs IN-SORTED and ADJ")
    state = backward_phase(o, t, params, rng)
    n_r = params.n_r
    acc = 0.0
    for u_k in _walk_terminals(o, s, params.alpha, rng, n_r):
        acc += estimate_R_hat(o, state, u_k, params, rng)
    return state.p_hat.get(s, 0.0) + acc / n_r


def diagnostics(o, params, state, estimate):
    """JSON-friendly run summary: schedule, per-level push counts,
    |V_P|, query counters, final estimate."""
    return {
        "L": params.schedule.L,
        "theta": list(params.schedule.theta),
        "gamma": list(params.schedule.gamma),
        "n_r": params.n_r,
        "n_s": params.n_s,
        "tau": params.tau,
        "push_counts": list(state.push_counts),
        "heavy_set_size": len(state.heavy),
        "queries": o.stats.as_dict(),
        "estimate": estimate,
    }
