"""Baseline estimators: Monte Carlo walks, backward push and their
bidirectional combinations, plus the JUMP-based single-target solvers.

Every estimator accesses the graph only through an OracleHandle (or an
object with the same query methods), so QueryStats fully accounts for
its cost.  Walk sampling queries DEG-OUT once per step and then one OUT
query: 2 queries per step.

Walk counts carry explicit constant multipliers (default
16*log(1/p_f)/eps^2 per 1/delta); the underlying analyses only give
Theta(.), so the constants are exposed as parameters.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

DEFAULT_WALK_MULT = 16.0


@dataclass
class WalkRecord:
    start: int
    terminal: int
    length: int  # number of moves before termination


@dataclass
class PushFrontier:
    """Reserves/residues of a backward-push run (sparse maps).

    Maintains the push invariant pi(u,t) = p(u) + sum_v pi(u,v) r(v)
    after every push; `active` queues nodes with r(v) >= r_max.
    """

    r_max: float
    p: dict = field(default_factory=dict)
    r: dict = field(default_factory=dict)
    active: deque = field(default_factory=deque)
    queued: set = field(default_factory=set)
    pushes: int = 0

    def add_residue(self, u, amount):
        ru = self.r.get(u, 0.0) + amount
        self.r[u] = ru
        if ru >= self.r_max and u not in self.queued:
            self.active.append(u)
            self.queued.add(u)


def sample_walk(o, s, alpha, rng):
    """One alpha-discounted walk from s; geometric termination."""
    cur = s
    length = 0
    while rng.random() >= alpha:
        d = o.deg_out(cur)
        cur = o.out_nbr(cur, int(rng.random() * d))
        length += 1
    return WalkRecord(s, cur, length)


def _walk_terminals(o, s, alpha, rng, count):
    """Terminals of `count` independent walks from s.

    Termination draws are batched (one geometric array, one uniform
    array) to keep the per-step cost dominated by the two oracle
    queries the model charges for.
    """
    lengths = rng.geometric(alpha, size=count)
    steps = int(lengths.sum()) - count
    us = rng.random(size=steps).tolist() if steps > 0 else []
    deg = o.deg_out
    nbr = o.out_nbr
    out = []
    pos = 0
    for g in lengths.tolist():
        cur = s
        for _ in range(g - 1):
            d = deg(cur)
            cur = nbr(cur, int(us[pos] * d))
            pos += 1
        out.append(cur)
    return out


def mc_walk_count(delta, eps, p_f, c=DEFAULT_WALK_MULT):
    return max(1, math.ceil(c * math.log(1.0 / p_f) / (eps * eps * delta)))


def monte_carlo_pair(o, s, t, alpha, delta, eps, p_f, rng, c=DEFAULT_WALK_MULT):
    """Fraction of walks from s that terminate at t.

    Returns (estimate, walk_count); walk_count is exposed for
    complexity accounting.
    """
    n_w = mc_walk_count(delta, eps, p_f, c)
    hits = 0
    for term in _walk_terminals(o, s, alpha, rng, n_w):
        if term == t:
            hits += 1
    return hits / n_w, n_w


def push_back(o, v, state, alpha):
    """Move an alpha-fraction of r(v) to p(v), rest to the in-neighbors."""
    rv = state.r.get(v, 0.0)
    state.r[v] = 0.0
    state.queued.discard(v)
    state.p[v] = state.p.get(v, 0.0) + alpha * rv
    state.pushes += 1
    if rv == 0.0:
        return state
    spread = (1.0 - alpha) * rv
    d_in = o.deg_in(v)
    for i in range(d_in):
        u = o.in_nbr(v, i)
        state.add_residue(u, spread / o.deg_out(u))
    return state


def approx_contributions(o, t, alpha, r_max):
    """Backward push from t until every residue is below r_max.

    Afterwards p(s) <= pi(s,t) < p(s) + r_max for every s.  Push
    eligibility is r(v) >= r_max (so r_max=1 pushes the seed once).
    """
    if not 0.0 < r_max:
        raise ValueError("r_max must be positive")
    state = PushFrontier(r_max=r_max)
    state.add_residue(t, 1.0)
    while state.active:
        v = state.active.popleft()
        if state.r.get(v, 0.0) >= r_max:
            push_back(o, v, state, alpha)
        else:
            state.queued.discard(v)
    return state


def power_iteration_target(o, t, alpha, L):
    """Synchronous leveled backward push; estimates pi(s,t) for all s.

    Returns a sparse dict equal to sum_{k<=L} alpha (1-alpha)^k P^k[.,t],
    i.e. brute_force_pair truncated at the same horizon; the dropped
    tail is at most (1-alpha)^L.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    est = {}
    r = {t: 1.0}
    for level in range(L + 1):
        for v, rv in r.items():
            est[v] = est.get(v, 0.0) + alpha * rv
        if level == L:
            break
        nxt = {}
        for v, rv in r.items():
            if rv == 0.0:
                continue
            spread = (1.0 - alpha) * rv
            for i in range(o.deg_in(v)):
                u = o.in_nbr(v, i)
                nxt[u] = nxt.get(u, 0.0) + spread / o.deg_out(u)
        r = nxt
    return est


def default_r_max_pair(o, delta):
    """BiPPR's balance point r_max = sqrt(delta * d), clamped to (0,1]."""
    d = o.edge_count / o.node_count
    return min(1.0, math.sqrt(delta * d))


def bippr_pair(o, s, t, alpha, delta, eps, p_f, r_max, rng, c=DEFAULT_WALK_MULT):
    """ApproxContributions from t, then walks from s scored by residue.

    The forward vectors are never materialized: each walk contributes
    r(terminal).  With r_max > 1 no push happens and this degenerates to
    plain Monte Carlo.
    """
    state = approx_contributions(o, t, alpha, r_max)
    n_w = max(1, math.ceil(c * r_max * math.log(1.0 / p_f) / (eps * eps * delta)))
    r = state.r
    acc = 0.0
    for term in _walk_terminals(o, s, alpha, rng, n_w):
        acc += r.get(term, 0.0)
    return state.p.get(s, 0.0) + acc / n_w


def rbs_levels(alpha, delta, eps):
    """Default level count ceil(log_{1/(1-alpha)} 1/(eps*delta))."""
    return max(1, math.ceil(math.log(1.0 / (eps * delta)) / math.log(1.0 / (1.0 - alpha))))


def rbs_single_target(o, t, alpha, delta, theta, rng, L=None, eps=0.5):
    """Randomized level-synchronous backward push (needs IN-SORTED).

    Residue increments below theta are randomized: one uniform threshold
    per (node, level) scan of the out-degree-sorted in-list, pushing
    theta for each scanned edge that was not deterministic.  Increments
    are unbiased but not independent within a scan.  Returns sparse
    per-source estimates of pi(s,t).
    """
    if L is None:
        L = rbs_levels(alpha, delta, eps)
    est = {}
    r = {t: 1.0}
    for level in range(L + 1):
        for v, rv in r.items():
            est[v] = est.get(v, 0.0) + alpha * rv
        if level == L:
            break
        nxt = {}
        for v in sorted(r):
            rv = r[v]
            if rv <= 0.0:
                continue
            spread = (1.0 - alpha) * rv
            d_in = o.deg_in(v)
            rand = rng.random() * theta
            idx = 0
            while idx < d_in:
                u = o.in_sorted(v, idx)
                chi = spread / o.deg_out(u)
                if chi >= theta:
                    nxt[u] = nxt.get(u, 0.0) + chi
                elif chi > rand:
                    nxt[u] = nxt.get(u, 0.0) + theta
                else:
                    break
                idx += 1
        r = nxt
    return est


def _cover_sources(o, extra=8.0):
    """JUMP until every node is seen with high probability.

    Coupon collector: n (ln n + extra) jumps miss a fixed node with
    probability <= e^-extra.
    """
    n = o.node_count
    n_jumps = max(n, math.ceil(n * (math.log(n) + extra)))
    seen = set()
    for _ in range(n_jumps):
        seen.add(o.jump())
        if len(seen) == n:
            break
    return sorted(seen)


def single_target_jump_mc(o, t, alpha, delta, eps, p_f, rng, c=DEFAULT_WALK_MULT):
    """Worst-case single-target solver: JUMP to cover sources, then
    plain Monte Carlo per discovered source (needs JUMP)."""
    est = {}
    for s in _cover_sources(o):
        est[s], _ = monte_carlo_pair(o, s, t, alpha, delta, eps, p_f, rng, c)
    return est


def single_target_bidir_jump(o, t, alpha, delta, eps, p_f, rng,
                             r_max=None, c=DEFAULT_WALK_MULT):
    """Average-case single-target solver: one backward push at
    r_max = sqrt(d delta / n), then per-source walks scored by residue
    (needs JUMP)."""
    n = o.node_count
    if r_max is None:
        d = o.edge_count / n
        r_max = min(1.0, math.sqrt(d * delta / n))
    state = approx_contributions(o, t, alpha, r_max)
    n_w = max(1, math.ceil(c * r_max * math.log(1.0 / p_f) / (eps * eps * delta)))
    r = state.r
    est = {}
    for s in _cover_sources(o):
        acc = 0.0
        for term in _walk_terminals(o, s, alpha, rng, n_w):
            acc += r.get(term, 0.0)
        est[s] = state.p.get(s, 0.0) + acc / n_w
    return est
