"""Single-node (PageRank-style) estimation of pi(t).

Three routes: an adaptive-threshold loop over the randomized backward
single-target solver, and two reductions that bolt a virtual uniform
super-source onto the graph and run a single-pair estimator from it,
using pi_aug(s', t) = (1-alpha) * pi(t).
"""

from __future__ import annotations

import math

from .classic import bippr_pair, rbs_single_target, rbs_levels
from .bidir import derive_params, single_pair_ppr
from .oracle import CapabilityDisabled, IndexOutOfRange


class SuperSourceView:
    """Oracle view of the base graph plus a virtual source s' = n.

    s' has an out-edge to every real node (served through JUMP, so a
    fresh out-neighbor draw costs one query) and no in-edges; every
    real node reports s' as one extra in-neighbor, placed last in both
    the plain and the out-degree-sorted in-lists (d_out(s') = n is
    maximal and s' carries the largest id).  Construction knowledge
    (sizes, s' degrees) is free; all real accesses are forwarded to the
    base handle and metered there.
    """

    def __init__(self, base):
        self.base = base
        self.virtual = base.node_count
        self.caps = base.caps
        self.graph = None  # not materialized; exact checks build it separately

    @property
    def node_count(self):
        return self.base.node_count + 1

    @property
    def edge_count(self):
        return self.base.edge_count + self.base.node_count

    @property
    def stats(self):
        return self.base.stats

    def deg_out(self, v):
        if v == self.virtual:
            return self.base.node_count
        return self.base.deg_out(v)

    def deg_in(self, v):
        if v == self.virtual:
            return 0
        return self.base.deg_in(v) + 1

    def out_nbr(self, v, i):
        if v == self.virtual:
            return self.base.jump()
        return self.base.out_nbr(v, i)

    def in_nbr(self, v, i):
        if v == self.virtual:
            raise IndexOutOfRange("virtual source has no in-neighbors")
        if i == self.base.graph.in_degrees[v]:
            return self.virtual
        return self.base.in_nbr(v, i)

    def in_sorted(self, v, i):
        if v == self.virtual:
            raise IndexOutOfRange("virtual source has no in-neighbors")
        if i == self.base.graph.in_degrees[v]:
            if not self.caps.in_sorted:
                raise CapabilityDisabled("IN-SORTED is not enabled")
            return self.virtual
        return self.base.in_sorted(v, i)

    def adj(self, u, v):
        if u == self.virtual:
            if not self.caps.adj:
                raise CapabilityDisabled("ADJ is not enabled")
            return v != self.virtual
        if v == self.virtual:
            if not self.caps.adj:
                raise CapabilityDisabled("ADJ is not enabled")
            return False
        return self.base.adj(u, v)

    def jump(self):
        # uniform over the n+1 view nodes, charged as one JUMP
        if not self.caps.jump:
            raise CapabilityDisabled("JUMP is not enabled")
        self.base.stats.jump += 1
        return int(self.base._rng.integers(self.node_count))


def materialize_super_source(g):
    """Explicit augmented graph for exact cross-checks (desk scale)."""
    from .graph import build_graph

    n = g.node_count
    edges = g.edges() + [(n, v) for v in range(n)]
    return build_graph(edges, n + 1)


def adaptive_rounds(n, alpha):
    """Upper bound on adaptive-loop rounds: delta halves from 1 until
    the alpha/(2n) floor."""
    return max(1, math.ceil(math.log2(2 * n / alpha)))


def single_node_adaptive(o, t, alpha, eps, p_f, rng, theta_mult=1.0):
    """Adaptive threshold loop over the randomized single-target solver.

    Tries delta = 1 and halves it until the averaged estimate clears
    (1+eps)*delta or delta falls below alpha/(2n) (pi(t) >= alpha/n
    always, so the floor round is accepted unconditionally).  Each round
    runs at accuracy eps/2 with failure budget p_f / #rounds.
    """
    if not o.caps.in_sorted:
        raise CapabilityDisabled("single_node_adaptive needs IN-SORTED")
    n = o.node_count
    rounds = adaptive_rounds(n, alpha)
    eps_in = eps / 2.0
    delta = 1.0
    floor = alpha / (2.0 * n)
    while True:
        L = rbs_levels(alpha, delta, eps_in)
        theta = theta_mult * eps_in * delta / math.log(math.e * rounds / p_f)
        est = rbs_single_target(o, t, alpha, delta, theta, rng, L=L, eps=eps_in)
        pi_hat = sum(est.values()) / n
        if delta <= floor or pi_hat > (1.0 + eps) * delta:
            return pi_hat
        delta /= 2.0


def single_node_avg_jump(o, t, alpha, eps, p_f, rng, c=None):
    """Super-source reduction run through the bidirectional walk/push
    pair estimator at delta = alpha/(2n) (needs JUMP)."""
    if not o.caps.jump:
        raise CapabilityDisabled("single_node_avg_jump needs JUMP")
    view = SuperSourceView(o)
    n = o.node_count
    delta = alpha / (2.0 * n)
    d = view.edge_count / view.node_count
    r_max = min(1.0, math.sqrt(delta * d))
    kwargs = {} if c is None else {"c": c}
    est = bippr_pair(view, view.virtual, t, alpha, delta, eps, p_f, r_max,
                     rng, **kwargs)
    return est / (1.0 - alpha)


def single_node_avg_full(o, t, alpha, eps, p_f, rng, multipliers=None):
    """Super-source reduction run through the randomized bidirectional
    single-pair estimator (needs JUMP, IN-SORTED and ADJ)."""
    if not (o.caps.jump and o.caps.in_sorted and o.caps.adj):
        raise CapabilityDisabled("single_node_avg_full needs JUMP+IN-SORTED+ADJ")
    view = SuperSourceView(o)
    n = o.node_count
    delta = alpha / (2.0 * n)
    params = derive_params(alpha, delta, eps, p_f, view.node_count,
                           **(multipliers or {}))
    est = single_pair_ppr(view, view.virtual, t, params, rng)
    return est / (1.0 - alpha)
