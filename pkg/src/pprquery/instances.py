"""Deterministic generators for the lower-bound constructions.

Each family builds a layered graph with contiguous node-id blocks per
layer (roles recorded in the meta).  Regular bipartite layers use the
explicit circulant wiring N_in(B(i)) = {A(i), A(i+1 mod n), ...,
A(i+D-1 mod n)} for reproducibility.  Layers the figures leave without
out-edges get explicit self-loops (the walk must be defined
everywhere), which never creates new paths into the designated target.

The swap deletes designated edges e1=(u1,v1), e2=(u2,v2) and inserts
(u1,v2), (u2,v1) in place, preserving every in/out-degree and the
adjacency-list positions.  Closed-form pi values refer to the
designated source/target pair of the generated (possibly swapped)
instance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict

from .graph import build_graph

FAMILIES = (
    "folklore_pair", "sp_worst", "sp_avg",
    "st_worst_adj", "st_worst_full", "st_avg_adj", "st_avg_jump", "st_avg_full",
    "sn_avg_adj", "sn_avg_insorted", "sn_worst_full", "sn_avg_xor", "sn_avg_full",
    "output_size_st",
)


class SpecConstraintViolation(ValueError):
    pass


class NoClosedForm(ValueError):
    pass


class RegimeUndefined(ValueError):
    pass


@dataclass
class InstanceSpec:
    family: str
    n: int = 0            # layer scale parameter (not the total node count)
    m: int = 0            # edge budget (0 = unconstrained)
    L: int = 1
    D: int = 1
    D2: int = 0           # lower-layer degree where it differs from D (0 = use D)
    alpha: float = 0.2
    swap: bool = False
    swap_edges: tuple | None = None   # explicit ((u1,v1),(u2,v2)) override
    padding: bool = False
    variant: str = ""     # output_size_st: "worst" | "avg"
    flip_upper: bool = False  # ADJ-without-IN-SORTED variant: swap |U1| and |V1|

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))


@dataclass
class InstanceMeta:
    family: str
    s: int | None
    t: int | None
    pi_pre_swap: float | None
    pi_post_swap: float | None
    pi_bounds: tuple | None       # (lo, hi) for Theta-band families
    roles: dict = field(default_factory=dict)
    target_group: list = field(default_factory=list)
    swap_edges: tuple | None = None

    def designated_pi(self, swapped):
        return self.pi_post_swap if swapped else self.pi_pre_swap


def _require(cond, msg):
    if not cond:
        raise SpecConstraintViolation(msg)


def _block(start, size):
    return list(range(start, start + size))


def _circulant(src_block, dst_block, degree):
    """Edges so that N_in(dst[i]) = {src[i], ..., src[i+degree-1 mod n]}."""
    n = len(dst_block)
    _require(len(src_block) == n, "circulant layers must have equal size")
    _require(1 <= degree <= n, f"circulant degree {degree} outside [1,{n}]")
    return [(src_block[(i + k) % n], dst_block[i])
            for i in range(n) for k in range(degree)]


def _groups(block, size):
    """Contiguous partition into groups of `size` (last may be smaller)."""
    return [block[i:i + size] for i in range(0, len(block), size)]


def _apply_swap(edges, e1, e2):
    """Replace e1 -> (u1, v2) and e2 -> (u2, v1) in place."""
    (u1, v1), (u2, v2) = e1, e2
    try:
        i1 = edges.index(e1)
        i2 = edges.index(e2)
    except ValueError:
        raise SpecConstraintViolation(f"swap edges {e1}, {e2} not in instance")
    edges[i1] = (u1, v2)
    edges[i2] = (u2, v1)
    return edges


def _pad(edges, next_id, n_pad, m_pad):
    """Isolated block: n_pad self-loop nodes plus circulant extras
    totaling m_pad edges, disconnected from the construction."""
    _require(m_pad >= n_pad, "padding needs m >= n")
    block = _block(next_id, n_pad)
    edges.extend((v, v) for v in block)
    extra = m_pad - n_pad
    k = 0
    off = 1
    while k < extra:
        for i in range(n_pad):
            if k >= extra:
                break
            edges.append((block[i], block[(i + off) % n_pad]))
            k += 1
        off = off % (n_pad - 1) + 1 if n_pad > 1 else 1
    return next_id + n_pad


def generate(spec):
    """Build the family's graph and meta; optionally swap and pad."""
    if spec.family not in FAMILIES:
        raise SpecConstraintViolation(f"unknown family {spec.family!r}")
    builder = _BUILDERS[spec.family]
    edges, node_count, meta = builder(spec)
    if spec.swap and meta.swap_edges is not None:
        e1, e2 = spec.swap_edges if spec.swap_edges else meta.swap_edges
        _apply_swap(edges, tuple(e1), tuple(e2))
        meta.swap_edges = (tuple(e1), tuple(e2))
    if spec.padding:
        n_pad = max(1, spec.n)
        m_pad = max(spec.m, n_pad)
        node_count = _pad(edges, node_count, n_pad, m_pad)
        meta.roles["padding"] = _block(node_count - n_pad, n_pad)
    return build_graph(edges, node_count), meta


def closed_form_pi(spec):
    """Exact closed-form pi for the designated pair/target, matching the
    exact oracle within 1e-9 at desk scale; NoClosedForm for families
    where only a Theta band is stated."""
    _, meta = generate(spec)
    val = meta.designated_pi(spec.swap)
    if val is None:
        raise NoClosedForm(f"{spec.family} has only a Theta band; "
                           f"use meta.pi_bounds")
    return val


# ---------------------------------------------------------------------------
# family builders
# ---------------------------------------------------------------------------


def _build_folklore_pair(spec):
    """Source with K out-neighbors, target with K in-neighbors and a
    self-loop.  This family's perturbation is the folklore extra edge,
    not a degree-preserving swap: with spec.swap the first out-neighbor
    of s points at the first in-neighbor of t instead of at itself."""
    K = spec.L
    _require(K >= 1, "folklore_pair needs L = K >= 1")
    a = spec.alpha
    s = 0
    outs = _block(1, K)
    ins = _block(1 + K, K)
    t = 1 + 2 * K
    edges = [(s, v) for v in outs]
    for v in outs:
        if spec.swap and v == outs[0]:
            edges.append((v, ins[0]))
        else:
            edges.append((v, v))
    edges += [(u, t) for u in ins]
    edges.append((t, t))
    meta = InstanceMeta(
        family=spec.family, s=s, t=t,
        pi_pre_swap=0.0, pi_post_swap=(1 - a) ** 3 / K, pi_bounds=None,
        roles={"s": [s], "out_nbrs": outs, "in_nbrs": ins, "t": [t]},
        swap_edges=None)
    return edges, t + 1, meta


def _build_sp_worst(spec):
    L, D, a = spec.L, spec.D, spec.alpha
    _require(L >= 1 and D >= 1, "sp_worst needs L, D >= 1")
    if spec.m:
        _require(L * D <= spec.m, f"sp_worst needs L*D <= m, got {L * D} > {spec.m}")
    s = 0
    U1 = _block(1, L)
    V1 = _block(1 + L, D)
    U2 = _block(1 + L + D, L)
    V2 = _block(1 + 2 * L + D, D)
    t = 1 + 2 * L + 2 * D
    edges = [(s, u) for u in U1]
    edges += [(u, v) for u in U1 for v in V1]
    edges += [(v, v) for v in V1]
    edges += [(u, v) for u in U2 for v in V2]
    edges += [(v, t) for v in V2]
    edges.append((t, t))
    meta = InstanceMeta(
        family=spec.family, s=s, t=t,
        pi_pre_swap=0.0, pi_post_swap=(1 - a) ** 3 / (L * D), pi_bounds=None,
        roles={"s": [s], "U1": U1, "V1": V1, "U2": U2, "V2": V2, "t": [t]},
        swap_edges=((U1[0], V1[0]), (U2[0], V2[0])))
    return edges, t + 1, meta


def _build_sp_avg(spec):
    n, L, D, a = spec.n, spec.L, spec.D, spec.alpha
    _require(n >= 1 and L >= 1 and D >= 1, "sp_avg needs n, L, D >= 1")
    _require(L <= n and D <= n, "sp_avg needs L, D <= n")
    u1_size, v1_size = (D, L) if spec.flip_upper else (L, D)
    s = 0
    U1 = _block(1, u1_size)
    V1 = _block(1 + u1_size, v1_size)
    base = 1 + u1_size + v1_size
    U2 = _block(base, n)
    V2 = _block(base + n, n)
    n_groups = math.ceil(n / L)
    X = _block(base + 2 * n, n_groups)
    W2 = _block(base + 2 * n + n_groups, n)
    total = base + 3 * n + n_groups
    edges = [(s, u) for u in U1]
    edges += [(u, v) for u in U1 for v in V1]
    edges += [(v, v) for v in V1]
    edges += _circulant(U2, V2, D)
    v_groups = _groups(V2, L)
    w_groups = _groups(W2, L)
    for g in range(n_groups):
        edges += [(v, X[g]) for v in v_groups[g]]
        edges += [(X[g], w) for w in w_groups[g]]
    edges += [(w, w) for w in W2]
    g = 0  # designated target group (always full-size)
    pi_post = (1 - a) ** 4 / (u1_size * v1_size * len(w_groups[g]))
    meta = InstanceMeta(
        family=spec.family, s=s, t=w_groups[g][0],
        pi_pre_swap=0.0, pi_post_swap=pi_post, pi_bounds=None,
        roles={"s": [s], "U1": U1, "V1": V1, "U2": U2, "V2": V2,
               "X": X, "W2": W2},
        target_group=list(w_groups[g]),
        swap_edges=((U1[0], V1[0]), (U2[g * L], V2[g * L])))
    return edges, total, meta


def _build_st_worst_adj(spec):
    n, a = spec.n, spec.alpha
    d = spec.D2 or spec.D
    _require(n >= 1 and d >= 1, "st_worst_adj needs n, d >= 1")
    _require(d <= n, "st_worst_adj needs d <= n")
    u = 0
    U2 = _block(1, n)
    V2 = _block(1 + n, n)
    t = 1 + 2 * n
    edges = [(u, u)]
    edges += _circulant(U2, V2, d)
    edges += [(v, t) for v in V2]
    edges.append((t, t))
    meta = InstanceMeta(
        family=spec.family, s=u, t=t,
        pi_pre_swap=0.0, pi_post_swap=(1 - a) ** 2, pi_bounds=None,
        roles={"u": [u], "U2": U2, "V2": V2, "t": [t]},
        swap_edges=((u, u), (U2[0], V2[0])))
    return edges, t + 1, meta


def _build_st_worst_full(spec):
    n, D, a = spec.n, spec.D, spec.alpha
    _require(n >= 1 and 1 <= D <= n, "st_worst_full needs 1 <= D <= n")
    U1 = _block(0, n)
    V1 = _block(n, n)
    U2 = _block(2 * n, n)
    V2 = _block(3 * n, n)
    t = 4 * n
    edges = _circulant(U1, V1, D)
    edges += [(v, v) for v in V1]
    edges += _circulant(U2, V2, D)
    edges += [(v, t) for v in V2]
    edges.append((t, t))
    meta = InstanceMeta(
        family=spec.family, s=U1[0], t=t,
        pi_pre_swap=0.0, pi_post_swap=(1 - a) ** 2 / D, pi_bounds=None,
        roles={"U1": U1, "V1": V1, "U2": U2, "V2": V2, "t": [t]},
        swap_edges=((U1[0], V1[0]), (U2[0], V2[0])))
    return edges, t + 1, meta


def _build_st_avg_adj(spec):
    n, L, a = spec.n, spec.L, spec.alpha
    d = spec.D2 or spec.D
    _require(n >= 1 and 1 <= L <= n, "st_avg_adj needs 1 <= L <= n")
    _require(1 <= d <= n, "st_avg_adj needs 1 <= d <= n")
    u = 0
    U2 = _block(1, n)
    V2 = _block(1 + n, n)
    n_groups = math.ceil(n / L)
    X = _block(1 + 2 * n, n_groups)
    W2 = _block(1 + 2 * n + n_groups, n)
    total = 1 + 3 * n + n_groups
    edges = [(u, u)]
    edges += _circulant(U2, V2, d)
    v_groups = _groups(V2, L)
    w_groups = _groups(W2, L)
    for g in range(n_groups):
        edges += [(v, X[g]) for v in v_groups[g]]
        edges += [(X[g], w) for w in w_groups[g]]
    edges += [(w, w) for w in W2]
    g = 0
    meta = InstanceMeta(
        family=spec.family, s=u, t=w_groups[g][0],
        pi_pre_swap=0.0, pi_post_swap=(1 - a) ** 3 / len(w_groups[g]),
        pi_bounds=None,
        roles={"u": [u], "U2": U2, "V2": V2, "X": X, "W2": W2},
        target_group=list(w_groups[g]),
        swap_edges=((u, u), (U2[g * L], V2[g * L])))
    return edges, total, meta


def _build_st_avg_jump(spec, lower_equals_upper=False):
    n, L, D, a = spec.n, spec.L, spec.D, spec.alpha
    d2 = D if lower_equals_upper else (spec.D2 or D)
    _require(n >= 1 and 1 <= L <= n, "needs 1 <= L <= n")
    _require(1 <= D <= n and 1 <= d2 <= n, "needs 1 <= D, d2 <= n")
    U1 = _block(0, n)
    V1 = _block(n, n)
    U2 = _block(2 * n, n)
    V2 = _block(3 * n, n)
    n_groups = math.ceil(n / L)
    X = _block(4 * n, n_groups)
    W2 = _block(4 * n + n_groups, n)
    total = 5 * n + n_groups
    edges = _circulant(U1, V1, D)
    edges += [(v, v) for v in V1]
    edges += _circulant(U2, V2, d2)
    v_groups = _groups(V2, L)
    w_groups = _groups(W2, L)
    for g in range(n_groups):
        edges += [(v, X[g]) for v in v_groups[g]]
        edges += [(X[g], w) for w in w_groups[g]]
    edges += [(w, w) for w in W2]
    g = 0
    meta = InstanceMeta(
        family=spec.family, s=U1[0], t=w_groups[g][0],
        pi_pre_swap=0.0,
        pi_post_swap=(1 - a) ** 3 / (len(w_groups[g]) * D), pi_bounds=None,
        roles={"U1": U1, "V1": V1, "U2": U2, "V2": V2, "X": X, "W2": W2},
        target_group=list(w_groups[g]),
        swap_edges=((U1[0], V1[0]), (U2[g * L], V2[g * L])))
    return edges, total, meta


def _build_st_avg_full(spec):
    return _build_st_avg_jump(spec, lower_equals_upper=True)


def _band(value, lo_factor=0.5, hi_factor=2.0):
    return (lo_factor * value, hi_factor * value)


def _build_sn_avg_adj(spec):
    n, a = spec.n, spec.alpha
    d = spec.D2 or spec.D
    _require(n >= 1 and 1 <= d <= n, "sn_avg_adj needs 1 <= d <= n")
    U1 = _block(0, n)
    u = n
    U2 = _block(n + 1, n)
    V2 = _block(2 * n + 1, n)
    x = 3 * n + 1
    W2 = _block(3 * n + 2, n)
    total = 4 * n + 2
    edges = [(w, u) for w in U1]
    edges.append((u, u))
    edges += _circulant(U2, V2, d)
    edges += [(v, x) for v in V2]
    edges += [(x, w) for w in W2]
    edges += [(w, w) for w in W2]
    # pi(t) for t in W2: t itself, x, all of V2, all of U2 reach it
    base = (1 + (1 - a) / n + (1 - a) ** 2 + (1 - a) ** 3) / total
    meta = InstanceMeta(
        family=spec.family, s=None, t=W2[0],
        pi_pre_swap=None, pi_post_swap=None, pi_bounds=_band(base, 0.9, 1.1),
        roles={"U1": U1, "u": [u], "U2": U2, "V2": V2, "x": [x], "W2": W2},
        swap_edges=((u, u), (U2[0], V2[0])))
    return edges, total, meta


def _build_sn_avg_insorted(spec):
    n, a = spec.n, spec.alpha
    _require(n >= 1, "sn_avg_insorted needs n >= 1")
    U1 = _block(0, n)
    u = n
    V2 = _block(n + 1, n)
    x = 2 * n + 1
    W2 = _block(2 * n + 2, n)
    total = 3 * n + 2
    edges = [(w, u) for w in U1]
    edges.append((u, u))
    edges += [(v, x) for v in V2]
    edges += [(x, w) for w in W2]
    edges += [(w, w) for w in W2]
    base = (1 + (1 - a) / n + (1 - a) ** 2) / total
    meta = InstanceMeta(
        family=spec.family, s=None, t=W2[0],
        pi_pre_swap=None, pi_post_swap=None, pi_bounds=_band(base, 0.9, 1.1),
        roles={"U1": U1, "u": [u], "V2": V2, "x": [x], "W2": W2},
        swap_edges=((u, u), (V2[0], x)))
    return edges, total, meta


def _build_sn_worst_full(spec):
    n, m, L, a = spec.n, spec.m, spec.L, spec.alpha
    _require(n >= 1 and m >= 1, "sn_worst_full needs n, m >= 1")
    sm = max(1, math.isqrt(m))
    _require(1 <= L <= sm, f"sn_worst_full needs 1 <= L <= sqrt(m)={sm}")
    X = _block(0, n)
    x = n
    U1 = _block(n + 1, L)
    V1 = _block(n + 1 + L, sm)
    U2 = _block(n + 1 + L + sm, sm)
    T = _block(n + 1 + L + 2 * sm, sm - L)
    V2 = _block(n + 1 + 3 * sm, L)
    t = n + 1 + 3 * sm + L
    total = t + 1
    edges = [(v, x) for v in X]
    edges += [(x, u) for u in U1]
    edges += [(u, v) for u in U1 for v in V1]
    edges += [(v, v) for v in V1]
    edges += [(u, v) for u in U2 for v in V2]
    edges += [(u, w) for u in U2 for w in T]
    edges += [(w, w) for w in T]
    edges += [(v, t) for v in V2]
    edges.append((t, t))
    base = (1 + L * (1 - a) + L * (1 - a) ** 2) / total
    meta = InstanceMeta(
        family=spec.family, s=None, t=t,
        pi_pre_swap=None, pi_post_swap=None, pi_bounds=_band(base, 0.9, 1.1),
        roles={"X": X, "x": [x], "U1": U1, "V1": V1, "U2": U2, "T": T,
               "V2": V2, "t": [t]},
        swap_edges=((U1[0], V1[0]), (U2[0], V2[0])))
    return edges, total, meta


def _build_sn_avg_xor(spec, lower_equals_upper=False):
    n, L, a = spec.n, spec.L, spec.alpha
    D = spec.D
    d2 = D if lower_equals_upper else (spec.D2 or D)
    _require(n >= 1 and 1 <= L <= n, "needs 1 <= L <= n")
    _require(1 <= D <= n and 1 <= d2 <= n, "needs 1 <= D, d2 <= n")
    u1_size, v1_size = (D, L) if spec.flip_upper else (L, D)
    W1 = _block(0, n)
    u = n
    U1 = _block(n + 1, u1_size)
    V1 = _block(n + 1 + u1_size, v1_size)
    base_id = n + 1 + u1_size + v1_size
    U2 = _block(base_id, n)
    V2 = _block(base_id + n, n)
    n_groups = math.ceil(n / L)
    X = _block(base_id + 2 * n, n_groups)
    W2 = _block(base_id + 2 * n + n_groups, n)
    total = base_id + 3 * n + n_groups
    edges = [(w, u) for w in W1]
    edges += [(u, v) for v in U1]
    edges += [(a_, b_) for a_ in U1 for b_ in V1]
    edges += [(v, v) for v in V1]
    edges += _circulant(U2, V2, d2)
    v_groups = _groups(V2, L)
    w_groups = _groups(W2, L)
    for g in range(n_groups):
        edges += [(v, X[g]) for v in v_groups[g]]
        edges += [(X[g], w) for w in w_groups[g]]
    edges += [(w, w) for w in W2]
    base = (1 + (1 - a) + (1 - a) ** 2 + 2 * (1 - a) / L) / total
    g = 0
    meta = InstanceMeta(
        family=spec.family, s=None, t=w_groups[g][0],
        pi_pre_swap=None, pi_post_swap=None, pi_bounds=_band(base, 0.5, 2.0),
        roles={"W1": W1, "u": [u], "U1": U1, "V1": V1, "U2": U2, "V2": V2,
               "X": X, "W2": W2},
        target_group=list(w_groups[g]),
        swap_edges=((U1[0], V1[0]), (U2[g * L], V2[g * L])))
    return edges, total, meta


def _build_sn_avg_full(spec):
    return _build_sn_avg_xor(spec, lower_equals_upper=True)


def _build_output_size_st(spec):
    n, a = spec.n, spec.alpha
    _require(n >= 1, "output_size_st needs n >= 1")
    if spec.variant == "avg":
        K = spec.L
        _require(K >= 1, "output_size_st avg needs L = K >= 1")
        U = _block(0, n)
        g = n
        V = _block(n + 1, K)
        total = n + 1 + K
        edges = [(u, g) for u in U]
        edges += [(g, v) for v in V]
        edges += [(v, v) for v in V]
        meta = InstanceMeta(
            family=spec.family, s=U[0], t=V[0],
            pi_pre_swap=(1 - a) ** 2 / K, pi_post_swap=(1 - a) ** 2 / K,
            pi_bounds=None,
            roles={"U": U, "g": [g], "V": V})
        return edges, total, meta
    # worst-case variant: t with n in-neighbors and a self-loop
    U = _block(0, n)
    t = n
    edges = [(u, t) for u in U]
    edges.append((t, t))
    meta = InstanceMeta(
        family=spec.family, s=U[0], t=t,
        pi_pre_swap=1 - a, pi_post_swap=1 - a, pi_bounds=None,
        roles={"U": U, "t": [t]})
    return edges, n + 1, meta


_BUILDERS = {
    "folklore_pair": _build_folklore_pair,
    "sp_worst": _build_sp_worst,
    "sp_avg": _build_sp_avg,
    "st_worst_adj": _build_st_worst_adj,
    "st_worst_full": _build_st_worst_full,
    "st_avg_adj": _build_st_avg_adj,
    "st_avg_jump": _build_st_avg_jump,
    "st_avg_full": _build_st_avg_full,
    "sn_avg_adj": _build_sn_avg_adj,
    "sn_avg_insorted": _build_sn_avg_insorted,
    "sn_worst_full": _build_sn_worst_full,
    "sn_avg_xor": _build_sn_avg_xor,
    "sn_avg_full": _build_sn_avg_full,
    "output_size_st": _build_output_size_st,
}


# ---------------------------------------------------------------------------
# parameter presets: per-regime L/D choices for each family
# ---------------------------------------------------------------------------


def _clamp(x, lo, hi):
    return max(lo, min(hi, int(round(x))))


def parameter_presets(family, n, m, delta, alpha):
    """InstanceSpec with L, D set per the family's regime for (n, m,
    delta), including the stated (1-alpha)^k factors."""
    _require(1 <= n <= m <= n * n, f"need n <= m <= n^2, got n={n}, m={m}")
    if not 0 < delta <= 1:
        raise RegimeUndefined(f"delta={delta} outside (0,1]")
    d = m / n
    spec = InstanceSpec(family=family, n=n, m=m, alpha=alpha, swap=True)

    if family == "folklore_pair":
        spec.L = _clamp(min(n, 1.0 / delta), 1, n)
        return spec

    if family == "sp_worst":
        c = (1 - alpha) ** 3
        val = math.sqrt(c * min(m, 1.0 / delta))
        if val < 1:
            raise RegimeUndefined("min{m,1/delta} too small for sp_worst")
        spec.L = spec.D = _clamp(val, 1, math.isqrt(m))
        return spec

    if family == "sp_avg":
        # regimes of the IN-SORTED+ADJ bound min{m, (d/delta)^0.5, delta^-2/3}
        c = (1 - alpha) ** 4
        if delta <= 1.0 / (n * m):
            spec.L, spec.D = _clamp(c * n, 1, n), _clamp(d, 1, n)
        elif delta <= c / d ** 3:
            spec.L = _clamp(math.sqrt(c / (d * delta)), 1, n)
            spec.D = _clamp(d, 1, n)
        else:
            side = (c / delta) ** (1.0 / 3.0)
            spec.L = spec.D = _clamp(side, 1, n)
        return spec

    if family == "st_worst_adj":
        spec.D = _clamp(d, 1, n)
        spec.swap = True
        return spec

    if family == "st_worst_full":
        c = (1 - alpha) ** 2
        if delta > c:
            raise RegimeUndefined(f"st_worst_full assumes delta <= (1-alpha)^2={c}")
        if delta <= c / d:
            spec.D = _clamp(d, 1, n)
        else:
            spec.D = _clamp(c / delta, 1, n)
        return spec

    c = (1 - alpha) ** 3
    if family == "st_avg_adj":
        if delta > c:
            raise RegimeUndefined(f"{family} assumes delta <= (1-alpha)^3={c}")
        spec.L = _clamp(c * n if delta <= 1.0 / n else c / delta, 1, n)
        spec.D2 = _clamp(d, 1, n)
        return spec

    if family == "st_avg_jump":
        if delta > c:
            raise RegimeUndefined(f"{family} assumes delta <= (1-alpha)^3={c}")
        if delta <= 1.0 / m:
            spec.L, spec.D = _clamp(c * n, 1, n), _clamp(d, 1, n)
        elif delta <= d * c / n:
            spec.L = _clamp(math.sqrt(n * c / (d * delta)), 1, n)
            spec.D = _clamp(math.sqrt(d * c / (n * delta)), 1, n)
        else:
            spec.L, spec.D = _clamp(c / delta, 1, n), 1
        spec.D2 = _clamp(d, 1, n)
        return spec

    if family == "st_avg_full":
        if delta > c:
            raise RegimeUndefined(f"{family} assumes delta <= (1-alpha)^3={c}")
        if delta <= 1.0 / m:
            spec.L, spec.D = _clamp(c * n, 1, n), _clamp(d, 1, n)
        elif delta <= c / d:
            spec.L = _clamp(c / (d * delta), 1, n)
            spec.D = _clamp(d, 1, n)
        else:
            spec.L, spec.D = 1, _clamp(c / delta, 1, n)
        return spec

    if family == "sn_avg_adj":
        spec.D2 = _clamp(d, 1, n)
        return spec

    if family == "sn_avg_insorted":
        return spec

    if family == "sn_worst_full":
        sm = max(1, math.isqrt(m))
        spec.L = _clamp(math.sqrt(n) / m ** 0.25, 1, sm)
        spec.swap = False
        return spec

    if family == "sn_avg_xor":
        spec.L = _clamp(math.sqrt(n / d), 1, n)
        spec.D = spec.D2 = _clamp(d, 1, n)
        return spec

    if family == "sn_avg_full":
        spec.L = _clamp(n ** (1.0 / 3.0), 1, n)
        spec.D = _clamp(math.sqrt(m) / n ** (1.0 / 3.0), 1, n)
        return spec

    if family == "output_size_st":
        spec.variant = "avg"
        spec.L = _clamp(min(n, 1.0 / delta), 1, n)
        spec.swap = False
        return spec

    raise RegimeUndefined(f"no preset for family {family!r}")
