"""Metered, capability-gated graph oracle.

Estimators never touch a DirectedGraph directly: every access goes
through an OracleHandle, which increments exactly one query counter per
access.  DEG-IN / DEG-OUT / IN / OUT are always available; JUMP,
IN-SORTED and ADJ are optional capabilities fixed at handle creation.
Running time claims are measured in query count, not wall clock.

A handle is single-owner (mutable counters + PRNG); concurrent trials
each create their own handle over the shared immutable graph.
"""

from __future__ import annotations

import numpy as np

QUERY_KINDS = ("deg_in", "deg_out", "in", "out", "in_sorted", "adj", "jump")


class CapabilityDisabled(RuntimeError):
    pass


class IndexOutOfRange(ValueError):
    pass


class QueryStats:
    """Per-kind query counters; monotonically non-decreasing."""

    __slots__ = ("deg_in", "deg_out", "in_q", "out_q", "in_sorted", "adj", "jump")

    def __init__(self):
        self.deg_in = 0
        self.deg_out = 0
        self.in_q = 0
        self.out_q = 0
        self.in_sorted = 0
        self.adj = 0
        self.jump = 0

    @property
    def total(self):
        return (self.deg_in + self.deg_out + self.in_q + self.out_q
                + self.in_sorted + self.adj + self.jump)

    def as_dict(self):
        return {"deg_in": self.deg_in, "deg_out": self.deg_out,
                "in": self.in_q, "out": self.out_q,
                "in_sorted": self.in_sorted, "adj": self.adj,
                "jump": self.jump, "total": self.total}

    def __repr__(self):
        return f"QueryStats({self.as_dict()})"


class Capabilities:
    """Optional query capabilities; immutable after oracle creation."""

    __slots__ = ("jump", "in_sorted", "adj")

    def __init__(self, jump=False, in_sorted=False, adj=False):
        self.jump = jump
        self.in_sorted = in_sorted
        self.adj = adj

    @classmethod
    def all(cls):
        return cls(jump=True, in_sorted=True, adj=True)

    @classmethod
    def from_names(cls, names):
        names = set(names)
        unknown = names - {"jump", "in_sorted", "adj"}
        if unknown:
            raise ValueError(f"unknown capabilities: {sorted(unknown)}")
        return cls(jump="jump" in names, in_sorted="in_sorted" in names,
                   adj="adj" in names)

    def names(self):
        return [n for n, on in (("jump", self.jump),
                                ("in_sorted", self.in_sorted),
                                ("adj", self.adj)) if on]

    def __repr__(self):
        return f"Capabilities({'+'.join(self.names()) or 'base'})"


class OracleHandle:
    """Query-metered view of a DirectedGraph (the adjacency-list model).

    The graph size (n, m) is construction knowledge available to
    algorithms for free, matching how the algorithms are parameterized.
    JUMP draws from a dedicated seeded PRNG so runs are replayable.
    """

    __slots__ = ("graph", "caps", "stats", "_rng",
                 "_dout", "_din", "_out", "_in", "_ins", "_osets", "_n")

    def __init__(self, graph, caps=None, rng=None, seed=0):
        self.graph = graph
        self.caps = caps if caps is not None else Capabilities()
        self.stats = QueryStats()
        self._rng = rng if rng is not None else np.random.default_rng(seed)
        # local bindings keep the per-query overhead low
        self._dout = graph.out_degrees
        self._din = graph.in_degrees
        self._out = graph.out_lists
        self._in = graph.in_lists
        self._ins = graph.in_sorted_lists
        self._osets = graph._out_sets
        self._n = graph.node_count

    @property
    def node_count(self):
        return self._n

    @property
    def edge_count(self):
        return self.graph.edge_count

    # -- always-available queries -------------------------------------

    def deg_out(self, v):
        self.stats.deg_out += 1
        return self._dout[v]

    def deg_in(self, v):
        self.stats.deg_in += 1
        return self._din[v]

    def out_nbr(self, v, i):
        self.stats.out_q += 1
        lst = self._out[v]
        if i >= len(lst) or i < 0:
            raise IndexOutOfRange(f"OUT({v},{i}) with d_out={len(lst)}")
        return lst[i]

    def in_nbr(self, v, i):
        self.stats.in_q += 1
        lst = self._in[v]
        if i >= len(lst) or i < 0:
            raise IndexOutOfRange(f"IN({v},{i}) with d_in={len(lst)}")
        return lst[i]

    # -- capability-gated queries --------------------------------------

    def in_sorted(self, v, i):
        if not self.caps.in_sorted:
            raise CapabilityDisabled("IN-SORTED is not enabled")
        self.stats.in_sorted += 1
        lst = self._ins[v]
        if i >= len(lst) or i < 0:
            raise IndexOutOfRange(f"IN-SORTED({v},{i}) with d_in={len(lst)}")
        return lst[i]

    def adj(self, u, v):
        if not self.caps.adj:
            raise CapabilityDisabled("ADJ is not enabled")
        self.stats.adj += 1
        return v in self._osets[u]

    def jump(self):
        if not self.caps.jump:
            raise CapabilityDisabled("JUMP is not enabled")
        self.stats.jump += 1
        return int(self._rng.integers(self._n))

    # -- generic direction-keyed wrappers --------------------------------

    def query_degree(self, v, direction):
        if direction == "out":
            return self.deg_out(v)
        if direction == "in":
            return self.deg_in(v)
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")

    def query_neighbor(self, v, i, direction):
        if direction == "out":
            return self.out_nbr(v, i)
        if direction == "in":
            return self.in_nbr(v, i)
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")

    query_in_sorted = in_sorted
    query_adj = adj
    query_jump = jump
