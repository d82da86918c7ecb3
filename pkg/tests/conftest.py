"""Shared graph builders for the test suite (all seeded/deterministic)."""

import numpy as np
import pytest

from pprquery import build_graph


def chain_graph():
    """s=0 -> t=1, t self-loop.  pi(s,t)=1-alpha, pi(s,s)=alpha."""
    return build_graph([(0, 1), (1, 1)], 2)


def star_graph():
    """s=0 -> v1, v2 (each absorbing)."""
    return build_graph([(0, 1), (0, 2), (1, 1), (2, 2)], 3)


def cycle_graph(k=3):
    return build_graph([(i, (i + 1) % k) for i in range(k)], k)


def singleton_graph():
    return build_graph([(0, 0)], 1)


def random_graph(seed, n, d=4):
    """Every node gets d distinct random out-neighbors (so out-degree in
    [1, d] after dedup); deterministic in the seed."""
    rng = np.random.default_rng(seed)
    edges = []
    for u in range(n):
        targets = set(int(v) for v in rng.integers(0, n, size=d))
        edges.extend((u, v) for v in sorted(targets))
    return build_graph(edges, n)


def fan_graph(n_in, d_out):
    """Target t=0 (self-loop) with n_in in-neighbors, each of out-degree
    d_out via d_out-1 shared absorbing dummies.  Pushing t spreads tiny
    increments (1-alpha)/d_out, exercising the randomized scan."""
    t = 0
    ins = list(range(1, 1 + n_in))
    dummies = list(range(1 + n_in, n_in + d_out))
    edges = [(t, t)]
    for u in ins:
        edges.append((u, t))
        edges.extend((u, w) for w in dummies)
    edges.extend((w, w) for w in dummies)
    return build_graph(edges, n_in + d_out)


def relay_fan_graph(n_in=2200, n_relays=16, relay_out=32, in_nbr_out=30):
    """Target t fed by `n_relays` relay nodes (out-degree `relay_out`, so
    each holds residue ~(1-alpha)/relay_out), each relay with the same
    `n_in` in-neighbors of out-degree `in_nbr_out`.  Backward pushes of
    the relays are fat uniform scans with per-edge increment
    (1-alpha)^2/(relay_out*in_nbr_out): the workhorse for 1/theta query
    scaling measurements.
    """
    t = 0
    relays = list(range(1, 1 + n_relays))
    vdum = list(range(1 + n_relays, n_relays + relay_out))
    us = list(range(n_relays + relay_out,
                    n_relays + relay_out + n_in))
    udum = list(range(n_relays + relay_out + n_in,
                      n_relays + relay_out + n_in + in_nbr_out - n_relays))
    edges = [(t, t)]
    for v in relays:
        edges.append((v, t))
        edges.extend((v, d) for d in vdum)
    edges += [(d, d) for d in vdum]
    for u in us:
        edges.extend((u, v) for v in relays)
        edges.extend((u, d) for d in udum)
    edges += [(d, d) for d in udum]
    g = build_graph(edges, n_relays + relay_out + n_in + in_nbr_out - n_relays)
    return g, t


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
