"""Reproducible random test graphs."""

from __future__ import annotations

import random

from .graph import Digraph, InputError, UGraph


def random_backbone_digraph(n: int, m: int, seed: int = 0) -> Digraph:
    """A Hamiltonian cycle on a random vertex order plus ``m - n`` uniform random arcs.

    The cycle makes the result strongly connected for ``n >= 2``; the extra
    arcs are drawn uniformly from ordered pairs of distinct vertices.
    """
    if n < 0 or m < 0:
        raise InputError("n and m must be non-negative")
    rng = random.Random(seed)
    if n <= 1:
        return Digraph(max(n, 0))
    if m < n:
        raise InputError("m must be at least n to hold the cycle backbone")
    order = list(range(n))
    rng.shuffle(order)
    arcs = [(order[i], order[(i + 1) % n]) for i in range(n)]
    while len(arcs) < m:
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        arcs.append((u, v))
    return Digraph(n, tuple(arcs))


def random_digraph(n: int, m: int, rng: random.Random) -> Digraph:
    if n < 2:
        return Digraph(n)
    arcs = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        arcs.append((u, v + (v >= u)))
    return Digraph(n, tuple(arcs))


def random_connected_ugraph(n: int, m: int, rng: random.Random) -> UGraph:
    """Random spanning tree plus extra uniform edges (``m >= n - 1``)."""
    if n < 2:
        return UGraph(n)
    order = list(range(n))
    rng.shuffle(order)
    edges = [(order[i], order[rng.randrange(i)]) for i in range(1, n)]
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        edges.append((u, v + (v >= u)))
    return UGraph(n, tuple(edges))
