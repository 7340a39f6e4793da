"""Exhaustive reference implementations for small instances.

Nothing in here shares code with the fast solvers beyond the graph types;
these functions exist to produce expected values and to cross-check.
Every function refuses instances above its size limit with
:class:`OracleTooLarge` instead of running for hours.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations, product
from typing import Callable, Optional, Sequence

from .graph import Digraph, InputError, InvariantError, UGraph


class OracleTooLarge(InputError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _tau_vector(n: int, k: int, tau) -> list[int]:
    if tau is None:
        return [0] * n
    if hasattr(tau, "vector"):
        return tau.vector(n, k)
    tau = list(tau)
    if len(tau) != n:
        raise InputError("tau vector must have one entry per vertex")
    return tau


def _is_forest(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


# ---------------------------------------------------------------------------
# k-forest membership


def _inside_masks(n: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    """For each vertex mask X, the bitmask of edges with both ends in X."""
    inside = [0] * (1 << n)
    for X in range(1 << n):
        bits = 0
        for e, (u, v) in enumerate(edges):
            if X >> u & 1 and X >> v & 1:
                bits |= 1 << e
        inside[X] = bits
    return inside


def is_k_forest_partitionable(n: int, edges: Sequence[tuple[int, int]], k: int) -> bool:
    """Forest-cover criterion: every vertex set X spans at most k(|X|-1) edges."""
    inside = _inside_masks(n, edges)
    full = (1 << len(edges)) - 1
    return all(_popcount(inside[X] & full) <= k * (_popcount(X) - 1) for X in range(1, 1 << n))


def is_k_forest_colorable(n: int, edges: Sequence[tuple[int, int]], k: int) -> bool:
    """Try every assignment of the edges to k classes; slow, used to cross-check."""
    if len(edges) > 10:
        raise OracleTooLarge("colouring check limited to 10 edges")
    for colors in product(range(k), repeat=len(edges)):
        if all(_is_forest(n, [edges[e] for e in range(len(edges)) if colors[e] == c]) for c in range(k)):
            return True
    return False


def brute_kforest_value(G: Digraph, k: int, tau=None, *, max_edges: int = 14) -> int:
    """Maximum |F| over edge sets that split into k forests and respect indegree budgets."""
    if G.m > max_edges or G.n > 10:
        raise OracleTooLarge(f"brute k-forest limited to {max_edges} edges and 10 vertices")
    t = _tau_vector(G.n, k, tau)
    inside = _inside_masks(G.n, G.edges)
    masks = list(range(1, 1 << G.n))
    limits = [k * (_popcount(X) - 1) for X in range(1 << G.n)]
    heads = [v for _, v in G.edges]
    budget = [k - t[v] for v in range(G.n)]
    for size in range(G.m, 0, -1):
        for chosen in combinations(range(G.m), size):
            indeg = [0] * G.n
            ok = True
            for e in chosen:
                h = heads[e]
                indeg[h] += 1
                if indeg[h] > budget[h]:
                    ok = False
                    break
            if not ok:
                continue
            F = 0
            for e in chosen:
                F |= 1 << e
            if all(_popcount(inside[X] & F) <= limits[X] for X in masks):
                return size
    return 0


# ---------------------------------------------------------------------------
# subpartition maxima


def _subpartition_max(n: int, value: Callable[[int], int], proper: bool) -> int:
    """Max over families of disjoint nonempty vertex sets of the summed set values."""
    if n > 12:
        raise OracleTooLarge("subpartition enumeration limited to 12 vertices")
    full = (1 << n) - 1
    val = [0] * (1 << n)
    for A in range(1, 1 << n):
        val[A] = value(A)
    best = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        b = best[rest]  # lowest vertex left uncovered
        sub = rest
        while True:
            A = sub | low
            if not (proper and A == full):
                cand = val[A] + best[mask ^ A]
                if cand > b:
                    b = cand
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[mask] = b
    return best[full]


def cut_counts(G: Digraph) -> tuple[list[int], list[int]]:
    """``|rho(A)|`` and ``|rho_rev(A)|`` for every vertex mask A."""
    size = 1 << G.n
    rho = [0] * size
    rho_rev = [0] * size
    for A in range(size):
        r = rr = 0
        for u, v in G.edges:
            iu, iv = A >> u & 1, A >> v & 1
            if iv and not iu:
                r += 1
            elif iu and not iv:
                rr += 1
        rho[A] = r
        rho_rev[A] = rr
    return rho, rho_rev


def undirected_cut_counts(Gu: UGraph) -> list[int]:
    size = 1 << Gu.n
    out = [0] * size
    for A in range(size):
        out[A] = sum(1 for u, v in Gu.edges if (A >> u & 1) != (A >> v & 1))
    return out


def brute_subpartition_max(G: Digraph, k: int, tau=None, proper_only: bool = False, *, reverse: bool = False) -> int:
    """``max sum (k - tau(A) - |rho(A)|)`` over (proper) subpartitions of V.

    With ``reverse=True`` the out-cut ``rho_rev`` is used instead.
    """
    if G.n > 10:
        raise OracleTooLarge("subpartition enumeration limited to 10 vertices")
    t = _tau_vector(G.n, k, tau)
    rho, rho_rev = cut_counts(G)
    cuts = rho_rev if reverse else rho

    def value(A: int) -> int:
        return k - sum(t[v] for v in range(G.n) if A >> v & 1) - cuts[A]

    return _subpartition_max(G.n, value, proper_only)


def brute_alpha(G: Digraph, k: int) -> tuple[int, int]:
    """``(alpha_in, alpha_out)`` by proper-subpartition enumeration."""
    return (
        brute_subpartition_max(G, k, None, True),
        brute_subpartition_max(G, k, None, True, reverse=True),
    )


def brute_cai_sun(Gu: UGraph, k: int) -> int:
    if k < 2:
        raise InputError("the undirected min-max formula needs k >= 2")
    if Gu.n > 10:
        raise OracleTooLarge("subpartition enumeration limited to 10 vertices")
    cuts = undirected_cut_counts(Gu)
    best = _subpartition_max(Gu.n, lambda A: k - cuts[A], True)
    return -(-best // 2)


# ---------------------------------------------------------------------------
# matroid intersection through exchange graphs


def _union_insert(n: int, edges: Sequence[tuple[int, int]], forests: list[set[int]], f: int) -> bool:
    """Insert edge ``f`` into the k-forest family via a shortest path in the union exchange graph."""
    k = len(forests)

    def fits(i: int, add: int, drop: Optional[int] = None) -> bool:
        members = [edges[e] for e in forests[i] if e != drop] + [edges[add]]
        return _is_forest(n, members)

    owner = {e: i for i, F in enumerate(forests) for e in F}
    pred: dict[int, tuple[Optional[int], int]] = {f: (None, -1)}
    queue = deque([f])
    end: Optional[tuple[int, int]] = None
    while queue and end is None:
        x = queue.popleft()
        for i in range(k):
            if owner.get(x) == i:
                continue
            if fits(i, x):
                end = (x, i)
                break
        if end is not None:
            break
        for y, j in owner.items():
            if y in pred or owner.get(x) == j:
                continue
            if fits(j, x, drop=y):
                pred[y] = (x, j)
                queue.append(y)
    if end is None:
        return False
    # walk back: x joins forest i, then each predecessor takes its successor's place
    x, i = end
    moves = [(x, i)]
    while pred[x][0] is not None:
        prev, j = pred[x]
        moves.append((prev, j))
        x = prev
    for e, target in moves:
        if e in owner:
            forests[owner[e]].discard(e)
    for e, target in moves:
        forests[target].add(e)
    for i in range(k):
        if not _is_forest(n, [edges[e] for e in forests[i]]):
            raise InvariantError("union exchange path produced a cycle")
    return True


def in_forest_union(n: int, edges: Sequence[tuple[int, int]], X, k: int) -> bool:
    """Whether edge set ``X`` splits into ``k`` forests, decided by union exchange paths."""
    forests: list[set[int]] = [set() for _ in range(k)]
    return all(_union_insert(n, edges, forests, f) for f in sorted(X))


def matroid_intersection_solve(G: Digraph, k: int, tau=None, *, max_edges: int = 12) -> int:
    """Maximum common independent set of the k-forest union matroid and the indegree matroid.

    Uses shortest s-t paths in the intersection exchange graph; every path
    applied is checked to keep the set independent in both matroids.
    """
    if G.m > max_edges:
        raise OracleTooLarge(f"exchange-graph solver limited to {max_edges} edges")
    t = _tau_vector(G.n, k, tau)
    n, edges = G.n, G.edges
    budget = [k - t[v] for v in range(n)]

    def in_D(S: set[int]) -> bool:
        indeg = [0] * n
        for e in S:
            indeg[edges[e][1]] += 1
        return all(indeg[v] <= budget[v] for v in range(n))

    def in_Gk(S: set[int]) -> bool:
        return in_forest_union(n, edges, S, k)

    F: set[int] = set()
    while True:
        outside = [x for x in range(G.m) if x not in F]
        sources = [x for x in outside if in_D(F | {x})]
        sinks = {x for x in outside if in_Gk(F | {x})}
        pred: dict[int, Optional[int]] = {}
        queue: deque[int] = deque()
        for x in sources:
            pred[x] = None
            queue.append(x)
        found: Optional[int] = None
        while queue:
            z = queue.popleft()
            if z not in F:
                if z in sinks:
                    found = z
                    break
                # x -> y when F + x - y stays a k-forest
                for y in F:
                    if y not in pred and in_Gk((F | {z}) - {y}):
                        pred[y] = z
                        queue.append(y)
            else:
                # y -> x when F - y + x respects indegree budgets
                for x in outside:
                    if x not in pred and in_D((F - {z}) | {x}):
                        pred[x] = z
                        queue.append(x)
        if found is None:
            return len(F)
        path = []
        z: Optional[int] = found
        while z is not None:
            path.append(z)
            z = pred[z]
        F = F.symmetric_difference(path)
        if not (in_D(F) and in_Gk(F)):
            raise InvariantError("exchange path left the common independent sets")


# ---------------------------------------------------------------------------
# connectivity and minimum augmentation


def brute_min_cut(G: Digraph, s: int, t: int) -> int:
    """Minimum number of arcs entering a set that contains ``t`` but not ``s``."""
    if G.n > 16:
        raise OracleTooLarge("cut enumeration limited to 16 vertices")
    rho, _ = cut_counts(G)
    return min(rho[A] for A in range(1 << G.n) if A >> t & 1 and not A >> s & 1)


def brute_is_strongly_k_connected(G: Digraph, k: int) -> bool:
    rho, _ = cut_counts(G)
    full = (1 << G.n) - 1
    return all(rho[A] >= k for A in range(1, full))


def brute_min_augmentation(G, k: int, directed: Optional[bool] = None, *, max_n: int = 5, max_gamma: int = 16) -> int:
    """Fewest added edges making ``G`` strongly (or undirected) k-edge-connected.

    Iterative deepening over multisets of new edges: each level branches on
    the edges entering the currently most violated set.  The degree bound
    (each new edge repairs one unit of in-deficit and one of out-deficit)
    prunes the search; failed states are memoized per remaining budget.
    """
    if directed is None:
        directed = isinstance(G, Digraph)
    n = G.n
    if n > max_n:
        raise OracleTooLarge(f"minimum augmentation search limited to {max_n} vertices")
    if n <= 1 or k <= 0:
        return 0
    full = (1 << n) - 1
    if directed:
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        base, _ = cut_counts(G)
        crossing = [[p for p, (u, v) in enumerate(pairs) if A >> v & 1 and not A >> u & 1] for A in range(full + 1)]
    else:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        base = undirected_cut_counts(G)
        crossing = [[p for p, (u, v) in enumerate(pairs) if (A >> u & 1) != (A >> v & 1)] for A in range(full + 1)]
    sets = list(range(1, full))
    singles = [1 << v for v in range(n)]
    out_singles = [full ^ (1 << v) for v in range(n)]

    def lower_bound(counts: list[int]) -> tuple[int, Optional[int]]:
        worst, worst_set = 0, None
        for A in sets:
            d = k - base[A] - sum(counts[p] for p in crossing[A])
            if d > worst or (d == worst and d > 0 and len(crossing[A]) < len(crossing[worst_set])):
                worst, worst_set = d, A
        if worst_set is None:
            return 0, None
        in_def = sum(max(0, k - base[A] - sum(counts[p] for p in crossing[A])) for A in singles)
        if directed:
            out_def = sum(max(0, k - base[A] - sum(counts[p] for p in crossing[A])) for A in out_singles)
            bound = max(in_def, out_def, worst)
        else:
            bound = max(-(-in_def // 2), worst)
        return bound, worst_set

    failed: set[tuple[tuple[int, ...], int]] = set()

    def dfs(counts: list[int], budget: int) -> bool:
        bound, A = lower_bound(counts)
        if A is None:
            return True
        if bound > budget:
            return False
        key = (tuple(counts), budget)
        if key in failed:
            return False
        for p in crossing[A]:
            if counts[p] >= k:
                continue
            counts[p] += 1
            ok = dfs(counts, budget - 1)
            counts[p] -= 1
            if ok:
                return True
        failed.add(key)
        return False

    start = [0] * len(pairs)
    first, _ = lower_bound(start)
    for budget in range(first, max_gamma + 1):
        if dfs(start, budget):
            return budget
    raise OracleTooLarge(f"minimum augmentation exceeds {max_gamma}")
