"""Undirected edge-connectivity augmentation through the doubled digraph.

A minimal k-extension of an undirected graph is a minimal k-half-extension
of its doubled digraph.  After rounding its total up to even, the star at
``s`` splits into exactly ``eta(V) / 2`` new edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .directed import HalfExtension, half_extension
from .graph import Digraph, InputError, InvariantError, UGraph, doubled
from .mincut import ArcNetwork, rooted_ks_connected, strong_connectivity
from .unionfind import UnionFind


@dataclass(frozen=True)
class UExtensionGraph:
    base: UGraph
    star: tuple[int, ...]  # star[v] parallel edges between v and s

    @property
    def s(self) -> int:
        return self.base.n

    @property
    def degree(self) -> int:
        return sum(self.star)

    def ugraph(self) -> UGraph:
        s = self.s
        edges = list(self.base.edges)
        for v, c in enumerate(self.star):
            edges.extend([(v, s)] * c)
        return UGraph(s + 1, tuple(edges))

    def digraph(self) -> Digraph:
        return doubled(self.ugraph())


def minimal_k_extension(Gu: UGraph, k: int) -> HalfExtension:
    """Minimal ``eta`` with ``|cut(A)| + eta(A) >= k`` for all proper nonempty ``A``."""
    if k < 1:
        raise InputError("k must be at least 1")
    eta, _ = half_extension(doubled(Gu), k)
    return eta


def is_uks_connected(Gx: UExtensionGraph, k: int) -> bool:
    """Every pair of base vertices has ``k`` edge-disjoint paths (``s`` may be used)."""
    return rooted_ks_connected(Gx.digraph(), range(Gx.base.n), k)


def _usplittable(base: list[tuple[int, int]], n: int, star: list[int], u: int, v: int, k: int) -> bool:
    """Whether replacing ``us, vs`` by ``uv`` keeps (k, s)-connectivity.

    Only cuts holding both ``u`` and ``v`` away from ``s`` drop, by two.  With
    ``deg(s) >= k + 2`` one flow from ``s`` to ``{u, v}`` decides it.
    """
    s = n
    d = sum(star)
    if d >= k + 2:
        edges = list(base)
        caps = [1] * len(edges)
        for x, c in enumerate(star):
            if c:
                edges.append((x, s))
                caps.append(c)
        arcs = [a for x, y in edges for a in ((x, y), (y, x))]
        caps = [c for c in caps for _ in (0, 1)]
        big = 2 * len(edges) + 1
        arcs += [(u, n + 1), (v, n + 1)]
        caps += [big, big]
        return ArcNetwork(n + 2, arcs, caps).flow(s, n + 1, k + 2) >= k + 2
    edges = list(base)
    caps = [1] * len(edges)
    edges.append((u, v))
    caps.append(1)
    for x, c in enumerate(star):
        c -= (x == u) + (x == v)
        if c:
            edges.append((x, s))
            caps.append(c)
    arcs = [a for x, y in edges for a in ((x, y), (y, x))]
    caps = [c for c in caps for _ in (0, 1)]
    return rooted_ks_connected(ArcNetwork(n + 1, arcs, caps), range(n), k, root=u)


def split_all_undirected(
    Gx: UExtensionGraph,
    k: int,
    *,
    validate: bool = False,
    on_split: Optional[Callable[[UExtensionGraph], None]] = None,
) -> list[tuple[int, int]]:
    """Pair up the star edges at ``s`` into new edges ``uv`` while staying (k, s)-connected."""
    n = Gx.base.n
    if Gx.degree % 2:
        raise InputError("splitting needs an even degree at s")
    if validate and not is_uks_connected(Gx, k):
        raise InputError("extension graph is not (k, s)-connected")
    base = list(Gx.base.edges)
    star = list(Gx.star)
    added: list[tuple[int, int]] = []
    while any(star):
        # start from the heaviest star vertex so no vertex is left paired with itself
        u = max(range(n), key=lambda x: (star[x], -x))
        partner = None
        for v in range(n):
            if v != u and star[v] > 0 and _usplittable(base, n, star, u, v, k):
                partner = v
                break
        if partner is None:
            raise InvariantError(f"no admissible split for edge {u}s")
        star[u] -= 1
        star[partner] -= 1
        base.append((u, partner))
        added.append((u, partner))
        if validate or on_split is not None:
            state = UExtensionGraph(UGraph(n, tuple(base)), tuple(star))
            if validate and not is_uks_connected(state, k):
                raise InvariantError(f"split of {u}s, {partner}s broke (k, s)-connectivity")
            if on_split is not None:
                on_split(state)
    return added


@dataclass
class UAugmentResult:
    edges: list[tuple[int, int]]
    gamma: int
    eta: Optional[HalfExtension] = None
    parity_fixed: bool = False
    cai_sun: Optional[int] = None
    verified: Optional[bool] = None
    # max subpartition deficiency when the zero-reservation solve certifies it;
    # gamma is then ceil(deficiency / 2)
    deficiency: Optional[int] = None


def _connect_components(Gu: UGraph) -> list[tuple[int, int]]:
    uf = UnionFind(Gu.n)
    for u, v in Gu.edges:
        uf.union(u, v)
    reps = sorted({uf.find(v) for v in range(Gu.n)})
    reps = sorted(min(x for x in range(Gu.n) if uf.find(x) == r) for r in reps)
    return list(zip(reps, reps[1:]))


def augment_undirected(Gu: UGraph, k: int, *, verify: bool = True, validate_splits: bool = False, enumerate_limit: int = 8) -> UAugmentResult:
    """Fewest undirected edges whose addition makes ``Gu`` k-edge-connected."""
    if k < 1:
        raise InputError("k must be at least 1")
    if Gu.n <= 1:
        return UAugmentResult([], 0, HalfExtension((0,) * Gu.n), verified=True)
    if k == 1:
        edges = _connect_components(Gu)
        result = UAugmentResult(edges, len(edges))
    else:
        eta, deficiency = half_extension(doubled(Gu), k)
        star = list(eta.eta)
        fixed = sum(star) % 2 == 1
        if fixed:
            star[0] += 1
        Gx = UExtensionGraph(Gu, tuple(star))
        edges = split_all_undirected(Gx, k, validate=validate_splits)
        if 2 * len(edges) != sum(star):
            raise InvariantError("split count differs from half the star degree")
        result = UAugmentResult(edges, len(edges), eta, fixed, deficiency=deficiency)
        if Gu.n <= enumerate_limit:
            from .oracle import brute_cai_sun

            result.cai_sun = brute_cai_sun(Gu, k)
    if verify:
        result.verified = strong_connectivity(doubled(Gu.with_edges(result.edges)), k) >= k
        if not result.verified:
            raise InvariantError("augmented graph is not k-edge-connected")
    return result
