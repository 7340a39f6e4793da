"""Directed edge-connectivity augmentation.

Pipeline for making ``G`` strongly k-connected with the fewest new arcs:

1. Compute minimal k-half-extensions ``eta`` of ``G`` and of its reverse:
   vectors with ``|rho(A)| + eta(A) >= k`` for all proper nonempty ``A``
   such that no entry can be lowered.  Both come from the k-forest solver,
   either straight from the vertex deficits (when they total more than
   ``k``) or from a rooted solve plus a max-flow step for the root.
2. Attach a new node ``s`` with ``eta(v)`` arcs ``s -> v`` and
   ``eta_rev(v)`` arcs ``v -> s``, padding the smaller side at vertex 0.
3. Split off pairs ``(u, s), (s, v)`` into ``(u, v)`` while every pair of
   original vertices keeps ``k`` arc-disjoint paths, until ``s`` is bare.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .graph import Digraph, InputError, InvariantError, reverse
from .kforest import KForestSolver, TauSpec, solve
from .mincut import (
    ArcNetwork,
    FlowNetwork,
    is_ks_connected,
    max_flow,
    rooted_ks_connected,
    strong_connectivity,
)


@dataclass(frozen=True)
class HalfExtension:
    eta: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.eta)

    def __getitem__(self, v: int) -> int:
        return self.eta[v]


@dataclass(frozen=True)
class TooSmall:
    """The zero-reservation deficit is at most ``k``; the rooted route is needed."""

    deficit: int


@dataclass(frozen=True)
class ExtensionGraph:
    """``base`` plus a node ``s = base.n`` with ``out_star[v]`` arcs ``s -> v``
    and ``in_star[v]`` arcs ``v -> s``."""

    base: Digraph
    out_star: tuple[int, ...]
    in_star: tuple[int, ...]

    @property
    def s(self) -> int:
        return self.base.n

    @property
    def out_degree(self) -> int:
        return sum(self.out_star)

    @property
    def in_degree(self) -> int:
        return sum(self.in_star)

    def digraph(self) -> Digraph:
        s = self.s
        arcs = list(self.base.edges)
        for v, c in enumerate(self.out_star):
            arcs.extend([(s, v)] * c)
        for v, c in enumerate(self.in_star):
            arcs.extend([(v, s)] * c)
        return Digraph(s + 1, tuple(arcs))


# ---------------------------------------------------------------------------
# half-extensions


def intersection_level(G: Digraph, a: int, max_level: int) -> int:
    """Largest ``l <= max_level`` such that ``G`` has ``l`` disjoint spanning
    trees in which ``a`` has indegree 0 and every other vertex indegree ``l``.

    Grows the rooted k-forest solution one level at a time and stops at the
    first level that falls short of ``n*l - l`` edges.
    """
    if not 0 <= a < G.n:
        raise InputError(f"vertex {a} outside [0, {G.n})")
    if max_level <= 0:
        return 0
    solver = KForestSolver(G, TauSpec.at(a))
    for level in range(1, max_level + 1):
        solver.grow()
        if solver.F.size() != (G.n - 1) * level:
            return level - 1
    return max_level


def complete_eta(G: Digraph, k: int, eta_partial: Sequence[int], a: int) -> int:
    """Smallest ``eta(a)`` with ``|rho(A)| + eta(A) >= k`` for every proper ``A`` containing ``a``.

    ``eta_partial`` gives the values off ``a`` (its entry at ``a`` is
    ignored).  Routes flow from a super-source feeding each ``v`` with
    capacity ``eta(v)`` into ``a``, capped at ``k``.  If the cap binds or
    some feeder is left unsaturated the answer is ``k - f``; otherwise the
    remaining slack is the rooted tree-packing level of the reversed
    residual graph.
    """
    n = G.n
    if not 0 <= a < n:
        raise InputError(f"vertex {a} outside [0, {n})")
    if any(not 0 <= eta_partial[v] <= k for v in range(n) if v != a):
        raise InputError("partial eta values must lie in [0, k]")
    if n == 1:
        return 0
    net = FlowNetwork.from_digraph(G, extra_nodes=2)
    s, t = n, n + 1
    feeders = [(v, net.add_arc(s, v, eta_partial[v])) for v in range(n) if v != a and eta_partial[v] > 0]
    net.add_arc(a, t, k)
    f = max_flow(net, s, t).value
    if f == k or any(net.flow(arc) < eta_partial[v] for v, arc in feeders):
        return k - f
    residual = tuple((v, u) if net.flow(i) else (u, v) for i, (u, v) in enumerate(G.edges))
    level = intersection_level(reverse(Digraph(n, residual)), a, k - f)
    return k - f - level


def half_extension_fast_path(G: Digraph, k: int):
    """Deficits of the zero-reservation optimum, when they total more than ``k``."""
    F = solve(G, k)
    d = F.total_deficit()
    if d > k:
        return HalfExtension(tuple(F.deficits()))
    return TooSmall(d)


def minimal_half_extension(G: Digraph, k: int, a: int = 0) -> HalfExtension:
    """Minimal k-half-extension through the rooted solve at ``a``."""
    if k < 1:
        raise InputError("k must be at least 1")
    if G.n == 0:
        return HalfExtension(())
    F = solve(G, k, TauSpec.at(a))
    eta = F.deficits()
    eta[a] = complete_eta(G, k, eta, a)
    return HalfExtension(tuple(eta))


def half_extension(G: Digraph, k: int) -> tuple[HalfExtension, Optional[int]]:
    """A minimal k-half-extension plus ``alpha_in`` when the fast path certifies it."""
    if G.n <= 1:
        return HalfExtension((0,) * G.n), None
    fast = half_extension_fast_path(G, k)
    if isinstance(fast, HalfExtension):
        return fast, fast.total
    return minimal_half_extension(G, k), None


def build_extension(G: Digraph, k: int, eta: HalfExtension, eta_rev: HalfExtension) -> ExtensionGraph:
    """Star arcs from the two half-extensions, padded to equal in- and out-degree at vertex 0."""
    out_star = list(eta.eta)
    in_star = list(eta_rev.eta)
    if G.n:
        gap = sum(out_star) - sum(in_star)
        if gap > 0:
            in_star[0] += gap
        elif gap < 0:
            out_star[0] -= gap
    return ExtensionGraph(G, tuple(out_star), tuple(in_star))


# ---------------------------------------------------------------------------
# splitting


def _splittable(base_arcs: list[tuple[int, int]], n: int, in_star: list[int], out_star: list[int], u: int, v: int, k: int) -> bool:
    """Whether replacing ``(u, s), (s, v)`` by ``(u, v)`` keeps (k, s)-connectivity.

    The split only lowers cuts that contain both ``u`` and ``v`` on the side
    away from ``s``.  When the star degree exceeds ``k`` such a cut can be
    found with one flow in each direction between ``s`` and ``{u, v}``;
    otherwise the split graph is checked directly from ``u``.
    """
    s = n
    d = sum(out_star)
    arcs = list(base_arcs)
    caps = [1] * len(arcs)
    if d > k:
        for x, c in enumerate(out_star):
            if c:
                arcs.append((s, x))
                caps.append(c)
        for x, c in enumerate(in_star):
            if c:
                arcs.append((x, s))
                caps.append(c)
        # n + 1 collects flow out of s, n + 2 feeds flow into s
        big = len(base_arcs) + 2 * d + 1
        arcs += [(u, n + 1), (v, n + 1), (n + 2, u), (n + 2, v)]
        caps += [big] * 4
        net = ArcNetwork(n + 3, arcs, caps)
        return net.flow(s, n + 1, k + 1) > k and net.flow(n + 2, s, k + 1) > k
    arcs.append((u, v))
    caps.append(1)
    for x, c in enumerate(out_star):
        c -= x == v
        if c:
            arcs.append((s, x))
            caps.append(c)
    for x, c in enumerate(in_star):
        c -= x == u
        if c:
            arcs.append((x, s))
            caps.append(c)
    return rooted_ks_connected(ArcNetwork(n + 1, arcs, caps), range(n), k, root=u)


SplitHook = Callable[[ExtensionGraph], None]


def split_all(Gx: ExtensionGraph, k: int, *, validate: bool = False, on_split: Optional[SplitHook] = None) -> list[tuple[int, int]]:
    """Split off every star arc pair; returns the new arcs ``(u, v)``.

    Takes the lowest ``u`` with a remaining arc into ``s`` and the lowest
    partner ``v`` whose split is admissible.  With ``validate`` every
    intermediate graph is re-checked over all ordered pairs.
    """
    n = Gx.base.n
    if Gx.in_degree != Gx.out_degree:
        raise InputError("splitting needs equal in- and out-degree at s")
    if validate and not is_ks_connected(Gx, k):
        raise InputError("extension graph is not (k, s)-connected")
    base_arcs = list(Gx.base.edges)
    in_star = list(Gx.in_star)
    out_star = list(Gx.out_star)
    added: list[tuple[int, int]] = []
    while any(in_star):
        u = next(x for x in range(n) if in_star[x] > 0)
        partner = None
        for v in range(n):
            if v != u and out_star[v] > 0 and _splittable(base_arcs, n, in_star, out_star, u, v, k):
                partner = v
                break
        if partner is None:
            raise InvariantError(f"no admissible split for arc ({u}, s)")
        in_star[u] -= 1
        out_star[partner] -= 1
        base_arcs.append((u, partner))
        added.append((u, partner))
        if validate or on_split is not None:
            state = ExtensionGraph(Digraph(n, tuple(base_arcs)), tuple(out_star), tuple(in_star))
            if validate and not is_ks_connected(state, k):
                raise InvariantError(f"split ({u}, s), (s, {partner}) broke (k, s)-connectivity")
            if on_split is not None:
                on_split(state)
    if any(out_star):
        raise InvariantError("star arcs left after splitting")
    return added


# ---------------------------------------------------------------------------
# end to end


@dataclass
class AugmentResult:
    edges: list[tuple[int, int]]
    gamma: int
    alpha_in: Optional[int] = None
    alpha_out: Optional[int] = None
    eta: Optional[HalfExtension] = None
    eta_rev: Optional[HalfExtension] = None
    verified: Optional[bool] = None
    notes: list[str] = field(default_factory=list)


def augment_directed(G: Digraph, k: int, *, verify: bool = True, validate_splits: bool = False, enumerate_alpha: int = 8) -> AugmentResult:
    """Fewest arcs whose addition makes ``G`` strongly k-connected.

    ``gamma`` equals the in/out degree of the extension node, which is the
    optimum.  ``alpha_in``/``alpha_out`` are filled in when the fast path
    certifies them or when ``n <= enumerate_alpha`` allows enumeration.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    if G.n <= 1:
        return AugmentResult([], 0, 0, 0, HalfExtension((0,) * G.n), HalfExtension((0,) * G.n), True)
    eta, alpha_in = half_extension(G, k)
    eta_rev, alpha_out = half_extension(reverse(G), k)
    Gx = build_extension(G, k, eta, eta_rev)
    gamma = Gx.in_degree
    edges = split_all(Gx, k, validate=validate_splits)
    if len(edges) != gamma:
        raise InvariantError("split count differs from the star degree")
    result = AugmentResult(edges, gamma, alpha_in, alpha_out, eta, eta_rev)
    if G.n <= enumerate_alpha and (alpha_in is None or alpha_out is None):
        from .oracle import brute_alpha

        result.alpha_in, result.alpha_out = brute_alpha(G, k)
    if verify:
        result.verified = strong_connectivity(G.with_edges(edges), k) >= k
        if not result.verified:
            raise InvariantError("augmented graph is not strongly k-connected")
    return result
