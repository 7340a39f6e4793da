"""Integer max-flow by shortest augmenting paths, with an optional value cap.

All connectivity questions here have unit (or small) capacities and only
need to know whether a flow of value ``k`` exists, so every routine accepts
``cap_at`` and stops as soon as that much flow has been routed.

Bulk queries go through ``ArcNetwork``, which uses scipy's maximum_flow when
it is importable and falls back to the pure-Python routine otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import Digraph, InputError


class FlowNetwork:
    """Residual network; arc ``a`` is stored as slots ``2a`` (forward) and ``2a+1`` (backward)."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[int] = []
        self.res: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    @classmethod
    def from_digraph(cls, G: Digraph, extra_nodes: int = 0) -> FlowNetwork:
        net = cls(G.n + extra_nodes)
        for u, v in G.edges:
            net.add_arc(u, v, 1)
        return net

    def add_node(self) -> int:
        self.adj.append([])
        self.n += 1
        return self.n - 1

    def add_arc(self, u: int, v: int, capacity: int) -> int:
        if capacity < 0:
            raise InputError("capacities must be non-negative")
        a = len(self.cap)
        self.head.append(v)
        self.head.append(u)
        self.res.append(capacity)
        self.res.append(0)
        self.cap.append(capacity)
        self.adj[u].append(2 * a)
        self.adj[v].append(2 * a + 1)
        return a

    @property
    def arc_count(self) -> int:
        return len(self.cap)

    def tail(self, a: int) -> int:
        return self.head[2 * a + 1]

    def arc_head(self, a: int) -> int:
        return self.head[2 * a]

    def flow(self, a: int) -> int:
        return self.res[2 * a + 1]

    def reset(self) -> None:
        res = self.res
        for a, c in enumerate(self.cap):
            res[2 * a] = c
            res[2 * a + 1] = 0

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        stack = [s]
        head, res, adj = self.head, self.res, self.adj
        while stack:
            x = stack.pop()
            for a in adj[x]:
                y = head[a]
                if res[a] > 0 and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen


@dataclass
class FlowResult:
    value: int
    network: FlowNetwork
    source: int
    sink: int

    def source_side(self) -> set[int]:
        """Nodes reachable from the source in the residual network."""
        return self.network.residual_reachable(self.source)

    def residual_arcs(self) -> list[tuple[int, int]]:
        """Residual arcs (one entry per unit of residual capacity)."""
        net = self.network
        out = []
        for slot, r in enumerate(net.res):
            tail = net.head[slot ^ 1]
            out.extend((tail, net.head[slot]) for _ in range(r))
        return out


def _shortest_path(net: FlowNetwork, s: int, t: int) -> Optional[list[int]]:
    head, res, adj = net.head, net.res, net.adj
    pred = [-1] * net.n
    pred[s] = -2
    queue = [s]
    for x in queue:
        for a in adj[x]:
            if res[a] > 0:
                y = head[a]
                if pred[y] == -1:
                    pred[y] = a
                    if y == t:
                        path = []
                        while y != s:
                            a = pred[y]
                            path.append(a)
                            y = head[a ^ 1]
                        return path
                    queue.append(y)
    return None


def max_flow(net: FlowNetwork, s: int, t: int, cap_at: Optional[int] = None) -> FlowResult:
    """Push flow from ``s`` to ``t`` along shortest residual paths.

    Continues from whatever flow ``net`` already carries.  With ``cap_at``
    the returned value is ``min(max flow, cap_at)``; the residual network
    then reflects the partial flow.
    """
    if s == t:
        raise InputError("source and sink must differ")
    value = 0
    res = net.res
    while cap_at is None or value < cap_at:
        path = _shortest_path(net, s, t)
        if path is None:
            break
        delta = min(res[a] for a in path)
        if cap_at is not None:
            delta = min(delta, cap_at - value)
        for a in path:
            res[a] -= delta
            res[a ^ 1] += delta
        value += delta
    return FlowResult(value, net, s, t)


# ---------------------------------------------------------------------------
# bulk connectivity queries
#
# Connectivity checks run thousands of flows on one fixed graph.  The
# compiled scipy solver handles those; the augmenting-path code above stays
# the reference and the fallback when scipy is missing.

try:
    import numpy as np
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import maximum_flow as _sp_maximum_flow
except ImportError:  # pragma: no cover
    np = None

DEFAULT_BACKEND = "scipy" if np is not None else "python"


class ArcNetwork:
    """A fixed capacitated digraph answering many source/sink flow queries."""

    def __init__(self, n: int, arcs: Sequence[tuple[int, int]], caps: Optional[Sequence[int]] = None, backend: Optional[str] = None):
        self.n = n
        self.backend = backend or DEFAULT_BACKEND
        if caps is None:
            caps = [1] * len(arcs)
        if self.backend == "scipy":
            if arcs:
                tails, heads = zip(*arcs)
            else:
                tails, heads = (), ()
            self._matrix = csr_matrix(
                (np.asarray(caps, dtype=np.int32), (np.asarray(tails, dtype=np.int32), np.asarray(heads, dtype=np.int32))),
                shape=(n, n),
            )
        elif self.backend == "python":
            self._net = FlowNetwork(n)
            for (u, v), c in zip(arcs, caps):
                self._net.add_arc(u, v, c)
        else:
            raise InputError(f"unknown flow backend {self.backend!r}")

    def flow(self, s: int, t: int, cap_at: Optional[int] = None) -> int:
        if s == t:
            raise InputError("source and sink must differ")
        if self.backend == "scipy":
            value = int(_sp_maximum_flow(self._matrix, s, t).flow_value)
            return value if cap_at is None else min(value, cap_at)
        self._net.reset()
        return max_flow(self._net, s, t, cap_at).value


def max_flow_between(
    G: Digraph,
    sources: Iterable[int],
    sinks: Iterable[int],
    cap_at: Optional[int] = None,
    backend: Optional[str] = None,
) -> int:
    """Unit-capacity flow value from a vertex set to a disjoint vertex set."""
    sources, sinks = list(sources), list(sinks)
    if set(sources) & set(sinks):
        raise InputError("source and sink sets must be disjoint")
    s, t = G.n, G.n + 1
    big = G.m + 1
    arcs = list(G.edges) + [(s, x) for x in sources] + [(y, t) for y in sinks]
    caps = [1] * G.m + [big] * (len(sources) + len(sinks))
    return ArcNetwork(G.n + 2, arcs, caps, backend).flow(s, t, cap_at)


def local_connectivity(G: Digraph, u: int, v: int, cap_at: Optional[int] = None) -> int:
    """Number of arc-disjoint ``u``-``v`` paths, capped at ``cap_at``."""
    net = FlowNetwork.from_digraph(G)
    return max_flow(net, u, v, cap_at).value


def strong_connectivity(G: Digraph, cap_at: int, backend: Optional[str] = None) -> int:
    """``min(cap_at, arc connectivity of G)`` via flows to and from vertex 0.

    Every pair ``u, v`` is separated by some cut that also separates one of
    them from vertex 0, so ``2(n-1)`` flows suffice.
    """
    if G.n <= 1:
        return cap_at
    net = ArcNetwork(G.n, G.edges, backend=backend)
    best = cap_at
    for v in range(1, G.n):
        for s, t in ((0, v), (v, 0)):
            best = min(best, net.flow(s, t, best))
            if best == 0:
                return 0
    return best


def is_strongly_k_connected(G: Digraph, k: int, backend: Optional[str] = None) -> bool:
    return k <= 0 or strong_connectivity(G, k, backend) >= k


def ks_connectivity_pairs(D: Digraph, terminals: Sequence[int], k: int, backend: Optional[str] = None) -> Optional[tuple[int, int]]:
    """First ordered terminal pair with fewer than ``k`` arc-disjoint paths, or None."""
    net = ArcNetwork(D.n, D.edges, backend=backend)
    for u in terminals:
        for v in terminals:
            if u != v and net.flow(u, v, k) < k:
                return (u, v)
    return None


def is_ks_connected(Gx, k: int, backend: Optional[str] = None) -> bool:
    """All ordered pairs of base vertices have ``k`` arc-disjoint paths.

    ``Gx`` is an extension graph (anything with ``digraph()`` and
    ``base``); the special node may be used as an ordinary internal node.
    """
    if k <= 0:
        return True
    D = Gx.digraph()
    return ks_connectivity_pairs(D, range(Gx.base.n), k, backend) is None


def rooted_ks_connected(
    D,
    terminals: Sequence[int],
    k: int,
    root: Optional[int] = None,
    backend: Optional[str] = None,
) -> bool:
    """Same answer as checking all terminal pairs, using flows to and from one root.

    ``D`` is a Digraph or an already built :class:`ArcNetwork`.
    """
    terminals = list(terminals)
    if k <= 0 or len(terminals) <= 1:
        return True
    r = terminals[0] if root is None else root
    net = D if isinstance(D, ArcNetwork) else ArcNetwork(D.n, D.edges, backend=backend)
    for v in terminals:
        if v == r:
            continue
        if net.flow(r, v, k) < k or net.flow(v, r, k) < k:
            return False
    return True
