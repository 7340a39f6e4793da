"""Directed and undirected multigraphs, cut primitives and the edge-list format.

Vertices are ``0..n-1`` in memory and ``1..n`` in files.  Parallel edges
keep separate edge ids; self-loops are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence, Union

BoundaryKind = Literal["rho", "rho_rev", "lambda"]


class InputError(ValueError):
    """Invalid user-supplied graph, vertex, or parameter."""


class GraphParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantError(AssertionError):
    """An internal invariant failed; indicates a bug, not bad input."""


def _check_edges(n: int, edges: Sequence[tuple[int, int]]) -> None:
    if n < 0:
        raise InputError(f"vertex count must be non-negative, got {n}")
    for i, (u, v) in enumerate(edges):
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge {i} = ({u}, {v}) has a vertex outside [0, {n})")
        if u == v:
            raise InputError(f"edge {i} is a self-loop at vertex {u}")


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph; edge ``i`` is ``edges[i] = (tail, head)``."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        _check_edges(self.n, edges)
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def tail(self, e: int) -> int:
        return self.edges[e][0]

    def head(self, e: int) -> int:
        return self.edges[e][1]

    def in_edges(self) -> list[list[int]]:
        """Per-vertex lists of entering edge ids."""
        ins: list[list[int]] = [[] for _ in range(self.n)]
        for e, (_, v) in enumerate(self.edges):
            ins[v].append(e)
        return ins

    def out_edges(self) -> list[list[int]]:
        outs: list[list[int]] = [[] for _ in range(self.n)]
        for e, (u, _) in enumerate(self.edges):
            outs[u].append(e)
        return outs

    def indegrees(self) -> list[int]:
        deg = [0] * self.n
        for _, v in self.edges:
            deg[v] += 1
        return deg

    def without_edges_into(self, a: int) -> Digraph:
        return Digraph(self.n, tuple(e for e in self.edges if e[1] != a))

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> Digraph:
        return Digraph(self.n, self.edges + tuple(extra))


@dataclass(frozen=True)
class UGraph:
    """Undirected multigraph; edge ``i`` joins ``edges[i][0]`` and ``edges[i][1]``."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        _check_edges(self.n, edges)
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> UGraph:
        return UGraph(self.n, self.edges + tuple(extra))


Graph = Union[Digraph, UGraph]


@dataclass(frozen=True)
class VertexSet:
    """Subset of ``range(n)``."""

    n: int
    members: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        members = frozenset(int(v) for v in self.members)
        bad = [v for v in members if not 0 <= v < self.n]
        if bad:
            raise InputError(f"vertices {sorted(bad)} outside [0, {self.n})")
        object.__setattr__(self, "members", members)

    def __contains__(self, v: object) -> bool:
        return v in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def mask(self) -> int:
        bits = 0
        for v in self.members:
            bits |= 1 << v
        return bits


def _as_members(G: Graph, A: VertexSet | Iterable[int]) -> frozenset[int]:
    if isinstance(A, VertexSet):
        if A.n != G.n:
            raise InputError(f"vertex set over {A.n} vertices used with a graph of {G.n}")
        return A.members
    return VertexSet(G.n, frozenset(A)).members


def boundary(G: Digraph, A: VertexSet | Iterable[int], kind: BoundaryKind = "rho") -> list[int]:
    """Edge ids entering ``A`` (rho), leaving ``A`` (rho_rev) or inside ``A`` (lambda)."""
    S = _as_members(G, A)
    if kind == "rho":
        return [e for e, (u, v) in enumerate(G.edges) if u not in S and v in S]
    if kind == "rho_rev":
        return [e for e, (u, v) in enumerate(G.edges) if u in S and v not in S]
    if kind == "lambda":
        return [e for e, (u, v) in enumerate(G.edges) if u in S and v in S]
    raise InputError(f"unknown boundary kind {kind!r}")


def cut_edges(Gu: UGraph, A: VertexSet | Iterable[int]) -> list[int]:
    """Undirected boundary: edges with exactly one endpoint in ``A``."""
    S = _as_members(Gu, A)
    return [e for e, (u, v) in enumerate(Gu.edges) if (u in S) != (v in S)]


def reverse(G: Digraph) -> Digraph:
    return Digraph(G.n, tuple((v, u) for u, v in G.edges))


def doubled(Gu: UGraph) -> Digraph:
    """Replace each undirected edge ``uv`` by arcs ``(u, v)`` and ``(v, u)``.

    Arc ``2i`` is ``(u, v)`` and arc ``2i + 1`` is ``(v, u)`` for edge ``i``.
    """
    arcs: list[tuple[int, int]] = []
    for u, v in Gu.edges:
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph(Gu.n, tuple(arcs))


def parse_graph(text: str) -> Graph:
    """Parse the ``n m directed|undirected`` edge-list format (1-based vertices)."""
    header: tuple[int, int, bool] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[2] not in ("directed", "undirected"):
                raise GraphParseError("header must be 'n m directed|undirected'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError("vertex and edge counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise GraphParseError("counts must be non-negative", lineno)
            header = (n, m, parts[2] == "directed")
            continue
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer vertex in {line!r}", lineno) from None
        n = header[0]
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphParseError(f"vertex id out of range 1..{n}", lineno)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u - 1, v - 1))
    if header is None:
        raise GraphParseError("empty input: missing header")
    n, m, directed = header
    if len(edges) != m:
        raise GraphParseError(f"header declares {m} edges but {len(edges)} were given")
    return Digraph(n, tuple(edges)) if directed else UGraph(n, tuple(edges))


def serialize_graph(G: Graph) -> str:
    kind = "directed" if isinstance(G, Digraph) else "undirected"
    lines = [f"{G.n} {G.m} {kind}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
