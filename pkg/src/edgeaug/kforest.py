"""Bounded-indegree k-forests via augmenting paths in the auxiliary graph.

Given a digraph ``G``, an integer ``k`` and a per-vertex reservation
``tau``, find edge-disjoint forests ``F_1, ..., F_k`` (directions ignored)
of maximum total size such that every vertex ``v`` has at most
``k - tau(v)`` entering edges in their union.

The solver grows the forests one level at a time.  Level ``j`` starts from
the optimal ``(j-1)``-forest solution, adds an empty ``j``-th forest, and
repeatedly searches for augmenting paths from deficient vertices, visiting
the components of the newest forest in rounds.  Every augmentation rotates
the labels along a shortest path, which keeps all forests acyclic and keeps
the component structure of later forests nested inside earlier ones.

Only ``tau = 0`` and ``tau = tau^{a:k}`` (all of ``a``'s indegree budget
reserved) are supported by the solver; the certificate verifier accepts any
vector.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Union

from .graph import Digraph, InputError, InvariantError
from .unionfind import UnionFind

NONE = 0  # label of an uncovered edge

Node = tuple  # ("v", vertex) | ("e", edge id) | ("t",)
T_NODE: Node = ("t",)


@dataclass(frozen=True)
class TauSpec:
    """Either the zero vector or ``tau^{a:k}`` for a root ``a``."""

    root: Optional[int] = None

    @classmethod
    def zero(cls) -> TauSpec:
        return cls(None)

    @classmethod
    def at(cls, a: int) -> TauSpec:
        return cls(int(a))

    def value(self, v: int, k: int) -> int:
        return k if v == self.root else 0

    def vector(self, n: int, k: int) -> list[int]:
        return [self.value(v, k) for v in range(n)]

    def validate(self, n: int) -> None:
        if self.root is not None and not 0 <= self.root < n:
            raise InputError(f"root {self.root} outside [0, {n})")


def k_limit(n: int) -> int:
    return max(1024, n * n)


class ForestLabeling:
    """Labels ``1..k`` (or ``NONE``) on the edges of ``G`` plus derived structure.

    Besides the labels this keeps, per forest, a union-find over its
    components (components only ever merge), an incidence list, and a lazily
    rebuilt rooted form used for tree-path queries.  ``work`` is the working
    deficit: equal to the true deficit, or 0 once a search from the vertex
    has failed.
    """

    def __init__(self, G: Digraph, tau: TauSpec = TauSpec()):
        tau.validate(G.n)
        self.G = G
        self.tau = tau
        self.k = 0
        self.label = [NONE] * G.m
        self.indeg = [0] * G.n
        self.sizes = [0]
        self.uf: list[Optional[UnionFind]] = [None]
        self.adj: list[Optional[list[set[int]]]] = [None]
        self._rooted: list = [None]
        self.work = [0] * G.n
        self.top_members: dict[int, list[int]] = {}
        self._in_edges = G.in_edges()

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return self.G.n

    def cap(self, v: int) -> int:
        return self.k - self.tau.value(v, self.k)

    def deficit(self, v: int) -> int:
        return self.cap(v) - self.indeg[v]

    def deficits(self) -> list[int]:
        return [self.deficit(v) for v in range(self.n)]

    def total_deficit(self) -> int:
        return sum(self.deficits())

    def size(self) -> int:
        return sum(self.sizes)

    def forest(self, i: int) -> list[int]:
        return [e for e, lab in enumerate(self.label) if lab == i]

    def covered(self) -> list[int]:
        return [e for e, lab in enumerate(self.label) if lab != NONE]

    def is_joining(self, e: int, i: int) -> bool:
        if self.label[e] == i:
            return False
        u, v = self.G.edges[e]
        return not self.uf[i].same(u, v)

    def components(self, i: int) -> dict[int, list[int]]:
        uf = self.uf[i]
        comps: dict[int, list[int]] = {}
        for v in range(self.n):
            comps.setdefault(uf.find(v), []).append(v)
        return comps

    # -- growth and mutation -------------------------------------------

    def add_forest(self) -> None:
        """Append an empty forest ``F_{k+1}``; every working deficit resets."""
        self.k += 1
        self.sizes.append(0)
        self.uf.append(UnionFind(self.n))
        self.adj.append([set() for _ in range(self.n)])
        self._rooted.append(None)
        self.top_members = {v: [v] for v in range(self.n)}
        self.work = self.deficits()

    def relabel(self, e: int, new: int) -> None:
        old = self.label[e]
        if old == new:
            return
        u, v = self.G.edges[e]
        if old != NONE:
            self.adj[old][u].discard(e)
            self.adj[old][v].discard(e)
            self.sizes[old] -= 1
            self._rooted[old] = None
        else:
            self.indeg[v] += 1
        if new != NONE:
            self.adj[new][u].add(e)
            self.adj[new][v].add(e)
            self.sizes[new] += 1
            self._rooted[new] = None
        else:
            self.indeg[v] -= 1
        self.label[e] = new

    def merge_components(self, i: int, x: int, y: int) -> None:
        uf = self.uf[i]
        rx, ry = uf.find(x), uf.find(y)
        if rx == ry:
            return
        root = uf.union(rx, ry)
        if i == self.k:
            other = ry if root == rx else rx
            self.top_members[root].extend(self.top_members.pop(other))

    # -- tree paths ------------------------------------------------------

    def _rooted_form(self, i: int):
        cached = self._rooted[i]
        if cached is not None:
            return cached
        n = self.n
        edges = self.G.edges
        adj = self.adj[i]
        parent_edge = [-1] * n
        parent = [-1] * n
        depth = [-1] * n
        for r in range(n):
            if depth[r] >= 0:
                continue
            depth[r] = 0
            stack = [r]
            while stack:
                x = stack.pop()
                for e in adj[x]:
                    a, b = edges[e]
                    y = b if a == x else a
                    if depth[y] < 0:
                        depth[y] = depth[x] + 1
                        parent[y] = x
                        parent_edge[y] = e
                        stack.append(y)
        cached = (parent_edge, parent, depth)
        self._rooted[i] = cached
        return cached

    def tree_path(self, i: int, x: int, y: int) -> list[int]:
        """Edges of ``F_i`` on the path between ``x`` and ``y`` (same component)."""
        parent_edge, parent, depth = self._rooted_form(i)
        out = []
        while x != y:
            if depth[x] >= depth[y]:
                if parent[x] < 0:
                    raise InvariantError(f"vertices not connected in forest {i}")
                out.append(parent_edge[x])
                x = parent[x]
            else:
                if parent[y] < 0:
                    raise InvariantError(f"vertices not connected in forest {i}")
                out.append(parent_edge[y])
                y = parent[y]
        return out

    # -- invariants ------------------------------------------------------

    def check(self, *, working: bool = True) -> None:
        """Recompute every invariant from the labels; raise InvariantError on failure."""
        n, k, G = self.n, self.k, self.G
        indeg = [0] * n
        for e, lab in enumerate(self.label):
            if not 0 <= lab <= k:
                raise InvariantError(f"edge {e} has label {lab} outside 0..{k}")
            if lab != NONE:
                indeg[G.edges[e][1]] += 1
        if indeg != self.indeg:
            raise InvariantError("cached indegrees disagree with labels")
        for v in range(n):
            if indeg[v] > self.cap(v):
                raise InvariantError(f"vertex {v} exceeds its indegree budget")
            if working and self.work[v] not in (0, self.deficit(v)):
                raise InvariantError(f"working deficit of {v} is neither 0 nor its deficit")
        prev: Optional[UnionFind] = None
        for i in range(1, k + 1):
            uf = UnionFind(n)
            count = 0
            for e in self.forest(i):
                u, v = G.edges[e]
                if uf.same(u, v):
                    raise InvariantError(f"forest {i} contains a cycle through edge {e}")
                uf.union(u, v)
                count += 1
            if count != self.sizes[i]:
                raise InvariantError(f"cached size of forest {i} is stale")
            mine = self.uf[i]
            pairs = {(uf.find(v), mine.find(v)) for v in range(n)}
            if len(pairs) != uf.count or len(pairs) != mine.count:
                raise InvariantError(f"union-find of forest {i} is stale")
            if prev is not None:
                for v in range(n):
                    if not prev.same(v, uf.find(v)):
                        raise InvariantError(f"forest {i} is not nested inside forest {i - 1}")
            prev = uf


def min_joining_index(F: ForestLabeling, e: int) -> int:
    """Smallest ``j`` such that edge ``e`` joins two components of ``F_j``."""
    u, v = F.G.edges[e]
    for j in range(1, F.k + 1):
        if F.label[e] != j and not F.uf[j].same(u, v):
            return j
    raise InvariantError(f"edge {e} is joining for no forest")


def aux_successors(F: ForestLabeling, node: Node) -> list[Node]:
    """Out-neighbours of ``node`` in the auxiliary graph ``D(F)``.

    Materializes every arc, including the ones a search would never follow,
    so this is meant for inspection and certificates rather than the solver.
    """
    G = F.G
    kind = node[0]
    out: list[Node] = []
    if kind == "v":
        v = node[1]
        if F.indeg[v] < F.cap(v):
            out.extend(("e", e) for e in F._in_edges[v] if F.label[e] == NONE)
        return out
    if kind == "t":
        return out
    e = node[1]
    lab = F.label[e]
    if any(F.is_joining(e, i) for i in range(1, F.k + 1)):
        out.append(T_NODE)
    if lab != NONE:
        h = G.edges[e][1]
        out.extend(("e", f) for f in F._in_edges[h] if F.label[f] == NONE)
    u, v = G.edges[e]
    seen: set[int] = set()
    for i in range(1, F.k + 1):
        if lab == i:
            continue
        if F.uf[i].same(u, v):
            targets = F.tree_path(i, u, v)
        else:
            targets = F.forest(i)
        for f in targets:
            if f not in seen:
                seen.add(f)
                out.append(("e", f))
    return out


@dataclass(frozen=True)
class AugPath:
    start: int
    edges: tuple[int, ...]
    join_index: int


@dataclass(frozen=True)
class Exhausted:
    start: int


def find_path(F: ForestLabeling, v: int) -> Optional[list[int]]:
    """Breadth-first search for a shortest ``v``-``t`` path in ``D(F)``.

    Returns the edge sequence ``e_1..e_r`` or None.  A shortest path has no
    shortcuts, which is what makes the label rotation in :func:`augment`
    produce forests again.
    """
    if F.indeg[v] >= F.cap(v):
        return None
    G = F.G
    edges = G.edges
    label = F.label
    in_edges = F._in_edges
    k = F.k
    ufs = F.uf
    pred: dict[int, int] = {}
    heads_done = {v}
    queue: deque[int] = deque()

    def joining(e: int) -> bool:
        a, b = edges[e]
        lab = label[e]
        for i in range(1, k + 1):
            if i != lab and not ufs[i].same(a, b):
                return True
        return False

    def trace(e: int) -> list[int]:
        path = [e]
        while pred[e] >= 0:
            e = pred[e]
            path.append(e)
        path.reverse()
        return path

    for e in in_edges[v]:
        if label[e] == NONE and e not in pred:
            pred[e] = -1
            if joining(e):
                return trace(e)
            queue.append(e)

    while queue:
        x = queue.popleft()
        lab = label[x]
        a, b = edges[x]
        if lab != NONE and b not in heads_done:
            heads_done.add(b)
            for f in in_edges[b]:
                if label[f] == NONE and f not in pred:
                    pred[f] = x
                    if joining(f):
                        return trace(f)
                    queue.append(f)
        for i in range(1, k + 1):
            if i == lab:
                continue
            for f in F.tree_path(i, a, b):
                if f not in pred:
                    pred[f] = x
                    if joining(f):
                        return trace(f)
                    queue.append(f)
    return None


def has_no_shortcuts(F: ForestLabeling, v: int, path: list[int]) -> bool:
    """True when no arc of ``D(F)`` skips ahead along ``(v, e_1..e_r, t)``."""
    nodes: list[Node] = [("v", v)] + [("e", e) for e in path] + [T_NODE]
    position = {node: i for i, node in enumerate(nodes)}
    for i, node in enumerate(nodes[:-1]):
        for succ in aux_successors(F, node):
            j = position.get(succ)
            if j is not None and j > i + 1:
                return False
    return True


def augment(F: ForestLabeling, path: list[int], *, check: bool = False) -> AugPath:
    """Rotate labels along ``e_1..e_r``; ``e_r`` enters its lowest joining forest."""
    p = min_joining_index(F, path[-1])
    if F.label[path[0]] != NONE:
        raise InvariantError("augmenting path must start with an uncovered edge")
    new_labels = [F.label[e] for e in path[1:]] + [p]
    u, v = F.G.edges[path[-1]]
    F.merge_components(p, u, v)
    for e, lab in zip(path, new_labels):
        F.relabel(e, lab)
    if check:
        F.check(working=False)
    return AugPath(F.G.edges[path[0]][1], tuple(path), p)


def search(F: ForestLabeling, component: int, *, check: bool = False) -> Union[AugPath, Exhausted]:
    """One search from the component of ``F_k`` containing ``component``.

    Picks the lowest-id vertex there with positive working deficit.  On
    success the path is augmented and that vertex's working deficit drops by
    one; otherwise it drops to zero and the vertex is never searched again.
    """
    root = F.uf[F.k].find(component)
    members = F.top_members[root]
    v = min((x for x in members if F.work[x] > 0), default=None)
    if v is None:
        raise InvariantError("search called on a component without working deficit")
    path = find_path(F, v)
    if path is None:
        F.work[v] = 0
        return Exhausted(v)
    if check and not has_no_shortcuts(F, v, path):
        raise InvariantError(f"search produced a path with shortcuts from {v}")
    result = augment(F, path, check=check)
    F.work[v] -= 1
    if check:
        F.check()
    return result


@dataclass
class LevelStats:
    level: int
    rounds: int = 0
    augmentations: int = 0
    failed_searches: int = 0
    early_exit: bool = False


@dataclass
class SolveStats:
    levels: list[LevelStats] = field(default_factory=list)

    @property
    def rounds(self) -> int:
        return sum(s.rounds for s in self.levels)

    @property
    def augmentations(self) -> int:
        return sum(s.augmentations for s in self.levels)


AugmentHook = Callable[[ForestLabeling, AugPath], None]


class KForestSolver:
    """Incremental solver: each :meth:`grow` makes the solution optimal for ``k + 1``."""

    def __init__(
        self,
        G: Digraph,
        tau: TauSpec = TauSpec(),
        *,
        check: bool = False,
        on_augment: Optional[AugmentHook] = None,
    ):
        self.F = ForestLabeling(G, tau)
        self.check = check
        self.on_augment = on_augment
        self.stats = SolveStats()

    def grow(self) -> LevelStats:
        F = self.F
        n = F.n
        F.add_forest()
        k = F.k
        stats = LevelStats(k)
        self.stats.levels.append(stats)
        uf_top = F.uf[k]
        while sum(F.work) > 0:
            if F.sizes[k] == n - 1:
                # F_k spans V, so every forest does and no deficit can be reduced.
                F.work = [0] * n
                stats.early_exit = True
                break
            stats.rounds += 1
            reps = sorted(
                min(members)
                for members in F.top_members.values()
                if any(F.work[x] > 0 for x in members)
            )
            done: set[int] = set()
            for rep in reps:
                root = uf_top.find(rep)
                if root in done:
                    continue
                if not any(F.work[x] > 0 for x in F.top_members[root]):
                    continue
                result = search(F, root, check=self.check)
                if isinstance(result, AugPath):
                    stats.augmentations += 1
                    if self.on_augment is not None:
                        self.on_augment(F, result)
                else:
                    stats.failed_searches += 1
                done.add(uf_top.find(rep))
        if self.check:
            F.check()
        return stats

    def levels(self, k: int) -> Iterator[ForestLabeling]:
        while self.F.k < k:
            self.grow()
            yield self.F


def solve(
    G: Digraph,
    k: int,
    tau: TauSpec = TauSpec(),
    *,
    check: bool = False,
    on_augment: Optional[AugmentHook] = None,
    stats: Optional[SolveStats] = None,
) -> ForestLabeling:
    """Maximum bounded-indegree ``k``-forest for ``tau`` = 0 or ``tau^{a:k}``."""
    if k < 1 or k > k_limit(G.n):
        raise InputError(f"k must lie in [1, {k_limit(G.n)}], got {k}")
    solver = KForestSolver(G, tau, check=check, on_augment=on_augment)
    for _ in solver.levels(k):
        pass
    if stats is not None:
        stats.levels.extend(solver.stats.levels)
    return solver.F


def format_labeling(F: ForestLabeling) -> str:
    """One ``edgeId label`` line per edge (1-based ids, label 0 = uncovered)."""
    return "".join(f"{e + 1} {lab}\n" for e, lab in enumerate(F.label))


def parse_labeling(text: str, m: int) -> list[int]:
    labels = [NONE] * m
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'edgeId label'")
        try:
            e, lab = int(parts[0]) - 1, int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: non-integer field") from None
        if not 0 <= e < m or e in seen or lab < 0:
            raise InputError(f"line {lineno}: bad or repeated edge id {e + 1}")
        seen.add(e)
        labels[e] = lab
    return labels


def labeling_from_labels(G: Digraph, k: int, labels: list[int], tau: TauSpec = TauSpec()) -> ForestLabeling:
    """Rebuild a ForestLabeling from raw labels; raises InvariantError if infeasible."""
    F = ForestLabeling(G, tau)
    for _ in range(k):
        F.add_forest()
    for e, lab in enumerate(labels):
        if not 0 <= lab <= k:
            raise InvariantError(f"edge {e + 1} has label {lab} outside 0..{k}")
        if lab != NONE:
            u, v = G.edges[e]
            if F.uf[lab].same(u, v):
                raise InvariantError(f"forest {lab} contains a cycle through edge {e + 1}")
            F.merge_components(lab, u, v)
            F.relabel(e, lab)
    for v in range(G.n):
        if F.indeg[v] > F.cap(v):
            raise InvariantError(f"vertex {v + 1} exceeds its indegree budget")
    F.work = [0] * G.n
    return F
