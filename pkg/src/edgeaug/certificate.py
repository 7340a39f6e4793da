"""Optimality certificates for bounded-indegree k-forests.

For an optimal labeling, every deficient vertex ``v`` has no augmenting
path, and the vertices touched by what ``v`` can reach in ``D(F)`` form a
closed set: all entering edges are covered and every forest spans it.
Merging overlapping closed sets gives a subpartition whose value
``sum(k - tau(A) - |rho(A)|)`` equals the total deficit, while any
subpartition's value is at most the total deficit of any feasible labeling.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import Digraph, InputError, InvariantError, boundary
from .kforest import NONE, T_NODE, ForestLabeling, TauSpec, aux_successors, solve
from .unionfind import UnionFind


class ContractViolation(InvariantError):
    """A function was called outside its precondition (e.g. F not optimal)."""


@dataclass
class Certificate:
    k: int
    sets: list[frozenset[int]]
    values: list[int]
    total: int

    @classmethod
    def build(cls, G: Digraph, k: int, tau: Sequence[int], sets: list[frozenset[int]]) -> Certificate:
        values = [set_value(G, k, tau, A) for A in sets]
        return cls(k, sets, values, sum(values))


@dataclass
class VerifyReport:
    deficit: int
    certificate_total: int
    disjoint: bool
    values_match: bool
    problems: list[str] = field(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.disjoint and self.values_match and self.deficit == self.certificate_total


def tau_vector(n: int, k: int, tau) -> list[int]:
    if tau is None:
        return [0] * n
    if isinstance(tau, TauSpec):
        return tau.vector(n, k)
    tau = list(tau)
    if len(tau) != n:
        raise InputError("tau must have one entry per vertex")
    return tau


def set_value(G: Digraph, k: int, tau: Sequence[int], A) -> int:
    return k - sum(tau[v] for v in A) - len(boundary(G, A, "rho"))


def _spans(n: int, edges, A: frozenset[int]) -> bool:
    if len(A) <= 1:
        return True
    uf = UnionFind(n)
    for u, v in edges:
        if u in A and v in A:
            uf.union(u, v)
    root = uf.find(next(iter(A)))
    return all(uf.find(v) == root for v in A)


def is_F_closed(F: ForestLabeling, A) -> bool:
    """Entering edges all covered, and every forest connected inside ``A``."""
    A = frozenset(A)
    G = F.G
    if any(F.label[e] == NONE for e in boundary(G, A, "rho")):
        return False
    for i in range(1, F.k + 1):
        if not _spans(G.n, [G.edges[e] for e in F.forest(i)], A):
            return False
    return True


def reachable(F: ForestLabeling, v: int) -> tuple[set[int], bool]:
    """Edges reachable from vertex ``v`` in ``D(F)`` and whether ``t`` is reachable."""
    start = ("v", v)
    seen = {start}
    queue = deque([start])
    hit_t = False
    while queue:
        node = queue.popleft()
        for succ in aux_successors(F, node):
            if succ == T_NODE:
                hit_t = True
                continue
            if succ not in seen:
                seen.add(succ)
                queue.append(succ)
    return {node[1] for node in seen if node[0] == "e"}, hit_t


def closed_set(F: ForestLabeling, v: int) -> frozenset[int]:
    """The closed set ``Q_v``: vertices of the edges reachable from ``v``."""
    L, hit_t = reachable(F, v)
    if hit_t:
        raise ContractViolation(f"vertex {v} still has an augmenting path")
    Q = {v}
    for e in L:
        Q.update(F.G.edges[e])
    return frozenset(Q)


def optimal_subpartition(F: ForestLabeling) -> Certificate:
    """Disjoint closed sets covering every deficient vertex of an optimal ``F``."""
    G, k = F.G, F.k
    tau = F.tau.vector(G.n, k)
    family = [closed_set(F, v) for v in range(G.n) if F.deficit(v) > 0]
    merged = True
    while merged:
        merged = False
        for i in range(len(family)):
            for j in range(i + 1, len(family)):
                if family[i] & family[j]:
                    union = family[i] | family[j]
                    if not is_F_closed(F, union):
                        raise InvariantError("union of two closed sets is not closed")
                    family[i] = union
                    del family[j]
                    merged = True
                    break
            if merged:
                break
    family.sort(key=min)
    cert = Certificate.build(G, k, tau, family)
    for A, value in zip(cert.sets, cert.values):
        if not is_F_closed(F, A):
            raise InvariantError(f"certificate set {sorted(A)} is not closed")
        if value <= 0:
            raise InvariantError(f"certificate set {sorted(A)} has non-positive value")
        for i in range(1, k + 1):
            if len({F.uf[i].find(v) for v in A}) != 1:
                raise InvariantError(f"certificate set {sorted(A)} straddles components of forest {i}")
    return cert


def check_feasible(G: Digraph, k: int, labels: Sequence[int], tau: Sequence[int]) -> list[str]:
    """Reasons the labeling is not a feasible k-forest (empty when feasible)."""
    problems = []
    if len(labels) != G.m:
        return [f"expected {G.m} labels, got {len(labels)}"]
    ufs = [UnionFind(G.n) for _ in range(k + 1)]
    indeg = [0] * G.n
    for e, lab in enumerate(labels):
        if not 0 <= lab <= k:
            problems.append(f"edge {e + 1} has label {lab} outside 0..{k}")
            continue
        if lab == NONE:
            continue
        u, v = G.edges[e]
        if ufs[lab].same(u, v):
            problems.append(f"forest {lab} has a cycle through edge {e + 1}")
        ufs[lab].union(u, v)
        indeg[v] += 1
    for v in range(G.n):
        if indeg[v] > k - tau[v]:
            problems.append(f"vertex {v + 1} has indegree {indeg[v]} > {k - tau[v]}")
    return problems


def verify_minmax(G: Digraph, k: int, labels: Sequence[int], tau, cert: Certificate) -> VerifyReport:
    """Compare the labeling's total deficit with the certificate's value.

    Raises InvariantError for an infeasible labeling; the report's
    ``optimal`` flag is True exactly when the two sides agree.
    """
    t = tau_vector(G.n, k, tau)
    problems = check_feasible(G, k, labels, t)
    if problems:
        raise InvariantError("infeasible labeling: " + "; ".join(problems))
    covered = sum(1 for lab in labels if lab != NONE)
    deficit = G.n * k - sum(t) - covered
    seen: set[int] = set()
    disjoint = True
    for A in cert.sets:
        if seen & A or not A:
            disjoint = False
        seen |= A
    report_problems = []
    recomputed = [set_value(G, k, t, A) for A in cert.sets]
    values_match = recomputed == list(cert.values) and sum(recomputed) == cert.total
    if not values_match:
        report_problems.append("certificate values do not match the graph")
    if not disjoint:
        report_problems.append("certificate sets overlap or are empty")
    if deficit != cert.total:
        report_problems.append(f"deficit {deficit} != certificate total {cert.total}")
    return VerifyReport(deficit, sum(recomputed), disjoint, values_match, report_problems)


def alpha_values(G: Digraph, k: int, *, enumerate_limit: int = 10) -> tuple[Optional[int], Optional[int]]:
    """``(alpha_in, alpha_out)``; None for a side that could not be determined.

    A side is exact when the zero-reservation k-forest optimum leaves more
    than ``k`` total deficit (then alpha equals that deficit), or by
    proper-subpartition enumeration when ``n <= enumerate_limit``.
    """
    from . import oracle
    from .graph import reverse

    out: list[Optional[int]] = []
    for H, rev in ((G, False), (reverse(G), True)):
        value: Optional[int] = None
        if G.n >= 1:
            F = solve(H, k)
            d = F.total_deficit()
            if d > k:
                value = d
        if value is None and G.n <= enumerate_limit:
            value = oracle.brute_subpartition_max(G, k, None, True, reverse=rev)
        out.append(value)
    return out[0], out[1]


def format_certificate(cert: Certificate) -> str:
    """Text form: ``k``, then ``set <value> <vertices...>`` lines, then ``total``."""
    lines = [f"k {cert.k}"]
    for A, value in zip(cert.sets, cert.values):
        lines.append("set " + " ".join(str(x) for x in [value] + [v + 1 for v in sorted(A)]))
    lines.append(f"total {cert.total}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    k: Optional[int] = None
    sets: list[frozenset[int]] = []
    values: list[int] = []
    total: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "k" and len(parts) == 2:
                k = int(parts[1])
            elif parts[0] == "set" and len(parts) >= 3:
                values.append(int(parts[1]))
                sets.append(frozenset(int(x) - 1 for x in parts[2:]))
            elif parts[0] == "total" and len(parts) == 2:
                total = int(parts[1])
            else:
                raise InputError(f"line {lineno}: unrecognised certificate line {line!r}")
        except ValueError:
            raise InputError(f"line {lineno}: non-integer field") from None
    if k is None or total is None:
        raise InputError("certificate needs 'k' and 'total' lines")
    return Certificate(k, sets, values, total)
