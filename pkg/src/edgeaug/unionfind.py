from __future__ import annotations


class UnionFind:
    """Disjoint sets over ``range(n)`` with path compression and union by size."""

    __slots__ = ("parent", "size", "count")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def same(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)

    def union(self, x: int, y: int) -> int:
        """Merge the sets of ``x`` and ``y``; return the surviving root."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.count -= 1
        return rx

    def copy(self) -> UnionFind:
        other = UnionFind.__new__(UnionFind)
        other.parent = self.parent[:]
        other.size = self.size[:]
        other.count = self.count
        return other
