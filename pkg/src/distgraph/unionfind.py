"""Union-find over hashable items, optionally tracking parity to the root."""

from __future__ import annotations

from typing import Hashable, Iterable


class UnionFind:
    """Disjoint sets with path compression and union by size.

    Every element carries a parity bit relative to its root, so the structure
    also solves systems of constraints ``x xor y = p``. Plain unions use
    parity 0 and never conflict.
    """

    def __init__(self, items: Iterable[Hashable] = ()):
        self._parent: dict = {}
        self._parity: dict = {}
        self._size: dict = {}
        for x in items:
            self.add(x)

    def add(self, x: Hashable) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self._parity[x] = 0
            self._size[x] = 1

    def __contains__(self, x) -> bool:
        return x in self._parent

    def __len__(self) -> int:
        return len(self._parent)

    def find(self, x: Hashable) -> tuple[Hashable, int]:
        """Return ``(root, parity of x relative to root)``."""
        self.add(x)
        path = []
        while self._parent[x] != x:
            path.append(x)
            x = self._parent[x]
        root = x
        # compress from the node closest to the root outwards
        acc = 0
        for y in reversed(path):
            acc ^= self._parity[y]
            self._parity[y] = acc
            self._parent[y] = root
        return root, (self._parity[path[0]] if path else 0)

    def root(self, x: Hashable) -> Hashable:
        return self.find(x)[0]

    def union(self, x: Hashable, y: Hashable, parity: int = 0) -> bool:
        """Impose ``x xor y = parity``; return False on contradiction."""
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            return (px ^ py) == parity
        if self._size[rx] < self._size[ry]:
            rx, ry = ry, rx
            px, py = py, px
        self._parent[ry] = rx
        self._parity[ry] = px ^ py ^ parity
        self._size[rx] += self._size[ry]
        return True

    def connected(self, x: Hashable, y: Hashable) -> bool:
        return self.root(x) == self.root(y)

    def classes(self) -> list[list]:
        """Equivalence classes, each in insertion order, ordered by first member."""
        groups: dict = {}
        for x in self._parent:
            groups.setdefault(self.root(x), []).append(x)
        return list(groups.values())
