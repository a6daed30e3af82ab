"""Qubit connectivity graphs with precomputed all-pairs distances.

Provides the standard coupling layouts (line, cycle, grid) plus arbitrary
edge lists.  Distance queries are O(1) table lookups; shortest paths are
recomputed by BFS with a deterministic tie-break so that compiled output
is stable across runs.
"""

from collections import deque

import numpy as np


def _normalize_edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


class Topology:
    """Undirected, connected, simple qubit graph.

    All-pairs hop distances are computed once at construction (BFS from
    every vertex); they are the hot query during annealing.
    """

    def __init__(self, num_qubits: int, edges):
        if num_qubits < 1:
            raise ValueError(f"num_qubits must be >= 1, got {num_qubits}")
        edge_set: set[tuple[int, int]] = set()
        for a, b in edges:
            if not (0 <= a < num_qubits and 0 <= b < num_qubits):
                raise ValueError(f"edge ({a},{b}) out of range for {num_qubits} qubits")
            if a == b:
                raise ValueError(f"self-loop ({a},{a}) not allowed")
            edge_set.add(_normalize_edge(a, b))
        self.num_qubits = num_qubits
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edge_set))
        self._edge_lookup = frozenset(self.edges)
        adj: list[list[int]] = [[] for _ in range(num_qubits)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        self._adj = [sorted(ns) for ns in adj]
        self._dist = self._bfs_all_pairs()
        if int(self._dist.max(initial=0)) >= num_qubits and num_qubits > 1:
            raise ValueError("topology must be connected")

    def _bfs_all_pairs(self) -> np.ndarray:
        n = self.num_qubits
        dist = np.full((n, n), n, dtype=np.int64)  # n == unreachable sentinel
        for src in range(n):
            dist[src, src] = 0
            queue = deque([src])
            while queue:
                u = queue.popleft()
                for v in self._adj[u]:
                    if dist[src, v] == n:
                        dist[src, v] = dist[src, u] + 1
                        queue.append(v)
        return dist

    # -- constructions -------------------------------------------------

    @classmethod
    def line(cls, n: int) -> "Topology":
        """Path 0-1-...-(n-1)."""
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Topology":
        """Ring of n >= 3 qubits."""
        if n < 3:
            raise ValueError(f"cycle needs n >= 3, got {n}")
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def grid(cls, rows: int, cols: int) -> "Topology":
        """rows x cols mesh; qubit (r, c) has index r*cols + c."""
        if rows < 1 or cols < 1:
            raise ValueError("grid needs rows, cols >= 1")
        edges = []
        for r in range(rows):
            for c in range(cols):
                q = r * cols + c
                if c < cols - 1:
                    edges.append((q, q + 1))
                if r < rows - 1:
                    edges.append((q, q + cols))
        return cls(rows * cols, edges)

    @classmethod
    def from_edges(cls, n: int, edge_list) -> "Topology":
        return cls(n, edge_list)

    # -- queries -------------------------------------------------------

    def distance(self, i: int, j: int) -> int:
        """Graph distance in hops."""
        return int(self._dist[i, j])

    @property
    def dist(self) -> np.ndarray:
        """Read-only all-pairs distance matrix."""
        view = self._dist.view()
        view.flags.writeable = False
        return view

    def neighbors(self, q: int) -> list[int]:
        return self._adj[q]

    def has_edge(self, i: int, j: int) -> bool:
        return _normalize_edge(i, j) in self._edge_lookup

    def shortest_path(self, i: int, j: int) -> list[int]:
        """A shortest path [i, ..., j].

        BFS explores neighbours in ascending qubit index, which fixes the
        path deterministically among equal-length candidates.
        """
        if i == j:
            return [i]
        parent = {i: -1}
        queue = deque([i])
        while queue:
            u = queue.popleft()
            for v in self._adj[u]:
                if v not in parent:
                    parent[v] = u
                    if v == j:
                        path = [j]
                        while path[-1] != i:
                            path.append(parent[path[-1]])
                        path.reverse()
                        return path
                    queue.append(v)
        raise ValueError(f"no path between {i} and {j}")  # unreachable: connected

    # -- equality / serialization -------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Topology):
            return NotImplemented
        return self.num_qubits == other.num_qubits and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.num_qubits, self.edges))

    def __repr__(self) -> str:
        return f"Topology({self.num_qubits} qubits, {len(self.edges)} edges)"

    def to_dict(self) -> dict:
        return {"qubits": self.num_qubits, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "Topology":
        return cls(data["qubits"], [tuple(e) for e in data["edges"]])


def parse_topology(spec: str) -> Topology:
    """Parse a shorthand string: ``line:N``, ``cycle:N`` or ``grid:RxC``."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "line":
            return Topology.line(int(arg))
        if kind == "cycle":
            return Topology.cycle(int(arg))
        if kind == "grid":
            rows, cols = arg.lower().split("x")
            return Topology.grid(int(rows), int(cols))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bad topology spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown topology spec {spec!r} (expected line:N, cycle:N or grid:RxC)")
