"""Immutable undirected simple graphs and their edge-list file format."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from netboids.errors import ConfigError


class Adjacency:
    """Undirected simple graph on nodes ``0..n-1``.

    Edges are stored as sorted ``(i, j)`` pairs with ``i < j``.  A CSR view
    (``indptr``, ``indices``) is built once for the simulation kernels; each
    row lists neighbors in increasing order.
    """

    __slots__ = ("n", "edges", "indptr", "indices")

    def __init__(self, n: int, edges):
        n = int(n)
        if n < 0:
            raise ConfigError(f"node count must be non-negative, got {n}")
        canon = set()
        for e in edges:
            i, j = (int(e[0]), int(e[1]))
            if i == j:
                raise ConfigError(f"self-loop on node {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ConfigError(f"edge ({i}, {j}) has an endpoint outside 0..{n - 1}")
            key = (i, j) if i < j else (j, i)
            if key in canon:
                raise ConfigError(f"duplicate edge ({key[0]}, {key[1]})")
            canon.add(key)
        self.n = n
        self.edges = frozenset(canon)

        rows = [[] for _ in range(n)]
        for i, j in canon:
            rows[i].append(j)
            rows[j].append(i)
        indptr = np.zeros(n + 1, dtype=np.int64)
        for i, r in enumerate(rows):
            r.sort()
            indptr[i + 1] = indptr[i] + len(r)
        indices = np.fromiter((j for r in rows for j in r), dtype=np.int64, count=int(indptr[-1]))
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self.indptr = indptr
        self.indices = indices

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, i: int) -> list[int]:
        return self.indices[self.indptr[i]:self.indptr[i + 1]].tolist()

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def component_count(self) -> int:
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        count = self.n
        for i, j in self.edges:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                count -= 1
        return count

    def __eq__(self, other) -> bool:
        if not isinstance(other, Adjacency):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Adjacency(n={self.n}, m={self.m})"

    @classmethod
    def complete(cls, n: int) -> Adjacency:
        return cls(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def save_edge_list(adj: Adjacency, path) -> None:
    lines = [f"n={adj.n}"] + [f"{i} {j}" for i, j in adj.sorted_edges()]
    Path(path).write_text("\n".join(lines) + "\n")


def load_edge_list(path) -> Adjacency:
    """Parse an edge-list file; invariant violations raise :class:`ConfigError`."""
    path = Path(path)
    lines = [ln.strip() for ln in path.read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise ConfigError(f"{path}: first line must be 'n=<count>'")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise ConfigError(f"{path}: bad node count {lines[0]!r}") from None
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ConfigError(f"{path}:{lineno}: expected 'i j', got {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: non-integer endpoint in {ln!r}") from None
    return Adjacency(n, edges)
