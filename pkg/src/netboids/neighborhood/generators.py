"""Seeded random-graph generators: Erdos-Renyi G(n, M), Watts-Strogatz, Barabasi-Albert."""

from __future__ import annotations

import numpy as np

from netboids import rng as rngmod
from netboids.errors import ConfigError
from netboids.neighborhood.graph import Adjacency


def _generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return rngmod.stream(seed, rngmod.GRAPH)


def gen_er(n: int, m_edges: int, seed) -> Adjacency:
    """Uniform simple graph with exactly ``m_edges`` edges."""
    max_edges = n * (n - 1) // 2
    if n < 0 or m_edges < 0 or m_edges > max_edges:
        raise ConfigError(f"cannot place {m_edges} edges on {n} nodes (max {max_edges})")
    g = _generator(seed)
    iu, ju = np.triu_indices(n, k=1)
    pick = np.sort(g.choice(max_edges, size=m_edges, replace=False))
    return Adjacency(n, zip(iu[pick].tolist(), ju[pick].tolist()))


def gen_ws(n: int, k: int, p_rewire: float, seed) -> Adjacency:
    """Watts-Strogatz small world.

    Each node starts linked to its ``k/2`` nearest ring neighbors on either
    side.  Lattice edges ``(u, u+j)`` are visited in order of ``j`` then
    ``u``; with probability ``p_rewire`` the far endpoint is replaced by a
    uniformly drawn node that is neither ``u`` nor already adjacent to it.
    The edge count stays ``n*k/2`` and every node keeps the ``k/2`` edges it
    originated, so the minimum degree is at least ``k/2``.
    """
    if k < 0 or k % 2 or k >= n:
        raise ConfigError(f"Watts-Strogatz needs even k with 0 <= k < n, got k={k}, n={n}")
    if not 0.0 <= p_rewire <= 1.0:
        raise ConfigError(f"rewiring probability must lie in [0, 1], got {p_rewire}")
    g = _generator(seed)
    nbrs = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, k // 2 + 1):
            v = (u + j) % n
            nbrs[u].add(v)
            nbrs[v].add(u)
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if g.random() >= p_rewire:
                continue
            if len(nbrs[u]) >= n - 1 or v not in nbrs[u]:
                continue
            candidates = [w for w in range(n) if w != u and w not in nbrs[u]]
            w = candidates[int(g.integers(len(candidates)))]
            nbrs[u].discard(v)
            nbrs[v].discard(u)
            nbrs[u].add(w)
            nbrs[w].add(u)
    edges = {(min(a, b), max(a, b)) for a in range(n) for b in nbrs[a]}
    return Adjacency(n, sorted(edges))


def gen_ba(n: int, m0: int, m_per_node: int, seed) -> Adjacency:
    """Barabasi-Albert preferential attachment grown from a complete graph on ``m0`` nodes.

    Each arriving node links to ``m_per_node`` distinct existing nodes drawn
    with probability proportional to their current degree.
    """
    if not (1 <= m_per_node <= m0 <= n):
        raise ConfigError(f"Barabasi-Albert needs 1 <= m_per_node <= m0 <= n, "
                          f"got m_per_node={m_per_node}, m0={m0}, n={n}")
    if m0 < 2 and n > m0:
        raise ConfigError("Barabasi-Albert seed graph needs at least 2 nodes to attach to")
    g = _generator(seed)
    edges = [(i, j) for i in range(m0) for j in range(i + 1, m0)]
    # each node appears once per incident edge, so uniform draws are degree-weighted
    endpoints = [v for e in edges for v in e]
    for new in range(m0, n):
        targets: list[int] = []
        while len(targets) < m_per_node:
            t = endpoints[int(g.integers(len(endpoints)))]
            if t not in targets:
                targets.append(t)
        for t in targets:
            edges.append((t, new))
            endpoints.extend((t, new))
    return Adjacency(n, edges)
