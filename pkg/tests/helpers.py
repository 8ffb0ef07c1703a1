"""Naive reference implementations the tests compare against.

Everything here trades speed for obviousness: removal-and-recount for
bridges and cut-points, raw enumeration for optima.  None of it shares
code with the library, so a bug cannot hide on both sides at once.
"""

from __future__ import annotations

import heapq
import random
from itertools import combinations, permutations

from mist import Graph, norm_edge


def build_graph(n: int, edges) -> Graph:
    return Graph(n, [norm_edge(u, v) for u, v in edges])


def _component_count(n, edges, skip_vertex=None, skip_edge=None):
    adj = {v: [] for v in range(n) if v != skip_vertex}
    banned = norm_edge(*skip_edge) if skip_edge else None
    for u, v in edges:
        if skip_vertex in (u, v) or norm_edge(u, v) == banned:
            continue
        adj[u].append(v)
        adj[v].append(u)
    seen = set()
    count = 0
    for start in adj:
        if start in seen:
            continue
        count += 1
        seen.add(start)
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return count


def naive_bridges(n, edges):
    base = _component_count(n, edges)
    return {
        norm_edge(u, v)
        for u, v in edges
        if _component_count(n, edges, skip_edge=(u, v)) > base
    }


def naive_cutpoints(n, edges):
    base = _component_count(n, edges)
    return [
        v for v in range(n) if _component_count(n, edges, skip_vertex=v) > base
    ]


def _internal_count(n, subset):
    """Internal-vertex count if subset is a spanning tree of n vertices."""
    if len(subset) != max(n - 1, 0):
        return None
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    deg = [0] * n
    for u, v in subset:
        ru, rv = find(u), find(v)
        if ru == rv:
            return None
        parent[ru] = rv
        deg[u] += 1
        deg[v] += 1
    return sum(1 for d in deg if d >= 2)


def brute_opt_tree(n, edges):
    """Maximum internal count over all spanning trees, by enumeration."""
    best = -1
    for subset in combinations(edges, max(n - 1, 0)):
        w = _internal_count(n, subset)
        if w is not None and w > best:
            best = w
    return best


def brute_tfpcc(n, edges):
    """Largest edge set with all degrees <= 2 and no cycle shorter than 4."""
    edges = sorted(norm_edge(u, v) for u, v in edges)
    m = len(edges)
    deg = [0] * n
    chosen: list[tuple[int, int]] = []
    best = 0

    def cycles_ok():
        adj = {}
        for u, v in chosen:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        seen = set()
        for start in adj:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            ne = sum(len(adj[v]) for v in comp) // 2
            if ne == len(comp) and len(comp) < 4:
                return False
        return True

    def rec(k):
        nonlocal best
        if len(chosen) + (m - k) <= best:
            return
        if k == m:
            if cycles_ok():
                best = max(best, len(chosen))
            return
        u, v = edges[k]
        if deg[u] < 2 and deg[v] < 2:
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v))
            rec(k + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
        rec(k + 1)

    rec(0)
    return best


def brute_ham_path(n, edges, a=None, b=None):
    """Whether a Hamiltonian path exists, optionally with fixed endpoints."""
    eset = {norm_edge(u, v) for u, v in edges}
    for perm in permutations(range(n)):
        if a is not None and perm[0] != a:
            continue
        if b is not None and perm[-1] != b:
            continue
        if all(norm_edge(perm[i], perm[i + 1]) in eset for i in range(n - 1)):
            return True
    return False


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform random labeled tree, decoded from a Pruefer sequence."""
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    deg = [1] * n
    for x in seq:
        deg[x] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        a = heapq.heappop(leaves)
        edges.append(norm_edge(a, x))
        deg[a] -= 1
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    a = heapq.heappop(leaves)
    b = heapq.heappop(leaves)
    edges.append(norm_edge(a, b))
    return Graph(n, edges)


def random_connected(n: int, p: float, rng: random.Random) -> Graph:
    """Random tree plus each remaining edge with probability p."""
    g = random_tree(n, rng)
    for u in range(n):
        for v in range(u + 1, n):
            if not g.has_edge(u, v) and rng.random() < p:
                g.add_edge(u, v)
    return g
