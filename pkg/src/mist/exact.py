"""Exact solvers used as oracles and as the base case of the pipeline.

All of them are exponential searches with pruning, guarded by explicit
size caps.  They break ties toward smaller vertex ids so repeated runs
return identical answers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cover import Cover
from .errors import (
    DisconnectedInput,
    InternalInvariant,
    PreconditionViolated,
    SizeCapExceeded,
)
from .graph import Edge, Graph, norm_edge


@dataclass(frozen=True)
class TreeResult:
    edges: tuple[Edge, ...]
    weight: int  # number of internal (degree >= 2) vertices
    leaves: tuple[int, ...]


def tree_result(vertices, edges) -> TreeResult:
    """Build a TreeResult, validating that edges form a spanning tree."""
    verts = sorted(vertices)
    pos = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    edges = sorted(norm_edge(u, v) for u, v in edges)
    if len(edges) != n - 1:
        raise InternalInvariant(f"{len(edges)} edges for {n} vertices")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    deg = [0] * n
    for u, v in edges:
        if u not in pos or v not in pos:
            raise InternalInvariant(f"edge {u}-{v} leaves the vertex set")
        ru, rv = find(pos[u]), find(pos[v])
        if ru == rv:
            raise InternalInvariant("cycle in tree edges")
        parent[ru] = rv
        deg[pos[u]] += 1
        deg[pos[v]] += 1
    weight = sum(1 for d in deg if d >= 2)
    leaves = tuple(v for v in verts if deg[pos[v]] <= 1)
    return TreeResult(tuple(edges), weight, leaves)


def tree_vertices(t: TreeResult) -> list[int]:
    verts = set(t.leaves)
    for u, v in t.edges:
        verts.add(u)
        verts.add(v)
    return sorted(verts)


def opt_spanning_tree(g: Graph, cap: int = 12) -> TreeResult:
    """Spanning tree maximizing the number of internal vertices.

    Branch and bound over edges in sorted order: include (if acyclic)
    before exclude (if the rest still spans).  The bound counts vertices
    that can no longer reach degree 2.
    """
    verts = g.alive_list()
    n = len(verts)
    if n == 0:
        raise PreconditionViolated("empty graph")
    if n > cap:
        raise SizeCapExceeded(f"{n} vertices exceeds cap {cap}")
    if not g.is_connected():
        raise DisconnectedInput("opt_spanning_tree needs a connected graph")
    if n == 1:
        return TreeResult((), 0, (verts[0],))
    pos = {v: i for i, v in enumerate(verts)}
    edges = [(pos[u], pos[v]) for u, v in g.edge_list()]
    m = len(edges)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    tdeg = [0] * n
    pdeg = [g.degree(v) for v in verts]  # tree degree plus undecided edges
    chosen: list[tuple[int, int]] = []
    best_w = -1
    best_edges: list[tuple[int, int]] = []

    def spans_without(k):
        p2 = list(range(n))

        def f2(x):
            while p2[x] != x:
                x = p2[x]
            return x

        cnt = n
        for a, b in chosen:
            ra, rb = f2(a), f2(b)
            if ra != rb:
                p2[ra] = rb
                cnt -= 1
        for i in range(k, m):
            ra, rb = f2(edges[i][0]), f2(edges[i][1])
            if ra != rb:
                p2[ra] = rb
                cnt -= 1
        return cnt == 1

    def rec(k):
        nonlocal best_w, best_edges
        if len(chosen) == n - 1:
            w = sum(1 for d in tdeg if d >= 2)
            if w > best_w:
                best_w = w
                best_edges = list(chosen)
            return
        if k == m or m - k < (n - 1) - len(chosen):
            return
        forced = sum(1 for d in pdeg if d <= 1)
        if n - max(forced, 2) <= best_w:
            return
        a, b = edges[k]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            tdeg[a] += 1
            tdeg[b] += 1
            chosen.append((a, b))
            rec(k + 1)
            chosen.pop()
            tdeg[a] -= 1
            tdeg[b] -= 1
            parent[ra] = ra
        pdeg[a] -= 1
        pdeg[b] -= 1
        if spans_without(k + 1):
            rec(k + 1)
        pdeg[a] += 1
        pdeg[b] += 1

    rec(0)
    if best_w < 0:
        raise InternalInvariant("no spanning tree found in a connected graph")
    return tree_result(verts, [(verts[a], verts[b]) for a, b in best_edges])


def hamiltonian_path_between(g: Graph, u: int, v: int, cap: int = 10) -> list[int] | None:
    """First Hamiltonian path from u to v in id order, or None."""
    verts = g.alive_list()
    n = len(verts)
    if n > cap:
        raise SizeCapExceeded(f"{n} vertices exceeds cap {cap}")
    if u == v or not (g.is_alive(u) and g.is_alive(v)):
        raise PreconditionViolated(f"bad endpoints {u}, {v}")
    path = [u]
    seen = {u}

    def rec():
        if len(path) == n:
            return path[-1] == v
        cur = path[-1]
        for w in g.adj[cur]:
            if w in seen or (w == v and len(path) != n - 1):
                continue
            path.append(w)
            seen.add(w)
            if rec():
                return True
            path.pop()
            seen.remove(w)
        return False

    return list(path) if rec() else None


def max_tfpcc_exact(g: Graph, forced_leaves=(), cap: int = 16) -> Cover:
    """Maximum triangle-free path-cycle cover by branch and bound.

    forced_leaves lists vertices whose cover degree must stay at most 1.
    Components track their size through union-find, so an edge closing a
    cycle is allowed only when the component already has 4 vertices or
    more; all shorter cycles are rejected.
    """
    verts = g.alive_list()
    n = len(verts)
    if n > cap:
        raise SizeCapExceeded(f"{n} vertices exceeds cap {cap}")
    pos = {v: i for i, v in enumerate(verts)}
    for v in forced_leaves:
        if not g.is_alive(v):
            raise PreconditionViolated(f"forced leaf {v} is not alive")
    capv = [2] * n
    for v in forced_leaves:
        capv[pos[v]] = 1
    edges = [(pos[u], pos[v]) for u, v in g.edge_list()]
    m = len(edges)
    parent = list(range(n))
    size = [1] * n

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    cdeg = [0] * n
    avail = [g.degree(v) for v in verts]
    chosen: list[tuple[int, int]] = []
    best = -1
    best_set: list[tuple[int, int]] = []

    def rec(k, cur):
        nonlocal best, best_set
        if cur > best:
            best = cur
            best_set = list(chosen)
        if k == m:
            return
        slack = sum(min(capv[x] - cdeg[x], avail[x]) for x in range(n))
        if cur + slack // 2 <= best:
            return
        a, b = edges[k]
        avail[a] -= 1
        avail[b] -= 1
        if cdeg[a] < capv[a] and cdeg[b] < capv[b]:
            ra, rb = find(a), find(b)
            if ra != rb or size[ra] >= 4:
                merged = ra != rb
                if merged:
                    if size[ra] > size[rb]:
                        ra, rb = rb, ra
                    parent[ra] = rb
                    size[rb] += size[ra]
                cdeg[a] += 1
                cdeg[b] += 1
                chosen.append((a, b))
                rec(k + 1, cur + 1)
                chosen.pop()
                cdeg[a] -= 1
                cdeg[b] -= 1
                if merged:
                    parent[ra] = ra
                    size[rb] -= size[ra]
        rec(k + 1, cur)
        avail[a] += 1
        avail[b] += 1

    rec(0, 0)
    return Cover(g, [norm_edge(verts[a], verts[b]) for a, b in best_set])


def path_cover_from_tree(t: TreeResult, g: Graph) -> Cover:
    """Path cover of g obtained by thinning a spanning tree.

    Root the tree at the smallest internal vertex and keep, for every
    vertex with children, only the edge to its smallest child.  The kept
    edges form vertex-disjoint paths with as many edges as the tree has
    internal vertices (or one more when the root is a leaf).
    """
    verts = tree_vertices(t)
    if verts != g.alive_list():
        raise InternalInvariant("tree does not span the host graph")
    if not t.edges:
        return Cover(g, ())
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in t.edges:
        adj[u].append(v)
        adj[v].append(u)
    internal = [v for v in verts if len(adj[v]) >= 2]
    root = internal[0] if internal else verts[0]
    kept = []
    stack = [(root, -1)]
    while stack:
        u, par = stack.pop()
        children = sorted(w for w in adj[u] if w != par)
        if children:
            kept.append(norm_edge(u, children[0]))
            for w in children:
                stack.append((w, u))
    return Cover(g, kept)
