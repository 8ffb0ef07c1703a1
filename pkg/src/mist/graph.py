"""Undirected simple graphs over dense integer ids.

Vertices are integers 0..vertex_count-1 with an alive mask, so deletions
keep the ids of the survivors stable and edge witnesses stay valid across
reduction steps.  Adjacency lists are kept sorted; every traversal below
visits vertices and edges in ascending order, which makes the whole
package deterministic.
"""

from __future__ import annotations

from bisect import bisect_left, insort

from .errors import InternalInvariant

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    """Return the edge as a (min, max) tuple."""
    return (u, v) if u < v else (v, u)


class Graph:
    __slots__ = ("vertex_count", "alive", "adj")

    def __init__(self, vertex_count: int, edges: list[Edge] | tuple = ()):
        if vertex_count < 0:
            raise InternalInvariant("negative vertex count")
        self.vertex_count = vertex_count
        self.alive = [True] * vertex_count
        self.adj: list[list[int]] = [[] for _ in range(vertex_count)]
        for u, v in edges:
            self.add_edge(u, v)

    # -- basic queries ------------------------------------------------

    def is_alive(self, v: int) -> bool:
        return 0 <= v < self.vertex_count and self.alive[v]

    def alive_list(self) -> list[int]:
        return [v for v in range(self.vertex_count) if self.alive[v]]

    def n_alive(self) -> int:
        return sum(self.alive)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        return list(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.adj[u]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def edge_list(self) -> list[Edge]:
        out = []
        for u in range(self.vertex_count):
            for v in self.adj[u]:
                if u < v:
                    out.append((u, v))
        return out

    def edge_count(self) -> int:
        return sum(len(row) for row in self.adj) // 2

    # -- mutation ------------------------------------------------------

    def add_vertex(self) -> int:
        v = self.vertex_count
        self.vertex_count += 1
        self.alive.append(True)
        self.adj.append([])
        return v

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise InternalInvariant(f"self loop at {u}")
        if not (self.is_alive(u) and self.is_alive(v)):
            raise InternalInvariant(f"edge {u}-{v} touches a dead vertex")
        if self.has_edge(u, v):
            raise InternalInvariant(f"duplicate edge {u}-{v}")
        insort(self.adj[u], v)
        insort(self.adj[v], u)

    def remove_edge(self, u: int, v: int) -> None:
        if not self.has_edge(u, v):
            raise InternalInvariant(f"missing edge {u}-{v}")
        self.adj[u].remove(v)
        self.adj[v].remove(u)

    def remove_vertex(self, v: int) -> None:
        if not self.is_alive(v):
            raise InternalInvariant(f"vertex {v} already dead")
        for u in list(self.adj[v]):
            self.remove_edge(u, v)
        self.alive[v] = False

    def copy(self) -> Graph:
        g = Graph(0)
        g.vertex_count = self.vertex_count
        g.alive = list(self.alive)
        g.adj = [list(row) for row in self.adj]
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.alive_list() == other.alive_list()
            and self.edge_list() == other.edge_list()
        )

    def __hash__(self):
        return hash((tuple(self.alive_list()), tuple(self.edge_list())))

    def __repr__(self):
        return f"Graph(alive={self.alive_list()}, edges={self.edge_list()})"

    # -- connectivity --------------------------------------------------

    def is_connected(self) -> bool:
        verts = self.alive_list()
        if len(verts) <= 1:
            return True
        return len(component_of(self, verts[0])) == len(verts)


def component_of(g: Graph, start: int, blocked: frozenset[int] = frozenset()) -> list[int]:
    """Sorted vertex list of the component containing start, avoiding blocked vertices."""
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in g.adj[u]:
            if v not in seen and v not in blocked:
                seen.add(v)
                stack.append(v)
    return sorted(seen)


def connected_components(g: Graph, blocked: frozenset[int] = frozenset()) -> list[list[int]]:
    """Components of g minus the blocked vertices, ordered by smallest member."""
    out = []
    seen: set[int] = set()
    for v in range(g.vertex_count):
        if g.alive[v] and v not in seen and v not in blocked:
            comp = component_of(g, v, blocked)
            seen.update(comp)
            out.append(comp)
    return out


def find_bridges(g: Graph) -> set[Edge]:
    """All bridge edges, via an iterative lowpoint traversal."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: set[Edge] = set()
    timer = 0
    for root in g.alive_list():
        if root in disc:
            continue
        # stack holds (vertex, parent, iterator index into adj)
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, 0)]
        while stack:
            u, parent, i = stack.pop()
            if i < len(g.adj[u]):
                stack.append((u, parent, i + 1))
                v = g.adj[u][i]
                if v == parent:
                    # skip one parent occurrence; multigraphs never arise here
                    continue
                if v in disc:
                    low[u] = min(low[u], disc[v])
                else:
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, u, 0))
            else:
                if parent != -1:
                    low[parent] = min(low[parent], low[u])
                    if low[u] > disc[parent]:
                        bridges.add(norm_edge(parent, u))
    return bridges


def find_cutpoints(g: Graph) -> list[int]:
    """Sorted list of cut vertices, via the same lowpoint traversal."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cut: set[int] = set()
    timer = 0
    for root in g.alive_list():
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, 0)]
        while stack:
            u, parent, i = stack.pop()
            if i < len(g.adj[u]):
                stack.append((u, parent, i + 1))
                v = g.adj[u][i]
                if v == parent:
                    continue
                if v in disc:
                    low[u] = min(low[u], disc[v])
                else:
                    if u == root:
                        root_children += 1
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, u, 0))
            else:
                if parent != -1:
                    low[parent] = min(low[parent], low[u])
                    if parent != root and low[u] >= disc[parent]:
                        cut.add(parent)
        if root_children >= 2:
            cut.add(root)
    return sorted(cut)


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, list[int]]:
    """Subgraph induced on the given vertices, renumbered densely.

    Returns (subgraph, old_ids) where old_ids[new] is the original id.
    """
    old_ids = sorted(vertices)
    pos = {v: i for i, v in enumerate(old_ids)}
    sub = Graph(len(old_ids))
    for v in old_ids:
        if not g.is_alive(v):
            raise InternalInvariant(f"vertex {v} not alive")
        for u in g.adj[v]:
            if v < u and u in pos:
                sub.add_edge(pos[v], pos[u])
    return sub, old_ids
