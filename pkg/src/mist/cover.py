"""Path-cycle covers and degree-2 twin pairs.

A Cover is a spanning subgraph of a host graph.  During the approximation
stages its components start as paths and cycles (a triangle-free path-cycle
cover) and later grow into trees, so the component classifier below knows
all three shapes.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass

from .errors import InternalInvariant, PreconditionViolated
from .graph import Edge, Graph, norm_edge


class Cover:
    __slots__ = ("graph", "cadj")

    def __init__(self, graph: Graph, edges=()):
        self.graph = graph
        self.cadj: dict[int, list[int]] = {v: [] for v in graph.alive_list()}
        for u, v in edges:
            self.add_edge(u, v)

    def vertices(self) -> list[int]:
        return sorted(self.cadj)

    def degree(self, v: int) -> int:
        return len(self.cadj[v])

    def neighbors(self, v: int) -> list[int]:
        return list(self.cadj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.cadj[u]

    def add_edge(self, u: int, v: int) -> None:
        if not self.graph.has_edge(u, v):
            raise InternalInvariant(f"cover edge {u}-{v} is not a host edge")
        if self.has_edge(u, v):
            raise InternalInvariant(f"duplicate cover edge {u}-{v}")
        insort(self.cadj[u], v)
        insort(self.cadj[v], u)

    def remove_edge(self, u: int, v: int) -> None:
        if not self.has_edge(u, v):
            raise InternalInvariant(f"missing cover edge {u}-{v}")
        self.cadj[u].remove(v)
        self.cadj[v].remove(u)

    def edge_list(self) -> list[Edge]:
        out = []
        for u in sorted(self.cadj):
            for v in self.cadj[u]:
                if u < v:
                    out.append((u, v))
        return out

    def edge_count(self) -> int:
        return sum(len(row) for row in self.cadj.values()) // 2

    def copy(self) -> Cover:
        c = Cover(self.graph)
        c.cadj = {v: list(row) for v, row in self.cadj.items()}
        return c

    def __eq__(self, other):
        if not isinstance(other, Cover):
            return NotImplemented
        return self.cadj == other.cadj

    def __repr__(self):
        return f"Cover(edges={self.edge_list()})"

    def components(self) -> list[CoverComponent]:
        """Connected components ordered by smallest vertex."""
        seen: set[int] = set()
        out = []
        for start in sorted(self.cadj):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self.cadj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen.update(comp)
            out.append(self._make_component(comp))
        return out

    def component_of(self, v: int) -> CoverComponent:
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in self.cadj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        return self._make_component(comp)

    def _make_component(self, comp: set[int]) -> CoverComponent:
        vertices = tuple(sorted(comp))
        edges = tuple(
            (u, v) for u in vertices for v in self.cadj[u] if u < v and v in comp
        )
        nv, ne = len(vertices), len(edges)
        degs = [len(self.cadj[v]) for v in vertices]
        if ne == nv and all(d == 2 for d in degs):
            kind = "cycle"
            order = self._cycle_order(vertices[0])
        elif ne == nv - 1:
            kind = "path" if all(d <= 2 for d in degs) else "tree"
            order = self._path_order(vertices) if kind == "path" else ()
        else:
            raise InternalInvariant(
                f"component {vertices} has {ne} edges; not a path, cycle or tree"
            )
        leaves = tuple(v for v, d in zip(vertices, degs) if d <= 1)
        internal = tuple(v for v, d in zip(vertices, degs) if d >= 2)
        return CoverComponent(vertices, edges, kind, order, leaves, internal)

    def _cycle_order(self, start: int) -> tuple[int, ...]:
        order = [start, self.cadj[start][0]]
        while True:
            nbrs = self.cadj[order[-1]]
            nxt = nbrs[0] if nbrs[0] != order[-2] else nbrs[1]
            if nxt == start:
                return tuple(order)
            order.append(nxt)

    def _path_order(self, vertices: tuple[int, ...]) -> tuple[int, ...]:
        ends = [v for v in vertices if len(self.cadj[v]) <= 1]
        order = [ends[0]]
        while len(order) < len(vertices):
            nbrs = self.cadj[order[-1]]
            prev = order[-2] if len(order) >= 2 else -1
            order.append(nbrs[0] if nbrs[0] != prev else nbrs[1])
        return tuple(order)


@dataclass(frozen=True)
class CoverComponent:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    kind: str  # "path" | "cycle" | "tree"
    order: tuple[int, ...]  # traversal order for paths and cycles
    leaves: tuple[int, ...]
    internal: tuple[int, ...]

    @property
    def key(self) -> int:
        return self.vertices[0]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def endpoints(self) -> tuple[int, ...]:
        if self.kind != "path":
            raise InternalInvariant(f"endpoints of a {self.kind} component")
        if len(self.order) == 1:
            return (self.order[0],)
        return tuple(sorted((self.order[0], self.order[-1])))

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


def lower_edge_at(cover: Cover, v: int) -> Edge:
    """Smallest cover edge incident to v, as a (min, max) tuple."""
    return min(norm_edge(v, w) for w in cover.neighbors(v))


def component_ports(g: Graph, comp: CoverComponent) -> list[int]:
    """Vertices of the component with a host neighbor outside it."""
    inside = comp.vertex_set()
    return [v for v in comp.vertices if any(u not in inside for u in g.adj[v])]


def path_is_dead(g: Graph, comp: CoverComponent) -> bool:
    """A path component is dead when no endpoint has an outside neighbor."""
    if comp.kind != "path":
        raise InternalInvariant("dead/alive applies to path components")
    inside = comp.vertex_set()
    return not any(
        any(u not in inside for u in g.adj[v]) for v in comp.endpoints
    )


def validate_tfpcc(cover: Cover) -> None:
    """Raise unless the cover is a triangle-free path-cycle cover of its host."""
    alive = cover.graph.alive_list()
    if sorted(cover.cadj) != alive:
        raise InternalInvariant("cover does not span the alive vertices")
    for v, row in cover.cadj.items():
        if len(row) > 2:
            raise InternalInvariant(f"cover degree {len(row)} at {v}")
    for comp in cover.components():
        if comp.kind == "tree" and comp.length > 0:
            raise InternalInvariant(f"non-path tree component {comp.vertices}")
        if comp.kind == "cycle" and comp.length < 4:
            raise InternalInvariant(f"cycle of length {comp.length}")


@dataclass(frozen=True)
class PiPair:
    u1: int
    u3: int
    boundary: tuple[int, int]
    supports: tuple[Edge, ...]


def compute_pi_pairs(g: Graph, strict: bool = True) -> list[PiPair]:
    """Pairs of degree-2 vertices with identical neighborhoods.

    With strict=True this also asserts the caller's preconditions: at
    least nine vertices, no three such twins sharing a neighborhood, and
    every shared neighbor of degree at least 3.  The latter two are
    consequences of irreducibility; inputs violating any of them raise
    PreconditionViolated.
    """
    if strict and g.n_alive() < 9:
        raise PreconditionViolated(f"needs at least 9 vertices, got {g.n_alive()}")
    groups: dict[tuple[int, int], list[int]] = {}
    for v in g.alive_list():
        if g.degree(v) == 2:
            a, b = g.adj[v]
            groups.setdefault((a, b), []).append(v)
    pairs = []
    for key in sorted(groups):
        twins = groups[key]
        if len(twins) < 2:
            continue
        if strict and len(twins) >= 3:
            raise PreconditionViolated(
                f"three twins {twins[:3]} share neighborhood {key}"
            )
        if strict:
            for b in key:
                if g.degree(b) < 3:
                    raise PreconditionViolated(
                        f"boundary vertex {b} has degree {g.degree(b)}"
                    )
        for i in range(len(twins)):
            for j in range(i + 1, len(twins)):
                u1, u3 = twins[i], twins[j]
                supports = tuple(
                    sorted(norm_edge(u, b) for u in (u1, u3) for b in key)
                )
                pairs.append(PiPair(u1, u3, key, supports))
    pairs.sort(key=lambda p: (p.u1, p.u3))
    return pairs


def build_augmented_graph(g: Graph, pairs: list[PiPair]) -> tuple[Graph, dict[tuple[int, int], int]]:
    """Copy of g with one pendant vertex attached to u1 of every pair."""
    g2 = g.copy()
    pendants = {}
    for p in pairs:
        x = g2.add_vertex()
        g2.add_edge(p.u1, x)
        pendants[(p.u1, p.u3)] = x
    return g2, pendants


def is_special(cover: Cover, pairs: list[PiPair]) -> bool:
    """True when every pair has cover degree at most 1 at u1."""
    return all(cover.degree(p.u1) <= 1 for p in pairs)


def preferred_tfpcc(g: Graph, *, cap: int = 16, strict: bool = True) -> Cover:
    """Maximum triangle-free path-cycle cover among the special ones.

    Special means each twin pair keeps cover degree at most 1 at its
    smaller vertex, which the solver enforces as a forced-leaf constraint.
    """
    from .exact import max_tfpcc_exact

    pairs = compute_pi_pairs(g, strict=strict)
    cover = max_tfpcc_exact(g, forced_leaves=[p.u1 for p in pairs], cap=cap)
    if not is_special(cover, pairs):
        raise InternalInvariant("solver returned a non-special cover")
    return cover


def preferred_tfpcc_via_augmented(g: Graph, *, cap: int = 24, strict: bool = True) -> Cover:
    """Preferred cover computed through the pendant-augmented graph.

    Attach a pendant x to u1 of every pair, take a maximum cover of the
    augmented graph, then repair: while some pendant is isolated, u1 must
    have cover degree 2, so swap its lower cover edge for {x, u1}.
    Stripping the pendant edges leaves a special cover of g with the same
    number of non-pendant edges.
    """
    from .exact import max_tfpcc_exact

    pairs = compute_pi_pairs(g, strict=strict)
    g2, pendants = build_augmented_graph(g, pairs)
    aug = max_tfpcc_exact(g2, cap=cap)
    budget = len(pairs) + 1
    while True:
        stale = [
            (key, x) for key, x in sorted(pendants.items()) if aug.degree(x) == 0
        ]
        if not stale:
            break
        budget -= 1
        if budget < 0:
            raise InternalInvariant("pendant repair loop did not settle")
        (u1, _), x = stale[0]
        if aug.degree(u1) != 2:
            raise InternalInvariant(
                f"isolated pendant {x} but u1={u1} has degree {aug.degree(u1)}"
            )
        before = aug.edge_count()
        drop = min(norm_edge(u1, w) for w in aug.neighbors(u1))
        aug.remove_edge(*drop)
        aug.add_edge(u1, x)
        if aug.edge_count() != before:
            raise InternalInvariant("pendant swap changed the edge count")
        validate_tfpcc(aug)
    edges = []
    pendant_ids = set(pendants.values())
    for u, v in aug.edge_list():
        if u in pendant_ids or v in pendant_ids:
            continue
        edges.append((u, v))
    cover = Cover(g, edges)
    if not is_special(cover, pairs):
        raise InternalInvariant("augmented route produced a non-special cover")
    return cover
