"""End-to-end solvers.

A run reduces the input to a trace of irreducible leaves, solves each
leaf (exactly when small enough, through a path-cycle cover otherwise),
and lifts the leaf trees back through the trace.  verify_run replays a
retained run against the structural predicates and, when the pieces are
small enough, against brute force.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cover import Cover, compute_pi_pairs, preferred_tfpcc
from .errors import BadParams, DisconnectedInput, InternalInvariant
from .exact import TreeResult, max_tfpcc_exact, opt_spanning_tree
from .graph import Graph
from .preprocess import (
    check_dead_four_paths_pendant_ends,
    check_four_cycles_three_ports,
    check_pairs_off_cycles,
    check_port_neighbor_growth,
    check_short_paths_alive,
    cycle_port_properties,
    preprocess,
)
from .reduce import RULESETS, ReductionTrace, reduce_to_fixpoint
from .transform import (
    TransformState,
    build_tree_simple,
    check_stage2_structure,
    run_transform,
)


@dataclass(frozen=True)
class SizeCaps:
    ost: int = 12  # exact spanning-tree search
    ham: int = 10  # Hamiltonian-path search
    tfpcc: int = 16  # exact cover search
    base: int = 8  # leaves up to this order are solved exactly


@dataclass
class LeafSolve:
    node: int
    graph: Graph
    method: str  # "exact" | "cover"
    tree: TreeResult
    cover_edges: int
    pairs: tuple = ()
    base_cover: Cover | None = None
    pre_cover: Cover | None = None
    state: TransformState | None = None

    @property
    def bound(self) -> int:
        """Upper bound on the best spanning-tree weight of this leaf."""
        return self.cover_edges if self.method == "cover" else self.tree.weight


@dataclass
class RunReport:
    mode: str
    graph: Graph
    tree: TreeResult
    trace: ReductionTrace
    leaves: list[LeafSolve]
    upper_bound: int
    retained: bool


def _solve_leaf(h: Graph, idx: int, mode: str, caps: SizeCaps, keep: bool) -> LeafSolve:
    if h.n_alive() <= caps.base:
        t = opt_spanning_tree(h, cap=caps.ost)
        return LeafSolve(idx, h, "exact", t, 0)
    pairs = ()
    if mode == "refined":
        pairs = tuple(compute_pi_pairs(h, strict=True))
        cover0 = preferred_tfpcc(h, cap=caps.tfpcc, strict=True)
    else:
        cover0 = max_tfpcc_exact(h, cap=caps.tfpcc)
    e0 = cover0.edge_count()
    pre = preprocess(cover0, h, mode)
    if pre.edge_count() != e0:
        raise InternalInvariant("preprocessing changed the cover size")
    if mode == "refined":
        state = run_transform(pre, h)
        tree = state.tree
    else:
        state = None
        tree = build_tree_simple(pre, h)
        if 4 * tree.weight < 3 * e0:
            raise InternalInvariant(
                f"weight {tree.weight} below three quarters of {e0} cover edges"
            )
    leaf = LeafSolve(idx, h, "cover", tree, e0, pairs)
    if keep:
        leaf.base_cover = cover0
        leaf.pre_cover = pre
        leaf.state = state
    return leaf


def run(g: Graph, mode: str, caps: SizeCaps = SizeCaps(), keep_state: bool = False) -> RunReport:
    if mode not in RULESETS:
        raise BadParams(f"unknown mode {mode!r}")
    if g.n_alive() == 0:
        raise BadParams("empty graph")
    if not g.is_connected():
        raise DisconnectedInput("input graph is not connected")
    trace = reduce_to_fixpoint(g, mode)
    leaves = []
    leaf_trees = {}
    for idx in trace.leaves():
        leaf = _solve_leaf(trace.nodes[idx].graph, idx, mode, caps, keep_state)
        leaves.append(leaf)
        leaf_trees[idx] = leaf.tree
    tree = trace.lift_all(leaf_trees)
    upper = sum(leaf.bound for leaf in leaves) + trace.weak_constant_total()
    if tree.weight > upper:
        raise InternalInvariant(f"weight {tree.weight} above upper bound {upper}")
    return RunReport(mode, g.copy(), tree, trace, leaves, upper, keep_state)


def solve_simple(g: Graph) -> TreeResult:
    """Spanning tree with at least three quarters of the best weight."""
    return run(g, "simple").tree


def solve_refined(g: Graph) -> TreeResult:
    """Spanning tree with at least 13/17 of the best weight."""
    return run(g, "refined").tree


# -- verification ------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]
    opt: int | None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failing(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]


_RATIOS = {"simple": (3, 4), "refined": (13, 17)}


def verify_run(g: Graph, report: RunReport, caps: SizeCaps = SizeCaps()) -> VerificationReport:
    """Re-check every guarantee a run makes, from its retained state."""
    if not report.retained:
        raise BadParams("verification needs a run with keep_state=True")
    checks: list[Check] = []

    def add(name: str, violations) -> None:
        if isinstance(violations, list):
            ok, detail = not violations, "; ".join(violations[:4])
        else:
            ok, detail = violations, ""
        checks.append(Check(name, ok, detail))

    tree = report.tree
    add("tree-spans-input", _spans(tree, g))
    add("weight-below-upper-bound", tree.weight <= report.upper_bound)

    for leaf in report.leaves:
        if leaf.method != "cover":
            continue
        tag = f"leaf{leaf.node}"
        h, pre = leaf.graph, leaf.pre_cover
        add(f"{tag}-short-paths-alive", check_short_paths_alive(pre, h))
        add(f"{tag}-port-neighbor-growth", check_port_neighbor_growth(pre, h))
        if report.mode == "refined":
            add(f"{tag}-pairs-off-cycles", check_pairs_off_cycles(pre, leaf.pairs))
            add(
                f"{tag}-dead-4-path-ends",
                check_dead_four_paths_pendant_ends(pre, h),
            )
            add(f"{tag}-4-cycle-ports", check_four_cycles_three_ports(pre, h))
            cyc = []
            for comp in pre.components():
                if comp.kind == "cycle":
                    cyc.extend(cycle_port_properties(h, comp))
            add(f"{tag}-cycle-ports", cyc)
            st = leaf.state
            if st.stats is None:
                add(
                    f"{tag}-spanning-path",
                    leaf.tree.weight == h.n_alive() - 2,
                )
            else:
                add(
                    f"{tag}-stage2-structure",
                    check_stage2_structure(st.cover2, h, st.base_edges),
                )
                add(
                    f"{tag}-stage2-floor",
                    leaf.tree.weight >= st.stats.tree_floor,
                )
        else:
            add(f"{tag}-cover-ratio", 4 * leaf.tree.weight >= 3 * leaf.cover_edges)
        if h.n_alive() <= caps.ost:
            opt_leaf = opt_spanning_tree(h, cap=caps.ost).weight
            add(f"{tag}-cover-bounds-opt", leaf.cover_edges >= opt_leaf)
            num, den = _RATIOS[report.mode]
            add(f"{tag}-ratio", den * leaf.tree.weight >= num * opt_leaf)
            if report.mode == "refined" and leaf.state.stats is not None:
                st = leaf.state
                add(f"{tag}-opt-cap-edges", opt_leaf <= st.stats.opt_cap_edges)
                add(
                    f"{tag}-opt-cap-internal",
                    opt_leaf <= st.stats.opt_cap_internal,
                )

    opt = None
    if g.n_alive() <= caps.ost:
        opt = opt_spanning_tree(g, cap=caps.ost).weight
        add("opt-below-upper-bound", opt <= report.upper_bound)
        add("weight-at-most-opt", tree.weight <= opt)
        num, den = _RATIOS[report.mode]
        add("ratio", den * tree.weight >= num * opt)
    return VerificationReport(tuple(checks), opt)


def _spans(t: TreeResult, g: Graph) -> bool:
    verts = set(g.alive_list())
    seen = set()
    for u, v in t.edges:
        if not g.has_edge(u, v):
            return False
        seen.update((u, v))
    if len(t.edges) != len(verts) - 1:
        return False
    return len(verts) == 1 or seen == verts
