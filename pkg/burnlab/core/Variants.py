# ./burnlab/core/Variants.py

from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence

import networkx as nx

from burnlab.core.BurnEngine import Chooser, LowestIdChooser, burning_number_exact, realize_sequence, validate
from burnlab.utils.config_loader import config
from burnlab.utils.data_class import BurningSequence, BurnResult, RelationCheck, VariantResult
from burnlab.utils.errors import PreconditionError, VerificationError
from burnlab.utils.graph_utils import Graph, line_graph, spike_graph, total_graph
from burnlab.utils.logger import CustomLogger

logger = CustomLogger(__name__).getlog()


def _variant(kind: str, derived: Graph, origin, max_nodes: int = None, max_seconds: float = None,
             threads: int = None) -> VariantResult:
    result = burning_number_exact(derived, max_nodes=max_nodes, max_seconds=max_seconds, threads=threads)
    if not result.exact:
        logger.warning(f"{kind} burning number unresolved: between {result.lower} and {result.upper}")
    return VariantResult(kind=kind, value=result.value, witness=result.witness, origin_map=origin, result=result)


def edge_burning_number(G: Graph, max_nodes: int = None, max_seconds: float = None,
                        threads: int = None) -> VariantResult:
    if G.m == 0:
        raise PreconditionError(f"Edge burning needs at least one edge, got {G}")
    L, origin = line_graph(G)
    return _variant("edge", L, origin, max_nodes, max_seconds, threads)


def total_burning_number(G: Graph, max_nodes: int = None, max_seconds: float = None,
                         threads: int = None) -> VariantResult:
    if G.n == 0:
        raise PreconditionError("Total burning needs a non-empty graph")
    T, origin = total_graph(G)
    return _variant("total", T, origin, max_nodes, max_seconds, threads)


def _by_chooser(candidates: Sequence[int], chooser: Chooser) -> List[int]:
    pool, ordered = list(candidates), []
    while pool:
        pick = chooser.pick(pool)
        ordered.append(pick)
        pool.remove(pick)
    return ordered


def _require_valid(G: Graph, B: BurningSequence, where: str):
    if not validate(G, B):
        raise PreconditionError(f"Input sequence {B.sources} at horizon {B.horizon} is not valid for {where}")


def _checked(H: Graph, B: BurningSequence, where: str) -> BurningSequence:
    if not validate(H, B):
        logger.error(f"Transform produced an invalid sequence on {where}: {B}")
        raise VerificationError(f"Transformed sequence {B.sources} does not burn {where}")
    return B


def line_seq_from_vertex_seq(G: Graph, B: BurningSequence, chooser: Optional[Chooser] = None) -> BurningSequence:
    """Each source hands over to an incident edge; one extra step on L(G)."""
    chooser = chooser or LowestIdChooser()
    _require_valid(G, B, "G")
    L, _ = line_graph(G)
    incident: Dict[int, List[int]] = {v: [] for v in range(G.n)}
    for i, (u, v) in enumerate(G.edges):
        incident[u].append(i)
        incident[v].append(i)
    preferences = [_by_chooser(incident[b], chooser) for b in B.sources]
    return _checked(L, realize_sequence(L, preferences, B.horizon + 1, chooser), "L(G)")


def vertex_seq_from_line_seq(G: Graph, B_L: BurningSequence, chooser: Optional[Chooser] = None) -> BurningSequence:
    """Each edge source hands over to an endpoint; one extra step on G."""
    chooser = chooser or LowestIdChooser()
    L, _ = line_graph(G)
    isolated = [v for v in range(G.n) if G.degree(v) == 0]
    if isolated:
        raise PreconditionError(f"Isolated vertices {isolated} cannot be reached by edge burning")
    _require_valid(L, B_L, "L(G)")
    preferences = [_by_chooser(G.edges[e], chooser) for e in B_L.sources]
    return _checked(G, realize_sequence(G, preferences, B_L.horizon + 1, chooser), "G")


def total_seq_from_vertex_seq(G: Graph, B: BurningSequence, chooser: Optional[Chooser] = None) -> BurningSequence:
    chooser = chooser or LowestIdChooser()
    _require_valid(G, B, "G")
    T, _ = total_graph(G)
    preferences = [[b] for b in B.sources]
    return _checked(T, realize_sequence(T, preferences, B.horizon + 1, chooser), "T(G)")


def vertex_seq_from_total_seq(G: Graph, A: BurningSequence, chooser: Optional[Chooser] = None) -> BurningSequence:
    """Vertex sources stay, edge sources move to an endpoint; the horizon is unchanged."""
    chooser = chooser or LowestIdChooser()
    T, origin = total_graph(G)
    _require_valid(T, A, "T(G)")
    preferences = []
    for a in A.sources:
        source = origin[a]
        preferences.append([source.ref] if source.kind == "vertex" else _by_chooser(source.ref, chooser))
    return _checked(G, realize_sequence(G, preferences, A.horizon, chooser), "G")


def line_seq_from_tree_seq(T: Graph, B: BurningSequence, root: int = 0,
                           chooser: Optional[Chooser] = None) -> BurningSequence:
    """Each non-root source hands over to its parent edge, the root to its lowest incident edge; same horizon."""
    chooser = chooser or LowestIdChooser()
    if not T.is_tree() or T.n < 2:
        raise PreconditionError(f"Expected a tree with at least one edge, got {T}")
    if not 0 <= root < T.n:
        raise PreconditionError(f"Root {root} is not a vertex of {T}")
    _require_valid(T, B, "T")
    L, _ = line_graph(T)
    parent = dict(nx.bfs_predecessors(T.to_networkx(), root))
    preferences = []
    for z in B.sources:
        if z == root:
            edge = min(T.edge_index[(min(root, w), max(root, w))] for w in T.neighbors(root))
        else:
            edge = T.edge_index[(min(z, parent[z]), max(z, parent[z]))]
        preferences.append([edge])
    return _checked(L, realize_sequence(L, preferences, B.horizon, chooser), "L(T)")


def _exact_worker(args) -> BurnResult:
    G, max_nodes, max_seconds = args
    return burning_number_exact(G, max_nodes=max_nodes, max_seconds=max_seconds, threads=1)


def _status(holds: Optional[bool]) -> str:
    if holds is None:
        return "unverified"
    return "pass" if holds else "fail"


def verify_relations(G: Graph, max_nodes: int = None, max_seconds: float = None,
                     threads: int = None) -> List[RelationCheck]:
    """Compute b, b_L, b_T and b_T of the spike graph independently and check how they relate."""
    if G.n == 0 or not G.is_connected():
        raise PreconditionError(f"Relations are checked on connected graphs only, got {G}")
    threads = threads or config.threads()
    derived = {"b": G, "b_T": total_graph(G)[0], "b_T_spike": total_graph(spike_graph(G)[0])[0]}
    if G.m:
        derived["b_L"] = line_graph(G)[0]
    names = list(derived)
    jobs = [(derived[name], max_nodes, max_seconds) for name in names]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as executor:
            outcomes = list(executor.map(_exact_worker, jobs))
    else:
        outcomes = [_exact_worker(job) for job in jobs]
    values = {name: res.value for name, res in zip(names, outcomes)}
    logger.info(f"Relation values for {G}: {values}")

    def check(relation, lhs, rhs, needed, test) -> RelationCheck:
        if any(values.get(x) is None for x in needed):
            holds = None
        else:
            holds = test(*(values[x] for x in needed))
        return RelationCheck(relation=relation, lhs=lhs, rhs=rhs, status=_status(holds),
                             values={x: values.get(x) for x in needed})

    checks = []
    if G.m:
        checks.append(check("edge_lower", "b(G) - 1", "b_L(G)", ["b", "b_L"], lambda b, bl: b - 1 <= bl))
        checks.append(check("edge_upper", "b_L(G)", "b(G) + 1", ["b", "b_L"], lambda b, bl: bl <= b + 1))
        if G.is_tree():
            checks.append(check("tree_edge", "b_L(T)", "b(T)", ["b", "b_L"], lambda b, bl: bl <= b))
    checks.append(check("total_lower", "b(G)", "b_T(G)", ["b", "b_T"], lambda b, bt: b <= bt))
    checks.append(check("total_upper", "b_T(G)", "b(G) + 1", ["b", "b_T"], lambda b, bt: bt <= b + 1))
    checks.append(check("spike_total", "b_T(G_s)", "b(G) + 1", ["b", "b_T_spike"], lambda b, bs: bs == b + 1))
    failed = [c.relation for c in checks if c.status == "fail"]
    if failed:
        logger.error(f"Relations failed on {G}: {failed}")
    return checks


class Variants:
    def __init__(self, max_nodes: int = None, max_seconds: float = None, threads: int = None):
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.threads = threads

    def edge(self, G: Graph) -> VariantResult:
        return edge_burning_number(G, self.max_nodes, self.max_seconds, self.threads)

    def total(self, G: Graph) -> VariantResult:
        return total_burning_number(G, self.max_nodes, self.max_seconds, self.threads)

    def relations(self, G: Graph) -> List[RelationCheck]:
        return verify_relations(G, self.max_nodes, self.max_seconds, self.threads)
