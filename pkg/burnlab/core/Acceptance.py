# ./burnlab/core/Acceptance.py

import time
from typing import Callable, Dict, List, Optional

from tqdm import tqdm

from burnlab.core.BurnEngine import (
    LowestIdChooser,
    RandomChooser,
    bounds,
    burning_number_exact,
    burning_number_oracle,
    path_cycle_sequence,
    validate,
)
from burnlab.core.Gadget import (
    build_gadget,
    caterpillar_preimage,
    certificate_sequence,
    solve_distinct_3partition,
    verify_gadget_structure,
)
from burnlab.core.PkFree import pkfree_sequence
from burnlab.core.Variants import (
    line_seq_from_tree_seq,
    line_seq_from_vertex_seq,
    total_seq_from_vertex_seq,
    vertex_seq_from_line_seq,
    vertex_seq_from_total_seq,
)
from burnlab.utils import generators as gen
from burnlab.utils.config_loader import config
from burnlab.utils.data_class import CriterionResult, ThreePartitionInstance
from burnlab.utils.errors import BudgetExceededError, BurnLabError
from burnlab.utils.graph_utils import Graph, diameter, is_pk_free, line_graph, spike_graph, total_graph
from burnlab.utils.logger import CustomLogger
from burnlab.utils.utils import ceil_sqrt

logger = CustomLogger(__name__).getlog()


class Run:
    """Shared settings for one acceptance run."""

    def __init__(self, seed: int, max_nodes: int, sizes: Optional[Dict[str, int]] = None,
                 max_seconds: float = None):
        self.seed = seed
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.sizes = dict(config.get("corpus", {}))
        self.sizes.update(sizes or {})
        self.expansions = 0

    def size(self, key: str) -> int:
        return int(self.sizes[key])

    def exact(self, G: Graph):
        result = burning_number_exact(G, max_nodes=self.max_nodes, max_seconds=self.max_seconds, threads=1)
        self.expansions += result.expansions
        if not result.exact:
            raise BudgetExceededError(f"{G}: b in [{result.lower}, {result.upper}]")
        return result

    def b(self, G: Graph) -> int:
        return self.exact(G).value

    def corpus(self, count_key: str, max_key: str, offset: int, min_n: int = 1) -> List[Graph]:
        return list(gen.connected_corpus(self.size(count_key), self.size(max_key), self.seed + offset, min_n=min_n))


def _outcome(name: str, failures: List[str], cases: int, started: float) -> CriterionResult:
    status = "pass" if not failures else "fail"
    detail = "; ".join(failures[:5])
    if failures:
        logger.error(f"{name}: {len(failures)} failing cases, first: {detail}")
    return CriterionResult(name=name, status=status, cases=cases, detail=detail,
                           elapsed=time.monotonic() - started)


def path_cycle_law(run: Run) -> CriterionResult:
    started, failures, cases = time.monotonic(), [], 0
    for n in range(1, run.size("path_law_max_n") + 1):
        kinds = [("path", gen.path(n))] + ([("cycle", gen.cycle(n))] if n >= 3 else [])
        for kind, G in kinds:
            cases += 1
            B = path_cycle_sequence(n, kind)
            if B.horizon != ceil_sqrt(n) or not validate(G, B):
                failures.append(f"{kind} n={n}: constructive sequence {B.sources} rejected")
            if n <= run.size("path_law_exact_max_n") and run.b(G) != ceil_sqrt(n):
                failures.append(f"{kind} n={n}: exact value differs from ceil(sqrt(n))")
    return _outcome("path_cycle_law", failures, cases, started)


def oracle_equivalence(run: Run) -> CriterionResult:
    started, failures = time.monotonic(), []
    graphs = run.corpus("oracle_graphs", "oracle_max_n", 1)
    for G in graphs:
        exact, oracle = run.b(G), burning_number_oracle(G)
        if exact != oracle:
            failures.append(f"{G} edges={G.edges}: solver {exact}, oracle {oracle}")
    return _outcome("oracle_equivalence", failures, len(graphs), started)


def edge_sandwich(run: Run) -> CriterionResult:
    started, failures = time.monotonic(), []
    graphs = run.corpus("line_graphs", "line_max_n", 2, min_n=2)
    for G in graphs:
        b, bl = run.b(G), run.b(line_graph(G)[0])
        if not b - 1 <= bl <= b + 1:
            failures.append(f"{G} edges={G.edges}: b={b}, b_L={bl}")
    tight = [(gen.path(5), 3, 2), (gen.path(10), 4, 3), (gen.complete(5), 2, 3)]
    for G, b_expected, bl_expected in tight:
        b, bl = run.b(G), run.b(line_graph(G)[0])
        if (b, bl) != (b_expected, bl_expected):
            failures.append(f"tight case {G}: b={b}, b_L={bl}")
    return _outcome("edge_sandwich", failures, len(graphs) + len(tight), started)


def tree_edge(run: Run) -> CriterionResult:
    started, failures = time.monotonic(), []
    trees = list(gen.tree_corpus(run.size("trees"), run.size("tree_max_n"), run.seed + 3, min_n=2))
    for T in trees:
        result = run.exact(T)
        bl = run.b(line_graph(T)[0])
        if bl > result.value:
            failures.append(f"{T} edges={T.edges}: b={result.value}, b_L={bl}")
        try:
            line_seq_from_tree_seq(T, result.witness)
        except BurnLabError as e:
            failures.append(f"{T}: tree transform failed: {e}")
    return _outcome("tree_edge", failures, len(trees), started)


def total_sandwich(run: Run) -> CriterionResult:
    started, failures = time.monotonic(), []
    graphs = run.corpus("total_graphs", "total_max_n", 4)
    for G in graphs:
        b, bt = run.b(G), run.b(total_graph(G)[0])
        if not b <= bt <= b + 1:
            failures.append(f"{G} edges={G.edges}: b={b}, b_T={bt}")
    return _outcome("total_sandwich", failures, len(graphs), started)


def spike_total(run: Run) -> CriterionResult:
    started, failures = time.monotonic(), []
    graphs = run.corpus("spike_graphs", "spike_max_n", 5) + [gen.cycle(4)]
    for G in graphs:
        b, bs = run.b(G), run.b(total_graph(spike_graph(G)[0])[0])
        if bs != b + 1:
            failures.append(f"{G} edges={G.edges}: b={b}, b_T(spike)={bs}")
    return _outcome("spike_total", failures, len(graphs), started)


def transform_soundness(run: Run) -> CriterionResult:
    started, failures, cases = time.monotonic(), [], 0
    graphs = run.corpus("line_graphs", "line_max_n", 2) + run.corpus("total_graphs", "total_max_n", 4)
    choosers = [("lowest", lambda: LowestIdChooser()), ("random", lambda: RandomChooser(run.seed))]
    for G in graphs:
        witness = run.exact(G).witness
        T = total_graph(G)[0]
        total_witness = run.exact(T).witness
        line_witness = run.exact(line_graph(G)[0]).witness if G.m else None
        for label, make in choosers:
            steps = [("total_from_vertex", lambda: total_seq_from_vertex_seq(G, witness, make())),
                     ("vertex_from_total", lambda: vertex_seq_from_total_seq(G, total_witness, make()))]
            if G.m:
                steps.append(("line_from_vertex", lambda: line_seq_from_vertex_seq(G, witness, make())))
                if all(G.degree(v) for v in range(G.n)):
                    steps.append(("vertex_from_line", lambda: vertex_seq_from_line_seq(G, line_witness, make())))
            for name, step in steps:
                cases += 1
                try:
                    step()
                except BurnLabError as e:
                    failures.append(f"{name}/{label} on {G} edges={G.edges}: {e}")
    return _outcome("transform_soundness", failures, cases, started)


def pkfree_bound(run: Run) -> CriterionResult:
    started, failures, cases = time.monotonic(), [], 0
    for G in run.corpus("pkfree_graphs", "pkfree_max_n", 6):
        for k in range(4, 2 * ceil_sqrt(G.n) + 1):
            if not is_pk_free(G, k):
                continue
            cases += 1
            try:
                B = pkfree_sequence(G, k)
            except BurnLabError as e:
                failures.append(f"{G} edges={G.edges} k={k}: {e}")
                continue
            if B.horizon > (k + 2) // 2:
                failures.append(f"{G} k={k}: horizon {B.horizon} above bound")
    gt = gen.gtilde()
    cases += 1
    if run.b(gt) != 4 or pkfree_sequence(gt, 6).horizon > 4:
        failures.append("gtilde: expected b = 4 with a sequence of horizon <= 4 at k = 6")
    for r in (2, 3, 4):
        cases += 1
        spider = gen.spider(r)
        if not is_pk_free(spider, 2 * r) or run.b(spider) != r:
            failures.append(f"spider r={r}: expected P_{2 * r}-free with b = {r}")
    return _outcome("pkfree_bound", failures, cases, started)


def gadget_instances(run: Run) -> CriterionResult:
    started, failures = time.monotonic(), []
    instances = config.get("gadget.yes_instances", [[4, 5, 6]])
    for values in instances:
        X = ThreePartitionInstance(values=tuple(values))
        partition = solve_distinct_3partition(X)
        if partition is None:
            failures.append(f"{values}: oracle found no partition")
            continue
        G, meta = build_gadget(X)
        horizon = 2 * meta.m + 1
        if meta.spine_length != horizon ** 2:
            failures.append(f"{values}: spine {meta.spine_length}")
        broken = [c.name for c in verify_gadget_structure(G, meta) if not c.passed]
        if broken:
            failures.append(f"{values}: structure checks failed {broken}")
        try:
            certificate_sequence(X, partition, meta, G)
            T, _ = caterpillar_preimage(G, meta)
        except BurnLabError as e:
            failures.append(f"{values}: {e}")
            continue
        if T.max_degree() > 3:
            failures.append(f"{values}: caterpillar degree {T.max_degree()}")
        lower = bounds(G).lower
        if lower != horizon:
            failures.append(f"{values}: ball-counting lower bound {lower}, expected {horizon}")
    return _outcome("gadget_instances", failures, len(instances), started)


def interval_bounds(run: Run) -> CriterionResult:
    started, failures = time.monotonic(), []
    max_n = run.size("interval_max_n")
    graphs = [gen.path(n) for n in range(1, max_n + 1)]
    graphs += [G for G, _ in gen.interval_corpus(run.size("interval_graphs"), max_n, run.seed + 7)]
    rng_seed = run.seed + 8
    for i in range(run.size("interval_graphs")):
        G = gen.caterpillar(1 + i % 5, seed=rng_seed + i)
        if G.n <= max_n:
            graphs.append(G)
    for G in graphs:
        d = diameter(G)
        b = run.b(G)
        if not ceil_sqrt(d + 1) <= b <= ceil_sqrt(d + 1) + 1:
            failures.append(f"{G} edges={G.edges}: b={b}, d={d}")
    return _outcome("interval_bounds", failures, len(graphs), started)


def sqrt_conjecture(run: Run) -> CriterionResult:
    started, failures = time.monotonic(), []
    graphs = run.corpus("conjecture_graphs", "conjecture_max_n", 9)
    for G in graphs:
        b = run.b(G)
        if b > ceil_sqrt(G.n):
            failures.append(f"COUNTEREXAMPLE {G} edges={G.edges}: b={b} > {ceil_sqrt(G.n)}")
    return _outcome("sqrt_conjecture", failures, len(graphs), started)


criterion_map: Dict[str, Callable[[Run], CriterionResult]] = {
    "path_cycle_law": path_cycle_law,
    "oracle_equivalence": oracle_equivalence,
    "edge_sandwich": edge_sandwich,
    "tree_edge": tree_edge,
    "total_sandwich": total_sandwich,
    "spike_total": spike_total,
    "transform_soundness": transform_soundness,
    "pkfree_bound": pkfree_bound,
    "gadget_instances": gadget_instances,
    "interval_bounds": interval_bounds,
    "sqrt_conjecture": sqrt_conjecture,
}


def criterion_mapper(name: str) -> Callable[[Run], CriterionResult]:
    if name not in criterion_map:
        raise NotImplementedError(f"Acceptance criterion {name} not found!")
    return criterion_map[name]


def run_criterion(name: str, run: Run) -> CriterionResult:
    started = time.monotonic()
    try:
        return criterion_mapper(name)(run)
    except BudgetExceededError as e:
        logger.warning(f"{name}: budget exhausted ({e})")
        return CriterionResult(name=name, status="unverified", detail=str(e), elapsed=time.monotonic() - started)


def run_all(run: Run, only: Optional[List[str]] = None, progress: bool = True) -> List[CriterionResult]:
    names = only or list(criterion_map)
    results = []
    for name in tqdm(names, desc="verify-all", disable=not progress):
        result = run_criterion(name, run)
        logger.info(f"{name}: {result.status} ({result.cases} cases, {result.elapsed:.1f}s)")
        results.append(result)
    return results
