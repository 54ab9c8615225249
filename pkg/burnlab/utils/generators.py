# ./burnlab/utils/generators.py

from typing import Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from burnlab.utils.data_class import IntervalModel
from burnlab.utils.errors import PreconditionError
from burnlab.utils.graph_utils import Graph, build_graph, from_networkx, spike_graph


def _require(condition: bool, message: str):
    if not condition:
        raise PreconditionError(message)


def _rng(seed: Optional[int]) -> np.random.Generator:
    _require(seed is not None, "Random graph families need an explicit seed")
    return np.random.default_rng(int(seed) & (2**64 - 1))


def path(n: int) -> Graph:
    _require(n >= 1, f"path needs n >= 1, got {n}")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    _require(n >= 1, f"complete needs n >= 1, got {n}")
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    _require(leaves >= 1, f"star needs at least one leaf, got {leaves}")
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    _require(a >= 1 and b >= 1, f"complete_bipartite needs both sides non-empty, got {a}, {b}")
    return build_graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def spider(r: int) -> Graph:
    """Centre 0 with r legs of r-1 vertices each."""
    _require(r >= 2, f"spider needs r >= 2, got {r}")
    edges, labels = [], ["center"]
    nxt = 1
    for _ in range(r):
        prev = 0
        for _ in range(r - 1):
            edges.append((prev, nxt))
            labels.append("leg")
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges, labels)


def gtilde() -> Graph:
    """K_{4,4} on x0..x3 (0..3) and y0..y3 (4..7), one pendant 8+i on every core vertex i."""
    edges = [(x, 4 + y) for x in range(4) for y in range(4)]
    edges += [(i, 8 + i) for i in range(8)]
    labels = ["x"] * 4 + ["y"] * 4 + ["pendant"] * 8
    return build_graph(16, edges, labels)


def caterpillar(spine: int, legs: Optional[Sequence[int]] = None, seed: Optional[int] = None,
                max_legs: int = 2) -> Graph:
    """Stem 0..spine-1; legs[i] leaves hang off stem vertex i (random up to max_legs when legs is None)."""
    _require(spine >= 1, f"caterpillar needs a stem of at least one vertex, got {spine}")
    if legs is None:
        legs = [int(x) for x in _rng(seed).integers(0, max_legs + 1, size=spine)]
    _require(len(legs) == spine, f"Expected {spine} leg counts, got {len(legs)}")
    _require(all(x >= 0 for x in legs), "Leg counts must be non-negative")
    edges = [(i, i + 1) for i in range(spine - 1)]
    labels = ["stem"] * spine
    nxt = spine
    for i, count in enumerate(legs):
        for _ in range(count):
            edges.append((i, nxt))
            labels.append("leaf")
            nxt += 1
    return build_graph(nxt, edges, labels)


def random_tree(n: int, seed: Optional[int] = None) -> Graph:
    _require(n >= 1, f"random_tree needs n >= 1, got {n}")
    rng = _rng(seed)
    if n <= 2:
        return path(n)
    prufer = [int(x) for x in rng.integers(0, n, size=n - 2)]
    tree, _ = from_networkx(nx.from_prufer_sequence(prufer))
    return tree


def random_connected(n: int, seed: Optional[int] = None, p: Optional[float] = None) -> Graph:
    """A random spanning tree plus every other pair independently with probability p."""
    _require(n >= 1, f"random_connected needs n >= 1, got {n}")
    rng = _rng(seed)
    tree = random_tree(n, seed=int(rng.integers(0, 2**63)))
    if p is None:
        p = float(rng.uniform(0.05, 0.6))
    _require(0.0 <= p <= 1.0, f"Edge probability must lie in [0, 1], got {p}")
    extra = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return tree.with_edges(extra)


def spike_tree(n: int, seed: Optional[int] = None) -> Graph:
    g, _ = spike_graph(random_tree(n, seed=seed))
    return g


def proper_interval(n: int, seed: Optional[int] = None, width: int = 4) -> Tuple[Graph, IntervalModel]:
    """Connected unit-interval graph: intervals [s_i, s_i + width] with gaps of at most width."""
    _require(n >= 1, f"proper_interval needs n >= 1, got {n}")
    _require(width >= 1, f"width must be positive, got {width}")
    rng = _rng(seed)
    starts = [0]
    for _ in range(n - 1):
        starts.append(starts[-1] + int(rng.integers(0, width + 1)))
    model = IntervalModel(intervals=tuple((s, s + width) for s in starts))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if starts[j] - starts[i] <= width]
    return build_graph(n, edges), model


def disjoint_union(G: Graph, H: Graph) -> Graph:
    edges = list(G.edges) + [(u + G.n, v + G.n) for u, v in H.edges]
    labels = None
    if G.labels or H.labels:
        labels = list(G.labels or [None] * G.n) + list(H.labels or [None] * H.n)
    return build_graph(G.n + H.n, edges, labels)


generator_map = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "star": star,
    "complete_bipartite": complete_bipartite,
    "spider": spider,
    "gtilde": gtilde,
    "caterpillar": caterpillar,
    "random_tree": random_tree,
    "random_connected": random_connected,
    "spike_tree": spike_tree,
    "proper_interval": lambda **params: proper_interval(**params)[0],
}

RANDOM_FAMILIES = {"random_tree", "random_connected", "spike_tree", "proper_interval"}


def generator_mapper(name: str):
    if name not in generator_map:
        raise NotImplementedError(f"Graph family {name} not found!")
    return generator_map[name]


def generate(name: str, **params) -> Graph:
    builder = generator_mapper(name)
    try:
        return builder(**params)
    except TypeError as e:
        raise PreconditionError(f"Bad parameters for {name}: {e}") from e


def connected_corpus(count: int, max_n: int, seed: int, min_n: int = 1) -> Iterator[Graph]:
    rng = _rng(seed)
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        yield random_connected(n, seed=int(rng.integers(0, 2**63)))


def tree_corpus(count: int, max_n: int, seed: int, min_n: int = 1) -> Iterator[Graph]:
    rng = _rng(seed)
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        yield random_tree(n, seed=int(rng.integers(0, 2**63)))


def interval_corpus(count: int, max_n: int, seed: int) -> List[Tuple[Graph, IntervalModel]]:
    rng = _rng(seed)
    return [proper_interval(int(rng.integers(1, max_n + 1)), seed=int(rng.integers(0, 2**63)),
                            width=int(rng.integers(1, 5)))
            for _ in range(count)]
