# ./burnlab/utils/graph_utils.py

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from burnlab.utils.data_class import IntervalModel, Origin, VertexMap
from burnlab.utils.errors import GraphFormatError, PreconditionError

UNREACHABLE = -1


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on dense vertex ids 0..n-1."""
    n: int
    edges: Tuple[Tuple[int, int], ...]
    labels: Optional[Tuple[Optional[str], ...]] = None

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> Tuple[frozenset, ...]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def neighbor_masks(self) -> Tuple[int, ...]:
        masks = []
        for nbrs in self.adjacency:
            mask = 0
            for w in nbrs:
                mask |= 1 << w
            masks.append(mask)
        return tuple(masks)

    @cached_property
    def edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edges)}

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def label(self, v: int) -> Optional[str]:
        return self.labels[v] if self.labels else None

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def components(self) -> List[List[int]]:
        return [sorted(c) for c in nx.connected_components(self.to_networkx())]

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.is_connected() and self.m == self.n - 1

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["Graph", Tuple[int, ...]]:
        """Induced subgraph relabelled to 0..|S|-1; returns it with the old id of each new vertex."""
        order = tuple(sorted(set(vertices)))
        local = {v: i for i, v in enumerate(order)}
        edges = [(local[u], local[v]) for u, v in self.edges if u in local and v in local]
        labels = tuple(self.labels[v] for v in order) if self.labels else None
        return build_graph(len(order), edges, labels), order

    def with_edges(self, extra: Iterable[Tuple[int, int]]) -> "Graph":
        return build_graph(self.n, list(self.edges) + list(extra), self.labels)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DistanceMatrix:
    dist: np.ndarray

    def __call__(self, u: int, v: int) -> int:
        return int(self.dist[u, v])

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def reachable(self, u: int, v: int) -> bool:
        return self.dist[u, v] != UNREACHABLE

    def eccentricity(self, v: int) -> int:
        row = self.dist[v]
        return int(row[row != UNREACHABLE].max()) if self.n else 0

    def ball(self, v: int, radius: int) -> np.ndarray:
        row = self.dist[v]
        return np.flatnonzero((row != UNREACHABLE) & (row <= radius))

    def ball_mask(self, v: int, radius: int) -> int:
        mask = 0
        for w in self.ball(v, radius):
            mask |= 1 << int(w)
        return mask

    @cached_property
    def ball_sizes(self) -> np.ndarray:
        """ball_sizes[v, r] = |N^r[v]| for r = 0..n-1."""
        size = max(self.n, 1)
        table = np.zeros((self.n, size), dtype=np.int64)
        for v in range(self.n):
            row = self.dist[v]
            counts = np.bincount(row[row != UNREACHABLE], minlength=size)[:size]
            table[v] = np.cumsum(counts)
        return table

    def max_ball(self, radius: int) -> int:
        if self.n == 0:
            return 0
        radius = min(radius, self.n - 1)
        return int(self.ball_sizes[:, radius].max())


def build_graph(n: int, edges: Iterable[Sequence[int]], labels: Optional[Sequence[Optional[str]]] = None) -> Graph:
    if n < 0:
        raise GraphFormatError(f"Vertex count must be non-negative, got {n}")
    normalized = set()
    for edge in edges:
        if len(edge) != 2:
            raise GraphFormatError(f"Edge {tuple(edge)} is not a pair")
        u, v = int(edge[0]), int(edge[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"Edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"Self-loop ({u}, {v}) is not allowed")
        normalized.add((min(u, v), max(u, v)))
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != n:
            raise GraphFormatError(f"Expected {n} labels, got {len(labels)}")
    return Graph(n=n, edges=tuple(sorted(normalized)), labels=labels)


def from_networkx(g: nx.Graph) -> Tuple[Graph, Tuple]:
    order = tuple(sorted(g.nodes()))
    local = {v: i for i, v in enumerate(order)}
    return build_graph(len(order), [(local[u], local[v]) for u, v in g.edges()]), order


def all_pairs_distances(G: Graph) -> DistanceMatrix:
    dist = np.full((G.n, G.n), UNREACHABLE, dtype=np.int64)
    for source, lengths in nx.all_pairs_shortest_path_length(G.to_networkx()):
        dist[source, list(lengths.keys())] = list(lengths.values())
    return DistanceMatrix(dist=dist)


def distances_from(G: Graph, sources: Sequence[int]) -> np.ndarray:
    """Row i holds BFS distances from sources[i] (UNREACHABLE elsewhere)."""
    g = G.to_networkx()
    rows = np.full((len(sources), G.n), UNREACHABLE, dtype=np.int64)
    for i, s in enumerate(sources):
        lengths = nx.single_source_shortest_path_length(g, s)
        rows[i, list(lengths.keys())] = list(lengths.values())
    return rows


def diameter(G: Graph, dm: Optional[DistanceMatrix] = None) -> int:
    if not G.is_connected():
        raise PreconditionError(f"Diameter is undefined for a disconnected graph ({len(G.components())} components)")
    dm = dm or all_pairs_distances(G)
    return int(dm.dist.max())


def line_graph(G: Graph) -> Tuple[Graph, VertexMap]:
    """One vertex per edge of G (in G's canonical edge order), adjacent iff the edges share an endpoint."""
    if G.m == 0:
        raise PreconditionError("The line graph of an edgeless graph is empty")
    L = nx.line_graph(G.to_networkx())
    index = {frozenset(e): i for i, e in enumerate(G.edges)}
    edges = [(index[frozenset(a)], index[frozenset(b)]) for a, b in L.edges()]
    origin = VertexMap(forward=tuple(Origin("edge", e) for e in G.edges))
    return build_graph(G.m, edges), origin


def total_graph(G: Graph) -> Tuple[Graph, VertexMap]:
    """Vertices 0..n-1 are G's vertices, n..n+m-1 its edges; vertex-vertex, edge-edge and incidence adjacency."""
    n = G.n
    edges = list(G.edges)
    incident = [[] for _ in range(n)]
    for i, (u, v) in enumerate(G.edges):
        edges.append((u, n + i))
        edges.append((v, n + i))
        incident[u].append(n + i)
        incident[v].append(n + i)
    for around in incident:
        edges.extend(combinations(around, 2))
    forward = tuple(Origin("vertex", v) for v in range(n)) + tuple(Origin("edge", e) for e in G.edges)
    labels = tuple(["V"] * n + ["E"] * G.m)
    return build_graph(n + G.m, edges, labels), VertexMap(forward=forward)


def spike_graph(G: Graph) -> Tuple[Graph, VertexMap]:
    """G plus a pendant l_i = n + i on every vertex v_i."""
    n = G.n
    edges = list(G.edges) + [(v, n + v) for v in range(n)]
    forward = tuple(Origin("vertex", v) for v in range(n)) + tuple(Origin("spike", v) for v in range(n))
    labels = tuple(["V"] * n + ["L"] * n)
    return build_graph(2 * n, edges, labels), VertexMap(forward=forward)


def longest_induced_path(G: Graph, cap: Optional[int] = None) -> int:
    """Vertex count of a longest induced path, truncated at cap (so `< k` certifies P_k-freeness)."""
    if cap is None:
        cap = G.n
    if cap < 1:
        raise PreconditionError(f"cap must be at least 1, got {cap}")
    if G.n == 0:
        return 0
    nbr = G.neighbor_masks
    best = 1

    def extend(last: int, length: int, path_mask: int, blocked: int) -> bool:
        # blocked: closed neighbourhoods of every path vertex except `last`
        nonlocal best
        if length > best:
            best = length
            if best >= cap:
                return True
        candidates = nbr[last] & ~path_mask & ~blocked
        while candidates:
            low = candidates & -candidates
            w = low.bit_length() - 1
            candidates ^= low
            if extend(w, length + 1, path_mask | low, blocked | nbr[last] | (1 << last)):
                return True
        return False

    for start in range(G.n):
        if extend(start, 1, 1 << start, 0):
            break
    return min(best, cap)


def is_pk_free(G: Graph, k: int) -> bool:
    return longest_induced_path(G, cap=k) < k


def path_ordering(G: Graph) -> Optional[Tuple[int, ...]]:
    """Vertex order along G if G is isomorphic to a path, else None."""
    if G.n == 0 or not G.is_connected() or G.m != G.n - 1:
        return None
    if any(G.degree(v) > 2 for v in range(G.n)):
        return None
    start = next((v for v in range(G.n) if G.degree(v) <= 1), 0)
    order, prev = [start], None
    while len(order) < G.n:
        nxt = min(w for w in G.neighbors(order[-1]) if w != prev)
        prev = order[-1]
        order.append(nxt)
    return tuple(order)


def verify_interval_model(G: Graph, M: IntervalModel, proper: bool = False) -> bool:
    if len(M) != G.n:
        raise PreconditionError(f"Interval model has {len(M)} intervals for {G.n} vertices")
    if G.n == 0:
        return True
    lo = np.array([iv[0] for iv in M.intervals], dtype=np.int64)
    hi = np.array([iv[1] for iv in M.intervals], dtype=np.int64)
    if np.any(lo > hi):
        return False
    meets = (lo[:, None] <= hi[None, :]) & (lo[None, :] <= hi[:, None])
    np.fill_diagonal(meets, False)
    adj = np.zeros((G.n, G.n), dtype=bool)
    if G.m:
        e = np.array(G.edges, dtype=np.int64)
        adj[e[:, 0], e[:, 1]] = True
        adj[e[:, 1], e[:, 0]] = True
    if not np.array_equal(meets, adj):
        return False
    if proper:
        inside = (lo[:, None] <= lo[None, :]) & (hi[None, :] <= hi[:, None])
        same = (lo[:, None] == lo[None, :]) & (hi[:, None] == hi[None, :])
        if np.any(inside & ~same):
            return False
    return True


def is_claw_free(G: Graph) -> bool:
    for v in range(G.n):
        for a, b, c in combinations(sorted(G.neighbors(v)), 3):
            if not (G.has_edge(a, b) or G.has_edge(a, c) or G.has_edge(b, c)):
                return False
    return True


def is_dominating(G: Graph, vertices: Iterable[int]) -> bool:
    covered = 0
    for v in vertices:
        covered |= G.neighbor_masks[v] | (1 << v)
    return covered == (1 << G.n) - 1


def is_caterpillar(G: Graph) -> bool:
    if not G.is_tree():
        return False
    if G.n <= 2:
        return True
    stem = [v for v in range(G.n) if G.degree(v) > 1]
    core, _ = G.induced_subgraph(stem)
    return path_ordering(core) is not None


def relabel_check(G: Graph, H: Graph, mapping: Sequence[int]) -> bool:
    """True iff `mapping` (G vertex -> H vertex) is an isomorphism G -> H."""
    if G.n != H.n or G.m != H.m or sorted(mapping) != list(range(H.n)):
        return False
    return all(H.has_edge(mapping[u], mapping[v]) for u, v in G.edges)
