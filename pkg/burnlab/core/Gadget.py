# ./burnlab/core/Gadget.py

from collections import Counter
from typing import List, Optional, Sequence, Tuple

from burnlab.core.BurnEngine import validate
from burnlab.utils.data_class import (
    BurningSequence,
    GadgetMetadata,
    IntervalModel,
    Segment,
    StructureCheck,
    ThreePartitionInstance,
)
from burnlab.utils.errors import PreconditionError, VerificationError
from burnlab.utils.graph_utils import (
    Graph,
    build_graph,
    distances_from,
    is_caterpillar,
    is_claw_free,
    line_graph,
    relabel_check,
    verify_interval_model,
    UNREACHABLE,
)
from burnlab.utils.logger import CustomLogger

logger = CustomLogger(__name__).getlog()

Triple = Tuple[int, int, int]


def validate_instance(X: ThreePartitionInstance):
    """Raise PreconditionError naming the first violated rule."""
    values = X.values
    if len(values) < 3 or len(values) % 3:
        raise PreconditionError(f"[size] |X| must be a positive multiple of 3, got {len(values)}")
    if any(a <= 0 for a in values):
        raise PreconditionError(f"[positive] all elements must be positive: {sorted(values)}")
    if len(set(values)) != len(values):
        dupes = sorted(a for a, c in Counter(values).items() if c > 1)
        raise PreconditionError(f"[distinct] repeated elements {dupes}")
    if X.B is None:
        raise PreconditionError(f"[sum] sum {X.total} is not divisible by n={X.n}")
    B = X.B
    outside = sorted(a for a in values if not (4 * a > B and 2 * a < B))
    if outside:
        raise PreconditionError(f"[range] elements {outside} are not strictly between B/4={B / 4} and B/2={B / 2}")
    if max(values) < 3 * X.n:
        raise PreconditionError(f"[m_at_least_3n] m={max(values)} is smaller than 3n={3 * X.n}")


def solve_distinct_3partition(X: ThreePartitionInstance) -> Optional[List[Triple]]:
    """Backtracking oracle: the largest remaining element always opens the next triple."""
    validate_instance(X)
    B = X.B

    def solve(remaining: List[int]) -> Optional[List[Triple]]:
        if not remaining:
            return []
        a, rest = remaining[0], remaining[1:]
        for i in range(len(rest)):
            for j in range(i + 1, len(rest)):
                if a + rest[i] + rest[j] == B:
                    left = [x for t, x in enumerate(rest) if t not in (i, j)]
                    found = solve(left)
                    if found is not None:
                        return [tuple(sorted((a, rest[i], rest[j])))] + found
        return None

    found = solve(sorted(X.values, reverse=True))
    logger.info(f"3-partition of {sorted(X.values)} (B={B}): {found if found else 'none'}")
    return sorted(found) if found is not None else None


def _q_length(m: int, l: int) -> int:
    return 2 * (2 * m + 1 - l) + 1


def build_gadget(X: ThreePartitionInstance) -> Tuple[Graph, GadgetMetadata]:
    validate_instance(X)
    n, B, m = X.n, X.B, max(X.values)
    x_prime = tuple(sorted(2 * a - 1 for a in X.values))
    b_prime = 2 * B - 3
    y = tuple(sorted(set(range(1, 2 * m, 2)) - set(x_prime), reverse=True))

    order: List[Tuple[str, int, int]] = []
    for i in range(1, n + 1):
        order.append(("S", i, b_prime))
        order.append(("Q", i, _q_length(m, i)))
    for j, yj in enumerate(y, start=1):
        order.append(("Sp", j, yj))
        order.append(("Q", n + j, _q_length(m, n + j)))
    for l in range(n + len(y) + 1, m + 2):
        order.append(("Q", l, _q_length(m, l)))

    segments, start = [], 0
    for kind, index, length in order:
        segments.append(Segment(kind=kind, index=index, start=start, length=length))
        start += length
    spine = start
    if spine != (2 * m + 1) ** 2:
        raise VerificationError(f"Spine has {spine} vertices, expected {(2 * m + 1) ** 2}")

    edges = [(i, i + 1) for i in range(spine - 1)]
    labels = [None] * spine
    intervals = [(4 * i, 4 * i + 4) for i in range(spine)]
    spike_vertices, q_centers = {}, {}
    nxt = spine
    for seg in segments:
        for v in range(seg.start, seg.start + seg.length):
            labels[v] = seg.name
        if seg.kind != "Q":
            continue
        q_centers[seg.index] = seg.middle
        ids = []
        for x in range(seg.start, seg.start + seg.length - 1):
            edges.extend([(x, nxt), (x + 1, nxt)])
            labels.append(f"q{seg.index}")
            intervals.append((4 * x + 3, 4 * x + 5))
            ids.append(nxt)
            nxt += 1
        spike_vertices[seg.index] = tuple(ids)

    G = build_graph(nxt, edges, labels)
    meta = GadgetMetadata(m=m, n=n, B=B, x_prime=x_prime, b_prime=b_prime, y=y,
                          segment_layout=tuple(segments), q_centers=q_centers,
                          spike_vertices=spike_vertices, interval_model=IntervalModel(intervals=tuple(intervals)),
                          spine_length=spine)
    logger.info(f"Gadget for {sorted(X.values)}: m={m}, spine {spine}, {G.n} vertices, {G.m} edges")
    return G, meta


def expected_vertex_count(m: int) -> int:
    """(2m+1)^2 spine vertices plus |Q_l| - 1 hanging vertices for every l = 1..m+1."""
    return (2 * m + 1) ** 2 + sum(_q_length(m, l) - 1 for l in range(1, m + 2))


def _check_partition(X: ThreePartitionInstance, partition: Sequence[Sequence[int]]):
    if len(partition) != X.n or any(len(t) != 3 for t in partition):
        raise PreconditionError(f"A partition of {sorted(X.values)} needs {X.n} triples, got {partition}")
    if Counter(a for t in partition for a in t) != Counter(X.values):
        raise PreconditionError(f"Partition {partition} does not use every element of X exactly once")
    off = [tuple(t) for t in partition if sum(t) != X.B]
    if off:
        raise PreconditionError(f"Triples {off} do not sum to B={X.B}")


def refined_segments(meta: GadgetMetadata, partition: Sequence[Sequence[int]]) -> List[Segment]:
    """The spine split into the segments one source each burns: every S_i cut into its triple's 2a-1 pieces."""
    pieces = []
    for seg in meta.segment_layout:
        if seg.kind != "S":
            pieces.append(seg)
            continue
        start = seg.start
        for t, a in enumerate(sorted(partition[seg.index - 1], reverse=True), start=1):
            pieces.append(Segment(kind=f"S{seg.index}.", index=t, start=start, length=2 * a - 1))
            start += 2 * a - 1
        if start != seg.start + seg.length:
            raise VerificationError(f"Triple {partition[seg.index - 1]} does not tile S{seg.index}")
    return pieces


def certificate_sequence(X: ThreePartitionInstance, partition: Sequence[Sequence[int]],
                         meta: GadgetMetadata, G: Optional[Graph] = None) -> BurningSequence:
    """Source i goes to the middle of the i-th largest refined segment, horizon 2m+1."""
    _check_partition(X, partition)
    pieces = refined_segments(meta, partition)
    sizes = Counter(p.length for p in pieces)
    collisions = sorted(s for s, c in sizes.items() if c > 1)
    if collisions:
        logger.error(f"Segment sizes collide: {collisions}")
        raise VerificationError(f"Refined segments share sizes {collisions}")
    ranked = sorted(pieces, key=lambda p: (-p.length, p.start))
    horizon = 2 * meta.m + 1
    if len(ranked) != horizon:
        raise VerificationError(f"{len(ranked)} refined segments for horizon {horizon}")
    B = BurningSequence(sources=tuple(p.middle for p in ranked), horizon=horizon)
    if G is not None and not validate(G, B):
        raise VerificationError(f"Certificate sequence does not burn the gadget for {sorted(X.values)}")
    return B


def verify_gadget_structure(G: Graph, meta: GadgetMetadata) -> List[StructureCheck]:
    checks = []
    spine = meta.spine_length
    m = meta.m

    on_spine = [(u, v) for u, v in G.edges if u < spine and v < spine]
    is_path = spine == (2 * m + 1) ** 2 and len(on_spine) == spine - 1 and all(
        G.has_edge(i, i + 1) for i in range(spine - 1))
    checks.append(StructureCheck("spine_induced_path", is_path, f"{spine} spine vertices, {len(on_spine)} spine edges"))

    lengths = [s.length for s in meta.segment_layout]
    expected = Counter([meta.b_prime] * meta.n + list(meta.y) + [_q_length(m, l) for l in range(1, m + 2)])
    contiguous = all(a.start + a.length == b.start for a, b in zip(meta.segment_layout, meta.segment_layout[1:]))
    checks.append(StructureCheck("segment_lengths", Counter(lengths) == expected and contiguous
                                 and sum(lengths) == spine, f"lengths {lengths}"))

    bad_spikes = []
    for seg in meta.segment_layout:
        if seg.kind != "Q":
            continue
        for t, q in enumerate(meta.spike_vertices[seg.index]):
            if G.neighbors(q) != frozenset({seg.start + t, seg.start + t + 1}):
                bad_spikes.append(q)
    checks.append(StructureCheck("spike_attachment", not bad_spikes,
                                 f"misattached hanging vertices {bad_spikes}" if bad_spikes else ""))

    proper = verify_interval_model(G, meta.interval_model, proper=True)
    checks.append(StructureCheck("proper_interval_model", proper))
    checks.append(StructureCheck("claw_free", is_claw_free(G)))
    checks.append(StructureCheck("vertex_count", G.n == expected_vertex_count(m),
                                 f"{G.n} vertices, expected {expected_vertex_count(m)}"))

    centers = sorted(meta.q_centers)
    rows = distances_from(G, [meta.q_centers[l] for l in centers])
    for row, l in zip(rows, centers):
        seg = next(s for s in meta.segment_layout if s.kind == "Q" and s.index == l)
        members = list(range(seg.start, seg.start + seg.length)) + list(meta.spike_vertices[l])
        radius = 2 * m + 1 - l
        missed = [v for v in members if row[v] == UNREACHABLE or row[v] > radius]
        checks.append(StructureCheck(f"single_source_cover:Q{l}", not missed,
                                     f"uncovered {missed}" if missed else f"radius {radius}"))

    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.warning(f"Gadget structure checks failed: {failed}")
    return checks


def caterpillar_preimage(G: Graph, meta: GadgetMetadata) -> Tuple[Graph, Tuple[int, ...]]:
    """A caterpillar T with L(T) isomorphic to G; the map sends edge j of T (canonical order) to a vertex of G."""
    spine = meta.spine_length
    edges, origin = [], {}
    for j in range(spine):
        edges.append((j, j + 1))
        origin[(j, j + 1)] = j
    leaf = spine + 1
    for seg in meta.segment_layout:
        if seg.kind != "Q":
            continue
        for t, q in enumerate(meta.spike_vertices[seg.index]):
            stem = seg.start + t + 1
            edges.append((stem, leaf))
            origin[(stem, leaf)] = q
            leaf += 1
    T = build_graph(leaf, edges)
    mapping = tuple(origin[e] for e in T.edges)

    L, _ = line_graph(T)
    if T.max_degree() > 3 or not is_caterpillar(T) or not relabel_check(L, G, mapping):
        raise VerificationError("Caterpillar preimage does not reproduce the gadget")
    return T, mapping


class Gadget:
    def __init__(self, values: Sequence[int]):
        self.instance = ThreePartitionInstance(values=tuple(values))
        self.graph, self.meta = build_gadget(self.instance)
        self.partition = None

    def solve(self) -> Optional[List[Triple]]:
        self.partition = solve_distinct_3partition(self.instance)
        return self.partition

    def certificate(self) -> BurningSequence:
        if self.partition is None and self.solve() is None:
            raise PreconditionError(f"{sorted(self.instance.values)} has no 3-partition; no certificate exists")
        return certificate_sequence(self.instance, self.partition, self.meta, self.graph)

    def verify(self) -> List[StructureCheck]:
        return verify_gadget_structure(self.graph, self.meta)

    def preimage(self) -> Tuple[Graph, Tuple[int, ...]]:
        return caterpillar_preimage(self.graph, self.meta)
