# ./burnlab/core/PkFree.py

from itertools import combinations
from typing import Iterator, Optional, Sequence, Tuple

from burnlab.core.BurnEngine import Chooser, LowestIdChooser, path_cycle_sequence, realize_sequence, validate
from burnlab.utils.config_loader import config
from burnlab.utils.data_class import BurningSequence, CdsCertificate
from burnlab.utils.errors import PreconditionError, VerificationError
from burnlab.utils.graph_utils import Graph, is_pk_free, longest_induced_path, path_ordering
from burnlab.utils.logger import CustomLogger

logger = CustomLogger(__name__).getlog()


def _mask_connected(G: Graph, mask: int) -> bool:
    start = mask & -mask
    seen, frontier = start, start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        fresh = G.neighbor_masks[low.bit_length() - 1] & mask & ~seen
        seen |= fresh
        frontier |= fresh
    return seen == mask


def classify_cds(G: Graph, vertices: Sequence[int], k: int) -> CdsCertificate:
    """Tag D as inducing P_{k-2} ("iso_pk2") or a P_{k-2}-free graph ("pk2_free")."""
    induced, order = G.induced_subgraph(vertices)
    if len(order) == k - 2:
        along = path_ordering(induced)
        if along is not None and longest_induced_path(induced) == len(order):
            return CdsCertificate(vertices=order, kind="iso_pk2", k=k,
                                  path_order=tuple(order[i] for i in along))
    if is_pk_free(induced, k - 2):
        return CdsCertificate(vertices=order, kind="pk2_free", k=k)
    return CdsCertificate(vertices=order, kind="violation", k=k)


def minimum_connected_dominating_sets(G: Graph, max_vertices: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Every minimum connected dominating set, in lexicographic order."""
    limit = max_vertices if max_vertices is not None else int(config.get("pkfree.max_cds_vertices", 24))
    if G.n == 0 or not G.is_connected():
        raise PreconditionError(f"A connected dominating set needs a connected non-empty graph, got {G}")
    if G.n > limit:
        raise PreconditionError(f"Exhaustive CDS search is limited to {limit} vertices, got {G.n}")
    full = (1 << G.n) - 1
    closed = [G.neighbor_masks[v] | (1 << v) for v in range(G.n)]
    for size in range(1, G.n + 1):
        found = False
        for subset in combinations(range(G.n), size):
            covered, mask = 0, 0
            for v in subset:
                covered |= closed[v]
                mask |= 1 << v
            if covered == full and _mask_connected(G, mask):
                found = True
                yield subset
        if found:
            return


def minimum_connected_dominating_set(G: Graph, k: Optional[int] = None,
                                     max_vertices: Optional[int] = None) -> CdsCertificate:
    """The lexicographically smallest minimum CDS, classified against k when given."""
    for subset in minimum_connected_dominating_sets(G, max_vertices):
        logger.debug(f"Minimum CDS of {G}: {subset}")
        if k is None:
            return CdsCertificate(vertices=subset, kind="unclassified", k=0)
        return classify_cds(G, subset, k)
    raise VerificationError(f"No connected dominating set found for {G}")


def lift_by_domination(G: Graph, D: Sequence[int], inner: BurningSequence,
                       chooser: Optional[Chooser] = None) -> BurningSequence:
    """Turn a sequence for G[D] (local ids of sorted D) into one for G with one extra step."""
    induced, order = G.induced_subgraph(D)
    if not validate(induced, inner):
        raise PreconditionError(f"Inner sequence {inner.sources} is not valid for G[D]")
    covered = 0
    for v in order:
        covered |= G.neighbor_masks[v] | (1 << v)
    if covered != (1 << G.n) - 1:
        raise PreconditionError(f"{list(order)} does not dominate {G}")
    preferences = [[order[s]] for s in inner.sources]
    return realize_sequence(G, preferences, inner.horizon + 1, chooser)


def _base_sequence(G: Graph, k: int, chooser: Chooser) -> BurningSequence:
    if G.n == 1:
        return BurningSequence(sources=(0,), horizon=1)
    if k == 2:
        raise VerificationError(f"A connected P_2-free graph is K_1, got {G}")
    # connected and P_3-free means complete
    return realize_sequence(G, [[0]], 2, chooser)


def _sequence(G: Graph, k: int, chooser: Chooser) -> BurningSequence:
    if G.n == 1 or k <= 3:
        return _base_sequence(G, k, chooser)
    cert = minimum_connected_dominating_set(G, k=k)
    logger.info(f"k={k}: minimum CDS of size {len(cert)} is {cert.kind}")
    if cert.kind == "iso_pk2":
        local = {v: i for i, v in enumerate(cert.vertices)}
        along = path_cycle_sequence(len(cert.path_order), "path")
        inner = BurningSequence(sources=tuple(local[cert.path_order[p]] for p in along.sources),
                                horizon=along.horizon)
    elif cert.kind == "pk2_free":
        induced, _ = G.induced_subgraph(cert.vertices)
        inner = _sequence(induced, k - 2, chooser)
    else:
        logger.error(f"Minimum CDS {cert.vertices} of {G} is neither P_{k - 2}-free nor a path on {k - 2} vertices")
        raise VerificationError(f"Minimum CDS {cert.vertices} of {G} breaks the P_{k - 2} dichotomy at k={k}")
    return lift_by_domination(G, cert.vertices, inner, chooser)


def pkfree_sequence(G: Graph, k: int, chooser: Optional[Chooser] = None) -> BurningSequence:
    if k < 2:
        raise PreconditionError(f"k must be at least 2, got {k}")
    if G.n == 0 or not G.is_connected():
        raise PreconditionError(f"pkfree_sequence needs a connected non-empty graph, got {G}")
    if not is_pk_free(G, k):
        raise PreconditionError(f"{G} contains an induced path on {k} vertices")
    chooser = chooser or LowestIdChooser()
    B = _sequence(G, k, chooser)
    bound = (k + 2) // 2
    if B.horizon > bound or not validate(G, B):
        raise VerificationError(f"Sequence {B.sources} at horizon {B.horizon} misses the bound {bound} for k={k}")
    return B


class PkFree:
    def __init__(self, chooser: Chooser = None):
        self.chooser = chooser or LowestIdChooser()

    def sequence(self, G: Graph, k: int) -> BurningSequence:
        return pkfree_sequence(G, k, self.chooser)

    def cds(self, G: Graph, k: Optional[int] = None) -> CdsCertificate:
        return minimum_connected_dominating_set(G, k=k)
