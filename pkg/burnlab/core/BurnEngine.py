# ./burnlab/core/BurnEngine.py

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from burnlab.utils.config_loader import config
from burnlab.utils.data_class import Bounds, BurningSequence, BurnResult, BurnTrace
from burnlab.utils.errors import PreconditionError, VerificationError
from burnlab.utils.graph_utils import (
    UNREACHABLE,
    DistanceMatrix,
    Graph,
    all_pairs_distances,
    distances_from,
)
from burnlab.utils.logger import CustomLogger
from burnlab.utils.utils import ceil_sqrt

logger = CustomLogger(__name__).getlog()


class Chooser:
    """Resolves an arbitrary pick among eligible vertices."""

    def pick(self, candidates: Sequence[int]) -> int:
        raise NotImplementedError


class LowestIdChooser(Chooser):
    def pick(self, candidates: Sequence[int]) -> int:
        return min(candidates)


class RandomChooser(Chooser):
    def __init__(self, seed: int = 0):
        self.rng = np.random.default_rng(seed)

    def pick(self, candidates: Sequence[int]) -> int:
        ordered = sorted(candidates)
        return ordered[int(self.rng.integers(0, len(ordered)))]


chooser_map = {
    "lowest": LowestIdChooser,
    "random": RandomChooser,
}


def chooser_mapper(name: str, seed: Optional[int] = None) -> Chooser:
    if name not in chooser_map:
        raise NotImplementedError(f"Chooser {name} not found!")
    if name == "random":
        return RandomChooser(seed if seed is not None else 0)
    return chooser_map[name]()


def _check_sources(G: Graph, B: BurningSequence):
    bad = [s for s in B.sources if not 0 <= s < G.n]
    if bad:
        raise PreconditionError(f"Sources {bad} are not vertices of {G}")


def simulate(G: Graph, B: BurningSequence) -> BurnTrace:
    """Run the burning process for B.horizon steps.

    At step i the fire first spreads one hop from everything burned by the end of
    step i-1, then b_i ignites. A source already burned at the end of step i-1
    is recorded as an invalid step.
    """
    _check_sources(G, B)
    nbr = G.neighbor_masks
    ignition: List[Optional[int]] = [None] * G.n
    burned, frontier = 0, 0
    invalid = []
    for step in range(1, B.horizon + 1):
        spread = 0
        pending = frontier
        while pending:
            low = pending & -pending
            spread |= nbr[low.bit_length() - 1]
            pending ^= low
        if step <= len(B):
            source = B.sources[step - 1]
            if burned >> source & 1:
                invalid.append(step)
            else:
                spread |= 1 << source
        fresh = spread & ~burned
        burned |= fresh
        frontier = fresh
        pending = fresh
        while pending:
            low = pending & -pending
            ignition[low.bit_length() - 1] = step
            pending ^= low
    return BurnTrace(ignition_time=tuple(ignition), steps=B.horizon, invalid_steps=tuple(invalid))


def covers_and_separates(G: Graph, B: BurningSequence, rows: Optional[np.ndarray] = None) -> Tuple[bool, bool]:
    """(every vertex within k-i of some b_i, d(b_i, b_j) >= j - i for all i < j)."""
    if not B.sources:
        return G.n == 0, True
    if rows is None:
        rows = distances_from(G, B.sources)
    radii = np.array([B.radius(i) for i in range(len(B))], dtype=np.int64)[:, None]
    covered = bool(np.all(np.any((rows != UNREACHABLE) & (rows <= radii), axis=0)))
    separated = True
    for i in range(len(B)):
        for j in range(i + 1, len(B)):
            d = rows[i, B.sources[j]]
            if d != UNREACHABLE and d < j - i:
                separated = False
    return covered, separated


def validate(G: Graph, B: BurningSequence) -> bool:
    if any(not 0 <= s < G.n for s in B.sources):
        logger.warning(f"Sequence {B.sources} names vertices outside {G}")
        return False
    covered, separated = covers_and_separates(G, B)
    by_distance = covered and separated
    by_simulation = simulate(G, B).valid
    if by_distance != by_simulation:
        logger.error(f"Validation routes disagree on {G} with {B}: distance={by_distance} simulation={by_simulation}")
        raise VerificationError(f"Covering/separation and simulation disagree for sources {B.sources} at horizon {B.horizon}")
    return by_distance


def realize_sequence(G: Graph, preferences: Sequence[Sequence[int]], horizon: int,
                     chooser: Optional[Chooser] = None) -> BurningSequence:
    """Emit a sequence step by step, taking the first preferred vertex that is still unburned.

    When no preference is unburned the chooser picks any unburned vertex. Stops as soon
    as every vertex is burned.
    """
    chooser = chooser or LowestIdChooser()
    nbr = G.neighbor_masks
    full = (1 << G.n) - 1
    burned, frontier = 0, 0
    sources = []
    for step in range(1, horizon + 1):
        if burned == full:
            break
        wanted = preferences[step - 1] if step - 1 < len(preferences) else ()
        source = next((v for v in wanted if not burned >> v & 1), None)
        if source is None:
            source = chooser.pick([v for v in range(G.n) if not burned >> v & 1])
        sources.append(source)
        spread = 1 << source
        pending = frontier
        while pending:
            low = pending & -pending
            spread |= nbr[low.bit_length() - 1]
            pending ^= low
        frontier = spread & ~burned
        burned |= frontier
    return BurningSequence(sources=tuple(sources), horizon=horizon)


def path_cycle_sequence(n: int, kind: str = "path") -> BurningSequence:
    """Optimal sequence for P_n or C_n (C_n cut at vertex 0), horizon ceil(sqrt(n))."""
    if n < 1:
        raise PreconditionError(f"path_cycle_sequence needs n >= 1, got {n}")
    if kind not in ("path", "cycle"):
        raise NotImplementedError(f"Sequence kind {kind} not found!")
    if kind == "cycle" and n < 3:
        raise PreconditionError(f"A cycle needs n >= 3, got {n}")
    k = ceil_sqrt(n)
    sources, start = [], 0
    for i in range(1, k + 1):
        if start >= n:
            break
        length = min(2 * (k - i) + 1, n - start)
        sources.append(start + (length - 1) // 2)
        start += length
    return BurningSequence(sources=tuple(sources), horizon=k)


def bounds(G: Graph, interval: bool = False, dm: Optional[DistanceMatrix] = None) -> Bounds:
    if G.n == 0:
        raise PreconditionError("Bounds are undefined for the empty graph")
    dm = dm or all_pairs_distances(G)
    n = G.n
    rules = {}

    k = 1
    while sum(dm.max_ball(k - i) for i in range(1, k + 1)) < n:
        k += 1
    rules["ball_counting"] = k
    components = len(G.components())
    rules["components"] = components

    connected = components == 1
    if connected:
        d = int(dm.dist.max())
        rules["diameter"] = d + 1
        rules["sqrt_order"] = 2 * ceil_sqrt(n) - 1
        if interval:
            rules["interval_lower"] = ceil_sqrt(d + 1)
            rules["interval_upper"] = ceil_sqrt(d + 1) + 1
    else:
        logger.warning(f"{G} has {components} components; diameter-based bounds skipped")
        rules["order"] = n

    lower_rules = [r for r in ("ball_counting", "components", "interval_lower") if r in rules]
    upper_rules = [r for r in ("diameter", "sqrt_order", "interval_upper", "order") if r in rules]
    lower_rule = max(lower_rules, key=lambda r: rules[r])
    upper_rule = min(upper_rules, key=lambda r: rules[r])
    result = Bounds(lower=rules[lower_rule], upper=rules[upper_rule],
                    lower_rule=lower_rule, upper_rule=upper_rule, rules=rules)
    if result.lower > result.upper:
        raise VerificationError(f"Bounds crossed on {G}: {rules}")
    return result


class _BudgetHit(Exception):
    pass


@dataclass
class SearchBudget:
    max_nodes: int
    max_seconds: float
    used: int = 0
    started: float = field(default_factory=time.monotonic)

    def tick(self):
        self.used += 1
        if self.used > self.max_nodes:
            raise _BudgetHit()
        if self.used & 255 == 0 and time.monotonic() - self.started > self.max_seconds:
            raise _BudgetHit()


def _twin_classes(G: Graph) -> Tuple[List[int], List[Tuple[int, ...]]]:
    groups = {}
    for v in range(G.n):
        groups.setdefault(("closed", G.neighbor_masks[v] | (1 << v)), []).append(v)
        groups.setdefault(("open", G.neighbor_masks[v]), []).append(v)
    class_of = list(range(G.n))
    members: List[Tuple[int, ...]] = [(v,) for v in range(G.n)]
    for group in groups.values():
        if len(group) > 1:
            for v in group:
                class_of[v] = group[0]
            members[group[0]] = tuple(sorted(group))
    return class_of, members


class _FixedHorizonSearch:
    """Depth-first search for a valid sequence at one horizon k."""

    def __init__(self, G: Graph, dm: DistanceMatrix, k: int, budget: SearchBudget):
        self.n = G.n
        self.k = k
        self.budget = budget
        self.d = dm.dist.tolist()
        self.ecc = [dm.eccentricity(v) for v in range(G.n)]
        self.class_of, self.members = _twin_classes(G)
        self.balls = []
        for v in range(G.n):
            masks, mask = [], 0
            for r in range(k):
                for w, dw in enumerate(self.d[v]):
                    if dw == r:
                        mask |= 1 << w
                masks.append(mask)
            self.balls.append(masks)

    def _candidates(self, i: int, chosen: List[int], used: int, uncovered: int) -> List[int]:
        r = self.k - 1 - i
        ranked = []
        for v in range(self.n):
            if used >> v & 1:
                continue
            group = self.members[self.class_of[v]]
            if len(group) > 1 and v != next(w for w in group if not used >> w & 1):
                continue
            row = self.d[v]
            if any(row[b] != UNREACHABLE and row[b] < i - j for j, b in enumerate(chosen)):
                continue
            gain = (self.balls[v][r] & uncovered).bit_count()
            ranked.append((-gain, -self.ecc[v], v))
        ranked.sort()
        return [v for _, _, v in ranked]

    def _capacity(self, i: int, uncovered: int) -> int:
        total = 0
        for r in range(self.k - 1 - i, -1, -1):
            total += max((self.balls[v][r] & uncovered).bit_count() for v in range(self.n))
        return total

    def _dfs(self, i: int, chosen: List[int], used: int, uncovered: int) -> Optional[List[int]]:
        if uncovered == 0:
            return list(chosen)
        if i == self.k:
            return None
        self.budget.tick()
        if self._capacity(i, uncovered) < uncovered.bit_count():
            return None
        r = self.k - 1 - i
        for v in self._candidates(i, chosen, used, uncovered):
            chosen.append(v)
            found = self._dfs(i + 1, chosen, used | (1 << v), uncovered & ~self.balls[v][r])
            chosen.pop()
            if found is not None:
                return found
        return None

    def first_choices(self) -> List[int]:
        return self._candidates(0, [], 0, (1 << self.n) - 1)

    def run(self, first: Optional[int] = None) -> Optional[List[int]]:
        full = (1 << self.n) - 1
        if first is None:
            return self._dfs(0, [], 0, full)
        self.budget.tick()
        return self._dfs(1, [first], 1 << first, full & ~self.balls[first][self.k - 1])


def _branch_worker(args):
    G, k, first, max_nodes, max_seconds = args
    budget = SearchBudget(max_nodes=max_nodes, max_seconds=max_seconds)
    search = _FixedHorizonSearch(G, all_pairs_distances(G), k, budget)
    try:
        return "done", search.run(first=first), budget.used
    except _BudgetHit:
        return "budget", None, budget.used


def burning_number_exact(G: Graph, max_nodes: Optional[int] = None, max_seconds: Optional[float] = None,
                         threads: Optional[int] = None, dm: Optional[DistanceMatrix] = None) -> BurnResult:
    """Iterative deepening from the best lower bound; exhausted budgets yield status "unknown"."""
    if G.n == 0:
        raise PreconditionError("The empty graph has no burning number")
    max_nodes = int(max_nodes if max_nodes is not None else config.get("solver.max_nodes", 5_000_000))
    max_seconds = float(max_seconds if max_seconds is not None else config.get("solver.max_seconds", 120))
    threads = threads or config.threads()
    dm = dm or all_pairs_distances(G)
    bnds = bounds(G, dm=dm)
    budget = SearchBudget(max_nodes=max_nodes, max_seconds=max_seconds)
    logger.info(f"Exact burning number of {G}: bounds [{bnds.lower}, {bnds.upper}] "
                f"({bnds.lower_rule}/{bnds.upper_rule})")

    for k in range(bnds.lower, bnds.upper + 1):
        logger.info(f"Trying horizon k={k}")
        search = _FixedHorizonSearch(G, dm, k, budget)
        try:
            if threads > 1 and G.n > 1:
                found = _fan_out(G, k, search, budget, threads)
            else:
                found = search.run()
        except _BudgetHit:
            elapsed = time.monotonic() - budget.started
            logger.warning(f"Budget exhausted at k={k} after {budget.used} expansions ({elapsed:.1f}s)")
            return BurnResult(status="unknown", lower=k, upper=bnds.upper,
                              expansions=budget.used, elapsed=elapsed)
        if found is not None:
            witness = BurningSequence(sources=tuple(found), horizon=k)
            if not validate(G, witness):
                raise VerificationError(f"Solver produced an invalid witness {witness} for {G}")
            elapsed = time.monotonic() - budget.started
            logger.info(f"b={k} with witness {witness.sources} ({budget.used} expansions)")
            return BurnResult(status="exact", lower=k, upper=k, value=k, witness=witness,
                              expansions=budget.used, elapsed=elapsed)
        logger.info(f"k={k} refuted ({budget.used} expansions so far)")
    raise VerificationError(f"No sequence found up to the upper bound {bnds.upper} for {G}")


def _fan_out(G: Graph, k: int, search: _FixedHorizonSearch, budget: SearchBudget, threads: int):
    firsts = search.first_choices()
    remaining_nodes = max(1, budget.max_nodes - budget.used)
    remaining_seconds = max(0.0, budget.max_seconds - (time.monotonic() - budget.started))
    jobs = [(G, k, first, remaining_nodes, remaining_seconds) for first in firsts]
    hit_budget = False
    with ProcessPoolExecutor(max_workers=threads) as executor:
        outcomes = list(executor.map(_branch_worker, jobs))
    for status, found, used in outcomes:
        budget.used += used
        hit_budget = hit_budget or status == "budget"
    if budget.used > budget.max_nodes:
        hit_budget = True
    # first successful branch in candidate order keeps the result deterministic
    for status, found, _ in outcomes:
        if found is not None:
            return found
    if hit_budget:
        raise _BudgetHit()
    return None


def burning_number_oracle(G: Graph, max_vertices: Optional[int] = None) -> int:
    """Brute force over all source tuples for k = 1, 2, ... with no pruning.

    A tuple counts when its balls of radii k-1, ..., 0 cover V; any covering tuple
    can be turned into a valid sequence of the same horizon.
    """
    limit = max_vertices if max_vertices is not None else int(config.get("oracle.max_vertices", 12))
    if G.n == 0:
        raise PreconditionError("The empty graph has no burning number")
    if G.n > limit:
        raise PreconditionError(f"Oracle is limited to {limit} vertices, got {G.n}")
    lengths = dict(nx.all_pairs_shortest_path_length(G.to_networkx()))
    full = (1 << G.n) - 1
    balls = [[sum(1 << w for w, d in lengths[v].items() if d <= r) for r in range(G.n)] for v in range(G.n)]
    for k in range(1, G.n + 1):
        for combo in itertools.product(range(G.n), repeat=k):
            covered = 0
            for i, v in enumerate(combo):
                covered |= balls[v][k - 1 - i]
            if covered == full:
                return k
    return G.n


class BurnEngine:
    def __init__(self, max_nodes: int = None, max_seconds: float = None, threads: int = None):
        self.max_nodes = max_nodes if max_nodes is not None else int(config.get("solver.max_nodes", 5_000_000))
        self.max_seconds = max_seconds if max_seconds is not None else float(config.get("solver.max_seconds", 120))
        self.threads = threads or config.threads()

    def exact(self, G: Graph) -> BurnResult:
        return burning_number_exact(G, max_nodes=self.max_nodes, max_seconds=self.max_seconds, threads=self.threads)

    def oracle(self, G: Graph) -> int:
        return burning_number_oracle(G)

    def bounds(self, G: Graph, interval: bool = False) -> Bounds:
        return bounds(G, interval=interval)

    def validate(self, G: Graph, B: BurningSequence) -> bool:
        return validate(G, B)
