# ./burnlab/utils/data_class.py

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple


@dataclass(frozen=True)
class Origin:
    """Where a derived-graph vertex came from: a vertex, an edge, a pendant or a pendant edge."""
    kind: str
    ref: Any


@dataclass(frozen=True)
class VertexMap:
    forward: Tuple[Origin, ...] = ()

    def __len__(self) -> int:
        return len(self.forward)

    def __getitem__(self, vertex: int) -> Origin:
        return self.forward[vertex]

    def ids_of_kind(self, kind: str) -> List[int]:
        return [i for i, o in enumerate(self.forward) if o.kind == kind]


@dataclass(frozen=True)
class IntervalModel:
    intervals: Tuple[Tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.intervals)


@dataclass(frozen=True)
class BurningSequence:
    sources: Tuple[int, ...]
    horizon: int

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(int(s) for s in self.sources))
        if len(set(self.sources)) != len(self.sources):
            raise ValueError(f"Burning sources must be distinct: {self.sources}")
        if len(self.sources) > self.horizon:
            raise ValueError(f"{len(self.sources)} sources do not fit horizon {self.horizon}")

    def __len__(self) -> int:
        return len(self.sources)

    def radius(self, i: int) -> int:
        """Cluster radius of the i-th source (0-based position)."""
        return self.horizon - 1 - i


@dataclass(frozen=True)
class BurnTrace:
    ignition_time: Tuple[Optional[int], ...]
    steps: int
    invalid_steps: Tuple[int, ...] = ()

    @property
    def complete(self) -> bool:
        return all(t is not None for t in self.ignition_time)

    @property
    def valid(self) -> bool:
        return self.complete and not self.invalid_steps

    def burned_at(self, step: int) -> List[int]:
        return [v for v, t in enumerate(self.ignition_time) if t == step]

    def burned_by(self, step: int) -> List[int]:
        return [v for v, t in enumerate(self.ignition_time) if t is not None and t <= step]


@dataclass
class Bounds:
    lower: int
    upper: Optional[int]
    lower_rule: str = ""
    upper_rule: str = ""
    rules: Dict[str, int] = field(default_factory=dict)


@dataclass
class BurnResult:
    status: str
    lower: int
    upper: Optional[int]
    value: Optional[int] = None
    witness: Optional[BurningSequence] = None
    expansions: int = 0
    elapsed: float = 0.0

    @property
    def exact(self) -> bool:
        return self.status == "exact"


@dataclass(frozen=True)
class CdsCertificate:
    vertices: Tuple[int, ...]
    kind: str
    k: int
    path_order: Optional[Tuple[int, ...]] = None

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass
class VariantResult:
    kind: str
    value: Optional[int]
    witness: Optional[BurningSequence]
    origin_map: VertexMap
    result: BurnResult = None


@dataclass
class RelationCheck:
    relation: str
    lhs: str
    rhs: str
    status: str
    values: Dict[str, Optional[int]] = field(default_factory=dict)


@dataclass(frozen=True)
class ThreePartitionInstance:
    values: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.values) // 3

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def B(self) -> Optional[int]:
        if self.n == 0 or self.total % self.n:
            return None
        return self.total // self.n


@dataclass(frozen=True)
class Segment:
    kind: str
    index: int
    start: int
    length: int

    @property
    def middle(self) -> int:
        return self.start + self.length // 2

    @property
    def name(self) -> str:
        return f"{self.kind}{self.index}"


@dataclass
class GadgetMetadata:
    m: int
    n: int
    B: int
    x_prime: Tuple[int, ...]
    b_prime: int
    y: Tuple[int, ...]
    segment_layout: Tuple[Segment, ...]
    q_centers: Dict[int, int]
    spike_vertices: Dict[int, Tuple[int, ...]]
    interval_model: IntervalModel
    spine_length: int


@dataclass
class StructureCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class RunReport:
    command: str = None
    argv: List[str] = None
    inputs_digest: str = None
    results: Dict[str, Any] = None
    timing: float = None
    budget_consumed: int = 0
    status: str = None
    exit_code: int = 0


@dataclass
class CriterionResult:
    name: str
    status: str
    cases: int = 0
    detail: str = ""
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"
