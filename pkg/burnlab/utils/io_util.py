# ./burnlab/utils/io_util.py

import json
import os
from dataclasses import asdict, is_dataclass
from typing import Any, List, Tuple

from burnlab.utils.data_class import BurningSequence, GadgetMetadata, IntervalModel, ThreePartitionInstance
from burnlab.utils.errors import GraphFormatError
from burnlab.utils.graph_utils import Graph, build_graph
from burnlab.utils.logger import CustomLogger

logger = CustomLogger(__name__).getlog()


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    """Non-empty, non-comment lines as (1-based line number, tokens)."""
    rows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((number, line.split()))
    return rows


def _ints(tokens: List[str], expected: int, line: int, what: str) -> List[int]:
    if len(tokens) != expected:
        raise GraphFormatError(f"Expected {expected} integers for {what}, got {len(tokens)}", line=line)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(f"Non-integer token in {what}: {' '.join(tokens)}", line=line)


def parse_edge_list(text: str) -> Graph:
    rows = _content_lines(text)
    if not rows:
        raise GraphFormatError("Empty graph file: expected a header line 'n m'", line=1)
    header_line, header = rows[0]
    n, m = _ints(header, 2, header_line, "header 'n m'")
    if n < 0 or m < 0:
        raise GraphFormatError(f"Header values must be non-negative, got n={n} m={m}", line=header_line)
    body = rows[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else header_line)
        raise GraphFormatError(f"Header announces {m} edges, file lists {len(body)}", line=where)
    edges = []
    for number, tokens in body:
        u, v = _ints(tokens, 2, number, "edge 'u v'")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"Edge ({u}, {v}) has an endpoint outside 0..{n - 1}", line=number)
        if u == v:
            raise GraphFormatError(f"Self-loop ({u}, {v}) is not allowed", line=number)
        edges.append((u, v))
    return build_graph(n, edges)


def read_graph(filepath: str) -> Graph:
    with open(filepath, "r", encoding="utf-8") as f:
        return parse_edge_list(f.read())


def format_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def write_graph(G: Graph, filepath: str):
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(format_edge_list(G))
    logger.info(f"Wrote {G} to {filepath}")


def to_dot(G: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(G.n):
        label = G.label(v)
        lines.append(f'  {v} [label="{v}:{label}"];' if label else f"  {v};")
    lines.extend(f"  {u} -- {v};" for u, v in G.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_interval_model(M: IntervalModel) -> str:
    return "".join(f"{v} {lo} {hi}\n" for v, (lo, hi) in enumerate(M.intervals))


def parse_interval_model(text: str) -> IntervalModel:
    found = {}
    for number, tokens in _content_lines(text):
        v, lo, hi = _ints(tokens, 3, number, "interval 'v lo hi'")
        if v in found:
            raise GraphFormatError(f"Vertex {v} has two intervals", line=number)
        found[v] = (lo, hi)
    if sorted(found) != list(range(len(found))):
        raise GraphFormatError("Interval model must list vertices 0..n-1 exactly once")
    return IntervalModel(intervals=tuple(found[v] for v in range(len(found))))


def format_witness(B: BurningSequence) -> str:
    return f"{B.horizon}; {' '.join(str(s) for s in B.sources)}".rstrip() + "\n"


def parse_witness(text: str) -> BurningSequence:
    rows = _content_lines(text.replace(";", " ; "))
    if len(rows) != 1:
        raise GraphFormatError("Witness file must contain exactly one line 'k; b1 b2 ...'")
    number, tokens = rows[0]
    if len(tokens) < 2 or tokens[1] != ";":
        raise GraphFormatError("Witness must start with 'k;'", line=number)
    values = _ints([tokens[0]] + tokens[2:], len(tokens) - 1, number, "witness")
    try:
        return BurningSequence(sources=tuple(values[1:]), horizon=values[0])
    except ValueError as e:
        raise GraphFormatError(str(e), line=number) from e


def read_instance(filepath: str) -> ThreePartitionInstance:
    with open(filepath, "r", encoding="utf-8") as f:
        rows = _content_lines(f.read())
    return ThreePartitionInstance(values=tuple(_ints(t, 1, n, "instance value")[0] for n, t in rows))


def _jsonable(obj: Any):
    if is_dataclass(obj):
        return asdict(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    if hasattr(obj, "item"):
        return obj.item()
    return str(obj)


def dump_json(obj: Any, filepath: str):
    payload = asdict(obj) if is_dataclass(obj) else obj
    with open(filepath, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True, default=_jsonable)


def write_gadget(G: Graph, meta: GadgetMetadata, emit_dir: str, stem: str = "gadget") -> List[str]:
    os.makedirs(emit_dir, exist_ok=True)
    graph_path = os.path.join(emit_dir, f"{stem}.txt")
    model_path = os.path.join(emit_dir, f"{stem}.intervals")
    meta_path = os.path.join(emit_dir, f"{stem}.json")
    write_graph(G, graph_path)
    with open(model_path, "w", encoding="utf-8") as f:
        f.write(format_interval_model(meta.interval_model))
    summary = asdict(meta)
    summary.pop("interval_model")
    summary["segment_layout"] = [dict(name=s["kind"] + str(s["index"]), **s) for s in summary["segment_layout"]]
    dump_json(summary, meta_path)
    return [graph_path, model_path, meta_path]
