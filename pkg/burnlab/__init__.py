# ./burnlab/__init__.py

import time
from dataclasses import asdict
from typing import Dict, List, Optional, Sequence

from burnlab.core import Acceptance, BurnEngine, Gadget, PkFree, Variants
from burnlab.core.BurnEngine import chooser_mapper
from burnlab.utils.data_class import BurnResult, RunReport
from burnlab.utils.errors import PreconditionError
from burnlab.utils.graph_utils import Graph
from burnlab.utils.generators import RANDOM_FAMILIES, generate
from burnlab.utils.io_util import format_witness, to_dot, write_gadget, write_graph
from burnlab.utils.logger import CustomLogger
from burnlab.utils.utils import digest

logger = CustomLogger(__name__).getlog()

EXIT_PASS = 0
EXIT_BUDGET = 4
EXIT_VERIFICATION = 5


class BurnLab:
    """Composes the burning components and turns every command into a RunReport."""

    def __init__(self, engine: BurnEngine, pkfree: PkFree, variants: Variants):
        self.engine = engine
        self.pkfree = pkfree
        self.variants = variants
        logger.info(f"=== BurnLab initialized (max_nodes={engine.max_nodes}, threads={engine.threads}) ===")

    def _finalize_report(self, command: str, argv: Sequence[str], inputs: Sequence, results: Dict,
                         started: float, budget_consumed: int = 0, status: str = "pass") -> RunReport:
        exit_code = {"pass": EXIT_PASS, "unknown": EXIT_BUDGET, "unverified": EXIT_BUDGET}.get(status, EXIT_VERIFICATION)
        report = RunReport(
            command=command,
            argv=list(argv),
            inputs_digest=digest(*inputs),
            results=results,
            timing=round(time.monotonic() - started, 4),
            budget_consumed=budget_consumed,
            status=status,
            exit_code=exit_code,
        )
        logger.info(f"{command}: {status} in {report.timing}s")
        return report

    @staticmethod
    def _result_dict(result: BurnResult) -> Dict:
        payload = {
            "status": result.status,
            "value": result.value,
            "lower": result.lower,
            "upper": result.upper,
            "expansions": result.expansions,
            "elapsed": round(result.elapsed, 4),
        }
        if result.witness is not None:
            payload["witness"] = format_witness(result.witness).strip()
        return payload

    def burn(self, G: Graph, mode: str = "exact", interval: bool = False, witness_out: Optional[str] = None,
             argv: Sequence[str] = (), inputs: Sequence = ()) -> RunReport:
        started = time.monotonic()
        results = {"graph": {"n": G.n, "m": G.m}, "mode": mode}
        status, used = "pass", 0
        if mode == "bounds":
            results["bounds"] = asdict(self.engine.bounds(G, interval=interval))
        elif mode == "oracle":
            results["value"] = self.engine.oracle(G)
        elif mode == "exact":
            result = self.engine.exact(G)
            results.update(self._result_dict(result))
            used = result.expansions
            if not result.exact:
                status = "unknown"
            elif witness_out:
                with open(witness_out, "w", encoding="utf-8") as f:
                    f.write(format_witness(result.witness))
                results["witness_file"] = witness_out
        else:
            raise NotImplementedError(f"Burn mode {mode} not found!")
        return self._finalize_report("burn", argv, list(inputs) + [mode, interval], results, started, used, status)

    def variant(self, G: Graph, mode: str = "edge", argv: Sequence[str] = (), inputs: Sequence = ()) -> RunReport:
        started = time.monotonic()
        results = {"graph": {"n": G.n, "m": G.m}, "mode": mode}
        if mode in ("edge", "total"):
            outcome = self.variants.edge(G) if mode == "edge" else self.variants.total(G)
            results.update(self._result_dict(outcome.result))
            status = "pass" if outcome.result.exact else "unknown"
            used = outcome.result.expansions
        elif mode == "relations":
            checks = self.variants.relations(G)
            results["relations"] = [asdict(c) for c in checks]
            statuses = {c.status for c in checks}
            status = "fail" if "fail" in statuses else ("unverified" if "unverified" in statuses else "pass")
            used = 0
        else:
            raise NotImplementedError(f"Variant mode {mode} not found!")
        return self._finalize_report("variant", argv, list(inputs) + [mode], results, started, used, status)

    def gadget(self, values: Sequence[int], emit_dir: Optional[str] = None, verify: bool = False,
               certificate: bool = False, argv: Sequence[str] = (), inputs: Sequence = ()) -> RunReport:
        started = time.monotonic()
        gadget = Gadget(values)
        meta = gadget.meta
        results = {"instance": sorted(values), "m": meta.m, "n": meta.n, "B": meta.B, "b_prime": meta.b_prime,
                   "y": list(meta.y), "spine_length": meta.spine_length,
                   "vertices": gadget.graph.n, "edges": gadget.graph.m}
        status = "pass"
        if emit_dir:
            results["files"] = write_gadget(gadget.graph, meta, emit_dir)
        if verify:
            checks = gadget.verify()
            results["checks"] = [asdict(c) for c in checks]
            if not all(c.passed for c in checks):
                status = "fail"
        if certificate:
            B = gadget.certificate()
            results["partition"] = [list(t) for t in gadget.partition]
            results["certificate"] = format_witness(B).strip()
        return self._finalize_report("gadget", argv, list(inputs) + [emit_dir, verify, certificate],
                                     results, started, 0, status)

    def generate(self, family: str, params: Dict, seed: Optional[int] = None, out: Optional[str] = None,
                 dot: Optional[str] = None, argv: Sequence[str] = ()) -> RunReport:
        started = time.monotonic()
        params = dict(params)
        if family in RANDOM_FAMILIES or (family == "caterpillar" and "legs" not in params):
            if seed is None:
                raise PreconditionError(f"Family {family} is random: a seed is required")
            params["seed"] = seed
        G = generate(family, **params)
        files = {}
        if out:
            write_graph(G, out)
            files["graph"] = out
        if dot:
            with open(dot, "w", encoding="utf-8") as f:
                f.write(to_dot(G, name=family))
            files["dot"] = dot
        results = {"family": family, "params": params, "graph": {"n": G.n, "m": G.m}, "files": files}
        return self._finalize_report("generate", argv, [family, sorted(params.items())], results, started)

    def pkfree_run(self, G: Graph, k: int, argv: Sequence[str] = (), inputs: Sequence = ()) -> RunReport:
        started = time.monotonic()
        B = self.pkfree.sequence(G, k)
        results = {"graph": {"n": G.n, "m": G.m}, "k": k, "bound": (k + 2) // 2,
                   "length": len(B), "horizon": B.horizon, "witness": format_witness(B).strip()}
        return self._finalize_report("pkfree", argv, list(inputs) + [k], results, started)

    def verify_all(self, seed: int, max_nodes: int, sizes: Optional[Dict[str, int]] = None,
                   only: Optional[List[str]] = None, argv: Sequence[str] = (), progress: bool = True) -> RunReport:
        started = time.monotonic()
        run = Acceptance.Run(seed=seed, max_nodes=max_nodes, sizes=sizes, max_seconds=self.engine.max_seconds)
        names = only or list(Acceptance.criterion_map)
        table = [asdict(r) for r in Acceptance.run_all(run, only=names, progress=progress)]
        statuses = {row["status"] for row in table}
        status = "fail" if "fail" in statuses else ("unverified" if "unverified" in statuses else "pass")
        return self._finalize_report("verify-all", argv, [seed, max_nodes, sorted((sizes or {}).items()), names],
                                     {"criteria": table}, started, run.expansions, status)


def build_burnlab(max_nodes: int = None, max_seconds: float = None, threads: int = None,
                  chooser: str = "lowest", seed: int = None) -> BurnLab:
    if threads is not None and threads < 1:
        raise PreconditionError(f"threads must be positive, got {threads}")
    picker = chooser_mapper(chooser, seed)
    engine = BurnEngine(max_nodes=max_nodes, max_seconds=max_seconds, threads=threads)
    pkfree = PkFree(chooser=picker)
    variants = Variants(max_nodes=engine.max_nodes, max_seconds=engine.max_seconds, threads=engine.threads)
    return BurnLab(engine=engine, pkfree=pkfree, variants=variants)
