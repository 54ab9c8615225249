# ./burnlab/__main__.py

import argparse
import json
import sys
from dataclasses import asdict

from dotenv import load_dotenv

from burnlab import build_burnlab
from burnlab.utils.config_loader import PROJECT_ROOT
from burnlab.utils.errors import BurnLabError, PreconditionError
from burnlab.utils.generators import generator_map
from burnlab.utils.io_util import dump_json, read_graph, read_instance
from burnlab.utils.logger import CustomLogger
from burnlab.utils.utils import file_digest

logger = CustomLogger(__name__).getlog()


def _parse_params(pairs):
    """key=value pairs; values are ints, or comma-separated int lists."""
    params = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise PreconditionError(f"Parameter '{pair}' is not of the form key=value")
        key, raw = pair.split("=", 1)
        try:
            params[key] = [int(x) for x in raw.split(",")] if "," in raw else int(raw)
        except ValueError:
            raise PreconditionError(f"Parameter {key} must be an integer or a list of integers, got '{raw}'")
    return params


def _lab(args):
    return build_burnlab(max_nodes=getattr(args, "budget", None), max_seconds=getattr(args, "max_seconds", None),
                         threads=getattr(args, "threads", None))


def burn(args):
    G = read_graph(args.graph)
    mode = "bounds" if args.bounds else ("oracle" if args.oracle else "exact")
    return _lab(args).burn(G, mode=mode, interval=args.interval, witness_out=args.witness_out,
                           argv=args.argv, inputs=[file_digest(args.graph)])


def variant(args):
    G = read_graph(args.graph)
    mode = "total" if args.total else ("relations" if args.relations else "edge")
    return _lab(args).variant(G, mode=mode, argv=args.argv, inputs=[file_digest(args.graph)])


def gadget(args):
    instance = read_instance(args.instance)
    return _lab(args).gadget(instance.values, emit_dir=args.emit_dir, verify=args.verify,
                             certificate=args.certificate, argv=args.argv, inputs=[file_digest(args.instance)])


def generate_cmd(args):
    return _lab(args).generate(args.family, _parse_params(args.params), seed=args.seed, out=args.out,
                               dot=args.dot, argv=args.argv)


def pkfree(args):
    G = read_graph(args.graph)
    return _lab(args).pkfree_run(G, args.k, argv=args.argv, inputs=[file_digest(args.graph)])


def verify_all(args):
    sizes = _parse_params(args.sizes)
    return _lab(args).verify_all(seed=args.seed, max_nodes=args.budget, sizes=sizes, only=args.only,
                                 argv=args.argv, progress=not args.quiet)


def _summary(report) -> str:
    lines = [f"command: {report.command}", f"status: {report.status} (exit {report.exit_code})",
             f"time: {report.timing}s  expansions: {report.budget_consumed}"]
    for key, value in report.results.items():
        if key == "criteria":
            lines.extend(f"  {row['name']:<22} {row['status']:<10} {row['cases']:>5} cases  {row['detail']}"
                         for row in value)
        elif key in ("relations", "checks"):
            lines.extend(f"  {json.dumps(row)}" for row in value)
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="burnlab", description="Graph burning toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budget_required=False):
        p.add_argument("--budget", type=int, required=budget_required, default=None,
                       help="node-expansion cap for the exact solver (required by burn --exact, variant, verify-all)")
        p.add_argument("--max-seconds", dest="max_seconds", type=float, default=None)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--json-out", dest="json_out", type=str, default=None)

    p = sub.add_parser("burn", help="burning number, bounds or oracle value of a graph file")
    p.add_argument("graph")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--bounds", action="store_true")
    mode.add_argument("--oracle", action="store_true")
    p.add_argument("--interval", action="store_true", help="the graph is known to be an interval graph")
    p.add_argument("--witness-out", dest="witness_out", type=str, default=None)
    common(p)
    p.set_defaults(func=burn)

    p = sub.add_parser("variant", help="edge or total burning, or the relation table")
    p.add_argument("graph")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--edge", action="store_true")
    mode.add_argument("--total", action="store_true")
    mode.add_argument("--relations", action="store_true")
    common(p, budget_required=True)
    p.set_defaults(func=variant)

    p = sub.add_parser("gadget", help="build and check the proper interval gadget of a 3-partition instance")
    p.add_argument("instance")
    p.add_argument("--emit-dir", dest="emit_dir", type=str, default=None)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--certificate", action="store_true")
    common(p)
    p.set_defaults(func=gadget)

    p = sub.add_parser("generate", help="write a named graph family")
    p.add_argument("family", choices=sorted(generator_map))
    p.add_argument("params", nargs="*", help="key=value, e.g. n=25 or legs=1,0,2")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--dot", type=str, default=None)
    common(p)
    p.set_defaults(func=generate_cmd)

    p = sub.add_parser("pkfree", help="burning sequence for a P_k-free graph")
    p.add_argument("graph")
    p.add_argument("k", type=int)
    common(p)
    p.set_defaults(func=pkfree)

    p = sub.add_parser("verify-all", help="run the acceptance corpus")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--only", nargs="*", default=None)
    p.add_argument("--sizes", nargs="*", default=None, help="corpus size overrides, e.g. oracle_graphs=20")
    p.add_argument("--quiet", action="store_true")
    common(p, budget_required=True)
    p.set_defaults(func=verify_all)
    return parser


def main(argv=None) -> int:
    load_dotenv(PROJECT_ROOT / ".env")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "burn" and not (args.bounds or args.oracle) and args.budget is None:
        parser.error("burn --exact needs an explicit --budget")
    args.argv = list(argv) if argv is not None else sys.argv[1:]
    try:
        report = args.func(args)
    except BurnLabError as e:
        logger.error(f"{args.command}: {type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except NotImplementedError as e:
        print(f"error: {e}", file=sys.stderr)
        return PreconditionError.exit_code
    except Exception as e:
        logger.exception(f"{args.command}: unexpected failure")
        print(f"unexpected error: {e}", file=sys.stderr)
        return 1

    print(_summary(report))
    if getattr(args, "json_out", None):
        dump_json(asdict(report), args.json_out)
        logger.info(f"Report written to {args.json_out}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
