"""Batch command-line front end.

Reads a JSON instance (or an array of instances) from ``--input`` or
standard input, dispatches to the library, and prints a run report as
JSON on standard output.  Exit codes: 0 success, 2 invalid input,
3 size cap exceeded.  With ``--report-dir`` each report also writes a
CSV table and, where meaningful, a PNG figure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .core import PointSet, validate_certificate
from .errors import CapExceeded, HyperspanError, InputError, TooLarge
from .fractal import Refusal, cauchy_demo, certify_zero_length, d1_compact_approx
from .hausdorff import hausdorff_distance
from .line import d1_line
from .selftest import run_selftest
from .serialize import (
    certificate_to_json,
    graph_from_json,
    point_sets_from_json,
    pool_from_json,
    space_from_json,
    space_to_json,
    system_from_json,
)
from .steiner import SteinerInstance, d1_exact, mst_upper_bound
from .trees import box_dimension_estimate, covering_number, doubling_walk

COMMANDS = (
    "hausdorff",
    "d1-line",
    "d1-exact",
    "d1-bounds",
    "walk",
    "dim-estimate",
    "certify-zero-length",
    "d1-compact",
    "cauchy-demo",
    "selftest",
)


def _verify_roundtrip(instance, cert_json, space, a, b):
    """Re-validate a certificate after a serialization round trip."""
    blob = json.loads(json.dumps(cert_json, sort_keys=True))
    graph = graph_from_json(blob["graph"], space)
    revalidated = validate_certificate(a, b, graph)
    if abs(revalidated.total_length - blob["total_length"]) > 1e-9:
        raise InputError("certificate total length changed across the round trip")
    return True


def _cmd_hausdorff(instance, opts):
    space = space_from_json(instance)
    a, b = point_sets_from_json(instance, space)
    return {"value": hausdorff_distance(a, b)}


def _cmd_d1_line(instance, opts):
    space = space_from_json(instance)
    a, b = point_sets_from_json(instance, space)
    value, cert = d1_line(a, b)
    out = {"value": value, "certificate": certificate_to_json(cert)}
    if opts["verify"]:
        out["verified"] = _verify_roundtrip(instance, out["certificate"], space, a, b)
    return out


def _steiner_instance(instance):
    space = space_from_json(instance)
    a, b = point_sets_from_json(instance, space)
    pool = pool_from_json(instance, space)
    return space, a, b, SteinerInstance(space, a, b, pool)


def _cmd_d1_exact(instance, opts):
    space, a, b, inst = _steiner_instance(instance)
    value, cert = d1_exact(inst, opts["terminal_cap"], opts["pool_cap"])
    out = {"value": value, "certificate": certificate_to_json(cert)}
    if opts["verify"]:
        out["verified"] = _verify_roundtrip(instance, out["certificate"], space, a, b)
    return out


def _cmd_d1_bounds(instance, opts):
    space, a, b, inst = _steiner_instance(instance)
    value, cert = d1_exact(inst, opts["terminal_cap"], opts["pool_cap"])
    upper, _ = mst_upper_bound(inst, opts["terminal_cap"])
    out = {
        "hausdorff_lower": hausdorff_distance(a, b),
        "value": value,
        "mst_upper": upper,
        "certificate": certificate_to_json(cert),
    }
    if opts["verify"]:
        out["verified"] = _verify_roundtrip(instance, out["certificate"], space, a, b)
    return out


def _cmd_walk(instance, opts):
    space = space_from_json(instance)
    graph = graph_from_json(
        {"vertices": instance.get("vertices", []), "edges": instance.get("edges", [])},
        space,
    )
    walk = doubling_walk(graph)
    seq = list(walk.sequence)
    steps = [space.distance(seq[i - 1], seq[i]) for i in range(1, len(seq))]
    counts = walk.edge_traversals()
    return {
        "sequence": seq,
        "length": walk.length,
        "tree_length": graph.total_length,
        "step_lengths": steps,
        "max_edge_traversals": max(counts.values()) if counts else 0,
    }


def _cmd_dim_estimate(instance, opts):
    space = space_from_json(instance)
    members = instance.get("points")
    if not isinstance(members, list):
        raise InputError("dim-estimate: missing 'points' index array")
    points = PointSet(space, members)
    ladder = instance.get("ladder")
    if not isinstance(ladder, list):
        raise InputError("dim-estimate: missing 'ladder' array of scales")
    estimate = box_dimension_estimate(points, ladder)
    covers = [covering_number(points, float(e)) for e in ladder]
    return {
        "estimate": estimate,
        "ladder": [float(e) for e in ladder],
        "covering_numbers": [c.value for c in covers],
        "exact": [c.exact for c in covers],
    }


def _epsilon_depth(instance, opts, need_epsilon=True):
    epsilon = instance.get("epsilon", opts["epsilon"])
    depth = instance.get("max_depth", instance.get("depth", opts["depth"]))
    if need_epsilon and epsilon is None:
        raise InputError("an epsilon is required (--epsilon or instance field)")
    if depth is None:
        raise InputError("a depth is required (--depth or instance field)")
    if need_epsilon and epsilon <= 0:
        raise InputError("epsilon must be positive")
    if int(depth) < 0:
        raise InputError("depth must be nonnegative")
    return (float(epsilon) if epsilon is not None else None), int(depth)


def _cmd_certify(instance, opts):
    system = system_from_json(instance.get("generator", instance))
    epsilon, depth = _epsilon_depth(instance, opts)
    result = certify_zero_length(system, epsilon, depth)
    if isinstance(result, Refusal):
        return {
            "result": "refusal",
            "reason": result.reason,
            "target_epsilon": result.target_epsilon,
            "level_measures": list(result.level_measures),
            "best_bound": result.best_bound,
        }
    cert_graph = {
        "space": space_to_json(result.graph.space),
        "graph": {
            "vertices": [int(v) for v in result.graph.vertices],
            "edges": [[int(i), int(j)] for i, j in result.graph.edges],
        },
        "sample": [int(i) for i in result.sample.members],
        "total_length": result.graph_length,
    }
    out = {
        "result": "certificate",
        "start_level": result.start_level,
        "end_level": result.end_level,
        "graph_length": result.graph_length,
        "total_length_bound": result.total_length_bound,
        "tail_bound": result.tail_bound,
        "target_epsilon": result.target_epsilon,
        "level_measures": list(result.level_measures),
        "membership_assured": result.membership_assured,
        "certificate": cert_graph,
    }
    if opts["verify"]:
        blob = json.loads(json.dumps(cert_graph, sort_keys=True))
        space = space_from_json(blob["space"])
        graph = graph_from_json(blob["graph"], space)
        sample = PointSet(space, blob["sample"])
        validate_certificate(sample, sample, graph)
        out["verified"] = True
    return out


def _cmd_d1_compact(instance, opts):
    if "A" not in instance or "B" not in instance:
        raise InputError("d1-compact: instance needs generator objects 'A' and 'B'")
    sys_a = system_from_json(instance["A"])
    sys_b = system_from_json(instance["B"])
    _, depth = _epsilon_depth(instance, opts, need_epsilon=False)
    bracket = d1_compact_approx(sys_a, sys_b, depth)
    return {
        "lower": bracket.lower,
        "upper": bracket.upper,
        "line_distance": bracket.line_distance,
        "error_a": bracket.error_a,
        "error_b": bracket.error_b,
        "depth": bracket.depth,
    }


def _cmd_cauchy(instance, opts):
    system = system_from_json(instance.get("generator", instance))
    depths = instance.get("depths")
    if depths is None:
        _, depth = _epsilon_depth(instance, opts, need_epsilon=False)
        depths = list(range(1, depth + 1))
    if not isinstance(depths, list) or len(depths) < 2:
        raise InputError("cauchy-demo: need a 'depths' array with at least two levels")
    steps = cauchy_demo(system, depths)
    return {
        "steps": [
            {
                "depth_from": s.depth_from,
                "depth_to": s.depth_to,
                "distance": s.distance,
                "envelope": s.envelope,
            }
            for s in steps
        ]
    }


def _cmd_selftest(instance, opts):
    return run_selftest(seed=opts["seed"])


_HANDLERS = {
    "hausdorff": _cmd_hausdorff,
    "d1-line": _cmd_d1_line,
    "d1-exact": _cmd_d1_exact,
    "d1-bounds": _cmd_d1_bounds,
    "walk": _cmd_walk,
    "dim-estimate": _cmd_dim_estimate,
    "certify-zero-length": _cmd_certify,
    "d1-compact": _cmd_d1_compact,
    "cauchy-demo": _cmd_cauchy,
    "selftest": _cmd_selftest,
}


def _digest(instance) -> str:
    canonical = json.dumps(instance, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode()).hexdigest()


def run_single(command: str, instance, opts) -> dict:
    """Run one instance and wrap the result in a run report."""
    if instance is not None and not isinstance(instance, dict):
        raise InputError("each instance must be a JSON object")
    start = time.perf_counter()
    result = _HANDLERS[command](instance or {}, opts)
    elapsed = time.perf_counter() - start
    return {
        "command": command,
        "version": __version__,
        "input_digest": _digest(instance or {}),
        "elapsed_seconds": elapsed,
        **result,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperspan",
        description=(
            "Exact hyperspace distances between finite point sets, with "
            "certificates, bounds, and zero-length certification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="path to the JSON instance (default: stdin)")
        p.add_argument("--verify", action="store_true", help="re-validate emitted certificates")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers for batch inputs")
        p.add_argument("--seed", type=int, default=0, help="seed for selftest instance generation")
        p.add_argument("--depth", type=int, default=None, help="level depth for fractal commands")
        p.add_argument("--epsilon", type=float, default=None, help="target epsilon")
        p.add_argument("--terminal-cap", type=int, default=14, dest="terminal_cap")
        p.add_argument("--pool-cap", type=int, default=16, dest="pool_cap")
        p.add_argument("--oracle-cap", type=int, default=8, dest="oracle_cap")
        p.add_argument("--report-dir", default=None, help="write CSV/PNG artifacts here")
    return parser


def _read_payload(args):
    if args.command == "selftest":
        return None
    if args.input:
        with open(args.input, "rb") as fh:
            raw = fh.read()
    else:
        raw = sys.stdin.buffer.read()
    try:
        return json.loads(raw.decode())
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"input is not valid JSON: {exc}") from exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = {
        "verify": args.verify,
        "seed": args.seed,
        "depth": args.depth,
        "epsilon": args.epsilon,
        "terminal_cap": args.terminal_cap,
        "pool_cap": args.pool_cap,
        "oracle_cap": args.oracle_cap,
    }
    try:
        payload = _read_payload(args)
        if isinstance(payload, list):
            if args.jobs > 1:
                with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                    reports = list(
                        pool.map(run_single, [args.command] * len(payload), payload, [opts] * len(payload))
                    )
            else:
                reports = [run_single(args.command, inst, opts) for inst in payload]
            output: dict | list = reports
        else:
            output = run_single(args.command, payload, opts)
    except (CapExceeded, TooLarge) as exc:
        print(json.dumps({"error": {"type": type(exc).__name__, "code": exc.code, "message": str(exc)}}, sort_keys=True))
        return 3
    except HyperspanError as exc:
        print(json.dumps({"error": {"type": type(exc).__name__, "code": exc.code, "message": str(exc)}}, sort_keys=True))
        return 2

    if args.report_dir:
        from .report import write_report_artifacts

        reports = output if isinstance(output, list) else [output]
        instances = payload if isinstance(payload, list) else [payload]
        for i, (rep, inst) in enumerate(zip(reports, instances)):
            stem = args.command if len(reports) == 1 else f"{args.command}_{i:03d}"
            rep["report_files"] = write_report_artifacts(rep, inst, args.report_dir, stem)

    print(json.dumps(output, sort_keys=True, indent=2))
    if args.command == "selftest" and not output["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
