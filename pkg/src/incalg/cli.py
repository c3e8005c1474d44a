"""Command line front end.

Exit codes are stable for CI use: 0 on success, 1 when a verification
fails (invalid weight system, system not inner, non-invertible function,
failed oracle suite), 2 when an input does not parse or an enumeration
guard refuses to run.  All output is deterministic: JSON with sorted
keys and a trailing newline, identical bytes for identical inputs and
seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .coeff_rings import (
    NonUnitError,
    RingMismatchError,
    RingParseError,
    parse_ring_spec,
)
from .comparability import ComparabilityGraph, GraphError
from .incidence_algebra import (
    NonInvertibleError,
    SupportError,
    convolve,
    delta,
    function_to_json,
    invert,
    load_function,
    zeta,
)
from .mult_automorphisms import (
    NotInnerWitness,
    WeightSystemError,
    decompose,
    find_potential,
    load_weight_system,
    potential_to_json,
    weight_system_to_json,
)
from .oracle import (
    DEFAULT_SUITE_RINGS,
    GuardExceeded,
    enumerate_inner,
    enumerate_mult,
    run_full_suite,
    verify_structure,
)
from .preorder_core import PreorderError, load_preorder

_INPUT_ERRORS = (
    PreorderError,
    RingParseError,
    RingMismatchError,
    SupportError,
    WeightSystemError,
    GraphError,
    GuardExceeded,
    OSError,
    ValueError,
)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ring_of(args):
    return parse_ring_spec(args.ring) if args.ring else None


def _function_arg(name, preorder, ring):
    if name == "zeta":
        return zeta(preorder, ring)
    if name == "delta":
        return delta(preorder, ring)
    return load_function(name, preorder, ring)


def _cmd_info(args) -> int:
    preorder = load_preorder(args.poset)
    quotient = preorder.quotient()
    graph = ComparabilityGraph(quotient)
    doc = {
        "elements": len(preorder.elements),
        "n": quotient.n_classes,
        "classes": [list(c) for c in quotient.classes],
        "m": graph.m,
        "lambda": graph.cyclomatic,
        "components": len(graph.components),
        "connected": quotient.is_connected(),
        "height": quotient.height(),
    }
    if args.ring:
        ring = parse_ring_spec(args.ring)
        units = ring.central_units()
        doc["ring"] = str(ring)
        doc["central_units"] = [ring.format_element(u) for u in units]
        doc["inner_count"] = len(units) ** (graph.m - graph.cyclomatic)
    _emit(args, _dump(doc))
    return 0


def _cmd_check(args) -> int:
    preorder = load_preorder(args.poset)
    quotient = preorder.quotient()
    ws = load_weight_system(args.weights, quotient, _ring_of(args))
    bad = ws.violations()
    doc = {
        "ring": str(ws.ring),
        "pairs": len(ws.values),
        "valid": not bad,
        "violations": [list(t) for t in bad[:10]],
    }
    ok = not bad
    if args.expect_inner and ok:
        found = find_potential(ws, args.root)
        inner = not isinstance(found, NotInnerWitness)
        doc["inner"] = inner
        if not inner:
            doc["witness"] = {
                "cycle": str(found.cycle),
                "weight": ws.ring.format_element(found.weight),
            }
        ok = inner
    _emit(args, _dump(doc))
    return 0 if ok else 1


def _cmd_is_inner(args) -> int:
    preorder = load_preorder(args.poset)
    quotient = preorder.quotient()
    ws = load_weight_system(args.weights, quotient, _ring_of(args))
    bad = ws.violations()
    if bad:
        print(
            f"not a weight system: chain condition fails at {bad[0]}",
            file=sys.stderr,
        )
        return 1
    found = find_potential(ws, args.root)
    if isinstance(found, NotInnerWitness):
        _emit(
            args,
            _dump(
                {
                    "inner": False,
                    "cycle": str(found.cycle),
                    "weight": ws.ring.format_element(found.weight),
                }
            ),
        )
        return 1
    _emit(args, potential_to_json(found))
    return 0


def _cmd_decompose(args) -> int:
    preorder = load_preorder(args.poset)
    quotient = preorder.quotient()
    ws = load_weight_system(args.weights, quotient, _ring_of(args))
    bad = ws.violations()
    if bad:
        print(
            f"not a weight system: chain condition fails at {bad[0]}",
            file=sys.stderr,
        )
        return 1
    w1, w0, potential = decompose(ws, args.root)
    if args.out:
        paths = {
            "w1": f"{args.out}.w1.json",
            "w0": f"{args.out}.w0.json",
            "potential": f"{args.out}.potential.json",
        }
        with open(paths["w1"], "w", encoding="utf-8") as fh:
            fh.write(weight_system_to_json(w1))
        with open(paths["w0"], "w", encoding="utf-8") as fh:
            fh.write(weight_system_to_json(w0))
        with open(paths["potential"], "w", encoding="utf-8") as fh:
            fh.write(potential_to_json(potential))
        sys.stdout.write(_dump(paths))
    else:
        sys.stdout.write(
            _dump(
                {
                    "tree_trivial": json.loads(weight_system_to_json(w1)),
                    "coboundary": json.loads(weight_system_to_json(w0)),
                    "potential": json.loads(potential_to_json(potential)),
                }
            )
        )
    return 0


def _cmd_enumerate(args) -> int:
    preorder = load_preorder(args.poset)
    quotient = preorder.quotient()
    ring = parse_ring_spec(args.ring)
    mult = enumerate_mult(quotient, ring, force=args.force)
    inner = enumerate_inner(quotient, ring, force=args.force)
    doc = {
        "ring": str(ring),
        "mult": len(mult),
        "inner": len(inner),
    }
    if len(inner):
        doc["tree_trivial"] = len(mult) // len(inner)
    if args.list == "mult":
        doc["systems"] = [json.loads(weight_system_to_json(w))["weights"] for w in mult]
    elif args.list == "inner":
        doc["systems"] = [json.loads(weight_system_to_json(w))["weights"] for w in inner]
    _emit(args, _dump(doc))
    return 0


def _report_line(report) -> str:
    verdict = "PASS" if report.passed else "FAIL"
    inst = " ".join(f"{k}={v}" for k, v in sorted(report.instance.items()))
    counts = " ".join(f"{k}={v}" for k, v in sorted(report.counts.items()))
    line = f"{verdict} {inst} {counts}"
    if not report.passed:
        failed = ",".join(c.name for c in report.checks if not c.passed)
        line += f" failed={failed}"
    return line


def _cmd_verify(args) -> int:
    if args.poset:
        preorder = load_preorder(args.poset)
        quotient = preorder.quotient()
        specs = args.ring.split(",") if args.ring else list(DEFAULT_SUITE_RINGS)
        reports = [
            verify_structure(quotient, parse_ring_spec(spec), args.root, force=args.force)
            for spec in specs
        ]
    else:
        reports = run_full_suite(
            seed=args.seed, max_classes=args.max_classes, force=args.force
        )
    lines = [_report_line(r) for r in reports]
    passed = all(r.passed for r in reports)
    lines.append(f"{'PASS' if passed else 'FAIL'} suite reports={len(reports)} seed={args.seed}")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.out:
        doc = {
            "seed": args.seed,
            "passed": passed,
            "reports": [r.to_dict() for r in reports],
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_dump(doc))
    return 0 if passed else 1


def _cmd_apply(args) -> int:
    preorder = load_preorder(args.poset)
    quotient = preorder.quotient()
    ws = load_weight_system(args.weights, quotient, _ring_of(args))
    f = _function_arg(args.function, preorder, ws.ring)
    _emit(args, function_to_json(ws.apply(f)))
    return 0


def _cmd_convolve(args) -> int:
    preorder = load_preorder(args.poset)
    ring = parse_ring_spec(args.ring)
    f = _function_arg(args.left, preorder, ring)
    g = _function_arg(args.right, preorder, ring)
    _emit(args, function_to_json(convolve(f, g)))
    return 0


def _cmd_invert(args) -> int:
    preorder = load_preorder(args.poset)
    ring = parse_ring_spec(args.ring)
    f = _function_arg(args.function, preorder, ring)
    try:
        _emit(args, function_to_json(invert(f)))
    except (NonInvertibleError, NonUnitError) as e:
        print(f"not invertible: {e}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="incalg",
        description="Incidence algebras of finite preorders: "
        "multiplicative automorphisms, innerness tests, oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, poset=True, ring=False, ring_required=False, weights=False,
               root=False, out=True):
        if poset:
            p.add_argument("--poset", required=True, help="poset/preorder text file")
        if ring or ring_required:
            p.add_argument(
                "--ring",
                required=ring_required,
                help="coefficient ring spec, e.g. Z/5, M(2,Z/3), Z/2 x Z/3",
            )
        if weights:
            p.add_argument("--weights", required=True, help="weight-system JSON file")
        if root:
            p.add_argument("--root", help="spanning-tree root class (default: least label)")
        if out:
            p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("info", help="poset and comparability-graph summary")
    common(p, ring=True)
    p.set_defaults(handler=_cmd_info)

    p = sub.add_parser("check", help="validate a weight system")
    common(p, ring=True, weights=True, root=True)
    p.add_argument(
        "--expect-inner",
        action="store_true",
        help="also require the system to be inner (exit 1 otherwise)",
    )
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("is-inner", help="decide innerness; print potential or witness cycle")
    common(p, ring=True, weights=True, root=True)
    p.set_defaults(handler=_cmd_is_inner)

    p = sub.add_parser("decompose", help="split into tree-trivial and coboundary parts")
    common(p, ring=True, weights=True, root=True, out=False)
    p.add_argument("--out", help="prefix for .w1.json/.w0.json/.potential.json files")
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("enumerate", help="count (and list) weight systems exhaustively")
    common(p, ring_required=True)
    p.add_argument("--list", choices=("mult", "inner"), help="include the systems themselves")
    p.add_argument("--force", action="store_true", help="ignore enumeration guards")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("verify", help="run the oracle suite (exit 0 iff all checks pass)")
    p.add_argument("--poset", help="restrict to one poset file")
    p.add_argument("--ring", help="comma-separated ring specs for --poset mode")
    p.add_argument("--root", help="spanning-tree root class")
    p.add_argument("--max-classes", type=int, default=5,
                   help="poset size bound for the sweep (default 5)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")
    p.add_argument("--force", action="store_true", help="ignore enumeration guards")
    p.add_argument("--out", help="write the full JSON report here")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("apply", help="apply a weight system to an incidence function")
    common(p, ring=True, weights=True)
    p.add_argument("function", help="function JSON file, or zeta/delta")
    p.set_defaults(handler=_cmd_apply)

    p = sub.add_parser("convolve", help="convolution product of two functions")
    common(p, ring_required=True)
    p.add_argument("left", help="function JSON file, or zeta/delta")
    p.add_argument("right", help="function JSON file, or zeta/delta")
    p.set_defaults(handler=_cmd_convolve)

    p = sub.add_parser("invert", help="convolution inverse of a function")
    common(p, ring_required=True)
    p.add_argument("function", help="function JSON file, or zeta/delta")
    p.set_defaults(handler=_cmd_invert)

    return parser


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return args.handler(args)
    except (NonInvertibleError, NonUnitError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
