"""Batch command line front-end with deterministic JSON/ASCII output.

Exit codes: 0 success, 2 validation error (malformed input, invalid
diagram), 3 computation error (rejected move, failed search).  All output is
byte-identical across runs for fixed inputs and seeds; rationals print as
``num/den`` in lowest terms and subsets are sorted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import diagrams, fibers, networks, wilson

VALIDATION_ERRORS = (
    diagrams.InvalidDiagramError,
    diagrams.InvalidNecklaceError,
    networks.WeightConstraintError,
    networks.RankError,
    wilson.InadmissibleError,
    json.JSONDecodeError,
    KeyError,
    ValueError,
)
COMPUTATION_ERRORS = (
    wilson.MoveRejected,
    wilson.RealizationNotFound,
    wilson.RotationError,
    fibers.ProjectionRankDrop,
    fibers.ClassificationError,
)


@dataclass
class CommandResult:
    status: str  # "success" | "error"
    payload: object = None
    diagnostics: list[str] = field(default_factory=list)
    exit_code: int = 0


def _frac(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _parse_frac(s) -> Fraction:
    return Fraction(str(s))


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_diagram(path: str) -> diagrams.GoDiagram:
    return diagrams.diagram_from_json(_read_json(path))


def _load_wld(path: str) -> wilson.WilsonLoopDiagram:
    return wilson.wld_from_json(_read_json(path))


def _load_weights(path: str) -> dict:
    data = _read_json(path)
    return {tuple(item["box"]): _parse_frac(item["value"]) for item in data}


def _plucker_json(pv: networks.PluckerVector) -> list:
    return [
        {"subset": list(s), "value": _frac(v)}
        for s, v in sorted(pv.entries)
    ]


def _load_pluckers(path: str, n: int, k: int) -> networks.PluckerVector:
    data = _read_json(path)
    coords = {frozenset(item["subset"]): _parse_frac(item["value"]) for item in data}
    return networks.plucker_vector(n, k, coords)


def _cmd_diagram(args) -> CommandResult:
    d = _load_diagram(args.diagram)
    if args.action == "render":
        return CommandResult("success", diagrams.render_ascii(d))
    report = diagrams.validate_filling(d)
    payload = {
        "valid": report.ok,
        "dimension": diagrams.dimension(d) if report.ok else None,
        "le_diagram": diagrams.is_le_diagram(d) if report.ok else None,
        "violations": [
            {"box": list(b), "fill": f, "reason": r} for b, f, r in report.violations
        ],
    }
    diag = [] if report.ok else ["filling violates the distinguished property"]
    return CommandResult("success" if report.ok else "error", payload, diag, 0 if report.ok else 2)


def _cmd_plucker(args) -> CommandResult:
    d = _load_diagram(args.diagram)
    diagrams.ensure_valid(d)
    if args.weights:
        weights = _load_weights(args.weights)
        pv = networks.sample_point(d, weights=weights)
    else:
        pv = networks.sample_point(d, seed=args.seed)
    return CommandResult("success", _plucker_json(pv))


def _cmd_ib(args) -> CommandResult:
    d = _load_diagram(args.diagram)
    diagrams.ensure_valid(d)
    box = tuple(int(x) for x in args.box.split(","))
    formula = diagrams.i_b_formula(d, box)
    via_net = networks.i_b_via_network(d, box)
    if formula != via_net:
        return CommandResult(
            "error", None, [f"formula {sorted(formula)} != network {sorted(via_net)}"], 3
        )
    return CommandResult("success", {"box": list(box), "i_b": sorted(formula)})


def _cmd_fiber(args) -> CommandResult:
    d = _load_diagram(args.diagram)
    diagrams.ensure_valid(d)
    if args.action == "top":
        comp = fibers.top_fiber_component(d)
        return CommandResult("success", diagrams.diagram_to_json(comp.extended))
    if args.action == "list":
        comps = fibers.fiber_components(d)
        return CommandResult(
            "success", [diagrams.diagram_to_json(c.extended) for c in comps]
        )
    poset = fibers.fiber_poset(d)
    return CommandResult("success", fibers.poset_to_json(poset))


def _cmd_classify(args) -> CommandResult:
    d = _load_diagram(args.diagram)
    diagrams.ensure_valid(d)
    pv = _load_pluckers(args.pluckers, d.shape.n + 1, d.shape.k)
    comp = fibers.classify_fiber_point(d, pv)
    return CommandResult("success", diagrams.diagram_to_json(comp.extended))


def _cmd_wld(args) -> CommandResult:
    w = _load_wld(args.wld)
    action = args.action
    if action == "admissible":
        report = wilson.admissibility_report(w)
        return CommandResult("success", {"admissible": report.ok, "reasons": list(report.reasons)})
    if action == "cell":
        neck, le, dim = wilson.sigma_cell(w)
        return CommandResult("success", {
            "necklace": [sorted(s) for s in neck.sets],
            "diagram": diagrams.diagram_to_json(le),
            "dimension": dim,
        })
    if action == "dstar":
        return CommandResult("success", diagrams.diagram_to_json(wilson.d_star_diagram(w)))
    if action == "positivity":
        return CommandResult("success", {"violation": wilson.positivity_violation(w)})
    if action == "minor":
        cols = [int(x) for x in args.col_set.split(",")]
        m = wilson.c_star_matrix(w) if args.star else wilson.c_matrix(w)
        return CommandResult("success", {"columns": cols, "minor": str(wilson.symbolic_minor(m, cols))})
    if action == "boundary":
        prop = tuple(int(x) for x in args.prop.split(","))
        bd = wilson.boundary_move(w, prop, args.vertex)
        return CommandResult("success", {
            "supports": [sorted(s) for s in bd.supports],
            "relation": list(bd.relation) if bd.relation else None,
            "minor": str(wilson.boundary_minor(w, prop, args.vertex)),
        })
    if action == "rotate":
        rot = wilson.rotation_sequence(w, args.family)
        return CommandResult("success", {
            "diagrams": [wilson.wld_to_json(d) for d in rot.diagrams],
            "sigma": list(rot.sigma),
        })
    if action == "monodromy":
        report = wilson.monodromy_sign(w, args.family, seed=args.seed)
        return CommandResult("success", wilson.monodromy_to_json(report))
    raise ValueError(f"unknown wld action {action!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deodhar")
    parser.add_argument("--format", choices=["json", "ascii"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram")
    p.add_argument("action", choices=["check", "render"])
    p.add_argument("--diagram", required=True)
    p.set_defaults(func=_cmd_diagram)

    p = sub.add_parser("plucker")
    p.add_argument("--diagram", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--weights")
    group.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_plucker)

    p = sub.add_parser("ib")
    p.add_argument("--diagram", required=True)
    p.add_argument("--box", required=True, help="row,column labels, e.g. 2,4")
    p.set_defaults(func=_cmd_ib)

    p = sub.add_parser("fiber")
    p.add_argument("action", choices=["list", "top", "poset"])
    p.add_argument("--diagram", required=True)
    p.set_defaults(func=_cmd_fiber)

    p = sub.add_parser("classify")
    p.add_argument("--diagram", required=True)
    p.add_argument("--pluckers", required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("wld")
    p.add_argument("action", choices=[
        "admissible", "cell", "dstar", "positivity", "minor", "boundary", "rotate", "monodromy",
    ])
    p.add_argument("--wld", required=True)
    p.add_argument("--col-set", dest="col_set")
    p.add_argument("--star", action="store_true")
    p.add_argument("--prop")
    p.add_argument("--vertex", type=int)
    p.add_argument("--family", choices=["series", "parallel"])
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=_cmd_wld)

    return parser


def run(argv: list[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandResult("error", None, ["unrecognized arguments"], exc.code or 2)
    try:
        return args.func(args)
    except COMPUTATION_ERRORS as exc:
        return CommandResult("error", None, [str(exc)], 3)
    except VALIDATION_ERRORS as exc:
        return CommandResult("error", None, [str(exc)], 2)
    except FileNotFoundError as exc:
        return CommandResult("error", None, [str(exc)], 2)


def _as_ascii(payload) -> str | None:
    """Render diagram documents as character grids where that makes sense."""
    from .diagrams import diagram_from_json, render_ascii

    if isinstance(payload, dict) and "filling" in payload:
        return render_ascii(diagram_from_json(payload))
    if isinstance(payload, dict) and isinstance(payload.get("diagram"), dict):
        extra = {k: v for k, v in payload.items() if k != "diagram"}
        return _as_ascii(payload["diagram"]) + "\n" + json.dumps(extra, sort_keys=True)
    if isinstance(payload, list) and payload and all(
        isinstance(p, dict) and "filling" in p for p in payload
    ):
        return "\n\n".join(_as_ascii(p) for p in payload)
    return None


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    result = run(argv)
    if result.status == "success" and isinstance(result.payload, str):
        print(result.payload)
    elif result.status == "success" and "ascii" in argv and _as_ascii(result.payload):
        print(_as_ascii(result.payload))
    else:
        print(json.dumps(
            {"status": result.status, "payload": result.payload, "diagnostics": result.diagnostics},
            sort_keys=True,
            indent=2,
        ))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
