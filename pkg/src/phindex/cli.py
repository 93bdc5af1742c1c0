"""Command-line front end.

Every invocation prints exactly one JSON report on standard output and
exits 0 when the requested check passes, 1 when a well-posed check fails
(the report then carries structured diagnostics), and 2 when the input
itself is unusable (the complaint goes to standard error, like a usage
error). Output is byte-identical across repeated identical invocations.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .cover import (
    SingularPartition,
    index_lift_inverse,
    numeric_lift_check,
    reduction_sum_check,
    riemann_hurwitz,
)
from .errors import InputError, PhindexError
from .fields import (
    catalog_get,
    catalog_names,
    field_to_json,
    load_field_file,
)
from .halfint import HalfIndex
from .obstruction import BagpipeSpec, foliation_feasibility, witness_poles
from .surface import (
    discrete_ph_sum,
    generate_surface,
    load_mesh_file,
    poincare_1885_check,
    validate_triangulation,
)
from .svgplot import render_field_svg
from .tangency import (
    SurgeryStep,
    census_counts,
    cross_check_index,
    bendixson_index,
    circuit_from_tangencies,
    find_tangencies,
    hamburger_index,
    loop_free_bound_check,
    surgery_replay,
)
from .winding import Circle, winding_index

HINTS = {
    "degenerate-tangency": "re-run with a slightly different --radius",
    "circuit-is-leaf": "re-run with --center offset from the singularity",
}


# --------------------------------------------------------------- input helpers

def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"expected X,Y, got {text!r}")
    try:
        return (float(parts[0]), float(parts[1]))
    except ValueError:
        raise InputError(f"expected numeric X,Y, got {text!r}") from None


def _parse_half_list(text: str) -> tuple[HalfIndex, ...]:
    stripped = text.strip()
    if not stripped:
        return ()
    return tuple(HalfIndex.parse(part) for part in stripped.split(","))


def _parse_steps(text: str) -> list[SurgeryStep]:
    stripped = text.strip()
    if not stripped:
        return []
    steps = []
    for token in stripped.split(","):
        fields = token.strip().split(":")
        scenario = fields[0]
        extras = [0, 0]
        if len(fields) > 3:
            raise InputError(
                f"step {token!r} is not SCENARIO[:convexLost[:concaveLost]]")
        for k, part in enumerate(fields[1:]):
            if not part.isdigit():
                raise InputError(f"extra loss in {token!r} must be a "
                                 "nonnegative integer")
            extras[k] = int(part)
        steps.append(SurgeryStep(scenario, *extras))
    return steps


def _resolve_field(ref: str):
    """A --field value is a JSON file path or a catalog name."""
    if os.path.exists(ref) or ref.endswith(".json") or os.sep in ref:
        field = load_field_file(ref)
        source = {"file": ref, "sha256": _digest_file(ref)}
    else:
        field = catalog_get(ref).field
        source = {"catalog": ref}
    source["spec"] = field_to_json(field)
    return field, source


def _digest_file(path: str) -> str:
    with open(path, "rb") as handle:
        return hashlib.sha256(handle.read()).hexdigest()


def _resolve_mesh(args):
    given = [name for name in ("mesh", "genus", "crosscaps")
             if getattr(args, name) is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --mesh, --genus, --crosscaps")
    if args.mesh is not None:
        return load_mesh_file(args.mesh), {
            "file": args.mesh, "sha256": _digest_file(args.mesh)}
    if args.genus is not None:
        return generate_surface(genus=args.genus), {"genus": args.genus}
    return (generate_surface(crosscaps=args.crosscaps),
            {"crosscaps": args.crosscaps})


# ------------------------------------------------------------- JSON shaping

def _circle_json(circle: Circle) -> dict:
    return {"center": list(circle.center), "radius": circle.radius}


def _winding_json(result) -> dict:
    return {
        "index": result.index.render(),
        "raw_turns": result.raw_turns,
        "residual": result.residual,
        "samples_used": result.samples_used,
        "max_step": result.max_step,
    }


def _tangency_json(t) -> dict:
    return {
        "angle": t.angle,
        "point": [t.point[0], t.point[1]],
        "kind": t.kind.value,
        "second_order": t.second_order,
    }


def _census_json(tangencies) -> dict:
    internal, external = census_counts(tangencies)
    return {
        "tangencies": [_tangency_json(t) for t in tangencies],
        "internal": internal,
        "external": external,
    }


# ------------------------------------------------------------------- commands

def _cmd_index(args):
    field, source = _resolve_field(args.field)
    circle = Circle(_parse_pair(args.center), args.radius)
    inputs = {"field": source, "circle": _circle_json(circle),
              "method": args.method}
    results = {}
    status = "ok"

    if args.method == "winding":
        wind = winding_index(field, circle, max_depth=args.max_depth)
        results["winding"] = _winding_json(wind)
        results["index"] = wind.index.render()
    elif args.method == "bendixson":
        tangencies = find_tangencies(field, circle, samples=args.samples)
        census = _census_json(tangencies)
        index = bendixson_index(census["internal"], census["external"])
        circuit = circuit_from_tangencies(tangencies)
        census["circuit"] = {"convex": circuit.convex,
                             "concave": circuit.concave}
        results["census"] = census
        results["index"] = index.render()
    else:
        check = cross_check_index(field, circle, samples=args.samples,
                                  max_depth=args.max_depth)
        census = _census_json(check.tangencies)
        census["circuit"] = {"convex": check.circuit.convex,
                             "concave": check.circuit.concave}
        results.update({
            "index": check.winding.index.render(),
            "agree": check.agree,
            "winding": _winding_json(check.winding),
            "census": census,
            "census_circle": _circle_json(check.census_circle),
            "bendixson": check.bendixson.render(),
            "hamburger": check.hamburger.render(),
        })

    if args.assert_loop_free:
        if "catalog" not in source:
            raise InputError("--assert-loop-free needs a catalog field; "
                             "only those carry the leaf-loop flag")
        entry = catalog_get(args.field)
        verdict = loop_free_bound_check(entry, circle)
        results["loop_free"] = {"index": verdict.index.render(),
                                "passed": verdict.passed}
        if not verdict.passed:
            status = "fail"
    return inputs, results, status


def _cmd_tangencies(args):
    field, source = _resolve_field(args.field)
    circle = Circle(_parse_pair(args.center), args.radius)
    inputs = {"field": source, "circle": _circle_json(circle)}
    tangencies = find_tangencies(field, circle, samples=args.samples)
    results = _census_json(tangencies)
    results["bendixson"] = bendixson_index(
        results["internal"], results["external"]).render()
    return inputs, results, "ok"


def _cmd_ph(args):
    mesh, source = _resolve_mesh(args)
    validation = validate_triangulation(mesh)
    report = discrete_ph_sum(mesh)
    inputs = {"mesh": source}
    results = {
        "sigma": [report.sigma0, report.sigma1, report.sigma2],
        "chi": report.chi,
        "orientable": validation.orientable,
        "singularities": [
            {"site": site, "index": index, "count": count}
            for site, index, count in report.singularities],
        "total": report.total,
        "matches_chi": report.total == report.chi,
    }
    return inputs, results, "ok"


def _cmd_poincare1885(args):
    mesh, source = _resolve_mesh(args)
    validation = validate_triangulation(mesh)
    report = poincare_1885_check(mesh)
    inputs = {"mesh": source}
    results = {
        "sigma": [report.sigma0, report.sigma1, report.sigma2],
        "chi": report.chi,
        "orientable": validation.orientable,
        "vertex_sum": report.vertex_sum,
        "edge_identity": report.edge_identity,
        "total": report.total,
        "matches_chi": report.total == report.chi,
    }
    return inputs, results, "ok"


def _cmd_lift(args):
    modes = []
    if args.two_j is not None:
        modes.append("--two-j")
    if args.upstairs is not None:
        modes.append("--upstairs")
    if args.sum_check:
        modes.append("--sum-check")
    if len(modes) != 1:
        raise InputError(
            "give exactly one of --two-j, --upstairs, --sum-check")

    if args.two_j is not None:
        report = numeric_lift_check(args.two_j, Circle((0.0, 0.0),
                                                       args.radius))
        inputs = {"two_j": args.two_j, "radius": args.radius}
        results = {
            "downstairs": report.downstairs.render(),
            "upstairs": HalfIndex.from_int(report.expected_upstairs).render(),
            "numeric_upstairs": report.computed_upstairs,
            "winding": _winding_json(report.winding),
        }
        return inputs, results, "ok"

    if args.upstairs is not None:
        i = HalfIndex.parse(args.upstairs)
        j = index_lift_inverse(i)
        inputs = {"upstairs": args.upstairs}
        results = {"upstairs": i.render(), "downstairs": j.render()}
        return inputs, results, "ok"

    if args.chi is None:
        raise InputError("--sum-check needs --chi")
    partition = SingularPartition(
        orientable=_parse_half_list(args.orientable),
        non_orientable=_parse_half_list(args.non_orientable),
        base_chi=args.chi)
    report = reduction_sum_check(partition)
    inputs = {
        "orientable": [j.render() for j in partition.orientable],
        "non_orientable": [j.render() for j in partition.non_orientable],
        "chi": args.chi,
    }
    results = {
        "deg_r": report.deg_r,
        "chi_cover": report.chi_cover,
        "upstairs_indices": list(report.upstairs_indices),
        "upstairs_sum": report.upstairs_sum,
        "downstairs_sum": report.downstairs_sum.render(),
        "chain": list(report.chain),
        "reading": report.reading,
    }
    return inputs, results, "ok"


def _cmd_rh(args):
    value = riemann_hurwitz(args.chi, args.deg)
    return ({"chi": args.chi, "deg": args.deg},
            {"chi_cover": value}, "ok")


def _cmd_feasible(args):
    caps = None if args.caps is None else _parse_half_list(args.caps)
    spec = BagpipeSpec(chi_bag=args.chi_bag, pipes=args.pipes,
                       cap_indices=caps)
    verdict = foliation_feasibility(spec)
    inputs = {"chi_bag": args.chi_bag, "pipes": args.pipes,
              "caps": None if caps is None else [q.render() for q in caps]}
    results = {
        "feasible": verdict.feasible,
        "chi_m": verdict.chi_m,
        "chi_f": verdict.chi_f,
        "required_cap_sum": verdict.required_cap_sum.render(),
        "witness": (None if verdict.witness is None
                    else [q.render() for q in verdict.witness]),
        "witness_poles": (None if verdict.witness is None
                          else [p.render()
                                for p in witness_poles(verdict.witness)]),
        "chain": list(verdict.chain),
        "note": verdict.note,
    }
    return inputs, results, "ok" if verdict.feasible else "fail"


def _cmd_surgery(args):
    steps = _parse_steps(args.steps)
    result = surgery_replay((args.c, args.cprime), steps)
    inputs = {"c": args.c, "cprime": args.cprime, "steps": args.steps}
    results = {
        "trace": [list(pair) for pair in result.trace],
        "bound": None if result.bound is None else result.bound.render(),
        "bound_holds": result.bound_holds,
    }
    status = "ok" if result.bound_holds in (True, None) else "fail"
    return inputs, results, status


def _cmd_plot(args):
    field, source = _resolve_field(args.field)
    inputs = {"field": source, "grid": args.grid, "out": args.out}
    circle = None
    tangencies = ()
    notes = []
    if args.radius is not None:
        circle = Circle(_parse_pair(args.center), args.radius)
        inputs["circle"] = _circle_json(circle)
        try:
            tangencies = find_tangencies(field, circle)
        except PhindexError as err:
            if err.exit_code != 1:
                raise
            notes.append({"code": err.code, "message": str(err),
                          "hint": HINTS.get(err.code,
                                            "circle drawn without tangency "
                                            "marks")})
    document = render_field_svg(field, grid=args.grid, size=args.size,
                                span=args.span, circle=circle,
                                tangencies=tangencies)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(document)
    results = {
        "out": args.out,
        "bytes": len(document.encode("utf-8")),
        "sha256": hashlib.sha256(document.encode("utf-8")).hexdigest(),
        "tangencies_drawn": len(tuple(tangencies)),
        "notes": notes,
    }
    return inputs, results, "ok"


def _cmd_catalog(args):
    entries = []
    for name in catalog_names():
        entry = catalog_get(name)
        entries.append({
            "name": entry.name,
            "spec": field_to_json(entry.field),
            "index": entry.expected_index.render(),
            "has_loops": entry.has_loops,
            "orientable": entry.orientable,
            "note": entry.note,
        })
    return {}, {"entries": entries}, "ok"


# ------------------------------------------------------------------- plumbing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phindex",
        description="Index arithmetic for singular foliations of surfaces.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_field_args(p):
        p.add_argument("--field", required=True,
                       help="field JSON file or catalog name")
        p.add_argument("--center", default="0,0",
                       help="circle center X,Y (default origin)")
        p.add_argument("--radius", type=float, default=1.0)

    p = sub.add_parser("index", help="index of the singularity inside a "
                       "circle")
    add_field_args(p)
    p.add_argument("--method", choices=("winding", "bendixson", "all"),
                   default="all")
    p.add_argument("--samples", type=int, default=720,
                   help="tangency scan resolution")
    p.add_argument("--max-depth", type=int, default=48,
                   help="winding bisection depth")
    p.add_argument("--assert-loop-free", action="store_true",
                   help="also check the loop-free bound (catalog fields "
                        "only)")
    p.set_defaults(handler=_cmd_index)

    p = sub.add_parser("tangencies", help="tangency census on a circle")
    add_field_args(p)
    p.add_argument("--samples", type=int, default=720)
    p.set_defaults(handler=_cmd_tangencies)

    for name, handler, blurb in (
            ("ph", _cmd_ph, "discrete index sum against chi"),
            ("poincare1885", _cmd_poincare1885,
             "per-vertex tangency count against chi")):
        p = sub.add_parser(name, help=blurb)
        p.add_argument("--mesh", help="triangulation file")
        p.add_argument("--genus", type=int,
                       help="generate an orientable fixture instead")
        p.add_argument("--crosscaps", type=int,
                       help="generate a non-orientable fixture instead")
        p.set_defaults(handler=handler)

    p = sub.add_parser("lift", help="double-cover index relation")
    p.add_argument("--two-j", type=int, dest="two_j",
                   help="doubled downstairs index (odd)")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--upstairs",
                   help="integer upstairs index to map downstairs")
    p.add_argument("--sum-check", action="store_true", dest="sum_check",
                   help="check sum(j) = chi through the cover")
    p.add_argument("--orientable", default="",
                   help="comma list of even-doubled indices")
    p.add_argument("--non-orientable", default="", dest="non_orientable",
                   help="comma list of odd-doubled indices")
    p.add_argument("--chi", type=int, help="base characteristic")
    p.set_defaults(handler=_cmd_lift)

    p = sub.add_parser("rh", help="double-cover Euler characteristic")
    p.add_argument("--chi", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.set_defaults(handler=_cmd_rh)

    p = sub.add_parser("feasible", help="pipe-surface index ledger")
    p.add_argument("--chi-bag", type=int, required=True, dest="chi_bag")
    p.add_argument("--pipes", type=int, required=True)
    p.add_argument("--caps", help="comma list of half-integer cap indices")
    p.set_defaults(handler=_cmd_feasible)

    p = sub.add_parser("surgery", help="replay a concavity surgery ledger")
    p.add_argument("--c", type=int, required=True, help="convex corners")
    p.add_argument("--cprime", type=int, required=True,
                   help="concave corners")
    p.add_argument("--steps", default="",
                   help="comma list like A,B or A:1:0")
    p.set_defaults(handler=_cmd_surgery)

    p = sub.add_parser("plot", help="SVG phase portrait")
    p.add_argument("--field", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--grid", type=int, default=40)
    p.add_argument("--center", default="0,0")
    p.add_argument("--radius", type=float,
                   help="overlay this circle and its tangencies")
    p.add_argument("--span", type=float,
                   help="half-width of the drawn region")
    p.add_argument("--size", type=float, default=480.0)
    p.set_defaults(handler=_cmd_plot)

    p = sub.add_parser("catalog", help="list built-in fields")
    p.set_defaults(handler=_cmd_catalog)

    return parser


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    report = {
        "tool": "phindex",
        "version": __version__,
        "command": args.command,
        "inputs": {},
        "results": {},
        "diagnostics": [],
        "status": "ok",
    }
    try:
        inputs, results, status = args.handler(args)
    except InputError as err:
        print(f"phindex: {err}", file=sys.stderr)
        return 2
    except PhindexError as err:
        diagnostic = {"code": err.code, "message": str(err),
                      "details": _jsonable(err.details)}
        if err.code in HINTS:
            diagnostic["hint"] = HINTS[err.code]
        report["diagnostics"].append(diagnostic)
        report["status"] = "error"
        _emit(report)
        return 1

    report["inputs"] = inputs
    report["results"] = results
    report["status"] = status
    _emit(report)
    return 0 if status == "ok" else 1


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, HalfIndex):
        return value.render()
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)
