"""Batch-oriented command-line front end with text and JSON output.

Every invocation is a request with a command name and a parameter mapping;
the response echoes both and carries either a result payload or a
structured error.  Exit status: 0 on success, 2 on usage errors, 1 on
domain errors.  Batch mode reads newline-delimited JSON requests and emits
one JSON response per line, in input order.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .curves import CurveSpec, ShapeKind, ZeroCycle, coh_curve, generic_member
from .lattice import DivClass, DomainError, Surface, SurfaceKind, parse_surface
from .strata import (
    general_zpp_quadric,
    lifting_check,
    stratum_dimension,
    thick_four_line_analysis,
)
from .triples import (
    Outcome,
    Triple,
    check_existence,
    enumerate_triples,
    fiber_dimension,
    realize,
    triple_degree,
    triple_genus,
)


class UsageError(ValueError):
    """Malformed request: unknown command, bad flag syntax, missing parameter."""


# ----------------------------------------------------------------------
# Parameter handling
# ----------------------------------------------------------------------


def _as_class(value, surface: Surface, name: str) -> DivClass:
    if isinstance(value, str):
        text = value.strip().strip("()")
        try:
            coords = tuple(int(p) for p in text.split(",") if p.strip() != "")
        except ValueError:
            raise UsageError(f"cannot parse {name}={value!r} as a class") from None
    elif isinstance(value, (list, tuple)):
        coords = tuple(int(p) for p in value)
    else:
        raise UsageError(f"{name} must be a class, got {value!r}")
    if len(coords) != surface.pic_rank:
        raise UsageError(
            f"{name}={value!r} has {len(coords)} coordinates; "
            f"{surface.token} needs {surface.pic_rank}"
        )
    return DivClass(coords)


def _as_int_tuple(value, name: str) -> tuple[int, ...]:
    if isinstance(value, str):
        parts = [p for p in value.strip().strip("()").split(",") if p.strip() != ""]
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise UsageError(f"{name} must be a list of integers, got {value!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"cannot parse {name}={value!r}") from None


def _get_surface(params: dict) -> Surface:
    token = params.get("surface")
    if token is None:
        raise UsageError("missing parameter: surface")
    try:
        return parse_surface(str(token))
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _build_cycle(params: dict, z: int) -> ZeroCycle:
    allocation = params.get("allocation")
    split = params.get("split")
    general = not params.get("positioned", False)
    kwargs = {}
    if allocation is not None:
        kwargs["allocation"] = _as_int_tuple(allocation, "allocation")
    if split is not None:
        pair = _as_int_tuple(split, "split")
        if len(pair) != 2:
            raise UsageError("split needs exactly two entries: support part, residual part")
        kwargs["split"] = pair
    return ZeroCycle(z, general=general, **kwargs)


def _build_shape(surface: Surface, cls: DivClass, shape_token: str) -> CurveSpec:
    token = (shape_token or "auto").lower()
    if token == "auto":
        return generic_member(surface, cls)
    if token == "empty":
        if not cls.is_zero:
            raise UsageError("an empty curve has the zero class")
        return CurveSpec.empty(surface)
    if token == "integral":
        return CurveSpec.integral(surface, cls)
    if token == "lines":
        a, b = cls.coords
        if a and b:
            raise UsageError("a line union has a pure ruling class (k,0) or (0,k)")
        line = DivClass.of(1, 0) if a else DivClass.of(0, 1)
        return CurveSpec.disjoint_lines(surface, line, a or b)
    if token == "double-line":
        if cls.coords not in ((2, 0), (0, 2)):
            raise UsageError("a double line has class (2,0) or (0,2)")
        line = DivClass.of(1, 0) if cls.coords == (2, 0) else DivClass.of(0, 1)
        return CurveSpec.double_line(surface, line)
    raise UsageError(f"unknown shape {shape_token!r}")


def _class_payload(c: Optional[DivClass]):
    return None if c is None else list(c.coords)


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------


def _cmd_cohomology(params: dict) -> dict:
    surface = _get_surface(params)
    cls = _as_class(params.get("cls"), surface, "cls")
    twist = _as_class(params.get("twist"), surface, "twist")
    z = int(params.get("z", 0))
    curve = _build_shape(surface, cls, params.get("shape", "auto"))
    cycle = _build_cycle(params, z)
    table = coh_curve(curve, twist, cycle)
    return {
        "surface": surface.token,
        "shape": curve.describe(),
        "cls": _class_payload(cls),
        "twist": _class_payload(twist),
        "z": z,
        "table": table.as_dict(),
    }


def _cmd_triple(params: dict) -> dict:
    surface = _get_surface(params)
    eta = _as_class(params.get("eta"), surface, "eta")
    xi = _as_class(params.get("xi"), surface, "xi")
    z = int(params.get("z", 0))
    if xi.is_zero:
        residual = CurveSpec.empty(surface)
    else:
        residual = _build_shape(surface, xi, params.get("shape", "auto"))
    triple = Triple(surface, _build_cycle(params, z), residual, eta)
    verdict = check_existence(triple)
    payload = {
        "surface": surface.token,
        "z": z,
        "xi": _class_payload(None if xi.is_zero else xi),
        "eta": _class_payload(eta),
        "shape": residual.describe(),
        "genus": triple_genus(triple),
        "degree": triple_degree(triple),
        "fiber_dim": None if residual.is_empty else fiber_dimension(triple),
        "existence": verdict.as_dict(),
    }
    return payload


def _cmd_enumerate(params: dict) -> dict:
    surface = _get_surface(params)
    if "degree" not in params or "genus" not in params:
        raise UsageError("enumerate needs degree and genus")
    d = int(params["degree"])
    g = int(params["genus"])
    rows = enumerate_triples(surface, d, g)
    return {
        "surface": surface.token,
        "degree": d,
        "genus": g,
        "count": len(rows),
        "rows": [
            {"z": r.z, "xi": _class_payload(r.xi), "eta": _class_payload(r.eta)}
            for r in rows
        ],
    }


def _cmd_stratum(params: dict) -> dict:
    surface = _get_surface(params)
    xi = _as_class(params.get("xi"), surface, "xi")
    eta = _as_class(params.get("eta"), surface, "eta")
    z = int(params.get("z", 0))
    report = stratum_dimension(surface, z, xi, eta)
    return {"surface": surface.token, **report.as_dict()}


# ----------------------------------------------------------------------
# Named example replays
# ----------------------------------------------------------------------


def _example_thick_4_line(params: dict) -> dict:
    genus = int(params.get("genus", -2))
    report = thick_four_line_analysis(genus)
    return {"name": "thick-4-line", **report.as_dict()}


def _example_triple_line(params: dict) -> dict:
    b = int(params.get("b", 0))
    if b < 0:
        raise UsageError("the triple-line family needs b >= 0")
    quadric = Surface.double_quadric()
    line = CurveSpec.integral(quadric, DivClass.of(1, 0))
    triple = Triple(quadric, ZeroCycle(b + 2), line, DivClass.of(2, 0))
    certificate = coh_curve(
        line, triple.part - quadric.ribbon_twist - quadric.hyperplane, triple.cycle
    )
    stratum = stratum_dimension(quadric, b + 2, DivClass.of(1, 0), DivClass.of(2, 0))
    return {
        "name": "triple-line",
        "b": b,
        "z": b + 2,
        "genus": triple_genus(triple),
        "degree": triple_degree(triple),
        "regularity_certificate": certificate.as_dict(),
        "existence": check_existence(triple).as_dict(),
        "lifting": lifting_check(triple).as_dict(),
        "stratum": stratum.as_dict(),
    }


def _example_double_plane(params: dict) -> dict:
    d = int(params.get("degree", 4))
    genus_values = range(-6, (d - 1) * (d - 2) // 2 + 1)
    plane = Surface.double_plane()
    rows = []
    all_exist = True
    for g in genus_values:
        for row in enumerate_triples(plane, d, g):
            verdict = check_existence(realize(plane, row))
            exists = verdict.outcome is Outcome.EXISTS
            all_exist = all_exist and exists
            rows.append(
                {
                    "genus": g,
                    "z": row.z,
                    "xi": _class_payload(row.xi),
                    "eta": _class_payload(row.eta),
                    "outcome": verdict.outcome.value,
                    "code": verdict.code,
                }
            )
    return {
        "name": "double-plane",
        "degree": d,
        "checked": len(rows),
        "all_exist": all_exist,
        "rows": rows,
    }


def _example_line_union(params: dict) -> dict:
    b = int(params.get("b", 3))
    z = int(params.get("z", b + 1))
    quadric = Surface.double_quadric()
    lines = CurveSpec.disjoint_lines(quadric, DivClass.of(0, 1), b)
    part = DivClass.of(0, b)
    rows = []
    for allocation in _descending_allocations(z, b):
        cycle = ZeroCycle(z, allocation=allocation)
        verdict = check_existence(Triple(quadric, cycle, lines, part))
        rows.append(
            {
                "allocation": list(allocation),
                "outcome": verdict.outcome.value,
                "code": verdict.code,
                "dim": verdict.dim,
            }
        )
    return {"name": "line-union", "b": b, "z": z, "rows": rows}


def _descending_allocations(z: int, parts: int):
    """Unordered distributions of z over ``parts`` slots, largest first."""

    def rec(remaining: int, slots: int, cap: int):
        if slots == 1:
            if remaining <= cap:
                yield (remaining,)
            return
        for head in range(min(remaining, cap), -1, -1):
            for tail in rec(remaining - head, slots - 1, head):
                yield (head,) + tail

    yield from rec(z, parts, z)


def _example_conic_cycles(params: dict) -> dict:
    z_max = int(params.get("z", 4))
    quadric = Surface.double_quadric()
    conic = CurveSpec.integral(quadric, DivClass.of(1, 1))
    rows = []
    for z in range(z_max + 1):
        verdict = check_existence(Triple(quadric, ZeroCycle(z), conic, DivClass.of(1, 1)))
        rows.append({"z": z, "outcome": verdict.outcome.value, "code": verdict.code})
    return {"name": "conic-cycles", "z_max": z_max, "rows": rows}


def _example_degree_d_double_line(params: dict) -> dict:
    d = int(params.get("degree", 6))
    surface = Surface.general_doubling(d)
    line = CurveSpec.integral(surface, DivClass.of(1, 0))
    rows = []
    for z in range(d - 1, 2 * d):
        triple = Triple(surface, ZeroCycle(z), line, DivClass.of(1, 0))
        verdict = check_existence(triple)
        rows.append(
            {
                "z": z,
                "genus": triple_genus(triple),
                "outcome": verdict.outcome.value,
                "code": verdict.code,
                "conditions": verdict.conditions.as_dict(),
            }
        )
    return {"name": "double-line-counterexample", "degree": d, "rows": rows}


def _example_general_zpp(params: dict) -> dict:
    a = int(params.get("a", 2))
    b = int(params.get("b", 3))
    z = int(params.get("z", 1))
    report = general_zpp_quadric(a, b, z)
    return {"name": "general-zpp", **report.as_dict()}


EXAMPLES = {
    "thick-4-line": _example_thick_4_line,
    "triple-line": _example_triple_line,
    "double-plane": _example_double_plane,
    "line-union": _example_line_union,
    "conic-cycles": _example_conic_cycles,
    "double-line-counterexample": _example_degree_d_double_line,
    "general-zpp": _example_general_zpp,
}


def _cmd_examples(params: dict) -> dict:
    name = params.get("name")
    if name not in EXAMPLES:
        raise UsageError(
            f"unknown example {name!r}; available: {', '.join(sorted(EXAMPLES))}"
        )
    return EXAMPLES[name](params)


COMMANDS = {
    "cohomology": _cmd_cohomology,
    "triple": _cmd_triple,
    "enumerate": _cmd_enumerate,
    "stratum": _cmd_stratum,
    "examples": _cmd_examples,
}


def run_request(command: str, params: dict) -> dict:
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    return COMMANDS[command](params)


def build_response(command: str, params: dict, result=None, error=None) -> dict:
    response = {"command": command, "params": params, "ok": error is None}
    if error is None:
        response["result"] = result
    else:
        response["error"] = error
    return response


# ----------------------------------------------------------------------
# Rendering
# ----------------------------------------------------------------------


def render_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True)


def render_text(payload, indent: int = 0) -> str:
    return "\n".join(_text_lines(payload, indent))


def _text_lines(value, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            if isinstance(item, dict) or _is_table(item):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            elif isinstance(item, list):
                lines.append(f"{pad}{key}: {_scalar(item)}")
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
        return lines
    if _is_table(value):
        return _table_lines(value, pad)
    if isinstance(value, list):
        return [f"{pad}- {_scalar(item)}" for item in value]
    return [f"{pad}{_scalar(value)}"]


def _is_table(value) -> bool:
    return (
        isinstance(value, list)
        and bool(value)
        and all(isinstance(item, dict) for item in value)
    )


def _table_lines(rows: list[dict], pad: str) -> list[str]:
    columns = list(rows[0].keys())
    cells = [[_scalar(row.get(c)) for c in columns] for row in rows]
    widths = [
        max(len(str(c)), *(len(cell[i]) for cell in cells)) for i, c in enumerate(columns)
    ]
    header = "  ".join(str(c).ljust(w) for c, w in zip(columns, widths))
    lines = [pad + header]
    for cell in cells:
        lines.append(pad + "  ".join(v.ljust(w) for v, w in zip(cell, widths)))
    return lines


def _scalar(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "(" + ", ".join(_scalar(v) for v in value) + ")"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}={_scalar(v)}" for k, v in value.items()) + "}"
    return str(value)


# ----------------------------------------------------------------------
# Argument parsing and entry points
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doublesurf",
        description="Exact invariants for curves on a double surface in projective 3-space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, surface: bool = True) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")
        if surface:
            p.add_argument("--surface", required=True, help="2H, 2Q or 2F:d")

    p = sub.add_parser("cohomology", help="cohomology table of a twisted bundle on a curve")
    common(p)
    p.add_argument("--cls", required=True, help="curve class, e.g. 2,3")
    p.add_argument("--twist", required=True, help="twisting class, e.g. 0,1")
    p.add_argument("--shape", default="auto",
                   choices=("auto", "empty", "integral", "lines", "double-line"))
    p.add_argument("--z", type=int, default=0)
    p.add_argument("--allocation", help="per-component cycle degrees, e.g. 1,1,0")
    p.add_argument("--split", help="double-line cycle split w,y")
    p.add_argument("--positioned", action="store_true",
                   help="treat the cycle as specified rather than general")

    p = sub.add_parser("triple", help="genus, degree, fiber dimension and existence verdict")
    common(p)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--xi", required=True, help="residual class; the zero class marks an empty residual")
    p.add_argument("--eta", required=True, help="divisorial-part class")
    p.add_argument("--shape", default="auto",
                   choices=("auto", "empty", "integral", "lines", "double-line"))
    p.add_argument("--allocation")
    p.add_argument("--split")
    p.add_argument("--positioned", action="store_true")

    p = sub.add_parser("enumerate", help="all numerical triples of fixed degree and genus")
    common(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)

    p = sub.add_parser("stratum", help="stratum dimension report")
    common(p)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--xi", required=True)
    p.add_argument("--eta", required=True)

    p = sub.add_parser("examples", help="replay a named worked example")
    common(p, surface=False)
    p.add_argument("--name", required=True, choices=sorted(EXAMPLES))
    p.add_argument("--genus", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--z", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--a", type=int)

    p = sub.add_parser("batch", help="newline-delimited JSON requests, one response per line")
    p.add_argument("path", nargs="?", help="request file; stdin when omitted")
    return parser


_PARAM_KEYS = (
    "surface", "cls", "twist", "shape", "z", "allocation", "split",
    "positioned", "xi", "eta", "degree", "genus", "name", "b", "a",
)


def _params_from_args(args: argparse.Namespace) -> dict:
    params = {}
    for key in _PARAM_KEYS:
        value = getattr(args, key, None)
        if value is not None and value is not False:
            params[key] = value
    return params


def _emit(envelope: dict, fmt: str) -> None:
    if fmt == "json":
        print(render_json(envelope))
    else:
        print(render_text(envelope))


def _run_batch(path: Optional[str]) -> int:
    stream = open(path, "r", encoding="utf-8") if path else sys.stdin
    any_failure = False
    try:
        for raw in stream:
            line = raw.strip()
            if not line:
                continue
            try:
                request = json.loads(line)
            except json.JSONDecodeError as exc:
                any_failure = True
                print(render_json(build_response(
                    "?", {}, error={"kind": "usage", "message": f"bad JSON: {exc}"}
                )))
                continue
            command = request.get("command", "?")
            params = request.get("params", {}) or {}
            try:
                result = run_request(command, params)
                print(render_json(build_response(command, params, result=result)))
            except UsageError as exc:
                any_failure = True
                print(render_json(build_response(
                    command, params, error={"kind": "usage", "message": str(exc)}
                )))
            except DomainError as exc:
                any_failure = True
                print(render_json(build_response(
                    command, params, error={"kind": "domain", "message": str(exc)}
                )))
    finally:
        if path:
            stream.close()
    return 1 if any_failure else 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "batch":
        return _run_batch(args.path)
    params = _params_from_args(args)
    params.pop("format", None)
    try:
        result = run_request(args.command, params)
    except UsageError as exc:
        parser.exit(2, f"usage error: {exc}\n")
    except DomainError as exc:
        envelope = build_response(
            args.command, params, error={"kind": "domain", "message": str(exc)}
        )
        _emit(envelope, args.format)
        return 1
    envelope = build_response(args.command, params, result=result)
    _emit(envelope, args.format)
    return 0


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
