"""Command line interface: ``iwahori <command> <group> [args] [--json]``.

Every command builds a ``CommandResult`` whose payload is rendered either as
JSON (validated against ``schema.json``) or as plain text showing the same
fields.  Exit codes: 0 ok, 2 parse error, 3 domain error, 4 failed check.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, replace
from importlib import resources

from . import cells, checks, descent, parsing
from .affine_weyl import inversion_set
from .errors import DomainError, GrammarError, IwahoriError
from .extended_weyl import ext_bruhat_leq, ext_length, kottwitz

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_CHECK = 0, 2, 3, 4
KINDS = ("table", "scalar", "polynomial", "element", "report")
ELEMENT_FIELDS = ("element", "word", "kottwitz_class", "length")


@dataclass
class CommandResult:
    kind: str
    payload: dict
    status: int = EXIT_OK


def load_schema():
    return json.loads(resources.files("iwahori").joinpath("schema.json").read_text())


# helpers


def _number(x):
    return x if isinstance(x, int) else str(x)


def _element_payload(w, group):
    return {
        "element": parsing.format_element(w, group),
        "word": list(cells.word(w)),
        "kottwitz_class": list(w.omega),
        "length": ext_length(w),
    }


def _polynomial_payload(p, q):
    return {
        "polynomial": str(p),
        "coefficients": {str(e): c for e, c in p.terms},
        "q": q,
        "value": None if q is None else p.evaluate(q),
    }


def _group(args):
    spec = parsing.parse_group_spec(args.group)
    if args.lattice is not None:
        spec = replace(spec, lattice=parsing.parse_lattice(args.lattice))
    return parsing.build_group(spec)


def _element(args, group, attr="element"):
    return parsing.parse_element(getattr(args, attr), group)


def _coset_row(w, group):
    d = group.descent
    return [
        parsing.format_element(w, group),
        descent.length_F(w, d),
        descent.length_nr(w, d),
        list(w.omega),
        cells.cell_size_exponents(w),
    ]


# commands


def cmd_info(args):
    g = _group(args)
    d, om = g.descent, g.omega
    rs = g.system
    return CommandResult("table", {
        "columns": ["field", "value"],
        "rows": [
            ["group", str(g.spec)],
            ["base_type", g.spec.base_type],
            ["twist", "none" if d.action.is_trivial() else descent.action_label(d.nr_system, d.action)],
            ["galois_order", d.action.order],
            ["lattice", str(g.spec.lattice) if isinstance(g.spec.lattice, str)
             else json.dumps([list(r) for r in g.spec.lattice])],
            ["walls", " ".join(g.names)],
            ["restricted_type", rs.finite.cartan_type],
            ["reduced", rs.is_reduced()],
            ["omega_order", om.order],
            ["omega_classes", [list(c) for c in om.classes]],
            ["d_values", [v for _, v in sorted(descent.d_values(d).items())]],
        ],
    })


def cmd_length(args):
    g = _group(args)
    return CommandResult("scalar", {"value": descent.length_F(_element(args, g), g.descent)})


def cmd_length_nr(args):
    g = _group(args)
    return CommandResult("scalar", {"value": descent.length_nr(_element(args, g), g.descent)})


def cmd_reduce(args):
    g = _group(args)
    return CommandResult("element", _element_payload(_element(args, g), g))


def cmd_inversions(args):
    g = _group(args)
    w = _element(args, g)
    from .root_data import is_divisible
    roots = sorted(inversion_set(w.map), key=lambda a: (a.gradient, a.level))
    return CommandResult("table", {
        "columns": ["gradient", "level", "divisible"],
        "rows": [[[_number(x) for x in a.gradient], _number(a.level), is_divisible(a, g.system)]
                 for a in roots],
    })


def cmd_bruhat(args):
    g = _group(args)
    w, v = _element(args, g, "left"), _element(args, g, "right")
    return CommandResult("scalar", {"value": ext_bruhat_leq(w, v)})


def cmd_kottwitz(args):
    g = _group(args)
    return CommandResult("scalar", {"value": list(kottwitz(_element(args, g)))})


def cmd_omega(args):
    g = _group(args)
    om = g.omega
    from .affine_weyl import act_root
    walls = list(om.system.simple_affine_roots)
    rows = []
    for c in om.classes:
        tau = om.transversal[c]
        perm = [walls.index(act_root(tau, a)) for a in walls]
        rows.append([list(c), [_number(x) for x in om.representatives[c]],
                     [g.names[i] for i in perm]])
    return CommandResult("table", {"columns": ["class", "translation", "wall_images"], "rows": rows})


def cmd_double_cosets(args):
    g = _group(args)
    J = parsing.parse_walls(args.J, g)
    J2 = parsing.parse_walls(args.J2, g)
    within = parsing.parse_walls(args.within, g) if args.within is not None else None
    for walls in (J, J2) + ((within,) if within is not None else ()):
        cells.parabolic(g.system, walls)
    reps = cells.enumerate_double_cosets(g.omega, J, J2, args.L, within=within)
    return CommandResult("table", {
        "columns": ["rep_word", "length_F", "length_nr", "kottwitz_class", "cell_size_exponents"],
        "rows": [_coset_row(w, g) for w in reps],
    })


def cmd_cell_size(args):
    g = _group(args)
    return CommandResult("polynomial", _polynomial_payload(cells.cell_size(_element(args, g)), args.q))


def cmd_poincare(args):
    g = _group(args)
    J = parsing.parse_walls(args.parabolic, g)
    cells.parabolic(g.system, J)
    return CommandResult("polynomial", _polynomial_payload(cells.ball_poincare(g.omega, args.L, J), args.q))


def cmd_d_values(args):
    g = _group(args)
    values = descent.d_values(g.descent)
    return CommandResult("table", {"columns": ["wall", "d"],
                                   "rows": [[g.names[i], v] for i, v in sorted(values.items())]})


def cmd_check(args):
    specs = args.groups or list(checks.DEFAULT_SPECS)
    results = []
    start = time.perf_counter()
    for text in specs:
        args.group = text
        results.extend(checks.run_checks(_group(args), args.depth))
    args.group = None
    passed = all(r.passed for r in results)
    return CommandResult("report", {
        "passed": passed,
        "depth": args.depth,
        "seconds": round(time.perf_counter() - start, 2),
        "results": [r.as_dict() for r in results],
    }, EXIT_OK if passed else EXIT_CHECK)


# rendering


def _cell(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, list):
        return "[" + ",".join(_cell(y) for y in x) + "]"
    if x is None:
        return "-"
    return str(x)


def render_text(result):
    p = result.payload
    if result.kind == "scalar":
        return _cell(p["value"])
    if result.kind == "table":
        header = p["columns"]
        body = [[_cell(x) for x in row] for row in p["rows"]]
        widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header] + body]
        return "\n".join(lines)
    if result.kind == "report":
        lines = [f"{'PASS' if r['passed'] else 'FAIL'}  {r['group']:<6} {r['module']:<13} "
                 f"{r['name']} ({r['cases']} cases){'  ' + r['detail'] if r['detail'] else ''}"
                 for r in p["results"]]
        lines.append(f"passed: {_cell(p['passed'])}  depth: {p['depth']}  seconds: {p['seconds']}")
        return "\n".join(lines)
    if result.kind == "polynomial":
        lines = [p["polynomial"], f"coefficients: {_cell([[int(e), c] for e, c in p['coefficients'].items()])}"]
        if p["q"] is not None:
            lines.append(f"q: {p['q']}  value: {p['value']}")
        return "\n".join(lines)
    return "\n".join(f"{k}: {_cell(p[k])}" for k in ELEMENT_FIELDS)


def render_json(command, group, result):
    return json.dumps({"command": command, "group": group, "kind": result.kind,
                       "data": result.payload}, sort_keys=True)


def error_json(command, exc):
    code = getattr(exc, "code", "parse_error")
    return json.dumps({"command": command, "error": {"code": code, "message": str(exc)}},
                      sort_keys=True)


# parser

COMMANDS = {
    "info": (cmd_info, "group summary: walls, restricted type, Omega, d-values"),
    "length": (cmd_length, "length in the (fixed) group"),
    "length-nr": (cmd_length_nr, "length over the maximal unramified extension"),
    "reduce": (cmd_reduce, "canonical reduced expression"),
    "inversions": (cmd_inversions, "positive affine roots made negative"),
    "bruhat": (cmd_bruhat, "is LEFT <= RIGHT in the Bruhat order"),
    "kottwitz": (cmd_kottwitz, "Kottwitz class in Omega"),
    "omega": (cmd_omega, "length-zero elements: classes and wall permutations"),
    "double-cosets": (cmd_double_cosets, "minimal representatives of W_J \\ W / W_J'"),
    "cell-size": (cmd_cell_size, "number of points of the Iwahori cell, as a polynomial in q"),
    "poincare": (cmd_poincare, "sum of cell sizes over a ball of W / W_J"),
    "d-values": (cmd_d_values, "l_nr of each fixed simple reflection"),
    "check": (cmd_check, "run the invariant suite"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--q", type=int, default=None, help="evaluate polynomials at q")
    common.add_argument("--lattice", default=None,
                        help="translation lattice: adjoint, sc or basis:[[..],..] (integer rows)")

    parser = argparse.ArgumentParser(prog="iwahori", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name == "check":
            p.add_argument("groups", nargs="*", help="group specs (default: the built-in six)")
            p.add_argument("--depth", type=int, default=6)
            continue
        p.add_argument("group", help=parsing.SPEC_GRAMMAR)
        if name in ("length", "length-nr", "reduce", "inversions", "kottwitz", "cell-size"):
            p.add_argument("element", help=parsing.ELEMENT_GRAMMAR)
        elif name == "bruhat":
            p.add_argument("left")
            p.add_argument("right")
        elif name == "double-cosets":
            p.add_argument("J", help="walls, comma separated; '-' for none")
            p.add_argument("J2", help="walls, comma separated; '-' for none")
            p.add_argument("L", type=int, help="length bound")
            p.add_argument("--within", default=None,
                           help="restrict to the finite parabolic generated by these walls")
        elif name == "poincare":
            p.add_argument("L", type=int, help="length bound")
            p.add_argument("--parabolic", default="-", help="walls of J; '-' for none")
    return parser


def run(argv):
    """Parse ``argv`` and execute; returns ``(exit status, output text)``."""
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        result = handler(args)
    except GrammarError as exc:
        return EXIT_PARSE, _error(args, exc)
    except (DomainError, IwahoriError) as exc:
        return EXIT_DOMAIN, _error(args, exc)
    group = None if args.command == "check" else args.group
    if args.json:
        return result.status, render_json(args.command, group, result)
    return result.status, render_text(result)


def _error(args, exc):
    if args.json:
        return error_json(args.command, exc)
    return f"error [{exc.code}]: {exc}"


def main(argv=None):
    status, text = run(sys.argv[1:] if argv is None else argv)
    failed = status in (EXIT_PARSE, EXIT_DOMAIN)
    stream = sys.stderr if failed and not text.startswith("{") else sys.stdout
    print(text, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
