# cli/main.py
"""Command line: build regions, count their tilings, check identities, draw them.

    python -m cli count --family holed --a 4 --b 1 --ks 2
    python -m cli verify --id I1_9 --a 1 --b 1
    python -m cli sweep --id E3_5 --grid '{"a": [1, 2], "b": [1]}'

Exit status is 0 on success, 1 when an identity fails and 2 on bad usage.
"""
import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, TextIO

import yaml

from cli.graph_text import graph_text
from cli.render import OVERLAYS, render_svg
from counting.tilings import (METHODS, SYMMETRIC_METHODS, SymmetrySpec, count_symmetric_tilings, count_tilings,
                              count_tilings_free, free_boundary_graph, weighted_tiling_count)
from duality.factorization import factorization_split
from duality.match_graph import MatchGraph, dual_graph
from duality.quotient import orbit_graph, quotient_graph, remove_loop_vertex
from duality.symmetry import group_closure, symmetry
from lattice.regions import Family, Region, cored_hexagon, d_region, hexagon, holed_hexagon, rbar_region
from lattice.serialization import deserialize_region, serialize_region
from utils.errors import LabError
from utils.logger import get_logger
from verify.identities import IdentityId, check, format_value, parameters
from verify.sweep import sweep

logger = get_logger(__name__)

FAMILIES = ("hexagon", "holed", "cored", "d", "rbar")


class UsageError(Exception):
    """Raised instead of exiting so that run() can return the status"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _add_region_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("region")
    group.add_argument("--family", choices=FAMILIES, default="hexagon")
    group.add_argument("--region", metavar="FILE", help="Read the region from a JSON document instead")
    for name in ("a", "b", "c", "x", "base"):
        group.add_argument(f"--{name}", type=int)
    group.add_argument("--eps", type=int, choices=[-1, 0], default=-1)
    group.add_argument("--ks", type=_int_list, default=[])
    group.add_argument("--is", dest="is_", type=_int_list, default=[])
    group.add_argument("--l", type=_int_list, default=[])
    group.add_argument("--q", type=_int_list, default=[])


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--family {args.family} needs " + ", ".join(f"--{n}" for n in missing))


def build_region(args: argparse.Namespace) -> Region:
    if args.region:
        with open(args.region, 'rb') as file:
            return deserialize_region(file.read())
    if args.family == "hexagon":
        _need(args, "a", "b", "c")
        return hexagon(args.a, args.b, args.c)
    if args.family == "holed":
        _need(args, "a", "b")
        return holed_hexagon(args.a, args.b, args.ks)
    if args.family == "cored":
        _need(args, "a", "b", "x")
        return cored_hexagon(args.a, args.b, args.ks, args.x)
    if args.family == "d":
        _need(args, "a", "b")
        return d_region(args.a, args.b, args.eps, args.is_)
    _need(args, "base")
    return rbar_region(args.l, args.q, args.base)


def _given(args: argparse.Namespace) -> Dict[str, Any]:
    """Flags as typed, without argparse bookkeeping"""
    skip = {"func", "json", "command"}
    return {("is" if k == "is_" else k): v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _emit(out: TextIO, args: argparse.Namespace, text: str, result: Dict[str, Any]) -> None:
    """Plain text, or {command, params, result} with --json"""
    if args.json:
        text = json.dumps({"command": args.command, "params": _given(args), "result": result}, sort_keys=True)
    out.write(text + "\n")


# -- subcommands ---------------------------------------------------------------

def _count(args: argparse.Namespace, out: TextIO) -> int:
    region = build_region(args)
    if region.free_edges:
        value, how = count_tilings_free(region), "oracle:free-boundary"
    elif region.half_edges:
        value, how = weighted_tiling_count(region, args.method), "weighted"
    else:
        value, how = count_tilings(region, args.method), args.method
    _emit(out, args, format_value(value),
          {"region": region.params.describe(), "count": format_value(value), "method": how})
    return 0


def _count_sym(args: argparse.Namespace, out: TextIO) -> int:
    region = build_region(args)
    spec = SymmetrySpec.parse(args.sym)
    if region.free_edges:
        value = count_tilings_free(region, spec)
    else:
        value = count_symmetric_tilings(region, spec, method=args.method)
    _emit(out, args, str(value),
          {"region": region.params.describe(), "symmetry": spec.describe(), "count": str(value), "method": args.method})
    return 0


def _identity_params(args: argparse.Namespace) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for name in parameters(args.id):
        if name == "ks":
            params["ks"] = args.ks
        elif name == "is":
            params["is"] = args.is_
        elif name == "odd":
            params["odd"] = args.odd
        elif getattr(args, name) is not None:
            params[name] = getattr(args, name)
    return params


def _verify(args: argparse.Namespace, out: TextIO) -> int:
    result = check(args.id, _identity_params(args))
    _emit(out, args, result.summary(), result.as_dict())
    return 0 if result.verdict else 1


def _parse_grid(text: Optional[str]) -> Optional[Dict[str, Any]]:
    if text is None:
        return None
    try:
        grid = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise UsageError(f"--grid is not JSON or YAML: {e}")
    if grid is None:
        return {}
    if not isinstance(grid, dict):
        raise UsageError("--grid must map parameter names to value lists")
    return grid


def _sweep(args: argparse.Namespace, out: TextIO) -> int:
    report = sweep(args.id, _parse_grid(args.grid), out=args.out, workers=args.workers)
    passed = len(report.rows) - len(report.failures)
    _emit(out, args, f"{report.identity_id.value}: {passed}/{len(report.rows)} OK -> {report.path}",
          {"identity": report.identity_id.value, "points": len(report.rows), "failed": len(report.failures),
           "report": report.path, "timings": report.timing_path})
    return report.exit_code


def _quotient(region: Region, spec: SymmetrySpec) -> MatchGraph:
    g = free_boundary_graph(region) if region.free_edges else dual_graph(region)
    if spec.is_trivial:
        return g
    elements = spec.elements(region)
    if len(elements) == 1 and spec.is_rotation_group and not region.free_edges:
        return quotient_graph(g, elements[0])
    group = group_closure([e.permutation(g.labels) for e in elements], g.vertex_count)
    return orbit_graph(g, group, name=f"{g.name} / <{spec.describe()}>")


def _write(path: Optional[str], text: str, out: TextIO) -> None:
    if path:
        with open(path, 'w') as file:
            file.write(text)
        logger.info(f"Wrote {path}")
    else:
        out.write(text)


def _render(args: argparse.Namespace, out: TextIO) -> int:
    region = build_region(args)
    graph = _quotient(region, SymmetrySpec.parse(args.sym)) if args.overlay == "quotient" else None
    _write(args.out, render_svg(region, overlay=args.overlay, graph=graph), out)
    if args.save_region:
        with open(args.save_region, 'wb') as file:
            file.write(serialize_region(region))
    return 0


def _quotient_cmd(args: argparse.Namespace, out: TextIO) -> int:
    region = build_region(args)
    _write(args.out, graph_text(_quotient(region, SymmetrySpec.parse(args.sym)), with_labels=args.labels), out)
    return 0


def _split(args: argparse.Namespace, out: TextIO) -> int:
    region = build_region(args)
    if region.family is not Family.HOLED and region.family is not Family.CORED:
        raise UsageError("split takes a holed or cored hexagon")
    g = quotient_graph(dual_graph(region), symmetry(region, "rot180"))
    forced = Fraction(1)
    if g.loops:
        g, forced = remove_loop_vertex(g)
    result = factorization_split(g, symmetry(region, "reflh"))
    header = f"# multiplier 2^{result.multiplier_log2}, forced loop weight {format_value(forced)}\n"
    _write(args.out, header + graph_text(result.subgraph, with_labels=args.labels), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lozenge-lab", description="Exact lozenge tiling counts and identity checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    count = sub.add_parser("count", help="Number of tilings of a region")
    _add_region_args(count)
    count.add_argument("--method", choices=METHODS, default="auto")
    count.set_defaults(func=_count)

    count_sym = sub.add_parser("count-sym", help="Tilings fixed by a symmetry group")
    _add_region_args(count_sym)
    count_sym.add_argument("--sym", required=True, help="Generators, e.g. rot180,reflv")
    count_sym.add_argument("--method", choices=SYMMETRIC_METHODS, default="auto")
    count_sym.set_defaults(func=_count_sym)

    for name, helptext in (("verify", "Check one identity at one parameter point"),
                           ("sweep", "Check one identity over a parameter grid")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--id", required=True, choices=[i.value for i in IdentityId])
        if name == "verify":
            for flag in ("a", "b", "x"):
                p.add_argument(f"--{flag}", type=int)
            p.add_argument("--ks", type=_int_list, default=[])
            p.add_argument("--is", dest="is_", type=_int_list, default=[])
            p.add_argument("--odd", action="store_true")
            p.set_defaults(func=_verify)
        else:
            p.add_argument("--grid", help="JSON or YAML mapping, e.g. '{a: [1, 2], b: [1]}'; default from config")
            p.add_argument("--out", help="CSV report path")
            p.add_argument("--workers", type=int)
            p.set_defaults(func=_sweep)

    render = sub.add_parser("render", help="SVG picture of a region")
    _add_region_args(render)
    render.add_argument("--overlay", choices=OVERLAYS, default="none")
    render.add_argument("--sym", default="rot180", help="Group for the quotient overlay")
    render.add_argument("--out", help="SVG path; stdout when omitted")
    render.add_argument("--save-region", metavar="FILE", help="Also write the region as a JSON document")
    render.set_defaults(func=_render)

    quotient = sub.add_parser("quotient", help="Orbit graph as text; --sym identity gives the dual graph")
    _add_region_args(quotient)
    quotient.add_argument("--sym", default="rot180")
    quotient.add_argument("--labels", action="store_true", help="List the cells of every vertex")
    quotient.add_argument("--out")
    quotient.set_defaults(func=_quotient_cmd)

    split = sub.add_parser("split", help="Half graph of the 180-degree quotient as text")
    _add_region_args(split)
    split.add_argument("--labels", action="store_true")
    split.add_argument("--out")
    split.set_defaults(func=_split)

    for p in sub.choices.values():
        p.add_argument("--json", action="store_true", help="Print a JSON document instead of text")
    return parser


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except (UsageError, argparse.ArgumentTypeError) as e:
        err.write(f"usage error: {e}\n")
        return 2
    except LabError as e:
        logger.error(f"{type(e).__name__}: {e}")
        err.write(f"error: {type(e).__name__}: {e}\n")
        return 2
    except OSError as e:
        err.write(f"error: {e}\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
