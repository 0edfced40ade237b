"""
Command-line front end.

A workspace is a single JSON document describing one standard surface, named
curves on it, named maps (twist words or serialized encodings), an optional
curve system with a prescribed action, and default run parameters.  Every
subcommand reads the workspace, runs one library operation, and prints a
JSON report to standard output; diagnostics go to standard error.

Reports are byte-identical for identical inputs and seeds: keys are sorted,
weights and other possibly large integers are decimal strings, and wall
clock timings are included only when asked for with --timing.

Exit codes: 0 on success or an accepted candidate, 2 when an orbit in the
curve graph refuses the construction, 3 when the exponent sweep is
exhausted, 1 on any input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .surface import (TopologyError, build_surface, triangulation_to_json)
from .curves import (InvalidCurveError, MulticurveCoords, validate,
                     is_single_curve, is_essential, cut_along,
                     coords_to_jsonable, coords_from_jsonable)
from .mapping import (EncodingError, ShorteningError, parse_twist_word,
                      encoding_to_jsonable, encoding_from_jsonable)
from .orbits import (SystemError_, CurveSystem, check_independent,
                     check_maximal, build_gamma, find_orbit,
                     chain_decomposition)
from .classify import ClassifyParams, classify, default_order_bound
from .construct import (ConstructionError, SearchSchedule, maximalize,
                        search_twist_family, _result_jsonable)


class WorkspaceError(ValueError):
    """Raised when the workspace document cannot be interpreted."""


_INPUT_ERRORS = (WorkspaceError, InvalidCurveError, TopologyError,
                 EncodingError, ShorteningError, SystemError_,
                 ConstructionError)


# -- workspace loading --------------------------------------------------------

class Workspace:
    """The parsed document: one surface, named curves and maps, an optional
    system, and parameter defaults that flags may override."""

    def __init__(self, tri, curves, maps, system, params):
        self.tri = tri
        self.curves = curves
        self.maps = maps
        self.system = system
        self.params = params

    def curve(self, name):
        if name not in self.curves:
            raise WorkspaceError("unknown curve name %r" % name)
        return self.curves[name]

    def map(self, name):
        if name not in self.maps:
            raise WorkspaceError("unknown map name %r" % name)
        return self.maps[name]

    def curve_system(self):
        if self.system is None:
            raise WorkspaceError('workspace declares no "system" block')
        comps = {n: self.curve(n) for n in self.system["components"]}
        return CurveSystem(self.tri, comps), self.map(self.system["map"])


def load_workspace(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise WorkspaceError("cannot read workspace: %s" % e)
    except json.JSONDecodeError as e:
        raise WorkspaceError("workspace is not valid JSON: %s" % e)
    if not isinstance(doc, dict):
        raise WorkspaceError("workspace must be a JSON object")

    surf = doc.get("surface")
    if not isinstance(surf, dict):
        raise WorkspaceError('workspace needs a "surface" object')
    try:
        genus = int(surf["genus"])
        punctures = int(surf.get("punctures", 0))
    except (KeyError, TypeError, ValueError):
        raise WorkspaceError('surface needs integer "genus" and "punctures"')
    try:
        tri = build_surface(genus, punctures)
    except (TopologyError, ValueError) as e:
        raise WorkspaceError("unsupported surface: %s" % e)

    curves = {}
    for name, cdoc in (doc.get("curves") or {}).items():
        if not isinstance(cdoc, dict) or "weights" not in cdoc:
            raise WorkspaceError('curve %r needs a "weights" list' % name)
        try:
            curves[name] = coords_from_jsonable(tri, cdoc)
        except (InvalidCurveError, ValueError, TypeError) as e:
            raise WorkspaceError("curve %r: %s" % (name, e))

    maps = {}
    for name, mdoc in (doc.get("maps") or {}).items():
        if not isinstance(mdoc, dict):
            raise WorkspaceError("map %r must be an object" % name)
        try:
            if "word" in mdoc:
                maps[name] = parse_twist_word(mdoc["word"], curves)
            elif "moves" in mdoc:
                maps[name] = encoding_from_jsonable(tri, mdoc)
            else:
                raise WorkspaceError(
                    'map %r needs "word" or "moves"' % name)
        except (EncodingError, ShorteningError, InvalidCurveError,
                TopologyError) as e:
            raise WorkspaceError("map %r: %s" % (name, e))

    system = doc.get("system")
    if system is not None:
        if (not isinstance(system, dict) or "components" not in system
                or "map" not in system):
            raise WorkspaceError(
                'system needs "components" (names) and "map" (name)')
        for n in system["components"]:
            if n not in curves:
                raise WorkspaceError("system component %r is not a curve"
                                     % n)
        if system["map"] not in maps:
            raise WorkspaceError("system map %r is not a map"
                                 % system["map"])

    params = doc.get("params") or {}
    if not isinstance(params, dict):
        raise WorkspaceError('"params" must be an object')
    return Workspace(tri, curves, maps, system, params)


# -- parameter resolution -----------------------------------------------------

def _setting(args, ws, key, default):
    """Flag wins over workspace params, which win over the default."""
    val = getattr(args, key, None)
    if val is not None:
        return val
    return ws.params.get(key.replace("_", "-"), ws.params.get(key, default))


def classify_params(args, ws):
    tol = _setting(args, ws, "tolerance", None)
    kw = {}
    order_bound = _setting(args, ws, "order_bound", None)
    if order_bound is not None:
        kw["order_bound"] = int(order_bound)
    weight_cap = _setting(args, ws, "weight_cap", None)
    if weight_cap is not None:
        kw["weight_cap"] = int(weight_cap)
    if tol is not None:
        try:
            kw["residual_tol"] = Fraction(str(tol))
        except (ValueError, ZeroDivisionError):
            raise WorkspaceError("bad tolerance %r" % tol)
    return ClassifyParams(**kw)


def search_schedule(args, ws):
    kw = {"classify_params": classify_params(args, ws)}
    k_max = _setting(args, ws, "k_max", None)
    if k_max is not None:
        kw["k_max"] = int(k_max)
    weight_cap = _setting(args, ws, "weight_cap", None)
    if weight_cap is not None:
        kw["weight_cap"] = int(weight_cap)
    independent = _setting(args, ws, "independent", None)
    if independent:
        kw["independent"] = True
    return SearchSchedule(**kw)


# -- subcommand bodies --------------------------------------------------------

def cmd_surface_info(args, ws):
    tri = ws.tri
    return {
        "genus": tri.genus,
        "punctures": tri.num_punctures,
        "euler_characteristic": tri.euler_characteristic,
        "num_triangles": tri.num_triangles,
        "num_edges": tri.num_edges,
        "num_vertices": tri.num_vertices,
        "edge_labels": list(tri.edge_labels),
        "triangulation": json.loads(triangulation_to_json(tri)),
        "vertex_links": [[str(w) for w in link]
                         for link in tri.vertex_links()],
    }, 0


def cmd_curve_validate(args, ws):
    coords = ws.curve(args.curve)
    try:
        comps = validate(coords)
    except InvalidCurveError as e:
        return {"curve": args.curve, "valid": False, "reason": str(e)}, 0
    return {
        "curve": args.curve,
        "valid": True,
        "component_count": sum(m for _, m in comps),
        "components": [{"weights": [str(x) for x in vec],
                        "multiplicity": mult} for vec, mult in comps],
        "is_single": is_single_curve(coords),
    }, 0


def cmd_curve_cut(args, ws):
    coords = ws.curve(args.curve)
    cut = cut_along(coords)
    pieces = [{
        "euler_characteristic": p.euler_characteristic,
        "boundary_circles": p.boundary_circles,
        "punctures": p.punctures,
        "contains_vertex": p.contains_vertex,
        "is_pants": p.is_pants,
    } for p in cut.pieces]
    return {
        "curve": args.curve,
        "pieces": pieces,
        "piece_count": len(pieces),
        "euler_sum": sum(p.euler_characteristic for p in cut.pieces),
        "has_vertex_free_piece": any(not p.contains_puncture_or_vertex
                                     for p in cut.pieces),
    }, 0


def cmd_curve_essential(args, ws):
    coords = ws.curve(args.curve)
    single = is_single_curve(coords)
    return {
        "curve": args.curve,
        "is_single": single,
        "essential": is_essential(coords) if single else False,
    }, 0


def cmd_map_act(args, ws):
    enc = ws.map(args.map)
    coords = ws.curve(args.curve)
    image = enc.act(coords)
    return {
        "map": args.map,
        "curve": args.curve,
        "image": coords_to_jsonable(image),
        "fixed": image.weights == coords.weights,
    }, 0


def cmd_map_compose(args, ws):
    encs = [ws.map(n) for n in args.map]
    enc = encs[0]
    for other in encs[1:]:
        enc = enc * other
    return {
        "maps": list(args.map),
        "encoding": encoding_to_jsonable(enc),
        "num_moves": len(enc),
    }, 0


def cmd_map_classify(args, ws):
    enc = ws.map(args.map)
    params = classify_params(args, ws)
    report = classify(enc, params)
    return {
        "map": args.map,
        "params": params.jsonable(),
        "report": report.to_jsonable(),
    }, 0


def _gamma_pieces(ws, f_name=None):
    sys_, f = ws.curve_system()
    check = check_independent(sys_)
    if not check:
        raise SystemError_("system is not independent: "
                           + "; ".join(check.problems))
    return sys_.with_images(f), check


def cmd_gamma_build(args, ws):
    sys_, check = _gamma_pieces(ws)
    graph = build_gamma(sys_)
    return {
        "system": dict(ws.system),
        "independence": {"ok": bool(check), "problems": list(check.problems)},
        "graph": graph.to_jsonable(),
    }, 0


def cmd_gamma_orbit(args, ws):
    sys_, _ = _gamma_pieces(ws)
    graph = build_gamma(sys_)
    orbit = find_orbit(graph)
    if orbit is None:
        return {"system": dict(ws.system), "orbit": None}, 0
    return {
        "system": dict(ws.system),
        "orbit": list(orbit),
        "period": len(orbit),
    }, 2


def cmd_gamma_chains(args, ws):
    sys_, _ = _gamma_pieces(ws)
    graph = build_gamma(sys_)
    orbit = find_orbit(graph)
    if orbit is not None:
        return {
            "system": dict(ws.system),
            "orbit": list(orbit),
            "period": len(orbit),
        }, 2
    chains = chain_decomposition(graph)
    return {
        "system": dict(ws.system),
        "chains": [{"vertices": list(ch.vertices),
                    "representative": ch.representative,
                    "is_isolated": ch.is_isolated} for ch in chains],
    }, 0


def cmd_construct_maximalize(args, ws):
    sys_, f = ws.curve_system()
    weight_cap = _setting(args, ws, "weight_cap", None)
    kw = {} if weight_cap is None else {"weight_cap": int(weight_cap)}
    orbit = find_orbit(build_gamma(sys_.with_images(f)))
    if orbit is not None:
        return {
            "status": "refused",
            "orbit": list(orbit),
            "period": len(orbit),
        }, 2
    full, fp = maximalize(sys_, f, **kw)
    added = [n for n in full.names if n not in sys_.components]
    return {
        "status": "completed",
        "system": {n: coords_to_jsonable(c)
                   for n, c in full.components.items()},
        "added": added,
        "images": {n: coords_to_jsonable(full.f_images[n])
                   for n in full.names},
        "map": encoding_to_jsonable(fp),
        "is_maximal": bool(check_maximal(full)),
    }, 0


def cmd_construct_search(args, ws):
    sys_, f = ws.curve_system()
    schedule = search_schedule(args, ws)
    res = search_twist_family(sys_, f, schedule)
    code = {"accepted": 0, "refused": 2, "exhausted": 3}[res.status]
    return _result_jsonable(res, schedule), code


# -- driver ---------------------------------------------------------------------

def _add_common(p):
    p.add_argument("workspace", help="path to the workspace JSON document")
    p.add_argument("--seed", type=int, default=None,
                   help="seed recorded in the report (all algorithms are "
                        "deterministic; the seed pins the report bytes)")
    p.add_argument("--k-max", type=int, default=None, dest="k_max",
                   help="largest twist exponent in the sweep")
    p.add_argument("--tolerance", default=None,
                   help="residual tolerance for dilatation agreement, as a "
                        "decimal string")
    p.add_argument("--order-bound", type=int, default=None, dest="order_bound",
                   help="periodicity bound (0 uses the per-model default)")
    p.add_argument("--weight-cap", type=int, default=None, dest="weight_cap",
                   help="weight cap for curve enumeration")
    p.add_argument("--independent", action="store_true", default=None,
                   help="sweep exponents independently per representative "
                        "instead of on the diagonal")
    p.add_argument("--timing", action="store_true",
                   help="include wall clock seconds in the report (breaks "
                        "byte-for-byte reproducibility)")


class _Parser(argparse.ArgumentParser):
    """Argument errors are input errors: exit 1, not argparse's default 2,
    which this tool reserves for refused constructions."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print("error: %s" % message, file=sys.stderr)
        raise SystemExit(1)


def build_parser():
    top = _Parser(
        prog="curvetwist",
        description="exact curve systems, twist families, and "
                    "pseudo-Anosov certification on standard surfaces")
    groups = top.add_subparsers(dest="group", required=True)

    surface = groups.add_parser("surface").add_subparsers(
        dest="action", required=True)
    _add_common(surface.add_parser("info",
                                   help="describe the standard surface"))

    curve = groups.add_parser("curve").add_subparsers(
        dest="action", required=True)
    for name, hlp in (("validate", "check and decompose a coordinate vector"),
                      ("cut", "cut the surface along a multicurve"),
                      ("essential", "test a single curve for essentiality")):
        p = curve.add_parser(name, help=hlp)
        _add_common(p)
        p.add_argument("curve", help="curve name from the workspace")

    map_ = groups.add_parser("map").add_subparsers(
        dest="action", required=True)
    p = map_.add_parser("act", help="apply a map to a curve")
    _add_common(p)
    p.add_argument("map")
    p.add_argument("curve")
    p = map_.add_parser("compose",
                        help="compose maps (leftmost applied last)")
    _add_common(p)
    p.add_argument("map", nargs="+")
    p = map_.add_parser("classify",
                        help="periodic / reducible / pseudo-Anosov evidence")
    _add_common(p)
    p.add_argument("map")

    gamma = groups.add_parser("gamma").add_subparsers(
        dest="action", required=True)
    for name, hlp in (("build", "build the curve graph of the system"),
                      ("orbit", "look for an orbit (exit 2 when present)"),
                      ("chains", "chain decomposition of an orbit-free "
                                 "graph")):
        _add_common(gamma.add_parser(name, help=hlp))

    construct = groups.add_parser("construct").add_subparsers(
        dest="action", required=True)
    _add_common(construct.add_parser(
        "maximalize", help="complete the system preserving the action"))
    _add_common(construct.add_parser(
        "search", help="sweep twist exponents for pseudo-Anosov evidence"))
    return top


_DISPATCH = {
    ("surface", "info"): cmd_surface_info,
    ("curve", "validate"): cmd_curve_validate,
    ("curve", "cut"): cmd_curve_cut,
    ("curve", "essential"): cmd_curve_essential,
    ("map", "act"): cmd_map_act,
    ("map", "compose"): cmd_map_compose,
    ("map", "classify"): cmd_map_classify,
    ("gamma", "build"): cmd_gamma_build,
    ("gamma", "orbit"): cmd_gamma_orbit,
    ("gamma", "chains"): cmd_gamma_chains,
    ("construct", "maximalize"): cmd_construct_maximalize,
    ("construct", "search"): cmd_construct_search,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    started = time.monotonic()
    try:
        ws = load_workspace(args.workspace)
        report, code = _DISPATCH[(args.group, args.action)](args, ws)
    except _INPUT_ERRORS as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    report["command"] = "%s %s" % (args.group, args.action)
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = 0
    report["seed"] = int(seed)
    if getattr(args, "timing", False):
        report["timing_seconds"] = round(time.monotonic() - started, 3)
    json.dump(report, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
