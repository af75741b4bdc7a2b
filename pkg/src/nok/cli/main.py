"""``nok`` command line entry point.

Exit status: 0 on success, 1 when the input is well formed but outside the
domain of the command (not big, not pseudo-effective, failed precondition),
2 for usage, parse and model-file errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .. import chambers as ch
from .. import infinitesimal as inf
from .. import polygon as pg
from .. import positivity as pos
from .. import zariski as zr
from ..core.model import validate_model
from ..core.quadratic import QuadraticNumber
from ..errors import DomainError, InputError, ModelError
from .export import (
    chambers_csv, format_number, polygon_csv, polygon_svg,
)
from .expr import format_divisor, parse_divisor
from .modelfile import dumps_model, load_model

CONDITIONAL = "model-conditional: the curve list is not asserted complete"


def _num(x):
    if x is None:
        return None
    if isinstance(x, (Fraction, QuadraticNumber, int)):
        return format_number(x)
    return x


class Output:
    """Collects human-readable lines and a JSON payload for one command."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.data: dict = {}

    def put(self, key: str, value, text: str | None = None):
        self.data[key] = value
        if text is not None:
            self.lines.append(text)

    def note(self, text: str):
        self.lines.append(text)
        self.data.setdefault("notes", []).append(text)

    def emit(self):
        if self.as_json:
            print(json.dumps(self.data, indent=2, ensure_ascii=False))
        else:
            print("\n".join(self.lines))


# ------------------------------------------------------------ helpers

def _model(args):
    if not args.model:
        raise ModelError("--model is required for this command")
    return load_model(args.model)


def _divisor(args, model):
    if not args.divisor:
        raise InputError("--divisor is required for this command")
    return parse_divisor(args.divisor, model)


def _flag(args, model):
    if not args.flag:
        raise InputError("--flag is required for this command")
    curve = args.flag.strip()
    if not model.has_curve(curve):
        curve = parse_divisor(curve, model)
    return pg.FlagSpec(curve, args.point or "generic")


def _stamp(out: Output, conditional: bool):
    out.put("conditional", conditional)
    if conditional:
        out.note(CONDITIONAL)


def _vertices_text(poly) -> str:
    return " ".join(f"({format_number(t)}, {format_number(y)})" for t, y in poly.vertices())


def _polygon_report(out: Output, poly, args):
    out.put("vertices", [[_num(t), _num(y)] for t, y in poly.vertices()],
            "vertices: " + _vertices_text(poly))
    out.put("nu", _num(poly.nu), f"nu: {format_number(poly.nu)}")
    out.put("mu", _num(poly.mu), f"mu: {format_number(poly.mu)}")
    out.put("area", _num(pg.polygon_area(poly)), f"area: {format_number(pg.polygon_area(poly))}")
    out.put("contains_origin", pg.contains_origin(poly),
            f"contains origin: {pg.contains_origin(poly)}")
    out.put("largest_simplex", _num(pg.largest_simplex(poly)),
            f"largest simplex: {format_number(pg.largest_simplex(poly))}")
    out.put("largest_inverted_simplex", _num(pg.largest_inverted_simplex(poly)),
            f"largest inverted simplex: {format_number(pg.largest_inverted_simplex(poly))}")
    out.put("min_sum", _num(pg.min_sum(poly)), f"min t+y: {format_number(pg.min_sum(poly))}")
    if args.csv:
        Path(args.csv).write_text(polygon_csv(poly), encoding="utf-8")
    if args.svg:
        Path(args.svg).write_text(polygon_svg(poly), encoding="utf-8")
    _stamp(out, poly.conditional)


# ------------------------------------------------------------ commands

def cmd_validate(args, out):
    model = load_model(args.model, validate=False)
    report = validate_model(model)
    out.put("valid", report.valid)
    out.put("signature", list(report.signature[:2]))
    out.put("failures", report.failures)
    out.lines.append(str(report))
    if args.out:
        Path(args.out).write_text(dumps_model(model), encoding="utf-8")
    return 0 if report.valid else 2


def cmd_zariski(args, out):
    model = _model(args)
    D = _divisor(args, model)
    zd = zr.zariski_decompose(model, D)
    out.put("P", format_divisor(zd.P, model), f"P = {format_divisor(zd.P, model)}")
    n_text = " + ".join(c if a == 1 else f"{format_number(a)} {c}"
                        for c, a in sorted(zd.N.items())) or "0"
    out.put("N", {c: _num(a) for c, a in sorted(zd.N.items())}, f"N = {n_text}")
    out.put("P2", _num(model.square(zd.P)), f"P^2 = {format_number(model.square(zd.P))}")
    rep = pos.classify(model, D)
    out.put("positivity", rep.labels(), "positivity: " + (", ".join(rep.labels()) or "none"))
    _stamp(out, zd.conditional)


def cmd_volume(args, out):
    model = _model(args)
    v = zr.volume(model, _divisor(args, model))
    out.put("volume", _num(v), format_number(v))
    _stamp(out, not model.complete)


def cmd_cohomology(args, out):
    model = _model(args)
    h = zr.asymptotic_cohomology(model, _divisor(args, model))
    out.put("cohomology", [_num(x) for x in h], " ".join(format_number(x) for x in h))
    _stamp(out, not model.complete)


def cmd_baselocus(args, out):
    model = _model(args)
    D = _divisor(args, model)
    kinds = ["restricted", "augmented"] if args.kind == "both" else [args.kind]
    for kind in kinds:
        bl = zr.base_locus(model, D, kind)
        out.put(kind, sorted(bl.curves), f"{kind}: {{{', '.join(sorted(bl.curves))}}}")
    if args.point:
        m = zr.asymptotic_multiplicity(model, D, args.point)
        out.put("asymptotic_multiplicity", _num(m),
                f"asymptotic multiplicity at {args.point}: {format_number(m)}")
    _stamp(out, not model.complete)


def cmd_chambers(args, out):
    model = _model(args)
    if args.ray:
        D = _divisor(args, model)
        G = parse_divisor(args.ray, model)
        walk = ch.ray_chamber_walk(model, D, G, args.t_max)
        rows = []
        for seg in walk:
            end = "inf" if seg.end is None else format_number(seg.end)
            rows.append({"start": _num(seg.start), "end": end,
                         "support": list(seg.support.curves)})
            out.lines.append(f"[{format_number(seg.start)}, {end}] {seg.support}")
        out.put("walk", rows)
        out.put("chambers_met", len(walk), f"chambers met: {len(walk)}")
        _stamp(out, not model.complete)
        return 0
    if args.count_only:
        n = ch.count_chambers(model, args.backend)
        out.put("count", n, str(n))
    else:
        chs = ch.enumerate_chambers(model)
        out.put("chambers", [list(c.curves) for c in chs])
        for c in chs:
            out.lines.append(str(c) + ("  (indeterminate)" if c.indeterminate else ""))
        out.put("count", len(chs), f"{len(chs)} chambers")
        if args.csv:
            Path(args.csv).write_text(chambers_csv(chs), encoding="utf-8")
    _stamp(out, not model.complete)


def cmd_delpezzo(args, out):
    if args.r is None:
        raise InputError("--r is required")
    if not 1 <= args.r <= 8:
        raise InputError("--r must lie in 1..8")
    model = ch.del_pezzo_model(args.r)
    out.put("curves", len(model.curves), f"(-1)-curves: {len(model.curves)}")
    n = ch.count_chambers(model, args.backend)
    out.put("chambers", n, f"chambers: {n}")
    if not args.count_only:
        for c in model.curves:
            out.lines.append(f"  {c.name} = {format_divisor(c.cls, model)}")
        out.data["curve_classes"] = {c.name: format_divisor(c.cls, model) for c in model.curves}
    if args.out:
        Path(args.out).write_text(dumps_model(model), encoding="utf-8")


def cmd_polygon(args, out):
    model = _model(args)
    D = _divisor(args, model)
    flag = _flag(args, model)
    poly = pg.no_polygon(model, D, flag)
    _polygon_report(out, poly, args)


def cmd_infinitesimal(args, out):
    model = _model(args)
    D = _divisor(args, model)
    poly = inf.infinitesimal_polygon(model, D, args.point or "generic", args.z)
    _polygon_report(out, poly, args)


def cmd_seshadri(args, out):
    model = _model(args)
    D = _divisor(args, model)
    x = args.point or "generic"
    res = inf.seshadri_details(model, D, x)
    out.put("seshadri", _num(res.value), f"seshadri constant at {x}: {format_number(res.value)}")
    out.put("inverted_simplex", _num(res.from_polygon),
            f"largest inverted simplex: {format_number(res.from_polygon)}")
    if res.binding_curve:
        out.put("binding_curve", res.binding_curve, f"binding curve: {res.binding_curve}")
    if res.nef_only:
        out.note("class is nef but not ample")
    if args.region:
        rc = inf.lambda_region_check(model, D, x, args.z)
        out.put("region_ok", rc.region_ok, f"region check: {rc.region_ok} ({rc.verdict})")
        out.put("slice2", _num(rc.slice2), f"slice length at t=2: {format_number(rc.slice2)}")
        out.note(rc.note)
        if model.square(D) >= 5:
            ub = inf.seshadri_upper_from_region(model, D, x, args.z)
            out.put("upper_bound", _num(ub),
                    f"upper bound: {format_number(ub) if ub is not None else 'none'}")
    _stamp(out, res.conditional)


def cmd_np(args, out):
    model = _model(args)
    L = _divisor(args, model)
    v = pos.np_check(model, L, args.p)
    out.put("verdict", v.verdict, v.verdict)
    out.put("precondition_ok", v.precondition_ok,
            f"L^2 >= 5(p+2)^2: {v.precondition_ok}")
    if v.witness is not None:
        name = v.witness_curve or format_divisor(v.witness, model)
        out.put("witness", format_divisor(v.witness, model),
                f"witness: {name} (L.C = {format_number(v.witness_degree)}, C^2 = 0)")
    _stamp(out, True)


def cmd_reider(args, out):
    model = _model(args)
    L = _divisor(args, model)
    cands = pos.reider_check(model, L, args.mode)
    out.put("candidates", [
        {"class": format_divisor(c.cls, model), "curve": c.curve,
         "degree": _num(c.degree), "square": _num(c.square)} for c in cands])
    if not cands:
        what = "base point free" if args.mode == "basepoint" else "very ample"
        out.lines.append(f"no obstruction: |K + L| is {what}")
    for c in cands:
        label = c.curve or format_divisor(c.cls, model)
        out.lines.append(f"candidate {label}: (L.D, D^2) = ({format_number(c.degree)}, "
                         f"{format_number(c.square)})")
    _stamp(out, True)


def cmd_bounds(args, out):
    if args.pell is not None:
        b = pos.pell_seshadri_bound(args.pell)
        out.put("pell", {"N": b.N, "p0": b.p0, "q0": b.q0, "bound": _num(b.bound)},
                f"N = {b.N}: (p0, q0) = ({b.p0}, {b.q0}), bound = {format_number(b.bound)}")
        out.note(b.note)
        return 0
    if args.g is None or args.p is None:
        raise InputError("bounds needs --g and --p, or --pell N")
    gb = pos.green_bound(args.g, args.p)
    out.put("green_bound", _num(gb), f"degree bound: {format_number(gb)}")
    out.put("classical", pos.green_classical_bound(args.g, args.p),
            f"classical bound 2g+1+p: {pos.green_classical_bound(args.g, args.p)}")
    if args.degree is not None:
        ok = pos.green_slope_inequality(args.g, args.p, args.degree)
        out.put("slope_inequality", ok, f"slope inequality at degree {args.degree}: {ok}")
    return 0


COMMANDS = {
    "validate": cmd_validate, "zariski": cmd_zariski, "volume": cmd_volume,
    "cohomology": cmd_cohomology, "baselocus": cmd_baselocus, "chambers": cmd_chambers,
    "delpezzo": cmd_delpezzo, "polygon": cmd_polygon, "infinitesimal": cmd_infinitesimal,
    "seshadri": cmd_seshadri, "np": cmd_np, "reider": cmd_reider, "bounds": cmd_bounds,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nok", description="Exact Zariski decompositions, Newton-Okounkov polygons "
                                "and positivity checks on finitely modelled surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--model", help="model file (or the name of a bundled model)")
        p.add_argument("--divisor", help='divisor expression, e.g. "3H - 2E1"')
        p.add_argument("--flag", help="flag curve: a curve name or a class expression")
        p.add_argument("--point", help="point profile name (default: generic)")
        p.add_argument("--z", default="generic", help="point on the exceptional curve")
        p.add_argument("--p", type=int, help="syzygy index p")
        p.add_argument("--r", type=int, help="number of blown-up points (delpezzo)")
        p.add_argument("--g", type=int, help="genus (bounds)")
        p.add_argument("--degree", type=int, help="degree for the slope inequality")
        p.add_argument("--pell", type=int, metavar="N", help="Pell bound for L^2 = N")
        p.add_argument("--kind", default="both",
                       choices=["restricted", "augmented", "both"])
        p.add_argument("--mode", default="basepoint", choices=["basepoint", "separation"])
        p.add_argument("--ray", metavar="G", help="walk D - tG instead of enumerating")
        p.add_argument("--t-max", dest="t_max", type=Fraction, help="cap for --ray")
        p.add_argument("--region", action="store_true", help="also run the region check")
        p.add_argument("--backend", choices=["numba", "numpy"], help="clique kernel")
        p.add_argument("--csv", help="write exact CSV output here")
        p.add_argument("--svg", help="write an SVG drawing here")
        p.add_argument("--out", help="write the (canonical) model file here")
        p.add_argument("--count-only", action="store_true")
        p.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.json)
    try:
        status = COMMANDS[args.command](args, out) or 0
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    out.emit()
    return status


if __name__ == "__main__":
    sys.exit(main())
