"""Model files: versioned JSON documents with exact rational entries.

Numbers are written as strings (``"-1"``, ``"3/2"``); integers are accepted on
input too.  Classes are divisor expressions.  ``dump_model`` produces the
canonical text, which ``load_model`` reads back to an equal model.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from ..core.model import (
    CurveRecord, DivisorClass, PointProfile, SurfaceModel, require_valid,
)
from ..errors import ModelError, ParseError
from .expr import format_divisor, parse_divisor_in

__all__ = ["FORMAT_VERSION", "loads_model", "load_model", "dumps_model",
           "bundled_model", "bundled_names", "model_to_dict"]

FORMAT_VERSION = 1


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ModelError(f"{where}: expected an integer or a 'p/q' string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ModelError(f"{where}: bad rational {value!r}") from None


def _expr(text, basis, named, where):
    if not isinstance(text, str):
        raise ModelError(f"{where}: expected a divisor expression")
    try:
        return parse_divisor_in(text, basis, named)
    except ParseError as exc:
        raise ModelError(f"{where}: {exc}") from None


def _point(obj, where: str) -> PointProfile:
    if not isinstance(obj, dict) or "name" not in obj:
        raise ModelError(f"{where}: a point needs a name")
    mult = {}
    for c, m in obj.get("mult", {}).items():
        mult[c] = int(_rational(m, f"{where}.mult.{c}"))
    ord_on = {}
    for c, inner in obj.get("ord_on", {}).items():
        for f, o in inner.items():
            ord_on[(c, f)] = int(_rational(o, f"{where}.ord_on.{c}.{f}"))
    dirs = tuple(_point(z, f"{where}.directions[{k}]")
                 for k, z in enumerate(obj.get("directions", [])))
    return PointProfile(obj["name"], mult, ord_on, frozenset(obj.get("tags", [])), dirs)


def model_from_dict(doc: dict, validate: bool = True) -> SurfaceModel:
    if not isinstance(doc, dict):
        raise ModelError("model file must hold a JSON object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise ModelError(f"unsupported model file version {version!r}")
    for key in ("name", "basis", "gram", "ample_reference"):
        if key not in doc:
            raise ModelError(f"missing field {key!r}")
    basis = list(doc["basis"])
    n = len(basis)
    gram = doc["gram"]
    if not isinstance(gram, list) or len(gram) != n or any(
            not isinstance(row, list) or len(row) != n for row in gram):
        raise ModelError(f"gram must be a {n}x{n} matrix")
    gram = [[_rational(x, f"gram[{i}][{j}]") for j, x in enumerate(row)]
            for i, row in enumerate(gram)]
    named: dict[str, DivisorClass] = {}
    curves = []
    for k, c in enumerate(doc.get("curves", [])):
        where = f"curves[{k}]"
        if "name" not in c or "class" not in c:
            raise ModelError(f"{where}: a curve needs a name and a class")
        cls = _expr(c["class"], basis, named, where)
        genus = c.get("genus")
        sq = c.get("self_intersection")
        curves.append(CurveRecord(c["name"], cls,
                                  None if genus is None else int(genus),
                                  None if sq is None else int(sq)))
        named[c["name"]] = cls
    canonical = doc.get("canonical")
    if canonical is not None:
        canonical = _expr(canonical, basis, named, "canonical")
    model = SurfaceModel(
        name=doc["name"], basis=tuple(basis), gram=gram, canonical=canonical,
        ample_ref=_expr(doc["ample_reference"], basis, named, "ample_reference"),
        curves=tuple(curves),
        points=tuple(_point(p, f"points[{k}]") for k, p in enumerate(doc.get("points", []))),
        complete=bool(doc.get("complete", False)),
        abelian=bool(doc.get("abelian", False)),
    )
    return require_valid(model) if validate else model


def loads_model(text: str, validate: bool = True) -> SurfaceModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return model_from_dict(doc, validate)


def load_model(path, validate: bool = True) -> SurfaceModel:
    """Read a model file; bare names fall back to the bundled models."""
    p = Path(path)
    if not p.exists():
        name = p.name if p.suffix == ".model" else p.name + ".model"
        if p.parent == Path(".") and name in bundled_names():
            return bundled_model(name, validate)
        raise ModelError(f"no such model file: {path}")
    return loads_model(p.read_text(encoding="utf-8"), validate)


def _point_dict(p: PointProfile) -> dict:
    out: dict = {"name": p.name}
    if p.mult:
        out["mult"] = {c: str(m) for c, m in sorted(p.mult.items())}
    if p.ord_on:
        nested: dict = {}
        for (c, f), o in sorted(p.ord_on.items()):
            nested.setdefault(c, {})[f] = str(o)
        out["ord_on"] = nested
    if p.tags:
        out["tags"] = sorted(p.tags)
    if p.directions:
        out["directions"] = [_point_dict(z) for z in p.directions]
    return out


def model_to_dict(model: SurfaceModel) -> dict:
    fmt = lambda d: format_divisor(d, model.basis)  # noqa: E731
    curves = []
    for c in model.curves:
        entry = {"name": c.name, "class": fmt(c.cls)}
        if c.genus is not None:
            entry["genus"] = c.genus
        if c.self_intersection is not None:
            entry["self_intersection"] = c.self_intersection
        curves.append(entry)
    doc = {
        "version": FORMAT_VERSION,
        "name": model.name,
        "basis": list(model.basis),
        "gram": [[str(x) for x in row] for row in model.gram],
        "canonical": None if model.canonical is None else fmt(model.canonical),
        "ample_reference": fmt(model.ample_ref),
        "curves": curves,
        "points": [_point_dict(p) for p in model.points],
        "complete": model.complete,
        "abelian": model.abelian,
    }
    if doc["canonical"] is None:
        del doc["canonical"]
    return doc


def dumps_model(model: SurfaceModel) -> str:
    doc = model_to_dict(model)
    # one matrix row per line keeps the gram readable
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    gram_lines = ",\n".join("    " + json.dumps(row) for row in doc["gram"])
    start = text.index('"gram": [')
    end = text.index("]\n  ],", start) + len("]\n  ]")
    text = text[:start] + '"gram": [\n' + gram_lines + "\n  ]" + text[end:]
    return text + "\n"


def bundled_names() -> list[str]:
    root = resources.files("nok.data")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".model"))


def bundled_model(name: str, validate: bool = True) -> SurfaceModel:
    if not name.endswith(".model"):
        name += ".model"
    text = resources.files("nok.data").joinpath(name).read_text(encoding="utf-8")
    return loads_model(text, validate)
