"""Exact CSV and lossy SVG output for polygons and chamber lists.

Polygon CSV: header ``t,y`` then one vertex per row, counter-clockwise from
the lower-left vertex.  Fields are ``p/q`` or ``p/q + r/s*sqrt(d)``.
Chamber CSV: header ``support`` then one chamber per row with its curves
joined by ``;`` (the nef chamber is the empty field).
"""
from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Iterable

from ..core.quadratic import QuadraticNumber
from ..polygon import NOPolygon

__all__ = ["format_number", "parse_number", "polygon_csv", "read_polygon_csv",
           "polygon_svg", "chambers_csv", "read_chambers_csv"]


def format_number(x) -> str:
    if isinstance(x, QuadraticNumber):
        return str(x)
    return str(Fraction(x))


def parse_number(text: str):
    q = QuadraticNumber.parse(text)
    return q.a if q.is_rational else q


def polygon_csv(poly: NOPolygon) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "y"])
    for t, y in poly.vertices():
        w.writerow([format_number(t), format_number(y)])
    return buf.getvalue()


def read_polygon_csv(text: str) -> NOPolygon:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ["t", "y"]:
        raise ValueError("polygon CSV must start with the header 't,y'")
    return NOPolygon.from_vertices([(parse_number(t), parse_number(y)) for t, y in rows[1:] if t])


def _g(x) -> str:
    return f"{float(x):.12g}"


def polygon_svg(poly: NOPolygon, size: int = 400, margin: int = 40) -> str:
    """Static drawing of the polygon with its vertices labelled (decimal, lossy)."""
    verts = poly.vertices()
    ts = [float(t) for t, _ in verts]
    ys = [float(y) for _, y in verts]
    t0, t1 = min(0.0, min(ts)), max(ts)
    y0, y1 = min(0.0, min(ys)), max(ys)
    span = max(t1 - t0, y1 - y0) or 1.0
    scale = (size - 2 * margin) / span

    def sx(t):
        return margin + (float(t) - t0) * scale

    def sy(y):
        return size - margin - (float(y) - y0) * scale

    pts = " ".join(f"{_g(sx(t))},{_g(sy(y))}" for t, y in verts)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<line x1="{_g(sx(t0))}" y1="{_g(sy(0))}" x2="{_g(sx(t1))}" y2="{_g(sy(0))}" '
        'stroke="#999" stroke-width="1"/>',
        f'<line x1="{_g(sx(0))}" y1="{_g(sy(y0))}" x2="{_g(sx(0))}" y2="{_g(sy(y1))}" '
        'stroke="#999" stroke-width="1"/>',
        f'<polygon points="{pts}" fill="#cde" stroke="#135" stroke-width="2"/>',
    ]
    for t, y in verts:
        lines.append(f'<circle cx="{_g(sx(t))}" cy="{_g(sy(y))}" r="3" fill="#135"/>')
        lines.append(f'<text x="{_g(sx(t) + 5)}" y="{_g(sy(y) - 5)}" font-size="11" '
                     f'font-family="monospace">({format_number(t)}, {format_number(y)})</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def chambers_csv(chambers: Iterable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["support"])
    for ch in chambers:
        w.writerow([";".join(ch.curves)])
    return buf.getvalue()


def read_chambers_csv(text: str) -> list[tuple[str, ...]]:
    rows = list(csv.reader(io.StringIO(text)))
    return [tuple(r[0].split(";")) if r[0] else () for r in rows[1:] if r]
