"""Input and output document formats.

Both documents are versioned JSON with a canonical serialization (sorted
keys, two-space indent) so that parse/print round-trips are the identity
and pipeline outputs are byte-deterministic.  Rational coordinates are
serialized as "numerator/denominator" strings; float renditions carry a
declared number of significant digits.
"""

from __future__ import annotations

import json
from typing import Dict, Tuple

from .errors import ParseError
from .geometry import (Point, Q, bbox, float_with_digits, q_from_str,
                       q_to_str, to_float)

INPUT_FORMAT = "oneplane-graph"
OUTPUT_FORMAT = "onebend-drawing"
VERSION = 1
DEFAULT_FLOAT_DIGITS = 12


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads_input(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc) from None
    if not isinstance(doc, dict):
        raise ParseError("input document must be a JSON object")
    if doc.get("format") not in (None, INPUT_FORMAT):
        raise ParseError("unexpected document format %r" % doc.get("format"))
    if doc.get("version") not in (None, VERSION):
        raise ParseError("unsupported document version %r" % doc.get("version"))
    for key in ("n", "edges", "rotation"):
        if key not in doc:
            raise ParseError("input document misses %r" % key)
    return doc


def input_document(n, edges, crossings, rotation, outer_face) -> dict:
    return {
        "format": INPUT_FORMAT,
        "version": VERSION,
        "n": n,
        "edges": [list(e) for e in edges],
        "crossings": [list(c) for c in crossings],
        "rotation": rotation,
        "outer_face": outer_face,
    }


def _point_strs(p: Point):
    return [q_to_str(p.x), q_to_str(p.y)]


def _point_floats(p: Point, digits: int):
    return [float_with_digits(p.x, digits), float_with_digits(p.y, digits)]


def output_document(drawing, report, original,
                    float_digits: int = DEFAULT_FLOAT_DIGITS) -> dict:
    vertices = {}
    for v in sorted(drawing.positions):
        p = drawing.positions[v]
        vertices[str(v)] = {
            "x": q_to_str(p.x), "y": q_to_str(p.y),
            "fx": float_with_digits(p.x, float_digits),
            "fy": float_with_digits(p.y, float_digits),
        }
    edges = {}
    bends = 0
    for e in sorted(drawing.polylines):
        pl = drawing.polylines[e]
        if len(pl.points) == 3:
            bends += 1
        er = original.edges[e]
        edges[str(e)] = {
            "endpoints": [er.u, er.v],
            "points": [_point_strs(p) for p in pl.points],
            "fpoints": [_point_floats(p, float_digits) for p in pl.points],
        }
    crossings = [{
        "edges": list(rec.edges),
        "point": _point_strs(rec.point),
        "fpoint": _point_floats(rec.point, float_digits),
        "right_angle": rec.right_angle,
    } for rec in report.crossings]

    pts = list(drawing.all_points())
    x0, y0, x1, y1 = bbox(pts)
    area = (x1 - x0) * (y1 - y0)
    return {
        "format": OUTPUT_FORMAT,
        "version": VERSION,
        "float_digits": float_digits,
        "n": len(vertices),
        "vertices": vertices,
        "edges": edges,
        "crossings": crossings,
        "report": {
            "crossing_count": len(report.crossings),
            "bend_count": bends,
            "violations": [{"kind": v.kind, "detail": v.detail}
                           for v in report.violations],
        },
        "bbox": {
            "min": [q_to_str(x0), q_to_str(y0)],
            "max": [q_to_str(x1), q_to_str(y1)],
            "area": q_to_str(area),
            "farea": float_with_digits(area, float_digits),
        },
    }


def loads_output(text: str):
    """Parse a drawing document back into exact positions and polylines."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc) from None
    if not isinstance(doc, dict) or doc.get("format") != OUTPUT_FORMAT:
        raise ParseError("not a drawing document")
    try:
        positions = {int(v): Point(q_from_str(rec["x"]), q_from_str(rec["y"]))
                     for v, rec in doc["vertices"].items()}
        polylines = {}
        endpoints = {}
        for e, rec in doc["edges"].items():
            polylines[int(e)] = tuple(Point(q_from_str(x), q_from_str(y))
                                      for x, y in rec["points"])
            endpoints[int(e)] = tuple(rec["endpoints"])
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError("malformed drawing document: %s" % exc) from None
    return doc, positions, polylines, endpoints
