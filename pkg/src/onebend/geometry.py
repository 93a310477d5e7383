"""Exact rational plane geometry.

Coordinates are gmpy2 rationals (Fraction as fallback) and every predicate
is a sign test on exact arithmetic; there is no epsilon anywhere.  Floats
appear only in the conservative bounding-box prefilter helpers.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

QZERO = Q(0)
QONE = Q(1)
QHALF = Q(1, 2)


class Point(NamedTuple):
    x: object
    y: object


def pt(x, y=None) -> Point:
    if y is None:
        x, y = x
    return Point(Q(x), Q(y))


def q_from_str(s: str):
    if "/" in s:
        num, den = s.split("/", 1)
        return Q(int(num), int(den))
    return Q(int(s))


def q_to_str(q) -> str:
    q = Q(q)
    return "%d/%d" % (q.numerator, q.denominator)


def add(a: Point, b: Point) -> Point:
    return Point(a.x + b.x, a.y + b.y)


def sub(a: Point, b: Point) -> Point:
    return Point(a.x - b.x, a.y - b.y)


def scale(p: Point, s) -> Point:
    return Point(p.x * s, p.y * s)


def rot90(p: Point) -> Point:
    # counterclockwise quarter turn
    return Point(-p.y, p.x)


def dot(a: Point, b: Point):
    return a.x * b.x + a.y * b.y


def cross(a: Point, b: Point):
    return a.x * b.y - a.y * b.x


def orient(a: Point, b: Point, c: Point):
    """Twice the signed area of triangle abc; >0 iff a,b,c counterclockwise."""
    return cross(sub(b, a), sub(c, a))


def midpoint(a: Point, b: Point) -> Point:
    return Point((a.x + b.x) * QHALF, (a.y + b.y) * QHALF)


def seg_len2(a: Point, b: Point):
    d = sub(b, a)
    return dot(d, d)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """p lies on closed segment [a, b] (collinearity included)."""
    if orient(a, b, p) != QZERO:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def strictly_inside_segment(p: Point, a: Point, b: Point) -> bool:
    return on_segment(p, a, b) and p != a and p != b


def line_intersection(a: Point, b: Point, c: Point, d: Point) -> Optional[Point]:
    """Intersection of lines ab and cd; None when parallel."""
    r = sub(b, a)
    s = sub(d, c)
    den = cross(r, s)
    if den == QZERO:
        return None
    t = cross(sub(c, a), s) / den
    return add(a, scale(r, t))


def segment_meeting(a: Point, b: Point, c: Point, d: Point):
    """How the closed segments [a,b] and [c,d] meet.

    Returns one of
      ("none",)
      ("overlap",)                      collinear overlap of positive length
      ("point", p, ab_int, cd_int)      single common point; the flags say
                                        whether p is interior to each segment
    """
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 == QZERO and o2 == QZERO:
        # all four points on one line; lexicographic order is monotone there
        lo1, hi1 = (a, b) if a <= b else (b, a)
        lo2, hi2 = (c, d) if c <= d else (d, c)
        lo = max(lo1, lo2)
        hi = min(hi1, hi2)
        if lo > hi:
            return ("none",)
        if lo == hi:
            return ("point", lo,
                    strictly_inside_segment(lo, a, b),
                    strictly_inside_segment(lo, c, d))
        return ("overlap",)
    if ((o1 > QZERO) != (o2 > QZERO)) and ((o3 > QZERO) != (o4 > QZERO)) \
            and o1 != QZERO and o2 != QZERO and o3 != QZERO and o4 != QZERO:
        p = line_intersection(a, b, c, d)
        return ("point", p, True, True)
    for p, pa, pb, qa, qb in ((c, a, b, c, d), (d, a, b, c, d),
                              (a, c, d, a, b), (b, c, d, a, b)):
        if on_segment(p, pa, pb):
            return ("point", p,
                    strictly_inside_segment(p, a, b),
                    strictly_inside_segment(p, c, d))
    return ("none",)


def perpendicular_foot(p: Point, a: Point, b: Point) -> Point:
    """Foot of the perpendicular from p onto line ab."""
    d = sub(b, a)
    t = dot(sub(p, a), d) / dot(d, d)
    return add(a, scale(d, t))


def dist2_point_segment(p: Point, a: Point, b: Point):
    d = sub(b, a)
    den = dot(d, d)
    if den == QZERO:
        return seg_len2(p, a)
    t = dot(sub(p, a), d) / den
    if t < QZERO:
        t = QZERO
    elif t > QONE:
        t = QONE
    q = add(a, scale(d, t))
    return seg_len2(p, q)


def dist2_segments(a: Point, b: Point, c: Point, d: Point):
    """Squared distance between closed segments; 0 when they meet."""
    if segment_meeting(a, b, c, d)[0] != "none":
        return QZERO
    return min(dist2_point_segment(c, a, b), dist2_point_segment(d, a, b),
               dist2_point_segment(a, c, d), dist2_point_segment(b, c, d))


def polygon_orient_sign(pts: Sequence[Point]) -> int:
    """Sign of twice the signed area of a (simple) polygon."""
    s = QZERO
    n = len(pts)
    for i in range(n):
        s += cross(pts[i], pts[(i + 1) % n])
    return (s > QZERO) - (s < QZERO)


def polygon_strictly_convex(pts: Sequence[Point]) -> bool:
    n = len(pts)
    if n < 3:
        return False
    sign = None
    for i in range(n):
        o = orient(pts[i], pts[(i + 1) % n], pts[(i + 2) % n])
        if o == QZERO:
            return False
        s = o > QZERO
        if sign is None:
            sign = s
        elif s != sign:
            return False
    return True


def point_in_convex(p: Point, pts: Sequence[Point]) -> str:
    """'in' | 'on' | 'out' for a strictly convex polygon (either orientation)."""
    n = len(pts)
    sign = polygon_orient_sign(pts)
    on_boundary = False
    for i in range(n):
        o = orient(pts[i], pts[(i + 1) % n], p)
        if o == QZERO:
            if on_segment(p, pts[i], pts[(i + 1) % n]):
                on_boundary = True
                continue
            return "out"
        if (o > QZERO) != (sign > 0):
            return "out"
    return "on" if on_boundary else "in"


def _half(v: Point) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    if v.y > QZERO or (v.y == QZERO and v.x > QZERO):
        return 0
    return 1


def ccw_key(center: Point):
    """Sort key for exact counterclockwise angular order around center.

    Ties (equal directions) keep input order; callers must not rely on tie
    order for correctness.
    """
    import functools

    def cmp(u, v):
        du = sub(u, center)
        dv = sub(v, center)
        hu, hv = _half(du), _half(dv)
        if hu != hv:
            return -1 if hu < hv else 1
        c = cross(du, dv)
        if c > QZERO:
            return -1
        if c < QZERO:
            return 1
        return 0

    return functools.cmp_to_key(cmp)


def bbox(points: Sequence[Point]):
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return (min(xs), min(ys), max(xs), max(ys))


def to_float(q) -> float:
    return float(q)


def float_with_digits(q, digits: int) -> float:
    """Float rendition rounded to the given number of significant digits."""
    return float("%.*g" % (digits, float(q)))


def magnitude_exp(q) -> int:
    """Roughly log2|q| (0 for q == 0)."""
    q = Q(q)
    n = q.numerator
    if n == 0:
        return 0
    return abs(n).bit_length() - q.denominator.bit_length()


def scaled_float_fn(values):
    """A conversion rational -> float that first divides by a common power
    of two, so coordinates of any magnitude survive the conversion.
    Returns (convert, exponent)."""
    e = 0
    for v in values:
        e = max(e, magnitude_exp(v))
    shift = Q(2) ** e if e > 0 else Q(1)

    def convert(q):
        return float(Q(q) / shift)

    return convert, e
