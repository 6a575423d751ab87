"""Planar geometry kernel: angles, polygons, ray casting, offsets.

Angles come in two flavors. Math angles are the usual counterclockwise
degrees from +x. Compass angles are clockwise degrees from +y (north), which
is the convention the planners and sensors speak. ``math_to_compass`` maps
between them and is its own inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, NamedTuple, Sequence

EPS_GEOM = 1e-9

_SQRT_HALF = math.sqrt(0.5)


class GeometryError(ValueError):
    """Raised for geometric preconditions: bad offsets, ray origin inside an obstacle."""


class Point2(NamedTuple):
    x: float
    y: float


class PointLocation(Enum):
    INSIDE = "inside"
    ON_BOUNDARY = "on_boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class CollinearOverlap:
    """Segments that overlap along a shared line; ``start``/``end`` bound the overlap."""

    start: Point2
    end: Point2


def normalize_compass(deg: float) -> float:
    """Reduce an angle in degrees to [0, 360)."""
    return deg % 360.0


def math_to_compass(deg: float) -> float:
    """Convert a math angle (ccw from +x) to a compass angle (cw from +y).

    The map is (90 - deg) mod 360, an involution: applying it twice returns
    the input modulo 360.
    """
    return (90.0 - deg) % 360.0


def circular_diff(a: float, b: float) -> float:
    """Smallest absolute angular difference between two headings, in [0, 180]."""
    d = abs(a - b) % 360.0
    return min(d, 360.0 - d)


def compass_unit(deg: float) -> tuple[float, float]:
    """Unit vector for a compass heading; exact on multiples of 45 degrees."""
    d = normalize_compass(deg)
    eighth = d / 45.0
    if eighth == int(eighth):
        sx, sy = _UNIT_TABLE[int(eighth)]
        return sx, sy
    rad = math.radians(d)
    return math.sin(rad), math.cos(rad)


_UNIT_TABLE = (
    (0.0, 1.0),
    (_SQRT_HALF, _SQRT_HALF),
    (1.0, 0.0),
    (_SQRT_HALF, -_SQRT_HALF),
    (0.0, -1.0),
    (-_SQRT_HALF, -_SQRT_HALF),
    (-1.0, 0.0),
    (-_SQRT_HALF, _SQRT_HALF),
)


def distance(a: Point2, b: Point2) -> float:
    return math.hypot(b.x - a.x, b.y - a.y)


def point_segment_distance(p: Point2, a: Point2, b: Point2) -> float:
    """Distance from p to the closed segment ab."""
    ex, ey = b.x - a.x, b.y - a.y
    px, py = p.x - a.x, p.y - a.y
    denom = ex * ex + ey * ey
    if denom == 0.0:
        return math.hypot(px, py)
    t = (px * ex + py * ey) / denom
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    return math.hypot(px - t * ex, py - t * ey)


def _cross(ax: float, ay: float, bx: float, by: float) -> float:
    return ax * by - ay * bx


def segment_intersection(
    a1: Point2, a2: Point2, b1: Point2, b2: Point2
) -> Point2 | CollinearOverlap | None:
    """Intersection of two closed segments.

    Returns the intersection point for proper or endpoint-touching crossings,
    a CollinearOverlap when the segments share a stretch of the same line
    (grazing must not be silently dropped), and None when disjoint.
    """
    rx, ry = a2.x - a1.x, a2.y - a1.y
    sx, sy = b2.x - b1.x, b2.y - b1.y
    qpx, qpy = b1.x - a1.x, b1.y - a1.y
    denom = _cross(rx, ry, sx, sy)
    scale = max(abs(rx), abs(ry), abs(sx), abs(sy), 1.0)
    if abs(denom) <= EPS_GEOM * scale * scale:
        if abs(_cross(qpx, qpy, rx, ry)) > EPS_GEOM * scale * scale:
            return None  # parallel, different lines
        rr = rx * rx + ry * ry
        if rr == 0.0:
            return None
        t0 = (qpx * rx + qpy * ry) / rr
        t1 = t0 + (sx * rx + sy * ry) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        lo = max(lo, 0.0)
        hi = min(hi, 1.0)
        if hi < lo - EPS_GEOM:
            return None
        pa = Point2(a1.x + lo * rx, a1.y + lo * ry)
        pb = Point2(a1.x + hi * rx, a1.y + hi * ry)
        if distance(pa, pb) <= EPS_GEOM:
            return pa  # touching at a single point
        return CollinearOverlap(pa, pb)
    t = _cross(qpx, qpy, sx, sy) / denom
    u = _cross(qpx, qpy, rx, ry) / denom
    if -EPS_GEOM <= t <= 1.0 + EPS_GEOM and -EPS_GEOM <= u <= 1.0 + EPS_GEOM:
        return Point2(a1.x + t * rx, a1.y + t * ry)
    return None


@dataclass(frozen=True)
class Polygon:
    """Simple polygon given by its vertex ring. Library code expects CCW order."""

    vertices: tuple[Point2, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        for v in self.vertices:
            if not (math.isfinite(v[0]) and math.isfinite(v[1])):
                raise GeometryError("polygon vertices must be finite")
        object.__setattr__(
            self, "vertices", tuple(Point2(float(x), float(y)) for x, y in self.vertices)
        )

    def edges(self) -> Iterator[tuple[Point2, Point2]]:
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n]

    def signed_area(self) -> float:
        s = 0.0
        for a, b in self.edges():
            s += a.x * b.y - b.x * a.y
        return 0.5 * s

    def is_ccw(self) -> bool:
        return self.signed_area() > 0.0

    def is_simple(self) -> bool:
        """No self-intersections: nonadjacent edges disjoint, adjacent ones meet only at the shared vertex."""
        es = list(self.edges())
        n = len(es)
        for i in range(n):
            for j in range(i + 1, n):
                a1, a2 = es[i]
                b1, b2 = es[j]
                hit = segment_intersection(a1, a2, b1, b2)
                if hit is None:
                    continue
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                if isinstance(hit, CollinearOverlap):
                    return False
                if adjacent:
                    shared = a2 if j == i + 1 else a1
                    if distance(hit, shared) > EPS_GEOM:
                        return False
                else:
                    return False
        return True

    def bbox(self) -> tuple[float, float, float, float]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def translated(self, dx: float, dy: float) -> "Polygon":
        return Polygon(tuple(Point2(v.x + dx, v.y + dy) for v in self.vertices))

    def perimeter(self) -> float:
        return sum(distance(a, b) for a, b in self.edges())


def point_in_polygon(p: Point2, poly: Polygon) -> PointLocation:
    """Classify a point against a polygon: inside, on the boundary (within EPS_GEOM), or outside."""
    for a, b in poly.edges():
        if point_segment_distance(p, a, b) <= EPS_GEOM:
            return PointLocation.ON_BOUNDARY
    inside = False
    verts = poly.vertices
    n = len(verts)
    j = n - 1
    for i in range(n):
        yi, yj = verts[i].y, verts[j].y
        if (yi > p.y) != (yj > p.y):
            x_cross = verts[i].x + (p.y - yi) * (verts[j].x - verts[i].x) / (yj - yi)
            if p.x < x_cross:
                inside = not inside
        j = i
    return PointLocation.INSIDE if inside else PointLocation.OUTSIDE


def ray_cast(
    origin: Point2,
    compass_deg: float,
    max_range: float,
    obstacles: Sequence[Polygon],
) -> float | None:
    """Distance to the first boundary hit along a compass heading, or None within max_range.

    The origin must not be strictly inside any obstacle. Hits at parameter
    <= EPS_GEOM are ignored so standing exactly on a boundary point does not
    read as an immediate collision; collinear grazing along an edge counts
    as a hit at the nearest overlap point.
    """
    for poly in obstacles:
        if point_in_polygon(origin, poly) is PointLocation.INSIDE:
            raise GeometryError("ray origin strictly inside an obstacle")
    ux, uy = compass_unit(compass_deg)
    ox, oy = origin
    best: float | None = None
    for poly in obstacles:
        xmin, ymin, xmax, ymax = poly.bbox()
        # cheap reject: ray sphere around the bbox
        cx, cy = 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)
        r = math.hypot(xmax - xmin, ymax - ymin) * 0.5 + EPS_GEOM
        tc = (cx - ox) * ux + (cy - oy) * uy
        if tc < -r or tc - r > max_range:
            continue
        if math.hypot(cx - ox - tc * ux, cy - oy - tc * uy) > r:
            continue
        for a, b in poly.edges():
            ex, ey = b.x - a.x, b.y - a.y
            ax, ay = a.x - ox, a.y - oy
            denom = _cross(ux, uy, ex, ey)
            if abs(denom) <= EPS_GEOM:
                # parallel; grazing only if collinear
                if abs(_cross(ax, ay, ux, uy)) > EPS_GEOM:
                    continue
                for q in (a, b):
                    t = (q.x - ox) * ux + (q.y - oy) * uy
                    if EPS_GEOM < t <= max_range and (best is None or t < best):
                        best = t
                continue
            t = _cross(ax, ay, ex, ey) / denom
            w = _cross(ax, ay, ux, uy) / denom
            if EPS_GEOM < t <= max_range and -EPS_GEOM <= w <= 1.0 + EPS_GEOM:
                if best is None or t < best:
                    best = t
    return best


def polygon_offset(poly: Polygon, c: float) -> Polygon:
    """Outward offset of a CCW polygon by c with miter joins.

    c must be non-negative and small against the shortest edge (at most half
    of it); the result must come out simple, otherwise the scenario is too
    tight for boundary following and a GeometryError is raised.
    """
    if c < 0:
        raise GeometryError("offset distance must be >= 0")
    if c == 0:
        return poly
    if not poly.is_ccw():
        raise GeometryError("polygon_offset expects CCW orientation")
    min_edge = min(distance(a, b) for a, b in poly.edges())
    if c > 0.5 * min_edge:
        raise GeometryError(
            f"offset {c} too large for shortest edge {min_edge:.6g}"
        )
    verts = poly.vertices
    n = len(verts)
    shifted = []  # one offset line per edge: (anchor, direction)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        ex, ey = b.x - a.x, b.y - a.y
        length = math.hypot(ex, ey)
        nx, ny = ey / length, -ex / length  # outward for CCW interior-on-left
        shifted.append((Point2(a.x + c * nx, a.y + c * ny), ex, ey))
    out = []
    for i in range(n):
        (p, dx, dy) = shifted[i - 1]
        (q, ex, ey) = shifted[i]
        denom = _cross(dx, dy, ex, ey)
        if abs(denom) <= EPS_GEOM:
            out.append(q)  # collinear neighbors: plain shift
            continue
        t = _cross(q.x - p.x, q.y - p.y, ex, ey) / denom
        out.append(Point2(p.x + t * dx, p.y + t * dy))
    result = Polygon(tuple(out))
    if not result.is_simple():
        raise GeometryError("offset polygon self-intersects; clearance too large for this shape")
    return result


def polygon_distance(a: Polygon, b: Polygon) -> float:
    """Minimum distance between two polygon boundaries/interiors (0 if they touch or overlap)."""
    for pa, pb in a.edges():
        for qa, qb in b.edges():
            if segment_intersection(pa, pb, qa, qb) is not None:
                return 0.0
    if point_in_polygon(a.vertices[0], b) is PointLocation.INSIDE:
        return 0.0
    if point_in_polygon(b.vertices[0], a) is PointLocation.INSIDE:
        return 0.0
    best = math.inf
    for v in a.vertices:
        for qa, qb in b.edges():
            best = min(best, point_segment_distance(v, qa, qb))
    for v in b.vertices:
        for pa, pb in a.edges():
            best = min(best, point_segment_distance(v, pa, pb))
    return best


def point_polygon_distance(p: Point2, poly: Polygon) -> float:
    """Distance from a point to a polygon (0 if inside or on the boundary)."""
    loc = point_in_polygon(p, poly)
    if loc is not PointLocation.OUTSIDE:
        return 0.0
    return min(point_segment_distance(p, a, b) for a, b in poly.edges())
