"""Boundary-following reference planners.

Obstacles are tracked along their offset outline at clearance delta/4, walked
in increments of at most delta/2 with every outline vertex included, so the
robot's boundary waypoints lie exactly on the offset polygon. Straight motion
marches delta/2 steps toward the goal and stops at the exact point where the
path pierces an outline.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from .geometry import (
    CollinearOverlap,
    GeometryError,
    Point2,
    PointLocation,
    Polygon,
    distance,
    math_to_compass,
    point_in_polygon,
    point_segment_distance,
    polygon_distance,
    polygon_offset,
    point_polygon_distance,
    segment_intersection,
)
from .sim import (
    OUTCOME_GOAL,
    OUTCOME_LIMIT,
    OUTCOME_UNREACHABLE,
    SimulationError,
    Trajectory,
    make_trajectory,
)
from .world import Obstacle, Scenario, ScenarioError

_ON_RING_TOL = 1e-6
_T_SKIN = 1e-9


class _Ring:
    """Arc-length parameterized offset outline of one obstacle."""

    def __init__(self, shape: Polygon, clearance: float):
        self.offset = polygon_offset(shape, clearance)
        self.verts = list(self.offset.vertices)
        self.cum = [0.0]
        n = len(self.verts)
        for i in range(n):
            a, b = self.verts[i], self.verts[(i + 1) % n]
            self.cum.append(self.cum[-1] + distance(a, b))
        self.perimeter = self.cum[-1]
        self.edges = list(self.offset.edges())
        self.bbox = self.offset.bbox()

    def point_at(self, s: float) -> Point2:
        s %= self.perimeter
        i = bisect.bisect_right(self.cum, s) - 1
        i = min(i, len(self.verts) - 1)
        a, b = self.edges[i]
        seg = self.cum[i + 1] - self.cum[i]
        t = 0.0 if seg == 0 else (s - self.cum[i]) / seg
        return Point2(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)

    def locate(self, p: Point2) -> float | None:
        """Arc coordinate of a point lying on the outline, else None."""
        best_d = math.inf
        best_s = None
        for i, (a, b) in enumerate(self.edges):
            d = point_segment_distance(p, a, b)
            if d < best_d:
                best_d = d
                seg = self.cum[i + 1] - self.cum[i]
                if seg == 0:
                    t = 0.0
                else:
                    t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / (seg * seg)
                    t = min(1.0, max(0.0, t))
                best_s = self.cum[i] + t * seg
        if best_d > _ON_RING_TOL:
            return None
        return best_s % self.perimeter

    def closest_to(self, target: Point2) -> tuple[Point2, float]:
        """Continuous minimizer of distance-to-target over the outline."""
        best = (math.inf, None, None)
        for i, (a, b) in enumerate(self.edges):
            seg = self.cum[i + 1] - self.cum[i]
            if seg == 0:
                continue
            t = ((target.x - a.x) * (b.x - a.x) + (target.y - a.y) * (b.y - a.y)) / (seg * seg)
            t = min(1.0, max(0.0, t))
            p = Point2(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)
            d = distance(p, target)
            if d < best[0] - 1e-15:
                best = (d, p, self.cum[i] + t * seg)
        return best[1], best[2] % self.perimeter

    def arc_points(self, s0: float, arc: float, sign: int, step: float) -> list[Point2]:
        """Walk from arc coordinate s0 through `arc` meters (sign +1 follows
        vertex order, -1 reverses); vertices included, spacing <= step."""
        events = [0.0]
        for cj in self.cum[:-1]:
            if sign > 0:
                u = (cj - s0) % self.perimeter
            else:
                u = (s0 - cj) % self.perimeter
            while u < arc - 1e-9:
                if u > 1e-9:
                    events.append(u)
                u += self.perimeter
        events.append(arc)
        events.sort()
        pts = [self.point_at(s0)]
        for ua, ub in zip(events, events[1:]):
            gap = ub - ua
            if gap <= 1e-12:
                continue
            nseg = max(1, math.ceil(gap / step - 1e-9))
            for k in range(1, nseg + 1):
                pts.append(self.point_at(s0 + sign * (ua + gap * k / nseg)))
        return pts


@dataclass(frozen=True)
class BoundaryWalk:
    obstacle_index: int
    entry: Point2
    direction: str  # "cw" | "ccw"
    polyline: tuple[Point2, ...]
    stopped: bool  # True: stop predicate fired; False: full circumnavigation


def follow_boundary(world: Scenario, obstacle: Obstacle, entry: Point2, direction: str = "ccw", stop=None) -> BoundaryWalk:
    """Walk the obstacle's offset outline from entry until the stop predicate
    holds (checked at entry first) or one full circumnavigation completes."""
    if direction not in ("cw", "ccw"):
        raise ValueError("direction must be 'cw' or 'ccw'")
    ring = _Ring(obstacle.shape, world.delta / 4)
    s0 = ring.locate(entry)
    if s0 is None:
        raise GeometryError("entry point is not on the offset boundary")
    index = world.obstacles.index(obstacle)
    if stop is not None and stop(entry):
        return BoundaryWalk(index, entry, direction, (ring.point_at(s0),), True)
    pts = ring.arc_points(s0, ring.perimeter, 1 if direction == "ccw" else -1, world.delta / 2)
    polyline = [pts[0]]
    stopped = False
    for p in pts[1:]:
        polyline.append(p)
        if stop is not None and stop(p):
            stopped = True
            break
    return BoundaryWalk(index, entry, direction, tuple(polyline), stopped)


# --- shared run machinery ------------------------------------------------------------

class _Recorder:
    def __init__(self, start: Point2, max_iters: int):
        self.wp = [start]
        self.ev: list[str] = []
        self.dirs: list[float] = []
        self.max = max_iters

    @property
    def exhausted(self) -> bool:
        return len(self.ev) >= self.max

    @property
    def pos(self) -> Point2:
        return self.wp[-1]

    def move_to(self, p: Point2) -> bool:
        last = self.wp[-1]
        if distance(last, p) <= 1e-12:
            return True
        if self.exhausted:
            return False
        self.wp.append(p)
        self.ev.append("moved")
        self.dirs.append(math_to_compass(math.degrees(math.atan2(p.y - last.y, p.x - last.x))))
        return True


def _prepare(s: Scenario) -> list[_Ring]:
    if s.is_dynamic:
        raise ScenarioError("boundary-following planners require a static world")
    c = s.delta / 4
    rings = []
    for i, ob in enumerate(s.obstacles):
        try:
            rings.append(_Ring(ob.shape, c))
        except GeometryError as e:
            raise ScenarioError(f"obstacle {i} cannot be outlined at clearance {c}: {e}") from e
    for i, a in enumerate(s.obstacles):
        for b in s.obstacles[i + 1 :]:
            if polygon_distance(a.shape, b.shape) < 2 * c:
                raise ScenarioError("obstacles closer than twice the boundary clearance")
        if point_polygon_distance(s.start, a.shape) <= c:
            raise ScenarioError("start lies within the boundary clearance of an obstacle")
    return rings


def _first_entry(p: Point2, q: Point2, rings: list[_Ring]):
    """Earliest crossing of segment p->q into any outline, as (t, ring index,
    point) with t the fraction along p->q; skin contacts at t<=1e-9 ignored."""
    seg_len2 = (q.x - p.x) ** 2 + (q.y - p.y) ** 2
    if seg_len2 == 0:
        return None
    best = None
    lo_x, hi_x = min(p.x, q.x), max(p.x, q.x)
    lo_y, hi_y = min(p.y, q.y), max(p.y, q.y)
    for ri, ring in enumerate(rings):
        x0, y0, x1, y1 = ring.bbox
        if hi_x < x0 or lo_x > x1 or hi_y < y0 or lo_y > y1:
            continue
        for a, b in ring.edges:
            hit = segment_intersection(p, q, a, b)
            if hit is None:
                continue
            pts = (hit.start, hit.end) if isinstance(hit, CollinearOverlap) else (hit,)
            for x in pts:
                t = ((x.x - p.x) * (q.x - p.x) + (x.y - p.y) * (q.y - p.y)) / seg_len2
                if t > _T_SKIN and (best is None or t < best[0]):
                    best = (t, ri, x)
    return best


def _enters(p: Point2, q: Point2, rings: list[_Ring]) -> bool:
    """Does the step p->q put the robot inside an outline region?"""
    if _first_entry(p, q, rings) is not None:
        return True
    mid = Point2((p.x + q.x) / 2, (p.y + q.y) / 2)
    for ring in rings:
        for probe in (mid, q):
            if point_in_polygon(probe, ring.offset) is PointLocation.INSIDE:
                return True
    return False


def _march(rec: _Recorder, goal: Point2, rings: list[_Ring], delta: float):
    """Straight delta/2 steps toward the goal until arrival, an outline hit,
    or budget exhaustion. Returns 'goal' | 'limit' | ('hit', ring index)."""
    while True:
        pos = rec.pos
        rem = distance(pos, goal)
        if rem <= 1e-12:
            return "goal"
        step = min(delta / 2, rem)
        if step == rem:
            q = goal
        else:
            q = Point2(pos.x + (goal.x - pos.x) / rem * step, pos.y + (goal.y - pos.y) / rem * step)
        hit = _first_entry(pos, q, rings)
        if hit is None:
            if not rec.move_to(q):
                return "limit"
            continue
        _, ri, x = hit
        if not rec.move_to(x):
            return "limit"
        return ("hit", ri)


def _departure_free(p: Point2, goal: Point2, rings: list[_Ring], delta: float) -> bool:
    rem = distance(p, goal)
    if rem <= 1e-12:
        return True
    step = min(delta / 2, rem)
    q = Point2(p.x + (goal.x - p.x) / rem * step, p.y + (goal.y - p.y) / rem * step)
    return not _enters(p, q, rings)


# --- Bug1 ----------------------------------------------------------------------------

def bug1_result(s: Scenario, max_iters: int) -> tuple[Trajectory, str]:
    rings = _prepare(s)
    rec = _Recorder(s.start, max_iters)
    outcome = OUTCOME_LIMIT
    while True:
        status = _march(rec, s.goal, rings, s.delta)
        if status == "goal":
            outcome = OUTCOME_GOAL
            break
        if status == "limit":
            break
        ring = rings[status[1]]
        hit_point = rec.pos
        s_hit = ring.locate(hit_point)
        # survey lap: full circumnavigation, then return to the best point
        limit = False
        for p in ring.arc_points(s_hit, ring.perimeter, 1, s.delta / 2)[1:]:
            if not rec.move_to(p):
                limit = True
                break
        if limit:
            break
        leave, s_leave = ring.closest_to(s.goal)
        if distance(leave, s.goal) >= distance(hit_point, s.goal) - 1e-9:
            outcome = OUTCOME_UNREACHABLE
            break
        ccw_arc = (s_leave - s_hit) % ring.perimeter
        cw_arc = ring.perimeter - ccw_arc
        arc, sign = (ccw_arc, 1) if ccw_arc <= cw_arc else (cw_arc, -1)
        for p in ring.arc_points(s_hit, arc, sign, s.delta / 2)[1:]:
            if not rec.move_to(p):
                limit = True
                break
        if limit:
            break
        if not _departure_free(rec.pos, s.goal, [ring], s.delta):
            outcome = OUTCOME_UNREACHABLE
            break
    return make_trajectory(s, rec.wp, rec.ev, rec.dirs), outcome


def bug1_run(s: Scenario, max_iters: int) -> Trajectory:
    """Hit, circumnavigate, depart from the boundary point nearest the goal."""
    traj, outcome = bug1_result(s, max_iters)
    if outcome == OUTCOME_LIMIT:
        raise SimulationError(f"iteration budget {max_iters} exhausted")
    return traj


# --- Bug2 ----------------------------------------------------------------------------

def _mline_crossing(a: Point2, b: Point2, start: Point2, goal: Point2) -> Point2 | None:
    hit = segment_intersection(a, b, start, goal)
    if hit is None:
        return None
    if isinstance(hit, CollinearOverlap):
        # walking along the line itself: the far overlap end decides
        return min((hit.start, hit.end), key=lambda p: distance(p, goal))
    return hit


def _leave_ok(x: Point2, hit_point: Point2, hit_dist: float, s: Scenario, rings, strict_leave: bool) -> bool:
    if strict_leave:
        if not distance(x, s.goal) < hit_dist - 1e-9:
            return False
    else:
        # relaxed variant: any crossing away from the hit point qualifies,
        # which is exactly the bad-leave-point failure mode
        if distance(x, hit_point) <= s.delta / 4:
            return False
    return _departure_free(x, s.goal, rings, s.delta)


def bug2_result(s: Scenario, max_iters: int, *, strict_leave: bool = True, turn: str = "cw") -> tuple[Trajectory, str]:
    if turn not in ("cw", "ccw"):
        raise ValueError("turn must be 'cw' or 'ccw'")
    rings = _prepare(s)
    sign = -1 if turn == "cw" else 1
    rec = _Recorder(s.start, max_iters)
    outcome = OUTCOME_LIMIT
    while True:
        status = _march(rec, s.goal, rings, s.delta)
        if status == "goal":
            outcome = OUTCOME_GOAL
            break
        if status == "limit":
            break
        ring = rings[status[1]]
        hit_point = rec.pos
        hit_dist = distance(hit_point, s.goal)
        pts = ring.arc_points(ring.locate(hit_point), ring.perimeter, sign, s.delta / 2)
        left = limit = False
        for a, b in zip(pts, pts[1:]):
            x = _mline_crossing(a, b, s.start, s.goal)
            if x is not None and _leave_ok(x, hit_point, hit_dist, s, rings, strict_leave):
                if not rec.move_to(x):
                    limit = True
                else:
                    left = True
                break
            if not rec.move_to(b):
                limit = True
                break
        if limit:
            break
        if not left:
            outcome = OUTCOME_UNREACHABLE
            break
    return make_trajectory(s, rec.wp, rec.ev, rec.dirs), outcome


def bug2_run(s: Scenario, max_iters: int, *, strict_leave: bool = True, turn: str = "cw") -> Trajectory:
    """Follow the start-goal line; on a hit, wall-follow until back on the
    line strictly closer to the goal, then resume. strict_leave=False accepts
    any departure point on the line, which can loop forever by design."""
    traj, outcome = bug2_result(s, max_iters, strict_leave=strict_leave, turn=turn)
    if outcome == OUTCOME_LIMIT:
        raise SimulationError(f"iteration budget {max_iters} exhausted")
    return traj
