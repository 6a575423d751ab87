"""Run loop, metrics, collision audit, and the grid shortest-path oracle.

One robot step per tick: the robot covers delta/2 (or its diagonal) while
moving obstacles hold still, then the world advances by dt = (delta/2)/V.
Travel time is derived from path length, not ticks, so diagonal steps are
not undercharged.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .geometry import (
    Point2,
    PointLocation,
    distance,
    point_in_polygon,
    segment_intersection,
)
from .planner import NspmrState, nspmr_step, quantize
from .world import Scenario, ScenarioError, step_dynamics, validate_scenario

PLANNERS = ("nspmr", "bug1", "bug2")

OUTCOME_GOAL = "goal_reached"
OUTCOME_STUCK = "stuck"
OUTCOME_LIMIT = "iteration_limit"
OUTCOME_UNREACHABLE = "unreachable"


class SimulationError(RuntimeError):
    """Internal inconsistency (a run produced a colliding trajectory)."""


@dataclass(frozen=True)
class Trajectory:
    waypoints: tuple[Point2, ...]
    events: tuple[str, ...]  # one per movement step: moved | backtracked
    directions: tuple[float | None, ...]  # compass heading per step
    timestamps: tuple[float, ...]  # one per waypoint, iteration * dt


@dataclass(frozen=True)
class RunResult:
    outcome: str
    length: float
    travel_time: float
    iterations: int
    max_departures_per_cell: int
    backtrack_count: int


def tick_duration(s: Scenario) -> float:
    return (s.delta / 2) / s.speed


def iteration_ceiling(s: Scenario) -> int:
    """8 departures per lattice cell inside bounds: an upper bound on moves."""
    res = s.delta / 2
    nx = int(round((s.bounds.xmax - s.bounds.xmin) / res)) + 1
    ny = int(round((s.bounds.ymax - s.bounds.ymin) / res)) + 1
    return 8 * nx * ny


def default_max_iters(s: Scenario) -> int:
    # 10x the termination ceiling: reaching it means a bug, not a tight budget
    return 10 * iteration_ceiling(s)


def path_length(t) -> float:
    """Sum of consecutive waypoint distances; accepts a Trajectory or points."""
    pts = t.waypoints if hasattr(t, "waypoints") else tuple(Point2(*p) for p in t)
    if not pts:
        raise ValueError("need at least one waypoint")
    return sum(distance(a, b) for a, b in zip(pts, pts[1:]))


def make_trajectory(s: Scenario, waypoints, events, directions) -> Trajectory:
    dt = tick_duration(s)
    return Trajectory(
        waypoints=tuple(waypoints),
        events=tuple(events),
        directions=tuple(directions),
        timestamps=tuple(i * dt for i in range(len(waypoints))),
    )


def _run_nspmr(s: Scenario, max_iters: int, rules_enabled: bool):
    dt = tick_duration(s)
    state = NspmrState(pos=s.start)
    world = s
    waypoints = [s.start]
    events: list[str] = []
    directions: list[float | None] = []
    outcome = OUTCOME_LIMIT
    for _ in range(max_iters):
        state, ev = nspmr_step(state, world, rules_enabled)
        if ev.kind == "goal_reached":
            outcome = OUTCOME_GOAL
            break
        if ev.kind == "stuck":
            outcome = OUTCOME_STUCK
            break
        waypoints.append(ev.new_pos)
        events.append(ev.kind)
        directions.append(ev.direction)
        if s.is_dynamic:
            world = step_dynamics(world, dt)
    return make_trajectory(s, waypoints, events, directions), outcome


def run(s: Scenario, planner: str, max_iters: int | None = None, *, rules_enabled: bool = True):
    """Execute one planner on one scenario; returns (Trajectory, RunResult).

    rules_enabled=False runs the direction chooser without its loop-escape
    rules, as a control; it applies to the nspmr planner only.
    """
    violations = validate_scenario(s)
    if violations:
        raise ScenarioError("; ".join(violations))
    if max_iters is None:
        max_iters = default_max_iters(s)
    if max_iters <= 0:
        raise ValueError("max_iters must be positive")
    if planner == "nspmr":
        traj, outcome = _run_nspmr(s, max_iters, rules_enabled)
    elif planner in ("bug1", "bug2"):
        from . import bugs

        runner = bugs.bug1_result if planner == "bug1" else bugs.bug2_result
        traj, outcome = runner(s, max_iters)
    else:
        raise ValueError(f"unknown planner {planner!r}; expected one of {PLANNERS}")
    problems = audit_collisions(traj, s)
    if problems:
        raise SimulationError("collision audit failed: " + "; ".join(problems[:3]))
    length = path_length(traj)
    moved_departures: dict = {}
    for src, kind in zip(traj.waypoints, traj.events):
        if kind == "moved":
            cell = quantize(src, s.delta)
            moved_departures[cell] = moved_departures.get(cell, 0) + 1
    result = RunResult(
        outcome=outcome,
        length=length,
        travel_time=length / s.speed,
        iterations=len(traj.waypoints) - 1,
        max_departures_per_cell=max(moved_departures.values(), default=0),
        backtrack_count=sum(1 for e in traj.events if e == "backtracked"),
    )
    return traj, result


# --- safety audit ------------------------------------------------------------------

def _segment_hits_polygon(a: Point2, b: Point2, poly) -> bool:
    x0, y0, x1, y1 = poly.bbox()
    if max(a.x, b.x) < x0 or min(a.x, b.x) > x1 or max(a.y, b.y) < y0 or min(a.y, b.y) > y1:
        return False
    for ea, eb in poly.edges():
        if segment_intersection(a, b, ea, eb) is not None:
            return True
    mid = Point2((a.x + b.x) / 2, (a.y + b.y) / 2)
    return point_in_polygon(mid, poly) is PointLocation.INSIDE


def audit_collisions(t: Trajectory, s: Scenario) -> list[str]:
    """Check every waypoint and segment against the obstacle poses current at
    its timestamp; an empty list means the trajectory is safe."""
    out = []
    world = s
    dt = tick_duration(s)
    n = len(t.waypoints)
    for k in range(n):
        p = t.waypoints[k]
        for i, ob in enumerate(world.obstacles):
            if point_in_polygon(p, ob.shape) is not PointLocation.OUTSIDE:
                out.append(f"waypoint {k} inside obstacle {i}")
        if k < n - 1:
            q = t.waypoints[k + 1]
            for i, ob in enumerate(world.obstacles):
                if _segment_hits_polygon(p, q, ob.shape):
                    out.append(f"segment {k} intersects obstacle {i}")
            if world.is_dynamic:
                world = step_dynamics(world, dt)
    return out


# --- optimality oracle ----------------------------------------------------------------

def grid_oracle(s: Scenario, resolution: float) -> float | None:
    """Shortest 8-connected lattice path start->goal, or None when the grid
    disconnects them. A lower-bound reference: the grid ignores clearance."""
    if not resolution > 0:
        raise ValueError("resolution must be positive")
    b = s.bounds
    nx = int(round((b.xmax - b.xmin) / resolution)) + 1
    ny = int(round((b.ymax - b.ymin) / resolution)) + 1
    blocked = [[False] * ny for _ in range(nx)]
    for ob in s.obstacles:
        x0, y0, x1, y1 = ob.shape.bbox()
        i0 = max(0, math.ceil((x0 - b.xmin) / resolution - 1e-9))
        i1 = min(nx - 1, math.floor((x1 - b.xmin) / resolution + 1e-9))
        j0 = max(0, math.ceil((y0 - b.ymin) / resolution - 1e-9))
        j1 = min(ny - 1, math.floor((y1 - b.ymin) / resolution + 1e-9))
        for i in range(i0, i1 + 1):
            x = b.xmin + i * resolution
            for j in range(j0, j1 + 1):
                if not blocked[i][j]:
                    p = Point2(x, b.ymin + j * resolution)
                    if point_in_polygon(p, ob.shape) is not PointLocation.OUTSIDE:
                        blocked[i][j] = True

    def node(p: Point2):
        i = int(round((p.x - b.xmin) / resolution))
        j = int(round((p.y - b.ymin) / resolution))
        return (i, j) if 0 <= i < nx and 0 <= j < ny else None

    src, dst = node(s.start), node(s.goal)
    if src is None or dst is None or blocked[src[0]][src[1]] or blocked[dst[0]][dst[1]]:
        return None
    diag = resolution * math.sqrt(2)
    dist = {src: 0.0}
    heap = [(0.0, src)]
    while heap:
        d, (ci, cj) = heapq.heappop(heap)
        if (ci, cj) == dst:
            return d
        if d > dist.get((ci, cj), math.inf):
            continue
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                if di == 0 and dj == 0:
                    continue
                ni, nj = ci + di, cj + dj
                if 0 <= ni < nx and 0 <= nj < ny and not blocked[ni][nj]:
                    nd = d + (diag if di and dj else resolution)
                    if nd < dist.get((ni, nj), math.inf) - 1e-15:
                        dist[(ni, nj)] = nd
                        heapq.heappush(heap, (nd, (ni, nj)))
    return None
