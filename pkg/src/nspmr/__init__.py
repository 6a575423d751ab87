"""Sensor-based 2D motion planning and simulation.

Three planners over a shared simulator: NSPMR, an 8-direction local planner
with loop-escape priority rules, plus Bug1 and Bug2 boundary-following
baselines. Scenario files, deterministic world generation, a grid oracle
for benchmark ratios, and CSV/SVG trajectory output round out the toolkit.
"""

from .bugs import BoundaryWalk, bug1_run, bug2_run, follow_boundary
from .geometry import (
    CollinearOverlap,
    GeometryError,
    Point2,
    PointLocation,
    Polygon,
    circular_diff,
    compass_unit,
    math_to_compass,
    normalize_compass,
    point_in_polygon,
    polygon_offset,
    ray_cast,
    segment_intersection,
)
from .output import (
    BenchReport,
    BenchRow,
    bench_row,
    format_report_table,
    make_report,
    read_trajectory_csv,
    render_svg,
    write_report_csv,
    write_svg,
    write_trajectory_csv,
)
from .planner import (
    DIRECTIONS,
    CellId,
    NspmrState,
    StepEvent,
    apply_move,
    desired_angle,
    filter_candidates,
    free_directions,
    nspmr_step,
    quantize,
    select_direction,
)
from .sensing import SENSOR_ANGLES, SENSOR_COUNT, SensorReading, SensorScan, scan
from .sim import (
    OUTCOME_GOAL,
    OUTCOME_LIMIT,
    OUTCOME_STUCK,
    OUTCOME_UNREACHABLE,
    PLANNERS,
    RunResult,
    SimulationError,
    Trajectory,
    audit_collisions,
    default_max_iters,
    grid_oracle,
    iteration_ceiling,
    make_trajectory,
    path_length,
    run,
    tick_duration,
)
from .world import (
    BUILTIN_NAMES,
    Bounds,
    Obstacle,
    Scenario,
    ScenarioError,
    WorldSpec,
    builtin_scenario,
    generate_world,
    parse_scenario,
    serialize_scenario,
    step_dynamics,
    validate_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES",
    "BenchReport",
    "BenchRow",
    "BoundaryWalk",
    "Bounds",
    "CellId",
    "CollinearOverlap",
    "DIRECTIONS",
    "GeometryError",
    "NspmrState",
    "Obstacle",
    "OUTCOME_GOAL",
    "OUTCOME_LIMIT",
    "OUTCOME_STUCK",
    "OUTCOME_UNREACHABLE",
    "PLANNERS",
    "Point2",
    "PointLocation",
    "Polygon",
    "RunResult",
    "SENSOR_ANGLES",
    "SENSOR_COUNT",
    "Scenario",
    "ScenarioError",
    "SensorReading",
    "SensorScan",
    "SimulationError",
    "StepEvent",
    "Trajectory",
    "WorldSpec",
    "apply_move",
    "audit_collisions",
    "bench_row",
    "bug1_run",
    "bug2_run",
    "builtin_scenario",
    "circular_diff",
    "compass_unit",
    "default_max_iters",
    "desired_angle",
    "filter_candidates",
    "follow_boundary",
    "format_report_table",
    "free_directions",
    "generate_world",
    "grid_oracle",
    "iteration_ceiling",
    "make_report",
    "make_trajectory",
    "math_to_compass",
    "normalize_compass",
    "nspmr_step",
    "parse_scenario",
    "path_length",
    "point_in_polygon",
    "polygon_offset",
    "quantize",
    "ray_cast",
    "read_trajectory_csv",
    "render_svg",
    "run",
    "scan",
    "segment_intersection",
    "select_direction",
    "serialize_scenario",
    "step_dynamics",
    "tick_duration",
    "validate_scenario",
    "write_report_csv",
    "write_svg",
    "write_trajectory_csv",
]
