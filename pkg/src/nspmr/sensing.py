"""Eight fixed-direction range sensors.

Sensor i (1..8) looks along compass angle (i-1)*45. A direction is reported
free only when the first obstacle along it, if any, lies beyond the blocking
threshold for that direction: one step length plus a delta/4 margin. The
measured distance is clipped to the sensing range d and feeds tie-breaking.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

from .geometry import Point2, Polygon, ray_cast
from .world import Scenario

SENSOR_COUNT = 8
SENSOR_ANGLES = tuple(45.0 * i for i in range(SENSOR_COUNT))

_DIAG = math.sqrt(2.0) / 2.0


def step_length(angle: float, delta: float) -> float:
    """Length of one planner step along a lattice direction."""
    if angle % 90 == 0:
        return delta / 2
    return delta * _DIAG


def blocking_threshold(angle: float, delta: float) -> float:
    # one step plus delta/4 of slack keeps the endpoint strictly clear
    return step_length(angle, delta) + delta / 4


class SensorReading(NamedTuple):
    free: bool
    dist: float


class SensorScan(NamedTuple):
    readings: tuple[SensorReading, ...]

    def reading(self, angle: float) -> SensorReading:
        """Reading for a lattice direction given as a compass angle."""
        if angle % 45 != 0:
            raise ValueError(f"not a sensor direction: {angle}")
        return self.readings[int(angle // 45) % SENSOR_COUNT]


def scan(pos: Point2, world: Scenario, d: float, delta: float) -> SensorScan:
    """Range-scan the 8 lattice directions against the world's current shapes."""
    if not d > delta > 0:
        raise ValueError("require sensing range d > delta > 0")
    shapes = world.shapes()
    readings = []
    for angle in SENSOR_ANGLES:
        hit = ray_cast(pos, angle, d, shapes)
        if hit is None:
            readings.append(SensorReading(True, d))
        else:
            readings.append(SensorReading(hit > blocking_threshold(angle, delta), hit))
    return SensorScan(tuple(readings))
