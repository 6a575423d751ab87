"""Crossing traffic.

One obstacle patrols the robot's path, reflecting off the world bounds.
The simulator interleaves robot steps with obstacle motion tick by tick,
the planner reacts to whatever the sensors see at each instant, and the
collision audit replays the finished trajectory against the moving world
to prove no step ever touched the obstacle.
"""

from pathlib import Path

from nspmr import audit_collisions, builtin_scenario, run, write_svg

OUT = Path(__file__).parent / "out"


def main():
    s = builtin_scenario("dynamic_crossing")
    mover = next(ob for ob in s.obstacles if ob.moving)
    print(f"obstacle velocity: {mover.velocity} m/s; robot speed: {s.speed} m/s")

    trajectory, res = run(s, "nspmr")
    print(f"outcome: {res.outcome} after {res.iterations} iterations, "
          f"{res.length:.2f} m in {res.travel_time:.2f} s")

    problems = audit_collisions(trajectory, s)
    print(f"collision audit findings: {problems if problems else 'none'}")

    OUT.mkdir(exist_ok=True)
    path = OUT / "dynamic_crossing.svg"
    write_svg(path, s, [trajectory])
    print(f"route (obstacle drawn at its starting pose): {path}")


if __name__ == "__main__":
    main()
