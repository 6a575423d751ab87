"""Three planners, one map.

Runs the local planner and both boundary followers on the two-wall scenario
and overlays the trajectories in a single SVG. The local planner threads the
gap, Bug2 leaves the wall at the first closer crossing of the start-goal
line, and Bug1 pays for its full survey lap around each obstacle.
"""

from pathlib import Path

from nspmr import builtin_scenario, run, write_svg

OUT = Path(__file__).parent / "out"


def main():
    s = builtin_scenario("scenario1")
    trajectories = []
    print(f"{'planner':8} {'outcome':14} {'length_m':>9} {'iters':>6}")
    for planner in ("nspmr", "bug2", "bug1"):
        trajectory, res = run(s, planner)
        trajectories.append(trajectory)
        print(f"{planner:8} {res.outcome:14} {res.length:9.3f} {res.iterations:6d}")

    OUT.mkdir(exist_ok=True)
    path = OUT / "scenario1_planners.svg"
    write_svg(path, s, trajectories)
    print(f"\noverlay written to {path}")
    print("polyline colors follow run order: nspmr, bug2, bug1")


if __name__ == "__main__":
    main()
