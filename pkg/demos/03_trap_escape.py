"""Why the loop-escape rules exist.

A concave pocket and two loop-inducing obstacle layouts defeat naive greedy
motion: the chooser oscillates between the same few cells forever. The
priority rules turn that into escape behavior, at the cost of extra path:

  I   never undo the move you just made,
  II  leave a cell by at most eight distinct directions,
  III when a cell is exhausted, back out the way you came and mark it dead.

The control runs below disable the rules and cap the budget; the per-cell
departure count is the loop signature (the rules would cap it at 8).
"""

from pathlib import Path

from nspmr import builtin_scenario, run, write_svg

OUT = Path(__file__).parent / "out"


def main():
    OUT.mkdir(exist_ok=True)
    for name in ("concave_trap", "corridor_loop", "triangle_loop"):
        s = builtin_scenario(name)
        trajectory, res = run(s, "nspmr")
        _, control = run(s, "nspmr", 4000, rules_enabled=False)
        print(f"{name}:")
        print(f"  rules on : {res.outcome} in {res.iterations} iters, "
              f"{res.length:.1f} m, {res.backtrack_count} backtracks")
        print(f"  rules off: {control.outcome}, busiest cell departed "
              f"{control.max_departures_per_cell} times")
        path = OUT / f"{name}_escape.svg"
        write_svg(path, s, [trajectory])
        print(f"  escape route: {path}")


if __name__ == "__main__":
    main()
