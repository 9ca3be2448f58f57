"""Walk the doubled time contour and compare its order with time order.

The contour visits every grid time twice: once on the forward branch in
chronological order, then on the backward branch in reverse.  Contour order
is therefore not time order; the same physical time appears at two very
different contour positions.
"""

from qcontour import (Branch, ContourTime, TimeGrid, contour_compare,
                      contour_key, contour_path)


def main():
    grid = TimeGrid((0.0, 0.5, 1.0, 2.0))
    print(f"grid times: {grid.times}\n")

    print("full contour order (forward branch first, backward reversed):")
    points = sorted((ContourTime(t, branch) for t in grid.times
                     for branch in (Branch.F, Branch.B)), key=contour_key)
    print("  " + "  ->  ".join(f"{z.t:g}^{z.branch.value}" for z in points))

    print("\ntime order vs contour order for a backward pair:")
    early, late = ContourTime(0.5, Branch.B), ContourTime(1.0, Branch.B)
    verdict = {-1: "before", 0: "equal to", 1: "after"}
    print(f"  physically, t=0.5 happens before t=1.0")
    print(f"  on the contour, 0.5^b comes "
          f"{verdict[contour_compare(early, late)]} 1.0^b")

    print("\nthe integration path, one directed step per segment:")
    for step in contour_path(grid):
        print(f"  {step.start.t:g}^{step.start.branch.value} -> "
              f"{step.end.t:g}^{step.end.branch.value}")
    n = grid.n_times
    print(f"\n{2 * (n - 1)} steps for {n} grid times, as expected.")


if __name__ == "__main__":
    main()
