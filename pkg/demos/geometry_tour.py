"""Walkthrough: convex-domain geometry behind the multiplier estimates.

Builds a disc and a square, compares their boundary covering numbers and
box-counting slopes, then normalizes the disc, takes a boundary chart, and
runs the greedy curvature-adapted partition at a few scales.
"""

from bikakeya.convex import (ConvexDomain, boundary_chart, boundary_partition,
                             covering_number, minkowski_dimension_estimate,
                             minkowski_functional)


def main():
    disc = ConvexDomain.disc(1.0)
    square = ConvexDomain.polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])

    print("gauge values on the square boundary:")
    for v in ((1.0, 0.5), (0.5, -1.0), (-1.0, -1.0)):
        print(f"  rho{v} = {minkowski_functional(square, v):.6f}")

    print("\nboundary covering numbers (caps of width delta):")
    for j in (4, 6, 8, 10):
        d = 2.0 ** -j
        print(f"  delta = 2^-{j:<2d}  disc: {covering_number(disc, d):5d}   "
              f"square: {covering_number(square, d):3d}")

    deltas = [2.0 ** -j for j in range(6, 15)]
    print("\nbox-counting slope (0.5 for smooth boundaries, 0 for polygons):")
    print(f"  disc:   {minkowski_dimension_estimate(disc, deltas):.3f}")
    print(f"  square: {minkowski_dimension_estimate(square, deltas):.3f}")

    dom, M = disc.normalized()
    chart = boundary_chart(dom, (0.0, -1.0), M)
    print(f"\nnormalized disc (scale parameter M = {M}); bottom chart:")
    for t in (-2.0, 0.0, 2.0):
        print(f"  gamma({t:+.0f}) = {chart.gamma(t):.4f}   "
              f"slope in [{chart.dL(t):+.4f}, {chart.dR(t):+.4f}]")

    print("\ngreedy partition block counts (expect ~ delta^-1/2 growth):")
    for j in (4, 6, 8, 10):
        part = boundary_partition(chart, 2.0 ** -j)
        print(f"  delta = 2^-{j:<2d}  Q = {part.Q}")


if __name__ == "__main__":
    main()
