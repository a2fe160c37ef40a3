"""Convex domains: gauge functional, covering numbers, charts, partitions."""

import math

import numpy as np
import pytest

from bikakeya.convex import (ConvexDomain, DomainSpecError, boundary_chart,
                             boundary_partition, chart_directions,
                             covering_number, minkowski_dimension_estimate,
                             minkowski_functional, parse_domain_spec,
                             smooth_approximation)
from bikakeya.experiments import check_partition


def test_minkowski_functional_examples():
    disc = ConvexDomain.disc(1.0)
    assert minkowski_functional(disc, (0.6, 0.8)) == pytest.approx(1.0)
    square = ConvexDomain.polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    assert minkowski_functional(square, (0.5, -1.0)) == pytest.approx(1.0)
    assert minkowski_functional(square, (0.0, 0.0)) == 0.0


def test_minkowski_functional_homogeneous_subadditive():
    rng = np.random.default_rng(3)
    dom = ConvexDomain.ngon(7, 1.3)
    for _ in range(200):
        u = rng.normal(size=2)
        v = rng.normal(size=2)
        t = rng.uniform(0.1, 5.0)
        assert minkowski_functional(dom, t * u) == pytest.approx(
            t * minkowski_functional(dom, u), rel=1e-10)
        assert minkowski_functional(dom, u + v) <= (
            minkowski_functional(dom, u) + minkowski_functional(dom, v)
            + 1e-10)


def test_boundary_consistency():
    dom = ConvexDomain.disc(2.5)
    pts, _ = dom.boundary_samples(64)
    for p in pts:
        assert minkowski_functional(dom, p) == pytest.approx(1.0, abs=1e-9)


def test_covering_number_examples():
    disc = ConvexDomain.disc(1.0)
    c = covering_number(disc, 0.02)
    assert 8 <= c <= 32
    square = ConvexDomain.polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    assert covering_number(square, 0.01) <= 8
    assert covering_number(disc, disc.diameter()) == 1


def test_covering_number_monotone():
    dom = ConvexDomain.disc(1.0)
    counts = [covering_number(dom, 2.0 ** -j) for j in range(2, 10)]
    assert all(b >= a for a, b in zip(counts, counts[1:]))


def test_dimension_slopes():
    deltas = [2.0 ** -j for j in range(6, 15)]
    disc_slope = minkowski_dimension_estimate(ConvexDomain.disc(1.0), deltas)
    assert abs(disc_slope - 0.5) <= 0.05
    square = ConvexDomain.polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    assert minkowski_dimension_estimate(square, deltas) <= 0.1
    g64 = minkowski_dimension_estimate(ConvexDomain.ngon(64, 1.0), deltas)
    assert -0.05 <= g64 <= 0.55


def test_domain_spec_parsing():
    assert parse_domain_spec("disc:r=1").kind == "disc"
    assert parse_domain_spec("ngon:k=8,r=2").kind == "polygon"
    assert parse_domain_spec("polygon:pts=0,-1;1,0;0,1;-1,0").kind == "polygon"
    with pytest.raises(DomainSpecError):
        parse_domain_spec("blob:r=1")


def test_chart_of_scaled_disc():
    dom, M = ConvexDomain.disc(1.0).normalized()
    chart = boundary_chart(dom, (0.0, -1.0), M)
    for t in (-1.5, 0.0, 0.7):
        # radius is 4 after normalization: gamma(t) = -sqrt(16 - t^2)
        assert chart.gamma(t) == pytest.approx(-math.sqrt(16.0 - t * t),
                                               abs=1e-8)
    assert chart.dL(0.5) <= chart.dR(0.5) + 1e-12


def test_chart_of_square_edge_is_flat():
    square = ConvexDomain.polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    dom, M = square.normalized()
    chart = boundary_chart(dom, (0.0, -1.0), M)
    assert chart.gamma(0.0) == pytest.approx(chart.gamma(1.0), abs=1e-9)
    assert abs(chart.dR(0.0)) <= 1e-9


def test_chart_convexity_and_slope_bound():
    dom, M = ConvexDomain.ngon(12, 1.0).normalized()
    chart = boundary_chart(dom, (0.3, -1.0), M)
    ts = np.linspace(-2.0, 2.0, 41)
    bound = 2.0 ** (M - 1)
    for s, t in zip(ts, ts[1:]):
        assert chart.dR(s) <= chart.dL(t) + 1e-9
    for t in ts:
        assert -bound - 1e-9 <= chart.dL(t) <= chart.dR(t) + 1e-12 <= bound + 1e-9


def test_chart_directions_uniform():
    u = chart_directions(3)
    assert len(u) == 2 ** 6
    assert np.allclose(np.hypot(u[:, 0], u[:, 1]), 1.0)


def test_partition_flat_edge_single_block():
    square = ConvexDomain.polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    dom, M = square.normalized()
    chart = boundary_chart(dom, (0.0, -1.0), M)
    part = boundary_partition(chart, 0.01)
    assert part.Q == 1


def test_partition_invariants_on_disc():
    dom, M = ConvexDomain.disc(1.0).normalized()
    chart = boundary_chart(dom, (0.0, -1.0), M)
    for delta in (2.0 ** -4, 2.0 ** -7, 2.0 ** -10):
        part = boundary_partition(chart, delta)
        assert part.Q >= 2
        assert check_partition(chart, part, delta) == 0.0


def test_smooth_approximation_nesting_and_gap():
    disc = ConvexDomain.disc(1.0)
    rng = np.random.default_rng(11)
    dirs = rng.normal(size=(200, 2))
    dirs /= np.hypot(dirs[:, 0], dirs[:, 1])[:, None]
    a5 = smooth_approximation(disc, 5)
    a6 = smooth_approximation(disc, 6)
    for v in dirs:
        r = minkowski_functional(disc, v)
        r5 = minkowski_functional(a5, v)
        r6 = minkowski_functional(a6, v)
        assert r - 1e-9 <= r6 <= r5 + 1e-9
        assert r5 - r <= 2.0 ** -6 * r + 1e-9
