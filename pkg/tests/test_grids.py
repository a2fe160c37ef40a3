"""Sampled functions, norms, and the linear maximal function."""

import math

import numpy as np
import pytest

from bikakeya.grids import (FunctionSpecError, Grid, hl_maximal, lp_norm,
                            parse_function_spec, weak_lp_quasinorm)


def test_grid_cell_centers():
    grid = Grid(-2.0, 2.0, 400)
    xs = grid.centers()
    assert grid.h == pytest.approx(0.01)
    assert xs[0] == pytest.approx(-2.0 + 0.005)
    assert xs[-1] == pytest.approx(2.0 - 0.005)


def test_indicator_values():
    grid = Grid(-2.0, 2.0, 400)
    f = parse_function_spec("indicator:lo=0,hi=1", grid)
    xs = grid.centers()
    inside = (xs > 0) & (xs < 1)
    assert np.all(f.values[inside] == 1.0)
    assert np.all(f.values[~inside & (np.abs(xs) > 1.5)] == 0.0)


def test_powercut_values():
    grid = Grid(0.0, 16.0, 1600)
    f = parse_function_spec("powercut:a=-1.0,lo=3,hi=12", grid)
    xs = grid.centers()
    sel = (xs > 3.1) & (xs < 11.9)
    assert np.allclose(f.values[sel], 1.0 / xs[sel])
    assert np.all(f.values[xs < 2.9] == 0.0)


def test_gaussian_peak():
    grid = Grid(-4.0, 4.0, 1024)
    f = parse_function_spec("gaussian:sigma=1", grid)
    assert np.max(f.values) == pytest.approx(1.0, abs=1e-4)


def test_spike_normalized():
    grid = Grid(0.0, 1.0, 256)
    f = parse_function_spec("spike:center=0.5,width=0.0625", grid)
    assert np.sum(f.values) * grid.h == pytest.approx(1.0, abs=1e-10)


def test_bad_specs_raise():
    grid = Grid(0.0, 1.0, 16)
    with pytest.raises(FunctionSpecError):
        parse_function_spec("nosuch:a=1", grid)
    with pytest.raises(FunctionSpecError):
        parse_function_spec("powercut:a=1,lo=5,hi=2", grid)


def test_lp_norm_examples():
    grid = Grid(-2.0, 2.0, 800)
    f = parse_function_spec("indicator:lo=0,hi=1", grid)
    assert lp_norm(f, 2) == pytest.approx(1.0, abs=2 * grid.h)
    assert lp_norm(f, math.inf) == 1.0
    grid2 = Grid(0.0, 16.0, 3200)
    g = parse_function_spec("powercut:a=-1.0,lo=3,hi=12", grid2)
    assert lp_norm(g, 2) == pytest.approx(0.5, abs=2 * grid2.h)


def test_lp_norm_homogeneous():
    grid = Grid(-2.0, 2.0, 256)
    f = parse_function_spec("gaussian:sigma=1", grid)
    scaled = type(f)(grid, 3.0 * f.values)
    for p in (0.5, 1, 2, math.inf):
        assert lp_norm(scaled, p) == pytest.approx(3.0 * lp_norm(f, p),
                                                   rel=1e-12)


def test_weak_norm_examples():
    grid = Grid(-1.0, 1.0, 1000)
    f = parse_function_spec("indicator:lo=0,hi=0.5", grid)
    two_f = type(f)(grid, 2.0 * f.values)
    assert weak_lp_quasinorm(two_f, 1) == pytest.approx(1.0, abs=2 * grid.h)
    g = parse_function_spec("indicator:lo=0,hi=1", grid)
    assert weak_lp_quasinorm(g, 2) == pytest.approx(1.0, abs=2 * grid.h)


def test_weak_norm_powercut_scan():
    N = 64
    grid = Grid(0.0, float(N), 64 * N)
    f = parse_function_spec(f"powercut:a=-1.0,lo=1,hi={N}", grid)
    w = weak_lp_quasinorm(f, 1)
    assert 1.0 - 1.0 / N - 2 * grid.h <= w <= 1.0 + 2 * grid.h


def test_chebyshev():
    grid = Grid(-2.0, 2.0, 512)
    for spec in ("gaussian:sigma=0.5", "indicator:lo=-1,hi=1",
                 "powercut:a=-0.5,lo=0.25,hi=2"):
        f = parse_function_spec(spec, grid)
        for p in (0.5, 1, 2):
            assert weak_lp_quasinorm(f, p) <= lp_norm(f, p) * (1 + 1e-12)


def test_hl_maximal_examples():
    grid = Grid(-1.0, 3.0, 1024)
    f = parse_function_spec("indicator:lo=0,hi=1", grid)
    m = hl_maximal(f)
    xs = grid.centers()
    i_half = int(np.argmin(np.abs(xs - 0.5)))
    i_two = int(np.argmin(np.abs(xs - 2.0)))
    assert m.values[i_half] == pytest.approx(1.0, abs=2 * grid.h)
    assert m.values[i_two] == pytest.approx(0.5, abs=2 * grid.h)


def test_hl_maximal_homogeneous_and_dominates():
    grid = Grid(-2.0, 2.0, 400)
    f = parse_function_spec("gaussian:sigma=0.7", grid)
    m = hl_maximal(f)
    m3 = hl_maximal(type(f)(grid, 3.0 * f.values))
    assert np.allclose(m3.values, 3.0 * m.values, rtol=1e-12)
    assert np.all(m.values >= np.abs(f.values) - 1e-12)


def test_hl_maximal_methods_agree():
    grid = Grid(-2.0, 2.0, 300)
    f = parse_function_spec("powercut:a=-0.25,lo=0.25,hi=1.5", grid)
    a = hl_maximal(f, method="scan")
    b = hl_maximal(f, method="prefix")
    assert np.max(np.abs(a.values - b.values)) <= 1e-12


def test_hl_maximal_monotone():
    grid = Grid(-2.0, 2.0, 200)
    f = parse_function_spec("indicator:lo=0,hi=1", grid)
    g = parse_function_spec("indicator:lo=-0.5,hi=1.5", grid)
    mf, mg = hl_maximal(f), hl_maximal(g)
    assert np.all(mf.values <= mg.values + 1e-12)


def test_refinement_stability_of_norm():
    vals = []
    for n in (400, 800):
        grid = Grid(-2.0, 2.0, n)
        f = parse_function_spec("gaussian:sigma=1", grid)
        vals.append(lp_norm(f, 2))
    assert abs(vals[0] - vals[1]) <= 4.0 / 400
