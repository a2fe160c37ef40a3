"""Bilinear frequency multipliers, Bochner-Riesz symbols, subordination."""

import math

import numpy as np
import pytest

from bikakeya.convex import ConvexDomain
from bikakeya.grids import Grid, parse_function_spec
from bikakeya.multiplier import (apply_bilinear_multiplier,
                                 apply_bilinear_multiplier_oracle,
                                 bochner_riesz_apply, bochner_riesz_symbol,
                                 bump_symbol, dyadic_decomposition,
                                 dyadic_reconstruction, one_symbol,
                                 subordination_reconstruct)


def gaussian_pair(n=128, lo=-8.0, hi=8.0):
    grid = Grid(lo, hi, n)
    f = parse_function_spec("gaussian:sigma=1", grid)
    g = parse_function_spec("gaussian:sigma=0.75", grid)
    return f, g, grid


def rel_l2(a, b, h):
    num = math.sqrt(float(np.sum((a - b) ** 2) * h))
    den = math.sqrt(float(np.sum(b ** 2) * h))
    return num / den


def test_identity_symbol_gives_product():
    f, g, grid = gaussian_pair()
    out = apply_bilinear_multiplier(one_symbol(), f, g)
    assert np.max(np.abs(out.values - f.values * g.values)) <= 1e-8


def test_large_disc_cutoff_gives_product():
    from bikakeya.multiplier import MultiplierSymbol
    f, g, grid = gaussian_pair()
    cut = MultiplierSymbol(
        lambda xi, eta: (xi ** 2 + eta ** 2 <= 36.0).astype(float),
        support_radius=6.0, name="disc-cutoff")
    out = apply_bilinear_multiplier(cut, f, g)
    assert rel_l2(out.values, f.values * g.values, grid.h) <= 1e-6


def test_fft_matches_double_sum_oracle():
    f, g, grid = gaussian_pair(128)
    disc = ConvexDomain.disc(1.0)
    symbols = [one_symbol(), bump_symbol(2.0),
               bochner_riesz_symbol(disc, 2.0, 4.0),
               bochner_riesz_symbol(ConvexDomain.ngon(8, 1.0), 1.0, 8.0),
               bochner_riesz_symbol(
                   ConvexDomain.polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)]),
                   2.0, 4.0)]
    for m in symbols:
        a = apply_bilinear_multiplier(m, f, g)
        b = apply_bilinear_multiplier_oracle(m, f, g)
        assert rel_l2(a.values, b.values, grid.h) <= 1e-8


def test_bilinearity():
    f, g, grid = gaussian_pair()
    f2 = parse_function_spec("gaussian:sigma=1.5", grid)
    m = bump_symbol(3.0)
    lhs = apply_bilinear_multiplier(
        m, type(f)(grid, 2.0 * f.values + 3.0 * f2.values), g)
    rhs = (2.0 * apply_bilinear_multiplier(m, f, g).values
           + 3.0 * apply_bilinear_multiplier(m, f2, g).values)
    scale = np.max(np.abs(rhs))
    assert np.max(np.abs(lhs.values - rhs)) <= 1e-10 * scale


def test_bochner_riesz_converges_to_product():
    f, g, grid = gaussian_pair(256)
    disc = ConvexDomain.disc(1.0)
    errs = [rel_l2(bochner_riesz_apply(disc, 2.0, R, f, g).values,
                   f.values * g.values, grid.h)
            for R in (4.0, 8.0, 16.0, 32.0)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 0.05


def test_subordination_closed_forms():
    rhos = np.linspace(0.0, 3.0, 20)
    rec = subordination_reconstruct(lambda s: -math.exp(-s), 2.0, rhos)
    for r, v in zip(rhos, rec):
        assert v == pytest.approx(math.exp(-r), rel=1e-8)
    rhos2 = np.linspace(0.0, 0.95, 20)
    rec2 = subordination_reconstruct(lambda s: 2.0 if s <= 1.0 else 0.0, 1.0,
                                     rhos2, breakpoints=(1.0,), tail=1.0)
    for r, v in zip(rhos2, rec2):
        assert v == pytest.approx((1.0 - r) ** 2, rel=1e-8, abs=1e-10)


def test_dyadic_reconstruction():
    lam, L = 1.0, 8
    disc = ConvexDomain.disc(1.0)
    pieces = dyadic_decomposition(lam, L, disc)
    xi = np.linspace(-0.9, 0.9, 25)
    eta = np.linspace(-0.9, 0.9, 25)
    X, Y = np.meshgrid(xi, eta)
    rho = np.hypot(X, Y)
    mask = 1.0 - rho >= 2.0 ** -L
    rec = dyadic_reconstruction(pieces, lam, X, Y)
    exact = np.clip(1.0 - rho, 0.0, None) ** lam
    assert np.max(np.abs(rec[mask] - exact[mask])) <= 2.0 ** (-lam * L)


def test_dyadic_outside_support_zero():
    pieces = dyadic_decomposition(1.0, 4, ConvexDomain.disc(1.0))
    rec = dyadic_reconstruction(pieces, 1.0, np.array([1.5]), np.array([0.0]))
    assert abs(rec[0]) <= 1e-12


def test_monotone_truncation_at_origin():
    f, g, grid = gaussian_pair()
    small = bump_symbol(1.0)
    large = bump_symbol(3.0)
    a = apply_bilinear_multiplier(small, f, g)
    b = apply_bilinear_multiplier(large, f, g)
    i0 = int(np.argmin(np.abs(grid.centers())))
    assert a.values[i0] <= b.values[i0] + 1e-10
