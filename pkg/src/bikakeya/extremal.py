"""Sharpness constructions: extremal pairs and their certified lower bounds.

Power-law pairs on [3, N] whose bilinear maximal averages grow like log N,
a product-type 2D function whose linear maximal averages over a fan of
rectangles assemble into (log N)^3 / (log N)^4 lower-bound sums, and the
near-diagonal directional family with log N growth as the direction
approaches the diagonal.  Every lower bound is the exact average over an
explicitly constructed member rectangle (certified, not searched).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grids import Grid, SampledFunction, ProductFunction2D, lp_norm, \
    parse_function_spec
from .kakeya import diagonal_witness_rectangle, directional_maximal
from .rectangles import Rectangle, rect_average, rect_integral


@dataclass(frozen=True)
class ExtremalPair:
    """Power-cut pair f = x^(-2/p1), g = x^(-2/p2) on [3, N] with closed-form
    norms (|f|^p1 = x^-2 regardless of p1, so the integral is 1/3 - 1/N)."""

    p1: float
    p2: float
    N: int
    f: SampledFunction
    g: SampledFunction
    f_norm: float
    g_norm: float

    @property
    def p3(self) -> float:
        return 1.0 / (1.0 / self.p1 + 1.0 / self.p2)


def _powercut_norm(p: float, N: int) -> float:
    """Closed form of || x^(-2/p) ||_p on [3, N]."""
    if math.isinf(p):
        return 3.0 ** 0.0  # exponent -2/p -> 0; sup of the indicator
    return (1.0 / 3.0 - 1.0 / N) ** (1.0 / p)


def extremal_pair_bilinear(p1: float, p2: float, N: int, grid: Grid) -> ExtremalPair:
    if not (1 <= p1 and 1 <= p2):
        raise ValueError("need p1, p2 >= 1")
    if N < 8:
        raise ValueError("need N >= 8")
    if grid.lo > 0.0 or grid.hi < N:
        raise ValueError("grid window must cover [0, N]")
    a1 = 0.0 if math.isinf(p1) else -2.0 / p1
    a2 = 0.0 if math.isinf(p2) else -2.0 / p2
    f = parse_function_spec(f"powercut:a={a1},lo=3,hi={N}", grid)
    g = parse_function_spec(f"powercut:a={a2},lo=3,hi={N}", grid)
    return ExtremalPair(p1, p2, N, f, g,
                        _powercut_norm(p1, N), _powercut_norm(p2, N))


def pointwise_lower_bound_witness(pair: ExtremalPair, x: float):
    """The diagonal eccentricity-N rectangle through (x, x) with small-side
    midpoint at (4, 4); returns it and its exact bilinear average (~ c/x)."""
    if not (6 < x < pair.N - 1):
        raise ValueError("x must satisfy 6 < x < N - 1")
    R = diagonal_witness_rectangle(x, 3.0, pair.N)
    return R, rect_average(pair.f, pair.g, R)


# ---------------------------------------------------------------------------
# Product-type function for the linear maximal operator.

def fan_rectangle_linear(N: int, k: int) -> Rectangle:
    """1 x N rectangle from the origin along (N, k)/|(N, k)|, lying below the
    line z = (k/N) y (one long side on the line, width extending downward)."""
    norm = math.hypot(N, k)
    ex, ey = N / norm, k / norm
    center = (0.5 * N * ex + 0.5 * ey, 0.5 * N * ey - 0.5 * ex)
    return Rectangle(center, (ex, ey), float(N), 1.0)


def full_range_witness_rectangle(N: int, x1: float, x2: float) -> Rectangle:
    """Rectangle of dims (|x|-2) x (|x|-2)/N through (x1, x2), long side
    parallel to z = (x2/x1) y and lying below it, short side touching the
    circle of radius 2 about the origin."""
    r = math.hypot(x1, x2)
    if r <= 2.0:
        raise ValueError("need |x| > 2")
    L = r - 2.0
    w = L / N
    ex, ey = x1 / r, x2 / r
    # top long side runs from (2 ex, 2 ey) toward x; width extends downward
    center = (2.0 * ex + 0.5 * L * ex + 0.5 * w * ey,
              2.0 * ey + 0.5 * L * ey - 0.5 * w * ex)
    return Rectangle(center, (ex, ey), L, w)


@dataclass(frozen=True)
class ProductExtremalResult:
    """Fan averages of the product function and the assembled growth sums."""

    N: int
    fn: ProductFunction2D
    l2_norm_closed_form: float          # ||f_N||_2 = log N exactly
    ks: np.ndarray
    averages: np.ndarray                # exact (1/N) int_{R_k} f_N
    analytic_bounds: np.ndarray         # log(k/4)/sqrt(N k) for k >= 8
    fitted_c: float
    fixed_scale_sum: float              # ~ (log N)^3
    full_range_sum: float               # ~ (log N)^4


def product_extremal_linear(N: int, grid: Grid) -> ProductExtremalResult:
    """Build f_N(y, z) = (y z)^(-1/2) on [1, N]^2 and evaluate the fan and
    full-range lower-bound assemblies exactly."""
    if N < 8:
        raise ValueError("need N >= 8")
    if grid.lo > 0.0 or grid.hi < N:
        raise ValueError("grid window must cover [0, N]")
    if grid.h > 0.25:
        raise ValueError("need at least 4 cells across a unit width")
    f1 = parse_function_spec(f"powercut:a=-0.5,lo=1,hi={N}", grid)
    fn = ProductFunction2D(f1, f1)
    ks = np.arange(2, N + 1)
    averages = np.empty(len(ks))
    for idx, k in enumerate(ks):
        R = fan_rectangle_linear(N, int(k))
        averages[idx] = rect_integral(f1, f1, R) / R.area
    bounds = np.where(ks >= 8, np.log(np.maximum(ks, 8) / 4.0)
                      / np.sqrt(float(N) * ks), 0.0)
    mask = ks >= 8
    with np.errstate(divide="ignore", invalid="ignore"):
        cs = np.where(bounds > 0, averages / np.maximum(bounds, 1e-300), np.inf)
    # the largest single constant valid across the whole fan (the ratio
    # profile is not monotone in k, so fit the uniform envelope, not the
    # ratio at the smallest k)
    fitted_c = float(np.min(cs[mask])) if mask.any() else math.inf
    if mask.any() and not fitted_c > 0.0:
        raise AssertionError("fan averages do not dominate the analytic bound")
    # sector assembly: sum avg_k^2 * (N^2/2) * sector angle ~ (log N)^3
    theta = np.arctan(ks / float(N)) - np.arctan((ks - 1) / float(N))
    fixed_sum = float(np.sum(averages ** 2 * theta) * N * N / 2.0)
    # full-range assembly on a polar sample of [1, N]^2, values from the
    # explicit eccentricity-N witness rectangles.  The angular range must
    # reach slopes ~ 1/N: the near-axis sector contributes an extra log
    # factor, which is where the fourth power of log N comes from.  Sample
    # slopes log-uniformly in tan(theta) from 1.5/N up to 1 and double the
    # result (the function and the witnesses are symmetric across the
    # diagonal).
    n_t = 32
    ts = np.exp(np.linspace(math.log(1.5 / N), 0.0, n_t))
    dlogt = math.log(ts[1] / ts[0])
    n_r = 32
    full_sum = 0.0
    for t in ts:
        th = math.atan(t)
        dth = dlogt * t / (1.0 + t * t)     # dtheta = t/(1+t^2) dlog t
        r_lo = max(4.5, 1.5 / math.sin(th))  # keep x inside [1, N]^2
        if r_lo >= N:
            continue
        rs = np.exp(np.linspace(math.log(r_lo), math.log(N), n_r))
        dlogr = math.log(rs[1] / rs[0])
        for r in rs:
            x1, x2 = r * math.cos(th), r * math.sin(th)
            R = full_range_witness_rectangle(N, x1, x2)
            v = rect_integral(f1, f1, R) / R.area
            full_sum += v * v * r * r * dlogr * dth
    full_sum *= 2.0
    return ProductExtremalResult(N, fn, math.log(N), ks, averages, bounds,
                                 fitted_c, fixed_sum, full_sum)


# ---------------------------------------------------------------------------
# Near-diagonal directional family.

def alpha_witness_rectangle(N: int, c: float, x: float) -> Rectangle:
    """Rectangle with long side along (1, 1 - c/N), vertices (x, x) and
    (1, 1 + (c/N)(x-1)) on the longer side, dims L x L/N with
    L = (x-1) sqrt(1 + alpha^2)."""
    alpha = 1.0 - c / N
    L = (x - 1.0) * math.hypot(1.0, alpha)
    w = L / N
    norm = math.hypot(1.0, alpha)
    ex, ey = 1.0 / norm, alpha / norm
    # long top side from (1, 1 + (c/N)(x-1)) to (x, x); width extends downward
    corner = (1.0, 1.0 + (c / N) * (x - 1.0))
    center = (corner[0] + 0.5 * L * ex + 0.5 * w * ey,
              corner[1] + 0.5 * L * ey - 0.5 * w * ex)
    return Rectangle(center, (ex, ey), L, w)


@dataclass(frozen=True)
class AlphaExperimentResult:
    N: int
    alpha: float
    ratio: float                  # ||M(f,g)||_1 / (||f||_p ||g||_p')
    witness_ratio: float          # same but from the certified witnesses only


def alpha_near_one_experiment(N: int, c: float = 0.25, p: float = 2.0,
                              grid: Grid | None = None,
                              xs: np.ndarray | None = None) -> AlphaExperimentResult:
    """Directional maximal ratio for the single direction (1, alpha_N),
    alpha_N = 1 - c/N, on the power-cut pair; grows like log N in N."""
    if not (0 < c <= 0.5):
        raise ValueError("need 0 < c <= 1/2")
    if not (1 < p < math.inf):
        raise ValueError("need 1 < p < inf")
    if grid is None:
        grid = Grid(0.0, float(N + 1), 16 * (N + 1))
    if grid.lo > 0.0 or grid.hi < N + 1:
        raise ValueError("grid window must cover [0, N+1]")
    q = p / (p - 1.0)
    f = parse_function_spec(f"powercut:a={-1.0 / p},lo=3,hi={N}", grid)
    g = parse_function_spec(f"powercut:a={-1.0 / q},lo=3,hi={N}", grid)
    alpha = 1.0 - c / N
    om = np.array([1.0, alpha]) / math.hypot(1.0, alpha)
    if xs is None:
        xs = grid.centers()
    searched = directional_maximal(f, g, [om], xs)
    witness = np.zeros(len(xs))
    for i, x in enumerate(xs):
        if 2.0 < x < N:
            R = alpha_witness_rectangle(N, c, float(x))
            witness[i] = rect_average(f, g, R)
    vals = np.maximum(searched, witness)
    # L1 norm over the sampled diagonal (uniform or not)
    if len(xs) > 1:
        dx = np.gradient(xs)
    else:
        dx = np.array([grid.h])
    l1 = float(np.sum(vals * dx))
    l1_wit = float(np.sum(witness * dx))
    denom = lp_norm(f, p) * lp_norm(g, q)
    return AlphaExperimentResult(N, alpha, l1 / denom, l1_wit / denom)
