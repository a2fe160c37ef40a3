"""Empirical operator-norm ratios, N-sweeps, and growth-law fitting.

Ratios here are lower bounds on operator norms: the numerator is the norm
of the (lower-bound) maximal values on a sampled diagonal, the denominator
the product of input norms.  Growth laws are fitted by least squares in
each model's linearizing coordinates.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .grids import Grid, SampledFunction, lp_norm, parse_function_spec
from .kakeya import DEFAULT_PROFILE, SearchProfile, kakeya_fixed_scale, \
    kakeya_full

MODELS = ("c*logN", "c*(logN)^beta", "c*N^beta", "c*(logN)^0.5")


@dataclass(frozen=True)
class FitResult:
    """A fitted growth law ratio(N) ~ model(N) with goodness of fit."""

    model: str
    c: float
    beta: float | None
    r_squared: float
    points: np.ndarray            # (n, 2) array of (N, ratio)

    def predict(self, n):
        n = np.asarray(n, dtype=np.float64)
        if self.model == "c*logN":
            return self.c * np.log(n)
        if self.model == "c*(logN)^beta":
            return self.c * np.log(n) ** self.beta
        if self.model == "c*N^beta":
            return self.c * n ** self.beta
        if self.model == "c*(logN)^0.5":
            return self.c * np.sqrt(np.log(n))
        raise ValueError(f"unknown model {self.model!r}")


def sample_norm(values, xs, p: float) -> float:
    """L^p norm of point values on a sampled axis (trapezoid-style weights)."""
    values = np.asarray(values, dtype=np.float64)
    xs = np.asarray(xs, dtype=np.float64)
    if math.isinf(p):
        return float(np.max(np.abs(values)))
    dx = np.gradient(xs) if len(xs) > 1 else np.array([1.0])
    return float(np.sum(np.abs(values) ** p * dx) ** (1.0 / p))


def sample_weak_norm(values, xs, p: float) -> float:
    """Weak-L^p quasinorm sup_l l * |{ |v| > l }|^(1/p) on a sampled axis."""
    values = np.abs(np.asarray(values, dtype=np.float64))
    xs = np.asarray(xs, dtype=np.float64)
    dx = np.gradient(xs) if len(xs) > 1 else np.array([1.0])
    order = np.argsort(values)[::-1]
    v = values[order]
    meas = np.cumsum(dx[order])
    pos = v > 0
    if not pos.any():
        return 0.0
    return float(np.max(v[pos] * meas[pos] ** (1.0 / p)))


def diagonal_points(grid: Grid, max_points: int = 1100) -> np.ndarray:
    """Evaluation points for norm estimation: the grid centers, uniformly
    subsampled when the grid is finer than the norm estimate needs."""
    xs = grid.centers()
    if len(xs) <= max_points:
        return xs
    idx = np.unique(np.linspace(0, len(xs) - 1, max_points).astype(np.int64))
    return xs[idx]


def operator_ratio(operator, f: SampledFunction, g: SampledFunction,
                   p1: float, p2: float, p3: float, weak: bool = False,
                   xs=None, max_points: int = 1100) -> float:
    """||op(f,g)||_{p3} / (||f||_{p1} ||g||_{p2}) on a sampled diagonal.

    ``operator`` is a callable (f, g, xs) -> values.  With ``weak`` set the
    numerator is the weak-L^{p3} quasinorm.
    """
    if xs is None:
        xs = diagonal_points(f.grid, max_points)
    den = lp_norm(f, p1) * lp_norm(g, p2)
    if not den > 0.0:
        raise ZeroDivisionError("input pair has zero norm")
    vals = operator(f, g, xs)
    num = (sample_weak_norm if weak else sample_norm)(vals, xs, p3)
    return num / den


def sweep_grid(N: int, h: float | None = None) -> Grid:
    """Window [-2, N+2] at resolution h (default min(1/16, 1/N))."""
    if h is None:
        h = min(1.0 / 16.0, 1.0 / N)
    n = int(round((N + 4) / h))
    return Grid(-2.0, float(N + 2), n)


def _family_pair(family, N: int, grid: Grid, exponents=(2.0, 2.0, 1.0)):
    if callable(family):
        return family(N, grid)
    if family == "extremal":
        p1, p2 = exponents[0], exponents[1]
        a1 = 0.0 if math.isinf(p1) else -2.0 / p1
        a2 = 0.0 if math.isinf(p2) else -2.0 / p2
        f = parse_function_spec(f"powercut:a={a1},lo=3,hi={N}", grid)
        g = parse_function_spec(f"powercut:a={a2},lo=3,hi={N}", grid)
        return f, g
    if family == "spike":
        f = parse_function_spec(f"spike:center=0.5,width={grid.h}", grid)
        return f, f
    if family == "constant":
        f = parse_function_spec("indicator:lo=0,hi=1", grid)
        return f, f
    raise ValueError(f"unknown input family {family!r}")


@dataclass
class SweepResult:
    n_list: list
    ratios: list
    h_list: list = field(default_factory=list)
    runtime_ms: list = field(default_factory=list)

    def points(self) -> np.ndarray:
        return np.column_stack([self.n_list, self.ratios])


def growth_sweep(operator: str, family, n_list, exponents,
                 weak: bool = False, h: float | None = None,
                 delta: float = 1.0, max_points: int = 1100,
                 profile: SearchProfile = DEFAULT_PROFILE) -> SweepResult:
    """operator_ratio across an increasing N-list with N-dependent inputs.

    ``operator`` selects the maximal operator: "full" (all eccentricities
    up to N) or "fixed" (single scale ``delta``).  ``family`` is a named
    input family or a callable (N, grid) -> (f, g).
    """
    n_list = list(n_list)
    if len(n_list) < 4 or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("need an increasing N list with >= 4 entries")
    p1, p2, p3 = exponents
    out = SweepResult([], [])
    for N in n_list:
        grid = sweep_grid(N, h)
        f, g = _family_pair(family, N, grid, exponents)
        if operator == "full":
            op = lambda f_, g_, xs: kakeya_full(f_, g_, N, xs, profile=profile)
        elif operator == "fixed":
            op = lambda f_, g_, xs: kakeya_fixed_scale(
                f_, g_, N, delta, xs, profile=profile)
        else:
            raise ValueError(f"unknown operator {operator!r}")
        t0 = time.perf_counter()
        r = operator_ratio(op, f, g, p1, p2, p3, weak=weak,
                           max_points=max_points)
        out.n_list.append(N)
        out.ratios.append(r)
        out.h_list.append(grid.h)
        out.runtime_ms.append(1000.0 * (time.perf_counter() - t0))
    return out


def growth_fit(points, model: str) -> FitResult:
    """Least squares in the model's linearizing coordinates.

    c*logN and c*(logN)^0.5: linear in ratio vs the regressor, no intercept.
    c*(logN)^beta: log ratio vs log log N.  c*N^beta: log ratio vs log N.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 4:
        raise ValueError("need >= 4 (N, ratio) points")
    n, r = pts[:, 0], pts[:, 1]
    if np.any(r <= 0) or np.any(n <= 1):
        raise ValueError("need positive ratios and N > 1")
    if model in ("c*logN", "c*(logN)^0.5"):
        reg = np.log(n) if model == "c*logN" else np.sqrt(np.log(n))
        c = float(np.dot(reg, r) / np.dot(reg, reg))
        pred = c * reg
        beta = None
    elif model in ("c*(logN)^beta", "c*N^beta"):
        x = np.log(np.log(n)) if model == "c*(logN)^beta" else np.log(n)
        b, a = np.polyfit(x, np.log(r), 1)
        c, beta = float(math.exp(a)), float(b)
        pred = np.exp(a + b * x)
    else:
        raise ValueError(f"unknown model {model!r}")
    ss_res = float(np.sum((r - pred) ** 2))
    ss_tot = float(np.sum((r - np.mean(r)) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else (1.0 if ss_res == 0 else 0.0)
    return FitResult(model, c, beta, max(0.0, min(1.0, r2)), pts)


def best_fit(points) -> FitResult:
    """The model with the highest R^2 among all registered models."""
    fits = [growth_fit(points, m) for m in MODELS]
    return max(fits, key=lambda fr: fr.r_squared)
