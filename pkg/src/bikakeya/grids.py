"""Uniform-grid sampled functions, their norms, and classical maximal functions.

Functions live on a compact window [lo, hi] with zero extension outside it.
Samples sit at cell centers lo + (i + 1/2) h; integrals use the midpoint rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit


class FunctionSpecError(ValueError):
    """Raised when a textual function spec cannot be parsed or is out of range."""


@dataclass(frozen=True)
class Grid:
    """Uniform 1D grid on [lo, hi] with n cells, sampled at cell centers."""

    lo: float
    hi: float
    n: int

    def __post_init__(self):
        if not (self.hi > self.lo):
            raise ValueError("Grid requires hi > lo")
        if self.n < 2:
            raise ValueError("Grid requires n >= 2")

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / self.n

    def centers(self) -> np.ndarray:
        return self.lo + (np.arange(self.n) + 0.5) * self.h

    def index(self, x: float) -> int:
        """Index of the cell containing x (clipped to the valid range)."""
        i = int(np.floor((x - self.lo) / self.h))
        return min(max(i, 0), self.n - 1)


@dataclass(frozen=True)
class SampledFunction:
    """Real-valued function sampled at the cell centers of a Grid, zero outside."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (self.grid.n,):
            raise ValueError("values length must equal grid.n")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def h(self) -> float:
        return self.grid.h

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """Evaluate by nearest-cell lookup with zero extension."""
        x = np.asarray(x, dtype=np.float64)
        idx = np.floor((x - self.grid.lo) / self.grid.h).astype(np.int64)
        inside = (idx >= 0) & (idx < self.grid.n)
        out = np.zeros(x.shape)
        out[inside] = self.values[idx[inside]]
        return out

    def scaled(self, c: float) -> "SampledFunction":
        return SampledFunction(self.grid, c * self.values)

    def support_bounds(self) -> tuple[float, float]:
        """Window [a, b] spanned by the nonzero cells (grid window if all zero)."""
        nz = np.nonzero(self.values)[0]
        if len(nz) == 0:
            return self.grid.lo, self.grid.hi
        return (self.grid.lo + nz[0] * self.grid.h,
                self.grid.lo + (nz[-1] + 1) * self.grid.h)


@dataclass(frozen=True)
class ProductFunction2D:
    """2D tensor product fx(y) * fy(z) of two 1D sampled functions."""

    fx: SampledFunction
    fy: SampledFunction


def _parse_params(body: str) -> dict:
    params = {}
    if body:
        for item in body.split(","):
            if "=" not in item:
                raise FunctionSpecError(f"malformed parameter {item!r}")
            key, _, val = item.partition("=")
            params[key.strip()] = val.strip()
    return params


def _get_float(params: dict, key: str, spec: str) -> float:
    if key not in params:
        raise FunctionSpecError(f"spec {spec!r} missing parameter {key!r}")
    try:
        return float(params.pop(key))
    except ValueError as exc:
        raise FunctionSpecError(f"spec {spec!r}: bad value for {key!r}") from exc


def parse_function_spec(spec: str, grid: Grid):
    """Build a SampledFunction (or ProductFunction2D) from a textual spec.

    Grammar: ``name:key=val,key=val``.  Generators: ``indicator:lo,hi``,
    ``powercut:a,lo,hi`` (x^a on [lo,hi]), ``gaussian:sigma``,
    ``spike:center,width`` (width^-1 times the indicator of a width-interval),
    ``product2d:fx=<spec>;fy=<spec>``.
    """
    if not isinstance(spec, str) or not spec:
        raise FunctionSpecError("empty spec")
    name, _, body = spec.partition(":")
    name = name.strip()

    if name == "product2d":
        if "fx=" not in body or ";fy=" not in body:
            raise FunctionSpecError(f"spec {spec!r}: product2d needs fx=<spec>;fy=<spec>")
        fx_body, _, fy_body = body.partition(";fy=")
        fx_spec = fx_body.partition("fx=")[2]
        return ProductFunction2D(parse_function_spec(fx_spec, grid),
                                 parse_function_spec(fy_body, grid))

    params = _parse_params(body)
    x = grid.centers()
    if name == "indicator":
        lo = _get_float(params, "lo", spec)
        hi = _get_float(params, "hi", spec)
        if hi <= lo:
            raise FunctionSpecError(f"spec {spec!r}: needs hi > lo")
        vals = np.where((x >= lo) & (x < hi), 1.0, 0.0)
    elif name == "powercut":
        a = _get_float(params, "a", spec)
        lo = _get_float(params, "lo", spec)
        hi = _get_float(params, "hi", spec)
        if hi <= lo:
            raise FunctionSpecError(f"spec {spec!r}: needs hi > lo")
        if lo <= 0 and a < 0:
            raise FunctionSpecError(f"spec {spec!r}: negative power needs lo > 0")
        inside = (x >= lo) & (x < hi)
        vals = np.zeros(grid.n)
        vals[inside] = x[inside] ** a
    elif name == "gaussian":
        sigma = _get_float(params, "sigma", spec)
        if sigma <= 0:
            raise FunctionSpecError(f"spec {spec!r}: sigma must be positive")
        vals = np.exp(-(x ** 2) / (2.0 * sigma ** 2))
    elif name == "spike":
        center = _get_float(params, "center", spec)
        width = _get_float(params, "width", spec)
        if width <= 0:
            raise FunctionSpecError(f"spec {spec!r}: width must be positive")
        vals = np.where((x >= center - width / 2) & (x < center + width / 2),
                        1.0 / width, 0.0)
        if not np.any(vals):
            # Narrower than a cell: keep unit mass on the containing cell.
            vals = np.zeros(grid.n)
            vals[grid.index(center)] = 1.0 / grid.h
    else:
        raise FunctionSpecError(f"unknown generator {name!r}")
    if params:
        raise FunctionSpecError(f"spec {spec!r}: unknown parameters {sorted(params)}")
    return SampledFunction(grid, vals)


def lp_norm(f: SampledFunction, p: float) -> float:
    """Midpoint-rule L^p norm; p = inf gives the max of |values|."""
    if p <= 0:
        raise ValueError("p must be positive")
    v = np.abs(f.values)
    if np.isinf(p):
        return float(v.max(initial=0.0))
    return float((np.sum(v ** p) * f.h) ** (1.0 / p))


def weak_lp_quasinorm(f: SampledFunction, p: float) -> float:
    """sup over attained levels lam of lam * |{|f| > lam}|^(1/p).

    Level sets are measured as (count of qualifying cells) * h; the sup runs
    over the sorted distinct attained values of |f|.
    """
    if p <= 0 or np.isinf(p):
        raise ValueError("p must be positive and finite")
    v = np.sort(np.abs(f.values))[::-1]
    if v[0] == 0.0:
        return 0.0
    # sup_{lam>0} lam |{|f| > lam}|^(1/p) is attained in the limit lam -> v^-
    # for each attained value v, where the level set becomes {|f| >= v}.
    counts = np.searchsorted(-v, -v, side="right")  # |{|f| >= v_i}| in cells
    meas = counts * f.h
    vals = v * meas ** (1.0 / p)
    return float(vals.max())


@njit(cache=True)
def _hl_scan(prefix, h, lo_node, hi_node):
    """Brute-force maximal averages: per point, scan all node pairs (a, b)."""
    n = prefix.shape[0] - 1
    out = np.zeros(n)
    for i in range(n):
        a0 = max(lo_node, 0)
        b1 = min(hi_node, n)
        best = 0.0
        for a in range(a0, i + 1):
            pa = prefix[a]
            for b in range(i + 1, b1 + 1):
                avg = (prefix[b] - pa) / ((b - a) * h)
                if avg > best:
                    best = avg
        out[i] = best
    return out


@njit(cache=True)
def _hl_prefix_sweep(prefix, h):
    """Prefix-sum sweep: for each left node a, suffix maxima over right nodes.

    O(n^2) total instead of O(n^2) per point; exact (same averages, different
    evaluation order).
    """
    n = prefix.shape[0] - 1
    out = np.zeros(n)
    for a in range(n):
        pa = prefix[a]
        # suffix max over b of avg(a,b), walked right-to-left
        best = -1.0
        for b in range(n, a, -1):
            avg = (prefix[b] - pa) / ((b - a) * h)
            if avg > best:
                best = avg
            # best now = max over b' >= b; covers points i in [max(a, b-1), ...]
            i = b - 1
            if i >= a and best > out[i]:
                out[i] = best
    return out


def hl_maximal(f: SampledFunction, s: float = 1.0, method: str = "auto") -> SampledFunction:
    """Uncentered Hardy-Littlewood maximal function M_s f = (M |f|^s)^(1/s).

    At each cell center x, the sup runs over all grid-aligned intervals
    (endpoints on grid nodes) containing x.  ``method`` is "scan" (per-point
    brute force), "prefix" (prefix-sum sweep, same values), or "auto".
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if method == "auto":
        method = "scan" if f.grid.n <= 512 else "prefix"
    power = np.abs(f.values) ** s
    prefix = np.concatenate(([0.0], np.cumsum(power * f.h)))
    if method == "scan":
        mv = _hl_scan(prefix, f.h, 0, f.grid.n)
    elif method == "prefix":
        mv = _hl_prefix_sweep(prefix, f.h)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SampledFunction(f.grid, np.maximum(mv, 0.0) ** (1.0 / s))
