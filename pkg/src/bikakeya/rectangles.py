"""Oriented planar rectangles and exact integration of f(y1)*g(y2) over them.

Two independent exact routes are provided:

* ``rect_average`` — a boundary-integral evaluation.  Since f and g are
  piecewise constant on grid cells, F(y1) = int f and the product
  f(y1) g(y2) integrate exactly via Green's theorem:
  int_R f(y1) g(y2) dA = closed-contour int F(y1) g(y2) dy2,
  and along each straight edge the integrand is piecewise linear between
  gridline crossings, so a midpoint rule per sub-segment is exact.
* ``rect_average_clipped`` — the classical cell-by-cell route: clip the
  rectangle against every grid cell in its bounding box (Sutherland-Hodgman)
  and sum value * overlap-area.  O(cells), used as a cross-check oracle.

Both compute the same real number up to roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import SampledFunction


@dataclass(frozen=True)
class Rectangle:
    """Oriented rectangle: center, unit long-axis direction e, length L >= width w."""

    center: tuple[float, float]
    e: tuple[float, float]
    length: float
    width: float

    def __post_init__(self):
        ex, ey = self.e
        norm = float(np.hypot(ex, ey))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError("direction must be unit")
        if not (self.length >= self.width > 0):
            raise ValueError("need length >= width > 0")

    @property
    def eccentricity(self) -> float:
        return self.length / self.width

    @property
    def area(self) -> float:
        return self.length * self.width

    def corners(self) -> np.ndarray:
        """Counterclockwise corner list (4 x 2)."""
        cx, cy = self.center
        ex, ey = self.e
        px, py = -ey, ex
        hl, hw = self.length / 2.0, self.width / 2.0
        return np.array([
            [cx - hl * ex - hw * px, cy - hl * ey - hw * py],
            [cx + hl * ex - hw * px, cy + hl * ey - hw * py],
            [cx + hl * ex + hw * px, cy + hl * ey + hw * py],
            [cx - hl * ex + hw * px, cy - hl * ey + hw * py],
        ])

    def contains(self, x: float, y: float, tol: float = 1e-12) -> bool:
        cx, cy = self.center
        ex, ey = self.e
        dx, dy = x - cx, y - cy
        u = dx * ex + dy * ey
        v = -dx * ey + dy * ex
        return (abs(u) <= self.length / 2.0 + tol) and (abs(v) <= self.width / 2.0 + tol)


def from_corner(corner, e, length, width) -> Rectangle:
    """Rectangle from one corner, extending along e (length) and e-perp (width)."""
    ex, ey = float(e[0]), float(e[1])
    cx = corner[0] + (length / 2.0) * ex - (width / 2.0) * ey
    cy = corner[1] + (length / 2.0) * ey + (width / 2.0) * ex
    return Rectangle((cx, cy), (ex, ey), length, width)


def _prefix_eval(prefix, lo, h, n, y):
    """Exact F(y) = int_{-inf}^{y} f for piecewise-constant f (vectorized)."""
    t = (y - lo) / h
    idx = np.clip(np.floor(t).astype(np.int64), 0, n - 1)
    frac = np.clip(t - idx, 0.0, None)
    frac = np.minimum(frac, 1.0)
    out = prefix[idx] + frac * (prefix[idx + 1] - prefix[idx])
    out = np.where(t <= 0.0, 0.0, out)
    out = np.where(t >= n, prefix[n], out)
    return out


def _edge_integral(p0, p1, fprefix, flo, fh, fn, gvals, glo, gh, gn):
    """int along segment p0->p1 of F(y1) g(y2) dy2, exact for step-function data."""
    x0, y0 = p0
    x1, y1 = p1
    dx, dy = x1 - x0, y1 - y0
    if dy == 0.0:
        return 0.0
    # Parameter values in (0,1) where the segment crosses f- or g-gridlines.
    ts = [np.array([0.0, 1.0])]
    if dx != 0.0:
        i0 = int(np.ceil((min(x0, x1) - flo) / fh))
        i1 = int(np.floor((max(x0, x1) - flo) / fh))
        if i1 >= i0:
            ts.append(((flo + np.arange(i0, i1 + 1) * fh) - x0) / dx)
    j0 = int(np.ceil((min(y0, y1) - glo) / gh))
    j1 = int(np.floor((max(y0, y1) - glo) / gh))
    if j1 >= j0:
        ts.append(((glo + np.arange(j0, j1 + 1) * gh) - y0) / dy)
    t = np.unique(np.clip(np.concatenate(ts), 0.0, 1.0))
    if len(t) < 2:
        return 0.0
    tm = 0.5 * (t[:-1] + t[1:])
    xm = x0 + tm * dx
    ym = y0 + tm * dy
    fv = _prefix_eval(fprefix, flo, fh, fn, xm)
    gj = np.floor((ym - glo) / gh).astype(np.int64)
    gv = np.where((gj >= 0) & (gj < gn), gvals[np.clip(gj, 0, gn - 1)], 0.0)
    return float(np.sum(fv * gv * (t[1:] - t[:-1]) * dy))


def rect_integral(f: SampledFunction, g: SampledFunction, R: Rectangle) -> float:
    """Exact int_R |f|(y1) |g|(y2) dA for grid step functions (Green route)."""
    fg, gg = f.grid, g.grid
    fv = np.abs(f.values)
    gv = np.abs(g.values)
    fprefix = np.concatenate(([0.0], np.cumsum(fv * fg.h)))
    corners = R.corners()
    # Quick reject: bounding boxes do not meet the support product.
    bx0, by0 = corners.min(axis=0)
    bx1, by1 = corners.max(axis=0)
    if bx1 <= fg.lo or bx0 >= fg.hi or by1 <= gg.lo or by0 >= gg.hi:
        return 0.0
    total = 0.0
    for k in range(4):
        total += _edge_integral(corners[k], corners[(k + 1) % 4],
                                fprefix, fg.lo, fg.h, fg.n, gv, gg.lo, gg.h, gg.n)
    return max(total, 0.0)


def rect_average(f: SampledFunction, g: SampledFunction, R: Rectangle) -> float:
    """(1/|R|) int_R |f|(y1) |g|(y2), exact for the sampled step functions."""
    return rect_integral(f, g, R) / R.area


# ---------------------------------------------------------------------------
# Reference route: Sutherland-Hodgman clipping against each grid cell.

def _clip_halfplane(poly, a, b, c):
    """Keep the part of poly with a*x + b*y <= c."""
    out = []
    m = len(poly)
    for i in range(m):
        px, py = poly[i]
        qx, qy = poly[(i + 1) % m]
        pin = a * px + b * py <= c
        qin = a * qx + b * qy <= c
        if pin:
            out.append((px, py))
        if pin != qin:
            denom = a * (qx - px) + b * (qy - py)
            t = (c - a * px - b * py) / denom
            out.append((px + t * (qx - px), py + t * (qy - py)))
    return out


def _poly_area(poly):
    s = 0.0
    m = len(poly)
    for i in range(m):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % m]
        s += x0 * y1 - x1 * y0
    return abs(s) / 2.0


def cell_overlap_area(R: Rectangle, x0, x1, y0, y1) -> float:
    """Area of R intersect [x0,x1] x [y0,y1] by Sutherland-Hodgman clipping."""
    poly = [tuple(p) for p in R.corners()]
    for a, b, c in ((1, 0, x1), (-1, 0, -x0), (0, 1, y1), (0, -1, -y0)):
        poly = _clip_halfplane(poly, a, b, c)
        if not poly:
            return 0.0
    return _poly_area(poly)


def rect_average_clipped(f: SampledFunction, g: SampledFunction, R: Rectangle) -> float:
    """Cell-by-cell clipping evaluation of rect_average (reference oracle)."""
    fg, gg = f.grid, g.grid
    fv = np.abs(f.values)
    gv = np.abs(g.values)
    corners = R.corners()
    bx0, by0 = corners.min(axis=0)
    bx1, by1 = corners.max(axis=0)
    i0 = max(int(np.floor((bx0 - fg.lo) / fg.h)), 0)
    i1 = min(int(np.ceil((bx1 - fg.lo) / fg.h)), fg.n)
    j0 = max(int(np.floor((by0 - gg.lo) / gg.h)), 0)
    j1 = min(int(np.ceil((by1 - gg.lo) / gg.h)), gg.n)
    total = 0.0
    for i in range(i0, i1):
        if fv[i] == 0.0:
            continue
        x0 = fg.lo + i * fg.h
        for j in range(j0, j1):
            if gv[j] == 0.0:
                continue
            y0 = gg.lo + j * gg.h
            area = cell_overlap_area(R, x0, x0 + fg.h, y0, y0 + gg.h)
            if area > 0.0:
                total += fv[i] * gv[j] * area
    return total / R.area
