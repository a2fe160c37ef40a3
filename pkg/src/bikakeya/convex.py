"""Planar convex-body geometry.

Minkowski functional, supporting lines, boundary caps and covering numbers,
upper Minkowski dimension estimation, directional boundary charts with their
greedy partitions, and smooth inner approximations of polygons/discs.

A domain is a disc, a convex polygon (counterclockwise vertices), or a smooth
body given by a boundary parametrization s in [0,1) -> point.  All domains
contain the origin strictly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit


class DomainSpecError(ValueError):
    """Raised when a textual domain spec cannot be parsed."""


def _as_unit(v):
    v = np.asarray(v, dtype=np.float64)
    n = float(np.hypot(v[0], v[1]))
    if n == 0.0:
        raise ValueError("zero vector has no direction")
    return v / n


class ConvexDomain:
    """Convex body containing the origin; kind 'disc', 'polygon', or 'smooth'."""

    def __init__(self, kind, *, radius=None, vertices=None, boundary_fn=None,
                 n_cache=4096):
        self.kind = kind
        if kind == "disc":
            if radius is None or radius <= 0:
                raise ValueError("disc needs positive radius")
            self.radius = float(radius)
        elif kind == "polygon":
            v = np.asarray(vertices, dtype=np.float64)
            if v.ndim != 2 or v.shape[0] < 3 or v.shape[1] != 2:
                raise ValueError("polygon needs >= 3 planar vertices")
            self._validate_polygon(v)
            self.vertices = v
            self._edge_normals, self._edge_offsets = self._edge_data(v)
        elif kind == "smooth":
            if boundary_fn is None:
                raise ValueError("smooth domain needs a boundary function")
            self.boundary_fn = boundary_fn
            s = np.arange(n_cache) / n_cache
            pts = np.array([boundary_fn(si) for si in s], dtype=np.float64)
            ang = np.unwrap(np.arctan2(pts[:, 1], pts[:, 0]))
            if not np.all(np.diff(ang) > -1e-12):
                raise ValueError("boundary parametrization must wind monotonically")
            self._cache_s = s
            self._cache_pts = pts
            self._cache_ang = ang
        else:
            raise ValueError(f"unknown domain kind {kind!r}")

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def _validate_polygon(v):
        m = len(v)
        area2 = 0.0
        for i in range(m):
            x0, y0 = v[i]
            x1, y1 = v[(i + 1) % m]
            x2, y2 = v[(i + 2) % m]
            cross = (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1)
            if cross <= 1e-14 * (abs(x1 - x0) + abs(y1 - y0) + 1):
                raise ValueError("polygon vertices must be strictly convex, "
                                 "counterclockwise, with no collinear triples")
            area2 += x0 * y1 - x1 * y0
        if area2 <= 0:
            raise ValueError("polygon must be counterclockwise")
        # origin strictly inside: positive offset for every edge
        for i in range(m):
            x0, y0 = v[i]
            x1, y1 = v[(i + 1) % m]
            nx, ny = y1 - y0, x0 - x1  # outward normal (ccw polygon)
            if nx * x0 + ny * y0 <= 0:
                raise ValueError("polygon must contain the origin strictly")

    @staticmethod
    def _edge_data(v):
        rolled = np.roll(v, -1, axis=0)
        normals = np.stack([rolled[:, 1] - v[:, 1], v[:, 0] - rolled[:, 0]], axis=1)
        offsets = np.einsum("ij,ij->i", normals, v)
        return normals, offsets

    @staticmethod
    def disc(radius):
        return ConvexDomain("disc", radius=radius)

    @staticmethod
    def polygon(vertices):
        return ConvexDomain("polygon", vertices=vertices)

    @staticmethod
    def ngon(k, r=1.0, phase=0.0):
        ang = phase + 2 * np.pi * np.arange(k) / k
        return ConvexDomain.polygon(np.stack([r * np.cos(ang), r * np.sin(ang)], axis=1))

    @staticmethod
    def smooth(boundary_fn, n_cache=4096):
        return ConvexDomain("smooth", boundary_fn=boundary_fn, n_cache=n_cache)

    # -- basic geometry -------------------------------------------------------

    def rho(self, points):
        """Minkowski functional: rho(v) = inf{t > 0 : v/t on the boundary}.

        Exact for disc and polygon; bisection to 1e-12 relative for smooth.
        Accepts a single (2,) point or an (m, 2) array.
        """
        pts = np.asarray(points, dtype=np.float64)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        if self.kind == "disc":
            out = np.hypot(pts[:, 0], pts[:, 1]) / self.radius
        elif self.kind == "polygon":
            out = np.max(pts @ self._edge_normals.T / self._edge_offsets, axis=1)
            out = np.maximum(out, 0.0)
        else:
            out = np.array([self._rho_smooth_one(p) for p in pts])
        return float(out[0]) if single else out

    def _rho_smooth_one(self, p):
        r = float(np.hypot(p[0], p[1]))
        if r == 0.0:
            return 0.0
        phi = math.atan2(p[1], p[0])
        ang = self._cache_ang
        base = ang[0]
        # unwrap phi into [base, base + 2pi)
        phi_u = base + (phi - base) % (2 * np.pi)
        k = int(np.searchsorted(ang, phi_u, side="right")) - 1
        k = min(max(k, 0), len(ang) - 1)
        s0 = self._cache_s[k]
        s1 = self._cache_s[k + 1] if k + 1 < len(ang) else 1.0
        # bisection on s: boundary point colinear with p
        px, py = p[0] / r, p[1] / r
        def side(s):
            bx, by = self.boundary_fn(s % 1.0)
            return bx * py - by * px
        f0 = side(s0)
        for _ in range(80):
            sm = 0.5 * (s0 + s1)
            fm = side(sm)
            if (fm > 0) == (f0 > 0):
                s0, f0 = sm, fm
            else:
                s1 = sm
            if s1 - s0 < 1e-15:
                break
        bx, by = self.boundary_fn(0.5 * (s0 + s1) % 1.0)
        return r / float(np.hypot(bx, by))

    def boundary_samples(self, n):
        """n boundary points with outward unit normals, ordered counterclockwise."""
        if self.kind == "disc":
            ang = 2 * np.pi * np.arange(n) / n
            nrm = np.stack([np.cos(ang), np.sin(ang)], axis=1)
            return self.radius * nrm, nrm
        if self.kind == "polygon":
            v = self.vertices
            rolled = np.roll(v, -1, axis=0)
            lens = np.hypot(*(rolled - v).T)
            cum = np.concatenate(([0.0], np.cumsum(lens)))
            per = cum[-1]
            tpos = per * np.arange(n) / n
            idx = np.clip(np.searchsorted(cum, tpos, side="right") - 1, 0, len(v) - 1)
            frac = (tpos - cum[idx]) / lens[idx]
            pts = v[idx] + frac[:, None] * (rolled[idx] - v[idx])
            nn = self._edge_normals[idx]
            nn = nn / np.hypot(nn[:, 0], nn[:, 1])[:, None]
            return pts, nn
        s = np.arange(n) / n
        pts = np.array([self.boundary_fn(si) for si in s])
        eps = 0.5 / n
        fwd = np.array([self.boundary_fn((si + eps) % 1.0) for si in s])
        bwd = np.array([self.boundary_fn((si - eps) % 1.0) for si in s])
        tang = fwd - bwd
        tang /= np.hypot(tang[:, 0], tang[:, 1])[:, None]
        nrm = np.stack([tang[:, 1], -tang[:, 0]], axis=1)
        # orient outward
        flip = np.einsum("ij,ij->i", nrm, pts) < 0
        nrm[flip] *= -1.0
        return pts, nrm

    def diameter(self):
        if self.kind == "disc":
            return 2.0 * self.radius
        pts = self.vertices if self.kind == "polygon" else self.boundary_samples(1024)[0]
        hull = pts
        best = 0.0
        for i in range(len(hull)):
            d = np.hypot(hull[:, 0] - hull[i, 0], hull[:, 1] - hull[i, 1]).max()
            best = max(best, float(d))
        return best

    def radial_bounds(self):
        """(min, max) distance from the origin to the boundary."""
        if self.kind == "disc":
            return self.radius, self.radius
        if self.kind == "polygon":
            nn = self._edge_normals
            inr = float(np.min(self._edge_offsets / np.hypot(nn[:, 0], nn[:, 1])))
            outr = float(np.max(np.hypot(self.vertices[:, 0], self.vertices[:, 1])))
            return inr, outr
        r = np.hypot(self._cache_pts[:, 0], self._cache_pts[:, 1])
        return float(r.min()), float(r.max())

    def scaled(self, c):
        if c <= 0:
            raise ValueError("scale must be positive")
        if self.kind == "disc":
            return ConvexDomain.disc(c * self.radius)
        if self.kind == "polygon":
            return ConvexDomain.polygon(c * self.vertices)
        fn = self.boundary_fn
        return ConvexDomain.smooth(lambda s: tuple(c * np.asarray(fn(s))))

    def normalized(self):
        """Scale so B(0,4) sits inside and fit M minimal with the body in B(0,2^M).

        Returns (domain, M), M >= 3.
        """
        inr, _ = self.radial_bounds()
        dom = self.scaled(4.0 / inr)
        _, outr = dom.radial_bounds()
        M = max(3, int(math.ceil(math.log2(outr) - 1e-12)))
        return dom, M


def parse_domain_spec(spec: str) -> ConvexDomain:
    """Parse `disc:r=1`, `polygon:pts=x0,y0;x1,y1;...`, or `ngon:k=64,r=1`."""
    if not isinstance(spec, str) or not spec:
        raise DomainSpecError("empty domain spec")
    name, _, body = spec.partition(":")
    try:
        if name == "disc":
            params = dict(kv.split("=") for kv in body.split(",") if kv)
            return ConvexDomain.disc(float(params.get("r", 1.0)))
        if name == "ngon":
            params = dict(kv.split("=") for kv in body.split(",") if kv)
            return ConvexDomain.ngon(int(params.get("k", 64)), float(params.get("r", 1.0)))
        if name == "polygon":
            if not body.startswith("pts="):
                raise DomainSpecError(f"polygon spec needs pts=: {spec!r}")
            pts = [tuple(map(float, pair.split(",")))
                   for pair in body[4:].split(";") if pair]
            return ConvexDomain.polygon(np.array(pts))
    except DomainSpecError:
        raise
    except Exception as exc:
        raise DomainSpecError(f"bad domain spec {spec!r}: {exc}") from exc
    raise DomainSpecError(f"unknown domain kind in {spec!r}")


def minkowski_functional(domain: ConvexDomain, point):
    return domain.rho(point)


# ---------------------------------------------------------------------------
# Covering numbers and Minkowski dimension

@njit(cache=True)
def _cap_runs(pts, nrm, delta):
    """Forward/backward run lengths of each candidate cap over the sample circle."""
    n = pts.shape[0]
    fwd = np.zeros(n, dtype=np.int64)
    bwd = np.zeros(n, dtype=np.int64)
    for m in range(n):
        px, py = pts[m, 0], pts[m, 1]
        nx, ny = nrm[m, 0], nrm[m, 1]
        r = 0
        while r < n - 1:
            k = (m + r + 1) % n
            d = (px - pts[k, 0]) * nx + (py - pts[k, 1]) * ny
            if abs(d) >= delta:
                break
            r += 1
        fwd[m] = r
        b = 0
        while b < n - 1 - r:
            k = (m - b - 1) % n
            d = (px - pts[k, 0]) * nx + (py - pts[k, 1]) * ny
            if abs(d) >= delta:
                break
            b += 1
        bwd[m] = b
    return fwd, bwd


@njit(cache=True)
def _greedy_cover_count(fwd, bwd):
    """Greedy circular covering by the runs [m - bwd[m], m + fwd[m]]."""
    n = fwd.shape[0]
    # full wrap by a single cap
    for m in range(n):
        if fwd[m] + bwd[m] + 1 >= n:
            return 1
    pos = 0
    end = n  # cover samples [0, n) on the unrolled line
    count = 0
    while pos < end:
        best = pos
        m = pos
        # candidates at or after pos whose backward reach touches pos
        while m < pos + n:
            mm = m % n
            if m - bwd[mm] > pos:
                break
            reach = m + fwd[mm]
            if reach > best:
                best = reach
            m += 1
        count += 1
        if best < pos:  # cap covers only pos itself
            best = pos
        pos = best + 1
        if count > n:
            break
    return count


def covering_number(domain: ConvexDomain, delta: float, n_samples=None):
    """Greedy upper bound on the cap covering number N(Omega, delta).

    Caps are boundary arcs within distance delta of a supporting line.  The
    boundary is sampled densely (resolution adapted to delta) and covered
    greedily, marching counterclockwise.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    diam = domain.diameter()
    if delta >= diam:
        return 1
    if n_samples is None:
        # resolve a cap (angular size ~ sqrt(delta/diam)) by >= 16 samples
        n_samples = int(min(max(1024, 64 / math.sqrt(delta / diam)), 65536))
    pts, nrm = domain.boundary_samples(n_samples)
    fwd, bwd = _cap_runs(pts, nrm, delta)
    return int(_greedy_cover_count(fwd, bwd))


def minkowski_dimension_estimate(domain: ConvexDomain, delta_list):
    """Least-squares slope of log N(Omega, delta) against log(1/delta)."""
    deltas = np.asarray(list(delta_list), dtype=np.float64)
    if len(deltas) < 4:
        raise ValueError("need at least 4 delta values")
    counts = np.array([covering_number(domain, d) for d in deltas], dtype=np.float64)
    slope = np.polyfit(np.log(1.0 / deltas), np.log(counts), 1)[0]
    return float(slope)


# ---------------------------------------------------------------------------
# Boundary charts and partitions

@dataclass(frozen=True)
class BoundaryChart:
    """Chart t -> t*u_perp + gamma(t)*u_p of the boundary facing -u_p.

    gamma is convex on [-2, 2] with values in [-2^M, -2]; piecewise-linear
    charts carry explicit breakpoints, the disc chart is analytic.
    """

    u_p: tuple[float, float]
    M: int
    kind: str                      # "analytic-disc" or "pwl"
    radius: float = 0.0
    ts: np.ndarray = field(default=None, repr=False)
    ys: np.ndarray = field(default=None, repr=False)
    slopes: np.ndarray = field(default=None, repr=False)

    def gamma(self, t):
        t = np.asarray(t, dtype=np.float64)
        if self.kind == "analytic-disc":
            out = -np.sqrt(self.radius ** 2 - t ** 2)
        else:
            i = np.clip(np.searchsorted(self.ts, t, side="right") - 1, 0, len(self.slopes) - 1)
            out = self.ys[i] + self.slopes[i] * (t - self.ts[i])
        return float(out) if out.ndim == 0 else out

    def dL(self, t):
        """Left one-sided derivative."""
        if self.kind == "analytic-disc":
            return float(t / math.sqrt(self.radius ** 2 - t * t))
        i = int(np.searchsorted(self.ts, t, side="left")) - 1
        i = min(max(i, 0), len(self.slopes) - 1)
        return float(self.slopes[i])

    def dR(self, t):
        """Right one-sided derivative."""
        if self.kind == "analytic-disc":
            return float(t / math.sqrt(self.radius ** 2 - t * t))
        i = int(np.searchsorted(self.ts, t, side="right")) - 1
        i = min(max(i, 0), len(self.slopes) - 1)
        return float(self.slopes[i])

    def point(self, t):
        ux, uy = self.u_p
        gx = self.gamma(t)
        return np.array([t * (-uy) + gx * ux, t * ux + gx * uy])


def chart_directions(M: int) -> np.ndarray:
    """The 2^(2M) uniformly distributed unit directions u_p."""
    k = np.arange(2 ** (2 * M))
    ang = np.pi * k / 2 ** (2 * M - 1)
    return np.stack([np.cos(ang), np.sin(ang)], axis=1)


def boundary_chart(domain: ConvexDomain, u_p, M=None) -> BoundaryChart:
    """Chart of the boundary portion facing -u_p for a normalized domain."""
    u_p = _as_unit(u_p)
    inr, outr = domain.radial_bounds()
    if inr < 4.0 - 1e-9:
        raise ValueError("domain must be normalized (B(0,4) inside)")
    if M is None:
        M = max(3, int(math.ceil(math.log2(outr) - 1e-12)))
    if outr > 2 ** M + 1e-9:
        raise ValueError("domain must fit in B(0, 2^M)")
    if domain.kind == "disc":
        return BoundaryChart(tuple(u_p), M, "analytic-disc", radius=domain.radius)
    if domain.kind == "polygon":
        pts = domain.vertices
    else:
        pts = domain.boundary_samples(8192)[0]
    # rotated frame: t along u_perp = (-uy, ux), y along u_p
    ux, uy = u_p
    t = pts @ np.array([-uy, ux])
    y = pts @ np.array([ux, uy])
    ts, ys, slopes = _lower_hull_chart(t, y)
    return BoundaryChart(tuple(u_p), M, "pwl", ts=ts, ys=ys, slopes=slopes)


def _lower_hull_chart(t, y, t_lo=-2.0, t_hi=2.0):
    """Piecewise-linear lower envelope over [t_lo, t_hi] from boundary points."""
    order = np.argsort(t, kind="stable")
    t, y = t[order], y[order]
    hull = []  # (t, y) lower convex hull
    for ti, yi in zip(t, y):
        if hull and ti - hull[-1][0] < 1e-13:
            if yi < hull[-1][1]:
                hull[-1] = (ti, yi)
            continue
        while len(hull) >= 2:
            (t0, y0), (t1, y1) = hull[-2], hull[-1]
            if (y1 - y0) * (ti - t1) >= (yi - y1) * (t1 - t0):
                hull.pop()
            else:
                break
        hull.append((ti, yi))
    ht = np.array([p[0] for p in hull])
    hy = np.array([p[1] for p in hull])
    if ht[0] > t_lo or ht[-1] < t_hi:
        raise ValueError("boundary does not span the chart window")
    # restrict to [t_lo, t_hi]
    def interp(tq):
        i = np.clip(np.searchsorted(ht, tq, side="right") - 1, 0, len(ht) - 2)
        w = (tq - ht[i]) / (ht[i + 1] - ht[i])
        return hy[i] + w * (hy[i + 1] - hy[i])
    inner = (ht > t_lo + 1e-13) & (ht < t_hi - 1e-13)
    ts = np.concatenate(([t_lo], ht[inner], [t_hi]))
    ys = np.concatenate(([interp(t_lo)], hy[inner], [interp(t_hi)]))
    slopes = np.diff(ys) / np.diff(ts)
    return ts, ys, slopes


@dataclass(frozen=True)
class BoundaryPartition:
    """Greedy partition of [-1,1] in chart coordinates plus refined intervals."""

    breakpoints: np.ndarray          # a_0 < ... < a_Q
    refined: list                    # per block j: list of (left, right) intervals
    delta: float
    M: int

    @property
    def Q(self) -> int:
        return len(self.breakpoints) - 1


def boundary_partition(chart: BoundaryChart, delta: float) -> BoundaryPartition:
    """Greedy maximal-step partition of [-1, 1] plus edge refinement.

    From a_j, a_{j+1} is the largest t <= 1 with
    (t - a_j)(gamma'_L(t) - gamma'_R(a_j)) <= delta (bisection); each block is
    then split so that any two adjacent refined intervals (including across
    block boundaries) satisfy the pair condition, with every refined interval
    of length >= 2^(-5M) * delta.
    """
    if not (0 < delta < 1):
        raise ValueError("delta must lie in (0,1)")
    a = [-1.0]
    while a[-1] < 1.0 - 1e-14:
        aj = a[-1]
        dr = chart.dR(aj)
        def cond(t):
            return (t - aj) * (chart.dL(t) - dr) <= delta * (1 + 1e-12)
        if cond(1.0):
            a.append(1.0)
            break
        lo, hi = aj, 1.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if cond(mid):
                lo = mid
            else:
                hi = mid
        nxt = lo
        if nxt <= aj + 1e-14:
            nxt = aj + 1e-14  # safety: slope jump at a point; minimal progress
        a.append(min(nxt, 1.0))
    breakpoints = np.array(a)

    floor_len = 2.0 ** (-5 * chart.M) * delta
    nblocks = len(a) - 1
    # Edge-piece lengths negotiated at interior breakpoints.
    left_edge = [0.0] * nblocks   # first-piece length of block j
    right_edge = [0.0] * nblocks  # last-piece length of block j
    for j in range(nblocks - 1):
        b = a[j + 1]
        lenl = a[j + 1] - a[j]
        lenr = a[j + 2] - a[j + 1]
        eps = min(lenl, lenr) / 2.0
        while True:
            el = max(min(eps, lenl / 2.0), min(floor_len, lenl))
            er = max(min(eps, lenr / 2.0), min(floor_len, lenr))
            span = el + er
            if span * (chart.dL(b + er) - chart.dR(b - el)) <= delta * (1 + 1e-12):
                break
            if eps <= floor_len:
                break  # floor reached; bounded by 2^(1-4M) * delta <= delta
            eps /= 2.0
        right_edge[j] = el
        left_edge[j + 1] = er

    refined = []
    for j in range(nblocks):
        lo, hi = a[j], a[j + 1]
        length = hi - lo
        el, er = left_edge[j], right_edge[j]
        pieces = []
        if el + er >= length - floor_len or el + er == 0.0:
            pieces.append((lo, hi))
        else:
            if el > 0:
                pieces.append((lo, lo + el))
            mid_lo = lo + el
            mid_hi = hi - er
            if mid_hi - mid_lo >= floor_len:
                pieces.append((mid_lo, mid_hi))
            elif pieces:
                pieces[-1] = (pieces[-1][0], mid_hi)
            else:
                pieces.append((mid_lo, mid_hi))
            if er > 0:
                pieces.append((mid_hi, hi))
        refined.append(pieces)
    return BoundaryPartition(breakpoints, refined, delta, chart.M)


# ---------------------------------------------------------------------------
# Smooth inner approximation

def smooth_approximation(domain: ConvexDomain, n: int) -> ConvexDomain:
    """Inscribed polygon on 2^(n+4) boundary samples with rounded corners.

    Corner arcs have radius 2^(-n) * diam (reduced where adjacent edges are
    short); the result is contained in the domain, the family is nested in n,
    and the Minkowski-functional gap is at most 2^(-n-1) relatively.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if domain.kind not in ("disc", "polygon"):
        raise ValueError("smooth_approximation expects a disc or polygon")
    k = 2 ** (n + 4)
    pts, _ = domain.boundary_samples(k)
    r_arc = 2.0 ** (-n) * domain.diameter()
    pieces = _rounded_polygon_pieces(pts, r_arc)
    return ConvexDomain.smooth(_PiecewiseBoundary(pieces),
                               n_cache=max(4096, 4 * k))


class _PiecewiseBoundary:
    """Arc-and-segment closed curve, parametrized by arclength fraction."""

    def __init__(self, pieces):
        self.pieces = pieces
        lens = np.array([p[-1] for p in pieces])
        self.cum = np.concatenate(([0.0], np.cumsum(lens)))
        self.total = self.cum[-1]

    def __call__(self, s):
        d = (s % 1.0) * self.total
        i = int(np.searchsorted(self.cum, d, side="right")) - 1
        i = min(max(i, 0), len(self.pieces) - 1)
        local = d - self.cum[i]
        p = self.pieces[i]
        if p[0] == "seg":
            _, a, b, ln = p
            t = local / ln if ln > 0 else 0.0
            return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        _, center, radius, ang0, dang, ln = p
        t = local / ln if ln > 0 else 0.0
        ang = ang0 + t * dang
        return (center[0] + radius * math.cos(ang), center[1] + radius * math.sin(ang))


def _rounded_polygon_pieces(pts, r_arc):
    """Replace each corner of the (convex, ccw) polygon by an inscribed arc."""
    m = len(pts)
    rolled = np.roll(pts, -1, axis=0)
    edge = rolled - pts
    elen = np.hypot(edge[:, 0], edge[:, 1])
    edir = edge / elen[:, None]
    cut_a = np.zeros(m)   # tangent offset on the incoming edge at vertex i
    arcs = []
    for i in range(m):
        u_in = edir[(i - 1) % m]
        u_out = edir[i]
        cross = float(u_in[0] * u_out[1] - u_in[1] * u_out[0])
        dot = float(u_in @ u_out)
        turn = math.atan2(cross, dot)
        if turn < 1e-7:
            arcs.append(None)
            cut_a[i] = 0.0
            continue
        d = r_arc * math.tan(turn / 2.0)
        dmax = 0.45 * min(elen[(i - 1) % m], elen[i])
        d = min(d, dmax)
        r = d / math.tan(turn / 2.0)
        # arc center: offset from vertex along the inward bisector
        bis = u_out - u_in
        bn = 2.0 * math.sin(turn / 2.0)
        bis = bis / bn
        dist = r / math.cos(turn / 2.0)
        center = pts[i] + dist * bis
        a_start = pts[i] - d * u_in
        a_end = pts[i] + d * u_out
        ang0 = math.atan2(a_start[1] - center[1], a_start[0] - center[0])
        ang1 = math.atan2(a_end[1] - center[1], a_end[0] - center[0])
        dang = (ang1 - ang0) % (2 * np.pi)
        arcs.append((center, r, ang0, dang, a_start, a_end))
        cut_a[i] = d
    pieces = []
    for i in range(m):
        # segment from end of arc at vertex i to start of arc at vertex i+1
        if arcs[i] is not None:
            start = arcs[i][5]
        else:
            start = pts[i]
        j = (i + 1) % m
        if arcs[j] is not None:
            end = arcs[j][4]
        else:
            end = pts[j]
        ln = float(np.hypot(end[0] - start[0], end[1] - start[1]))
        if ln > 1e-15:
            pieces.append(("seg", tuple(start), tuple(end), ln))
        if arcs[j] is not None:
            center, r, ang0, dang, _, _ = arcs[j]
            ln = r * dang
            if ln > 1e-15:
                pieces.append(("arc", tuple(center), r, ang0, dang, ln))
    return pieces
