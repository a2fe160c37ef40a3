"""Bilinear Kakeya-type maximal operators over planar rectangle families.

Each operator takes the sup of rect averages (1/|R|) int_R |f|(y1)|g|(y2)
over rectangles containing the diagonal point (x, x).  The sup over the
uncountable family is estimated from below by a budgeted lattice search
(angles x anchor offsets, with local refinement), evaluated by a fast
midpoint quadrature inside numba; the reported value is then the *exact*
rect average (rectangles.rect_average) of the best rectangles found, so every
output is a certified average of a genuine member rectangle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit, prange

from .grids import SampledFunction, hl_maximal
from .rectangles import Rectangle, from_corner, rect_average


@dataclass(frozen=True)
class SearchProfile:
    """Budget of the lattice search; the default meets the runtime targets."""

    theta_cap_fixed: int = 64     # base angle count cap, fixed-scale search
    theta_cap_full: int = 24      # per (k, delta) pair in the full search
    n_ufrac: int = 8              # anchor offsets along the long axis
    n_vfrac: int = 2              # anchor offsets across the width
    cap_u: int = 64               # quadrature samples along the long axis
    cap_v: int = 4                # quadrature samples across the width
    max_refine: int = 9           # local refinement passes (steps halve)


DEFAULT_PROFILE = SearchProfile()
DENSE_PROFILE = SearchProfile(theta_cap_fixed=128, theta_cap_full=48, n_ufrac=16,
                              n_vfrac=4, cap_u=96, cap_v=6, max_refine=11)


@njit(cache=True, inline="always")
def _avg_quad(fv, flo, fh, fn, gv, glo, gh, gn,
              cx, cy, ex, ey, L, w, cap_u, cap_v):
    nsu = int(L / fh) + 1
    if nsu < 4:
        nsu = 4
    if nsu > cap_u:
        nsu = cap_u
    nsv = int(w / fh) + 1
    if nsv < 2:
        nsv = 2
    if nsv > cap_v:
        nsv = cap_v
    su = L / nsu
    sv = w / nsv
    acc = 0.0
    for iu in range(nsu):
        t = (iu + 0.5) * su
        bx = cx + t * ex
        by = cy + t * ey
        for iv in range(nsv):
            s = (iv + 0.5) * sv
            y1 = bx - s * ey
            y2 = by + s * ex
            i1 = int(math.floor((y1 - flo) / fh))
            if 0 <= i1 < fn:
                i2 = int(math.floor((y2 - glo) / gh))
                if 0 <= i2 < gn:
                    acc += fv[i1] * gv[i2]
    return acc / (nsu * nsv)


@njit(cache=True)
def _point_search(fv, flo, fh, fn, gv, glo, gh, gn, x,
                  dimsL, dimsW, nthetas, lmx, lmy,
                  n_ufrac, n_vfrac, cap_u, cap_v, max_refine,
                  fixed_theta):
    """Best rectangle containing (x, x) over the candidate lattice.

    Candidates: for each dims entry, `nthetas` base angles (or the single
    `fixed_theta` when >= 0) plus directions aimed at the landmark points,
    crossed with anchor-offset fractions; then local refinement around the
    best (theta free only when fixed_theta < 0).
    """
    K = 6  # refinement seeds, one per fixed 30-degree angle sector
    valK = np.full(K, -1.0)
    LK = np.full(K, dimsL[0])
    wK = np.full(K, dimsW[0])
    thK = np.zeros(K)
    uK = np.zeros(K)
    vK = np.zeros(K)
    nlm = lmx.shape[0]
    for idim in range(dimsL.shape[0]):
        L = dimsL[idim]
        w = dimsW[idim]
        nth = nthetas[idim]
        total_th = nth + nlm if fixed_theta < -1.0 else 1
        for it in range(total_th):
            if fixed_theta >= -1.0:
                th = fixed_theta
            elif it < nth:
                th = math.pi * it / nth
            else:
                dx = lmx[it - nth] - x
                dy = lmy[it - nth] - x
                if dx * dx + dy * dy < 1e-18:
                    continue
                th = math.atan2(dy, dx)
            ex = math.cos(th)
            ey = math.sin(th)
            for iu in range(n_ufrac):
                u = L * iu / (n_ufrac - 1) if n_ufrac > 1 else 0.5 * L
                for iv in range(n_vfrac):
                    v = w * (iv + 0.5) / n_vfrac
                    cx = x - u * ex + v * ey
                    cy = x - u * ey - v * ex
                    # coarse quadrature: this stage only ranks seeds
                    a = _avg_quad(fv, flo, fh, fn, gv, glo, gh, gn,
                                  cx, cy, ex, ey, L, w, cap_u // 4 + 4, 2)
                    # Keep the best seed per fixed angle sector so one broad
                    # basin cannot evict seeds from other orientations.
                    slot = int((th % math.pi) / math.pi * K)
                    if slot >= K:
                        slot = K - 1
                    if a <= valK[slot]:
                        continue
                    valK[slot] = a
                    LK[slot] = L
                    wK[slot] = w
                    thK[slot] = th
                    uK[slot] = u
                    vK[slot] = v
    for k in range(K):
        if valK[k] <= 0.0:
            continue
        # local refinement, steps halving; angle step down to pi/(4*ecc)
        cur = valK[k]
        cL = LK[k]
        cw = wK[k]
        cth = thK[k]
        cu = uK[k]
        cv = vK[k]
        dth = math.pi / 16.0 if fixed_theta < -1.0 else 0.0
        du = cL / max(n_ufrac - 1, 1)
        dv = cw / n_vfrac
        th_target = math.pi / (4.0 * (cL / cw))
        # Finer quadrature here: refinement follows the estimate's gradient,
        # so its bias matters more than in the coarse lattice stage.
        ru = 2 * cap_u
        rv = 2 * cap_v
        cur = _avg_quad(fv, flo, fh, fn, gv, glo, gh, gn,
                        x - cu * math.cos(cth) + cv * math.sin(cth),
                        x - cu * math.sin(cth) - cv * math.cos(cth),
                        math.cos(cth), math.sin(cth), cL, cw, ru, rv)
        for _ in range(max_refine):
            improved = True
            while improved:
                improved = False
                for jt in range(-1, 2):
                    th = cth + jt * dth
                    ex = math.cos(th)
                    ey = math.sin(th)
                    for ju in range(-1, 2):
                        u = cu + ju * du
                        if u < 0.0:
                            u = 0.0
                        if u > cL:
                            u = cL
                        for jv in range(-1, 2):
                            v = cv + jv * dv
                            if v < 0.0:
                                v = 0.0
                            if v > cw:
                                v = cw
                            cx = x - u * ex + v * ey
                            cy = x - u * ey - v * ex
                            a = _avg_quad(fv, flo, fh, fn, gv, glo, gh, gn,
                                          cx, cy, ex, ey, cL, cw, ru, rv)
                            if a > cur * (1.0 + 1e-12):
                                cur = a
                                cth = th
                                cu = u
                                cv = v
                                improved = True
            dth *= 0.5
            du *= 0.5
            dv *= 0.5
            if dth < th_target and du < fh and dv < fh:
                break
        valK[k] = cur
        thK[k] = cth
        uK[k] = cu
        vK[k] = cv
    return valK, LK, wK, thK, uK, vK


@njit(cache=True, parallel=True)
def _search_many(fv, flo, fh, fn, gv, glo, gh, gn, xs,
                 dimsL, dimsW, nthetas, lmx, lmy,
                 n_ufrac, n_vfrac, cap_u, cap_v, max_refine, fixed_theta):
    npts = xs.shape[0]
    out = np.zeros((npts, 6, 6))
    for ip in prange(npts):
        valK, LK, wK, thK, uK, vK = _point_search(
            fv, flo, fh, fn, gv, glo, gh, gn, xs[ip],
            dimsL, dimsW, nthetas, lmx, lmy,
            n_ufrac, n_vfrac, cap_u, cap_v, max_refine, fixed_theta)
        for k in range(6):
            out[ip, k, 0] = valK[k]
            out[ip, k, 1] = LK[k]
            out[ip, k, 2] = wK[k]
            out[ip, k, 3] = thK[k]
            out[ip, k, 4] = uK[k]
            out[ip, k, 5] = vK[k]
    return out


def _landmarks(f: SampledFunction, g: SampledFunction):
    """Aiming points in the (y1, y2) plane derived from the supports of f, g."""
    def marks(fun):
        a, b = fun.support_bounds()
        v = np.abs(fun.values)
        tot = v.sum()
        cen = float((fun.grid.centers() * v).sum() / tot) if tot > 0 else 0.5 * (a + b)
        peak = float(fun.grid.centers()[int(np.argmax(v))])
        return [a + 1.0, cen, peak, b - 1.0]
    mf = marks(f)
    mg = marks(g)
    lmx = np.array(mf, dtype=np.float64)
    lmy = np.array(mg, dtype=np.float64)
    return lmx, lmy


def _corner_rect(cx, cy, th, L, w, u, v) -> Rectangle:
    ex, ey = math.cos(th), math.sin(th)
    corner = (cx - u * ex + v * ey, cy - u * ey - v * ex)
    return from_corner(corner, (ex, ey), L, w)


def _search_rects(res_row, xi, top_k: int = 3):
    """Rebuild the strongest refined candidate rectangles for the point xi."""
    order = np.argsort(res_row[:, 0])[::-1][:top_k]
    rects = []
    for k in order:
        if res_row[k, 0] > 0.0:
            rects.append(_corner_rect(xi, xi, res_row[k, 3], res_row[k, 1],
                                      res_row[k, 2], res_row[k, 4], res_row[k, 5]))
    return rects


def aimed_rectangle(x: float, target, L: float, w: float) -> Rectangle | None:
    """Rectangle of dims L x w whose center line carries (x,x) and the target."""
    tx, ty = target
    dx, dy = tx - x, ty - x
    dist = math.hypot(dx, dy)
    if dist < 1e-12:
        ex, ey = 1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)
    else:
        ex, ey = dx / dist, dy / dist
    if dist > L:
        return None
    margin = 0.5 * (L - dist)
    corner = (x - margin * ex - (w / 2.0) * (-ey),
              x - margin * ey - (w / 2.0) * ex)
    return from_corner(corner, (ex, ey), L, w)


def diagonal_witness_rectangle(x: float, base: float, N: int) -> Rectangle:
    """Eccentricity-N rectangle along (1,1)/sqrt(2) with the small-side midpoint
    at (base+1, base+1), long enough to contain (x, x)."""
    s2 = 1.0 / math.sqrt(2.0)
    L = math.sqrt(2.0) * (x - base - 0.5)
    w = L / N
    corner = (base + 1.0 - (w / 2.0) * (-s2), base + 1.0 - (w / 2.0) * s2)
    return from_corner(corner, (s2, s2), L, w)


@njit(cache=True)
def _rect_integral_nb(fprefix, flo, fh, fn, gv, glo, gh, gn, corners):
    """Numba twin of rectangles.rect_integral (same Green-route algebra)."""
    total = 0.0
    for k in range(4):
        x0 = corners[k, 0]
        y0 = corners[k, 1]
        x1 = corners[(k + 1) % 4, 0]
        y1 = corners[(k + 1) % 4, 1]
        dx = x1 - x0
        dy = y1 - y0
        if dy == 0.0:
            continue
        xmin = min(x0, x1)
        xmax = max(x0, x1)
        ymin = min(y0, y1)
        ymax = max(y0, y1)
        nf = 0
        i0 = 0
        if dx != 0.0:
            i0 = int(math.ceil((xmin - flo) / fh))
            i1 = int(math.floor((xmax - flo) / fh))
            nf = max(i1 - i0 + 1, 0)
        j0 = int(math.ceil((ymin - glo) / gh))
        j1 = int(math.floor((ymax - glo) / gh))
        ng = max(j1 - j0 + 1, 0)
        ts = np.empty(nf + ng + 2)
        ts[0] = 0.0
        ts[1] = 1.0
        p = 2
        for i in range(nf):
            t = ((flo + (i0 + i) * fh) - x0) / dx
            ts[p] = min(max(t, 0.0), 1.0)
            p += 1
        for j in range(ng):
            t = ((glo + (j0 + j) * gh) - y0) / dy
            ts[p] = min(max(t, 0.0), 1.0)
            p += 1
        ts.sort()
        for q in range(ts.shape[0] - 1):
            dt = ts[q + 1] - ts[q]
            if dt <= 0.0:
                continue
            tm = 0.5 * (ts[q] + ts[q + 1])
            xm = x0 + tm * dx
            ym = y0 + tm * dy
            # exact F(xm) for piecewise-constant f
            tt = (xm - flo) / fh
            if tt <= 0.0:
                fval = 0.0
            elif tt >= fn:
                fval = fprefix[fn]
            else:
                ii = int(math.floor(tt))
                if ii > fn - 1:
                    ii = fn - 1
                frac = tt - ii
                if frac < 0.0:
                    frac = 0.0
                if frac > 1.0:
                    frac = 1.0
                fval = fprefix[ii] + frac * (fprefix[ii + 1] - fprefix[ii])
            gj = int(math.floor((ym - glo) / gh))
            if 0 <= gj < gn:
                gval = gv[gj]
            else:
                gval = 0.0
            total += fval * gval * dt * dy
    if total < 0.0:
        total = 0.0
    return total


def _exact_best(f, g, rects):
    """Exact rect averages (numba Green route) of candidate rectangles."""
    fg, gg = f.grid, g.grid
    fv = np.abs(f.values)
    gv = np.abs(g.values)
    fprefix = np.concatenate(([0.0], np.cumsum(fv * fg.h)))
    best = 0.0
    best_rect = None
    for R in rects:
        if R is None:
            continue
        a = _rect_integral_nb(fprefix, fg.lo, fg.h, fg.n, gv, gg.lo, gg.h,
                              gg.n, R.corners()) / R.area
        if a > best:
            best = a
            best_rect = R
    return best, best_rect


def _fun_arrays(f: SampledFunction):
    return np.abs(f.values), f.grid.lo, f.grid.h, f.grid.n


def _run_search(f, g, xs, dimsL, dimsW, nthetas, profile, fixed_theta=-10.0,
                theta_refine=True):
    fv, flo, fh, fn = _fun_arrays(f)
    gv, glo, gh, gn = _fun_arrays(g)
    res = _search_many(fv, flo, fh, fn, gv, glo, gh, gn,
                       np.asarray(xs, dtype=np.float64),
                       np.asarray(dimsL, dtype=np.float64),
                       np.asarray(dimsW, dtype=np.float64),
                       np.asarray(nthetas, dtype=np.int64),
                       *_landmarks(f, g),
                       profile.n_ufrac, profile.n_vfrac,
                       profile.cap_u, profile.cap_v,
                       profile.max_refine if theta_refine else profile.max_refine,
                       fixed_theta)
    return res


def kakeya_fixed_scale(f: SampledFunction, g: SampledFunction, N: int,
                       delta: float, x, profile: SearchProfile = DEFAULT_PROFILE,
                       return_witness: bool = False):
    """Fixed-scale maximal value(s): sup over delta x delta*N rectangles
    containing (x, x) of the exact rect average (lower-bound search)."""
    if N < 2 or delta <= 0:
        raise ValueError("need N >= 2 and delta > 0")
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    dimsL = [delta * N]
    dimsW = [delta]
    nthetas = [min(4 * N, profile.theta_cap_fixed)]
    res = _run_search(f, g, xs, dimsL, dimsW, nthetas, profile)
    lmx, lmy = _landmarks(f, g)
    vals = np.zeros(len(xs))
    wits = []
    for ip, xi in enumerate(xs):
        rects = _search_rects(res[ip], xi)
        for a, b in zip(lmx, lmy):
            rects.append(aimed_rectangle(xi, (a, b), delta * N, delta))
        vals[ip], wit = _exact_best(f, g, rects)
        wits.append(wit)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return (float(vals[0]), wits[0]) if return_witness else float(vals[0])
    return (vals, wits) if return_witness else vals


def _full_dims(N: int, h: float, window: float):
    ks = []
    k = 1
    while k < N:
        ks.append(k)
        k *= 2
    ks.append(N)
    dimsL, dimsW, eccs = [], [], []
    delta0 = h
    deltas = []
    d = delta0
    while d <= 2.0 * window:
        deltas.append(d)
        d *= 2.0
    for k in ks:
        for d in deltas:
            if d * k > 2.9 * window:
                continue
            dimsL.append(d * k)
            dimsW.append(d)
            eccs.append(k)
    return np.array(dimsL), np.array(dimsW), np.array(eccs, dtype=np.int64)


def kakeya_full(f: SampledFunction, g: SampledFunction, N: int, x,
                profile: SearchProfile = DEFAULT_PROFILE):
    """sup over eccentricities k <= N (dyadic ladder) and a geometric delta
    ladder of the fixed-scale search; includes explicit diagonal witness
    candidates of eccentricity exactly N."""
    if N < 1:
        raise ValueError("need N >= 1")
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    window = max(f.grid.hi - f.grid.lo, g.grid.hi - g.grid.lo)
    dimsL, dimsW, eccs = _full_dims(N, f.grid.h, window)
    nthetas = np.minimum(4 * eccs, DEFAULT_PROFILE.theta_cap_full
                         if profile is DEFAULT_PROFILE else profile.theta_cap_full)
    nthetas = np.maximum(nthetas, 4)
    res = _run_search(f, g, xs, dimsL, dimsW, nthetas, profile)
    lmx, lmy = _landmarks(f, g)
    base_f = f.support_bounds()[0]
    base_g = g.support_bounds()[0]
    base = max(base_f, base_g)
    vals = np.zeros(len(xs))
    for ip, xi in enumerate(xs):
        rects = _search_rects(res[ip], xi)
        # diagonal witness of eccentricity N (sharpness construction geometry)
        if xi - base - 0.5 > 1e-9:
            rects.append(diagonal_witness_rectangle(xi, base, N))
        # covering candidates: smallest rectangles reaching each landmark
        for a, b in zip(lmx, lmy):
            dist = math.hypot(a - xi, b - xi)
            for k in (1, N):
                L = max(dist + 1.0, k * f.grid.h)
                rects.append(aimed_rectangle(xi, (a, b), L, L / k))
        vals[ip], _ = _exact_best(f, g, rects)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(vals[0])
    return vals


def directional_maximal(f: SampledFunction, g: SampledFunction, omegas, x,
                        profile: SearchProfile = DEFAULT_PROFILE):
    """sup over rectangles with long side parallel to a direction in omegas
    (any eccentricity >= 1, geometric scale/aspect ladders) containing (x,x)."""
    omegas = np.atleast_2d(np.asarray(omegas, dtype=np.float64))
    if omegas.shape[0] == 0:
        raise ValueError("need at least one direction")
    norms = np.hypot(omegas[:, 0], omegas[:, 1])
    if np.any(np.abs(norms - 1.0) > 1e-9):
        raise ValueError("directions must be unit vectors")
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    h = f.grid.h
    window = max(f.grid.hi - f.grid.lo, g.grid.hi - g.grid.lo)
    dimsL, dimsW = [], []
    L = 2.0 * h
    while L <= 1.5 * window:
        w = h
        while w <= L:
            dimsL.append(L)
            dimsW.append(w)
            w *= 2.0
        L *= math.sqrt(2.0)
    dimsL = np.array(dimsL)
    dimsW = np.array(dimsW)
    nthetas = np.zeros(len(dimsL), dtype=np.int64)
    total = np.zeros(len(xs))
    for om in omegas:
        th = math.atan2(om[1], om[0])
        res = _run_search(f, g, xs, dimsL, dimsW, nthetas, profile,
                          fixed_theta=th)
        for ip, xi in enumerate(xs):
            val, _ = _exact_best(f, g, _search_rects(res[ip], xi))
            total[ip] = max(total[ip], val)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(total[0])
    return total


@njit(cache=True, parallel=True)
def _lacey_many(fv, flo, fh, fn, gv, glo, gh, gn, xs, alpha, tmax):
    npts = xs.shape[0]
    out = np.zeros(npts)
    for ip in prange(npts):
        x = xs[ip]
        best = 0.0
        t = fh
        while t <= tmax:
            nq = int(2.0 * t / fh) + 1
            if nq < 8:
                nq = 8
            if nq > 4096:
                nq = 4096
            step = 2.0 * t / nq
            acc = 0.0
            for i in range(nq):
                tp = -t + (i + 0.5) * step
                y1 = x - tp
                y2 = x - alpha * tp
                i1 = int(math.floor((y1 - flo) / fh))
                if 0 <= i1 < fn:
                    i2 = int(math.floor((y2 - glo) / gh))
                    if 0 <= i2 < gn:
                        acc += abs(fv[i1]) * abs(gv[i2])
            avg = acc * step / (2.0 * t)
            if avg > best:
                best = avg
            t *= 2.0 ** 0.25
        out[ip] = best
    return out


def lacey_maximal(f: SampledFunction, g: SampledFunction, alpha: float, x):
    """sup over t of (1/2t) int_{-t}^{t} |f(x - t')| |g(x - alpha t')| dt'
    on the geometric ladder t = h * 2^(j/4)."""
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    fv, flo, fh, fn = _fun_arrays(f)
    gv, glo, gh, gn = _fun_arrays(g)
    tmax = max(f.grid.hi - f.grid.lo, g.grid.hi - g.grid.lo)
    out = _lacey_many(fv, flo, fh, fn, gv, glo, gh, gn, xs, float(alpha), tmax)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(out[0])
    return out


@dataclass(frozen=True)
class DominationReport:
    """Max over grid points of the four pointwise domination ratios."""

    lacey_over_directional: float
    directional_over_lacey_mg: float
    fixed_over_product_maximal: float     # M_{R_{1,N}} / (M_s f * M_s' g)
    fixed_over_n_product: float           # M_{R_{1,N}} / (N * Mf * Mg)
    skipped: int
    N: int
    s: float
    alpha: float
    h: float


def domination_report(f: SampledFunction, g: SampledFunction, alpha: float,
                      N: int, s: float,
                      profile: SearchProfile = DEFAULT_PROFILE) -> DominationReport:
    """Pointwise domination chains evaluated at every grid point."""
    if s <= 1:
        raise ValueError("s must be > 1")
    xs = f.grid.centers()
    sp = s / (s - 1.0)
    mf = hl_maximal(f, 1.0, method="prefix").values
    mg = hl_maximal(g, 1.0, method="prefix").values
    msf = hl_maximal(f, s, method="prefix").values
    msg = hl_maximal(g, sp, method="prefix").values
    fixed = kakeya_fixed_scale(f, g, N, 1.0, xs, profile)
    lac = lacey_maximal(f, g, alpha, xs)
    om = np.array([1.0, alpha]) / math.hypot(1.0, alpha)
    direc = directional_maximal(f, g, [om], xs, profile)
    mg_fun = hl_maximal(g, 1.0, method="prefix")
    lac_mg = lacey_maximal(f, mg_fun, alpha, xs)

    eps = 1e-14
    skipped = 0
    ratios = [0.0, 0.0, 0.0, 0.0]
    pairs = [(lac, direc), (direc, lac_mg), (fixed, msf * msg),
             (fixed, N * mf * mg)]
    for k, (num, den) in enumerate(pairs):
        mask = den > eps
        skipped += int(np.sum(~mask & (num > eps)))
        if np.any(mask):
            ratios[k] = float(np.max(num[mask] / den[mask]))
    return DominationReport(ratios[0], ratios[1], ratios[2], ratios[3],
                            skipped, N, s, alpha, f.grid.h)
