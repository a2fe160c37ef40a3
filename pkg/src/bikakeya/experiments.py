"""Named, reproducible experiments binding the library modules together.

Each registry entry evaluates one quantitative claim, writes a CSV (and an
SVG plot when it has a natural series), and reports a single pass/fail
line.  Same config and seed give byte-identical CSVs; wall-clock timings
go to the summary text only.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import convex, counting, extremal, fitting, multiplier
from .grids import Grid, lp_norm, parse_function_spec
from .kakeya import DEFAULT_PROFILE, domination_report


@dataclass
class ExperimentOutcome:
    passed: bool
    summary: str
    header: list
    rows: list
    series: list = field(default_factory=list)   # [{x, y, label}]
    axes: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)  # per-clause values


@dataclass(frozen=True)
class Experiment:
    name: str
    description: str
    defaults: dict
    runner: object                # callable params -> ExperimentOutcome


def _parse_int_list(v):
    if isinstance(v, (list, tuple)):
        return [int(x) for x in v]
    return [int(x) for x in str(v).split(",") if x.strip()]


def _parse_float_list(v):
    if isinstance(v, (list, tuple)):
        return [float(x) for x in v]
    return [float(x) for x in str(v).split(",") if x.strip()]


# ---------------------------------------------------------------------------
# Runners

def _run_kn_growth(p):
    ns = _parse_int_list(p["n_list"])
    sw = fitting.growth_sweep("full", "extremal", ns, (2.0, 2.0, 1.0),
                              h=float(p["h"]), max_points=int(p["max_points"]))
    fr = fitting.growth_fit(sw.points(), "c*logN")
    increasing = all(b > a for a, b in zip(sw.ratios, sw.ratios[1:]))
    factor = sw.ratios[-1] / sw.ratios[0]
    need = 0.7 * math.log(ns[-1]) / math.log(ns[0])
    passed = increasing and fr.r_squared >= 0.95 and factor >= need
    summary = (f"ratios increasing={increasing}, log-fit c={fr.c:.3f} "
               f"R2={fr.r_squared:.4f} (need >= 0.95), growth factor "
               f"{factor:.3f} (need >= {need:.3f})")
    rows = [(N, h, r) for N, h, r in zip(sw.n_list, sw.h_list, sw.ratios)]
    series = [{"x": sw.n_list, "y": sw.ratios, "label": "ratio"}]
    axes = {"xlabel": "N", "ylabel": "norm ratio", "xlog": True}
    return ExperimentOutcome(passed, summary, ["N", "h", "ratio"], rows,
                             series, axes)


def _run_kn_endpoint(p):
    ns = _parse_int_list(p["n_list"])
    sw = fitting.growth_sweep("full", "spike", ns, (1.0, 1.0, 0.5), weak=True,
                              max_points=int(p["max_points"]))
    scaled = [r / N for r, N in zip(sw.ratios, sw.n_list)]
    spread = max(scaled) / min(scaled)
    passed = spread <= 4.0
    summary = (f"weak-(1/2) ratio/N in [{min(scaled):.3f}, {max(scaled):.3f}], "
               f"spread {spread:.3f} (need <= 4)")
    rows = list(zip(sw.n_list, sw.h_list, sw.ratios, scaled))
    series = [{"x": sw.n_list, "y": scaled, "label": "ratio / N"}]
    axes = {"xlabel": "N", "ylabel": "weak ratio / N", "xlog": True}
    return ExperimentOutcome(passed, summary,
                             ["N", "h", "ratio", "ratio_over_N"], rows,
                             series, axes)


def _run_mn_nonbanach(p):
    ns = _parse_int_list(p["n_list"])
    sw = fitting.growth_sweep("full", "extremal", ns, (4.0 / 3, 4.0 / 3, 2.0 / 3),
                              h=float(p["h"]), max_points=int(p["max_points"]))
    fr = fitting.growth_fit(sw.points(), "c*N^beta")
    passed = abs(fr.beta - 0.5) <= 0.1
    summary = (f"power fit beta={fr.beta:.4f} (need |beta - 0.5| <= 0.1), "
               f"R2={fr.r_squared:.4f}")
    rows = [(N, h, r) for N, h, r in zip(sw.n_list, sw.h_list, sw.ratios)]
    series = [{"x": sw.n_list, "y": sw.ratios, "label": "ratio"}]
    axes = {"xlabel": "N", "ylabel": "norm ratio", "xlog": True, "ylog": True}
    return ExperimentOutcome(passed, summary, ["N", "h", "ratio"], rows,
                             series, axes)


def _run_counting(p):
    ns = _parse_int_list(p["n_list"])
    n_fam = int(p["families"])
    seed = int(p["seed"])
    rows = []
    sup_diag_by_n, sup_mid_by_n = [], []
    violations = 0
    worst_ratio = 0.0
    for N in ns:
        sup_diag = sup_mid = sup_cross = 0.0
        for j in range(n_fam):
            fam = counting.random_family(N, seed + j)
            rep = counting.verify_counting_bounds(fam)
            sup_diag = max(sup_diag, rep.sup_diagonal)
            sup_mid = max(sup_mid, rep.sup_middle)
            sup_cross = max(sup_cross, rep.sup_cross)
            ratio, viol = counting.check_per_rectangle_bound(fam)
            worst_ratio = max(worst_ratio, ratio)
            violations += len(viol)
        fan = counting.fan_family(N)
        fan_rep = counting.verify_counting_bounds(fan)
        fr, fv = counting.check_per_rectangle_bound(fan)
        worst_ratio = max(worst_ratio, fr)
        violations += len(fv)
        sup_diag_by_n.append(sup_diag)
        sup_mid_by_n.append(sup_mid)
        rows.append((N, sup_diag, sup_mid, sup_cross, fan_rep.sup_cross,
                     worst_ratio, violations))
    drift_ok = all(
        max(a, b) <= 2.0 * min(a, b)
        for seq in (sup_diag_by_n, sup_mid_by_n)
        for a, b in zip(seq, seq[1:]))
    fan_ok = all(r[4] >= 0.05 for r in rows)
    bound_ok = violations == 0
    passed = drift_ok and fan_ok and bound_ok
    summary = (f"sup drift < 2x: {drift_ok}; fan cross-sup >= 0.05 N log N: "
               f"{fan_ok}; per-rectangle envelope violations: {violations} "
               f"(worst count/bound ratio {worst_ratio:.3f})")
    header = ["N", "sup_diag", "sup_mid", "sup_cross", "fan_cross",
              "worst_envelope_ratio", "cum_violations"]
    series = [{"x": ns, "y": sup_diag_by_n, "label": "sup diagonal"},
              {"x": ns, "y": sup_mid_by_n, "label": "sup middle"}]
    axes = {"xlabel": "N", "ylabel": "normalized sup", "xlog": True}
    details = {"drift_ok": drift_ok, "fan_ok": fan_ok,
               "violations": violations, "worst_ratio": worst_ratio}
    return ExperimentOutcome(passed, summary, header, rows, series, axes,
                             details)


def _run_kappa(p):
    dom = convex.parse_domain_spec(str(p["domain"]))
    deltas = [2.0 ** -j for j in
              range(int(p["j_min"]), int(p["j_max"]) + 1)]
    counts = [convex.covering_number(dom, d) for d in deltas]
    slope = float(np.polyfit(np.log(1.0 / np.array(deltas)),
                             np.log(np.array(counts, dtype=float)), 1)[0])
    if dom.kind == "polygon":
        passed = slope <= 0.1
        target = "<= 0.1 (polygon)"
    elif dom.kind == "disc":
        passed = abs(slope - 0.5) <= 0.05
        target = "0.5 +- 0.05 (smooth)"
    else:
        passed = -0.05 <= slope <= 0.55
        target = "in [0, 0.5]"
    summary = f"box-counting slope {slope:.4f}, target {target}"
    rows = list(zip(deltas, counts))
    series = [{"x": [1.0 / d for d in deltas], "y": counts, "label": "N(delta)"}]
    axes = {"xlabel": "1/delta", "ylabel": "covering number",
            "xlog": True, "ylog": True}
    return ExperimentOutcome(passed, summary, ["delta", "count"], rows,
                             series, axes)


def check_partition(chart, part, delta: float) -> float:
    """Largest violation of the four partition invariants (0 means all hold).

    The invariants: (1) each block satisfies the product condition at delta;
    (2) each breakpoint is maximal (the condition fails just beyond it);
    (3) every refined interval has length >= 2^(-5M) * delta; (4) the union
    of any two adjacent refined intervals satisfies the product condition.
    """
    tol = 1e-9
    worst = 0.0
    a = part.breakpoints
    for j in range(part.Q):
        worst = max(worst, (a[j + 1] - a[j])
                    * (chart.dL(a[j + 1]) - chart.dR(a[j]))
                    - delta * (1.0 + tol))
        if a[j + 1] < 1.0 - 1e-12:
            t = min(1.0, a[j + 1] + 1e-9)
            if (t - a[j]) * (chart.dL(t) - chart.dR(a[j])) \
                    < delta * (1.0 - 1e-6):
                worst = max(worst, 1e-9)  # a_{j+1} was not maximal
    flat = [iv for block in part.refined for iv in block]
    min_len = 2.0 ** (-5 * part.M) * delta
    for lo, hi in flat:
        worst = max(worst, min_len * (1.0 - 1e-12) - (hi - lo))
    for (l0, h0), (l1, h1) in zip(flat, flat[1:]):
        worst = max(worst, (h1 - l0) * (chart.dL(h1) - chart.dR(l0))
                    - delta * (1.0 + tol))
    return max(worst, 0.0)


def _run_partition(p):
    dom, M = convex.parse_domain_spec(str(p["domain"])).normalized()
    chart = convex.boundary_chart(dom, (0.0, -1.0), M)
    deltas = [2.0 ** -j for j in range(int(p["j_min"]), int(p["j_max"]) + 1)]
    qs, worst = [], 0.0
    for d in deltas:
        part = convex.boundary_partition(chart, d)
        qs.append(part.Q)
        worst = max(worst, check_partition(chart, part, d))
    slope = float(np.polyfit(np.log(1.0 / np.array(deltas)),
                             np.log(np.array(qs, dtype=float)), 1)[0])
    passed = 0.4 <= slope <= 0.6 and worst == 0.0
    summary = (f"block count exponent {slope:.4f} (target [0.4, 0.6]); "
               f"max invariant violation {worst:.2e}")
    rows = list(zip(deltas, qs))
    series = [{"x": [1.0 / d for d in deltas], "y": qs, "label": "Q(delta)"}]
    axes = {"xlabel": "1/delta", "ylabel": "partition blocks",
            "xlog": True, "ylog": True}
    return ExperimentOutcome(passed, summary, ["delta", "Q"], rows,
                             series, axes)


def _bandlimited_pair(grid: Grid, rng, k_max: int = 8):
    out = []
    for _ in range(2):
        spec = np.zeros(grid.n, dtype=np.complex128)
        ks = np.arange(1, k_max + 1)
        c = rng.normal(size=k_max) + 1j * rng.normal(size=k_max)
        spec[ks] = c
        spec[-ks] = np.conj(c)
        spec[0] = rng.normal()
        vals = np.fft.ifft(spec).real * grid.n
        from .grids import SampledFunction
        out.append(SampledFunction(grid, vals))
    return out


def _run_br_convergence(p):
    lam = float(p["lam"])
    r_list = _parse_float_list(p["r_list"])
    grid = Grid(float(p["lo"]), float(p["hi"]), int(p["grid_n"]))
    f = parse_function_spec(f"gaussian:sigma={p['sigma']}", grid)
    g = parse_function_spec(f"gaussian:sigma={float(p['sigma']) * 0.75}", grid)
    fg = f.values * g.values
    fg_norm = math.sqrt(float(np.sum(fg ** 2) * grid.h))
    rows, series = [], []
    passed = True
    summaries = []
    rng = np.random.default_rng(int(p["seed"]))
    for spec in str(p["domains"]).split("|"):
        dom = convex.parse_domain_spec(spec.strip())
        errs = []
        for R in r_list:
            out = multiplier.bochner_riesz_apply(dom, lam, R, f, g)
            d = out.values - fg
            errs.append(math.sqrt(float(np.sum(d ** 2) * grid.h)) / fg_norm)
        mono = all(b < a for a, b in zip(errs, errs[1:]))
        ok = mono and errs[-1] < 0.05
        # boundedness of the (2,2,1) ratio over random band-limited pairs
        ratios = []
        for _ in range(int(p["pairs"])):
            bf, bg = _bandlimited_pair(grid, rng)
            out = multiplier.bochner_riesz_apply(dom, lam, r_list[-1], bf, bg)
            num = float(np.sum(np.abs(out.values)) * grid.h)
            den = lp_norm(bf, 2) * lp_norm(bg, 2)
            ratios.append(num / den)
        rmax = max(ratios)
        ok = ok and rmax <= float(p["ratio_cap"])
        passed = passed and ok
        summaries.append(f"{spec.strip()}: err@{r_list[-1]:g}={errs[-1]:.4f} "
                         f"mono={mono} max221={rmax:.3f}")
        for R, e in zip(r_list, errs):
            rows.append((spec.strip(), R, e, rmax))
        series.append({"x": r_list, "y": errs, "label": spec.strip()})
    axes = {"xlabel": "R", "ylabel": "relative L2 error",
            "xlog": True, "ylog": True}
    return ExperimentOutcome(passed, "; ".join(summaries),
                             ["domain", "R", "rel_l2_err", "max_ratio_221"],
                             rows, series, axes)


def _run_subordination(p):
    n_pts = int(p["points"])
    cases = [
        ("exp", 2.0, lambda s: -math.exp(-s), (), 50.0,
         np.linspace(0.0, 3.0, n_pts), lambda r: math.exp(-r)),
        ("onemr2", 1.0, lambda s: 2.0 if s <= 1.0 else 0.0, (1.0,), 1.0,
         np.linspace(0.0, 0.95, n_pts), lambda r: (1.0 - r) ** 2),
    ]
    rows, worst = [], 0.0
    for name, lam, dm, bps, tail, rhos, exact in cases:
        rec = multiplier.subordination_reconstruct(dm, lam, rhos,
                                                   breakpoints=bps, tail=tail)
        for r, v in zip(rhos, rec):
            ex = exact(r)
            err = abs(v - ex) / max(abs(ex), 1e-12)
            worst = max(worst, err)
            rows.append((name, r, v, ex, err))
    passed = worst <= 1e-8
    summary = f"max relative reconstruction error {worst:.3e} (need <= 1e-8)"
    return ExperimentOutcome(passed, summary,
                             ["case", "rho", "reconstructed", "exact",
                              "rel_err"], rows)


_DOMINATION_PAIRS = [
    ("indicator:lo=0,hi=1", "indicator:lo=0,hi=1"),
    ("indicator:lo=0,hi=1", "indicator:lo=1,hi=3"),
    ("powercut:a=-0.5,lo=0.5,hi=4", "powercut:a=-0.5,lo=0.5,hi=4"),
    ("powercut:a=-1.0,lo=1,hi=4", "indicator:lo=0,hi=2"),
    ("gaussian:sigma=0.5", "gaussian:sigma=0.5"),
    ("gaussian:sigma=1", "indicator:lo=-1,hi=1"),
    ("spike:center=1,width=0.0625", "spike:center=1,width=0.0625"),
    ("spike:center=0.5,width=0.0625", "gaussian:sigma=1"),
    ("powercut:a=0.5,lo=0,hi=2", "powercut:a=-0.25,lo=0.25,hi=3"),
    ("indicator:lo=-2,hi=0", "spike:center=2,width=0.125"),
]


def _run_domination(p):
    ns = _parse_int_list(p["n_list"])
    h = float(p["h"])
    alpha, s = float(p["alpha"]), float(p["s"])
    rows = []
    passed = True
    worst_np = 0.0
    worst_h = h
    drift_ok = True
    for fi, (fspec, gspec) in enumerate(_DOMINATION_PAIRS):
        per_n = []
        for N in ns:
            # window grows with N so the sweep sees the whole ratio profile
            grid = fitting.sweep_grid(N, h)
            f = parse_function_spec(fspec, grid)
            g = parse_function_spec(gspec, grid)
            rep = domination_report(f, g, alpha, N, s)
            finite = all(math.isfinite(v) for v in
                         (rep.lacey_over_directional,
                          rep.directional_over_lacey_mg,
                          rep.fixed_over_product_maximal,
                          rep.fixed_over_n_product))
            ok = finite and rep.fixed_over_n_product <= 1.0 + 5.0 * grid.h
            passed = passed and ok
            worst_np = max(worst_np, rep.fixed_over_n_product)
            worst_h = max(worst_h, grid.h)
            per_n.append(rep.fixed_over_product_maximal)
            rows.append((fi, N, rep.fixed_over_n_product,
                         rep.fixed_over_product_maximal,
                         rep.lacey_over_directional,
                         rep.directional_over_lacey_mg, rep.skipped))
        for a, b in zip(per_n, per_n[1:]):
            if max(a, b) > 2.0 * min(a, b):
                drift_ok = False
    passed = passed and drift_ok
    summary = (f"max fixed/(N Mf Mg) = {worst_np:.4f} "
               f"(need <= {1.0 + 5.0 * worst_h:.4f}); product-maximal "
               f"constant drift < 2x: {drift_ok}")
    header = ["pair", "N", "fixed_over_n_product", "fixed_over_product_max",
              "lacey_over_directional", "directional_over_lacey_mg",
              "skipped"]
    return ExperimentOutcome(passed, summary, header, rows)


def _run_alpha_sweep(p):
    ns = _parse_int_list(p["n_list"])
    ratios = [extremal.alpha_near_one_experiment(N, c=float(p["c"]),
                                                 p=float(p["p"])).ratio
              for N in ns]
    a, b = np.polyfit(np.log(ns), ratios, 1)
    pred = a * np.log(ns) + b
    ss = float(np.sum((ratios - pred) ** 2))
    st = float(np.sum((np.array(ratios) - np.mean(ratios)) ** 2))
    r2 = 1.0 - ss / st if st > 0 else 1.0
    passed = r2 >= 0.9 and a > 0
    summary = f"ratio fit a*log N + b: a={a:.4f} (need > 0), R2={r2:.4f} (need >= 0.9)"
    rows = list(zip(ns, ratios))
    series = [{"x": ns, "y": ratios, "label": "L1 ratio"}]
    axes = {"xlabel": "N", "ylabel": "ratio", "xlog": True}
    return ExperimentOutcome(passed, summary, ["N", "ratio"], rows,
                             series, axes)


def _run_linear_product(p):
    ns = _parse_int_list(p["n_list"])
    s3, s4 = [], []
    for N in ns:
        grid = Grid(0.0, float(N), max(8 * N, 128))
        res = extremal.product_extremal_linear(N, grid)
        s3.append(res.fixed_scale_sum)
        s4.append(res.full_range_sum)
    f3 = fitting.growth_fit(np.column_stack([ns, s3]), "c*(logN)^beta")
    f4 = fitting.growth_fit(np.column_stack([ns, s4]), "c*(logN)^beta")
    passed = 2.5 <= f3.beta <= 3.5 and 3.5 <= f4.beta <= 4.5
    summary = (f"fixed-scale sum exponent {f3.beta:.3f} (target [2.5, 3.5]); "
               f"full-range sum exponent {f4.beta:.3f} (target [3.5, 4.5])")
    rows = list(zip(ns, s3, s4))
    series = [{"x": ns, "y": s3, "label": "fixed-scale sum"},
              {"x": ns, "y": s4, "label": "full-range sum"}]
    axes = {"xlabel": "N", "ylabel": "lower-bound sum",
            "xlog": True, "ylog": True}
    return ExperimentOutcome(passed, summary,
                             ["N", "fixed_scale_sum", "full_range_sum"],
                             rows, series, axes)


# ---------------------------------------------------------------------------
# Registry

REGISTRY = {
    "kn-growth": Experiment(
        "kn-growth",
        "Operator-norm ratio growth ~ log N for the power-law pair at "
        "exponents (2, 2, 1).",
        {"n_list": "16,32,64,128,256,512,1024", "h": 1.0 / 16,
         "max_points": 1100, "seed": 0},
        _run_kn_growth),
    "kn-endpoint": Experiment(
        "kn-endpoint",
        "Weak-(1/2) endpoint: spike-pair quasinorm ratio scales like N.",
        {"n_list": "8,16,32,64,128", "max_points": 1100, "seed": 0},
        _run_kn_endpoint),
    "mn-nonbanach": Experiment(
        "mn-nonbanach",
        "Non-Banach exponents (4/3, 4/3, 2/3): ratio grows like N^(1/2).",
        {"n_list": "16,32,64,128,256", "h": 1.0 / 16, "max_points": 1100,
         "seed": 0},
        _run_mn_nonbanach),
    "counting": Experiment(
        "counting",
        "Square-counting sups for seeded witness families, fan cross-term, "
        "and the per-rectangle envelope.",
        {"n_list": "16,32,64,128", "families": 1000, "seed": 0},
        _run_counting),
    "kappa": Experiment(
        "kappa",
        "Box-counting slope of the boundary covering number (1/2 for smooth "
        "domains, 0 for polygons).",
        {"domain": "disc:r=1", "j_min": 6, "j_max": 14, "seed": 0},
        _run_kappa),
    "partition": Experiment(
        "partition",
        "Greedy boundary partition: block count ~ delta^(-1/2) and all "
        "partition invariants.",
        {"domain": "disc:r=1", "j_min": 4, "j_max": 10, "seed": 0},
        _run_partition),
    "br-convergence": Experiment(
        "br-convergence",
        "Bochner-Riesz means converge to the product as R grows, for disc, "
        "square, and octagon symbols; bounded (2,2,1) ratios.",
        {"domains": "disc:r=1|polygon:pts=-1,-1;1,-1;1,1;-1,1|ngon:k=8",
         "lam": 2.0, "r_list": "4,8,16,32", "lo": -8.0, "hi": 8.0,
         "grid_n": 256, "sigma": 1.0, "pairs": 50, "ratio_cap": 10.0,
         "seed": 0},
        _run_br_convergence),
    "subordination": Experiment(
        "subordination",
        "Reconstruct closed-form radial symbols from their higher "
        "derivative via the subordination integral.",
        {"points": 20, "seed": 0},
        _run_subordination),
    "domination": Experiment(
        "domination",
        "Pointwise domination chains between the bilinear maximal "
        "operators and products of linear maximal functions.",
        {"n_list": "8,32,128", "h": 1.0 / 16, "alpha": 0.5, "s": 2.0,
         "seed": 0},
        _run_domination),
    "alpha-sweep": Experiment(
        "alpha-sweep",
        "Directional ratio for the near-diagonal direction (1, 1 - c/N): "
        "logarithmic growth in N.",
        {"n_list": "16,32,64,128,256", "c": 0.25, "p": 2.0, "seed": 0},
        _run_alpha_sweep),
    "linear-product": Experiment(
        "linear-product",
        "Assembled lower-bound sums for the 2D product function: "
        "(log N)^3 at fixed scale and (log N)^4 over the full range.",
        {"n_list": "16,32,64,128,256", "seed": 0},
        _run_linear_product),
}


# ---------------------------------------------------------------------------
# Output emission and the runner entry point

def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (np.floating,)):
        return repr(float(v))
    if isinstance(v, (np.integer,)):
        return str(int(v))
    return str(v)


def emit_csv(rows, path, header=None) -> None:
    import csv
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        if header is not None:
            w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def read_csv(path):
    import csv
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return (rows[0], rows[1:]) if rows else ([], [])


def emit_plot(series, path, axes=None) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    axes = axes or {}
    fig, ax = plt.subplots(figsize=(6, 4))
    for s in series:
        ax.plot(s["x"], s["y"], marker="o", label=s.get("label"))
    if axes.get("xlog"):
        ax.set_xscale("log")
    if axes.get("ylog"):
        ax.set_yscale("log")
    ax.set_xlabel(axes.get("xlabel", ""))
    ax.set_ylabel(axes.get("ylabel", ""))
    if any(s.get("label") for s in series):
        ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    try:
        fig.savefig(path, format="svg")
    except OSError as exc:
        raise OSError(f"cannot write plot to {path}: {exc}") from exc
    finally:
        plt.close(fig)


def run_experiment(name: str, overrides: dict | None = None,
                   out_dir: str | None = None) -> int:
    """Run one registry entry; returns the CLI exit code (0 pass, 1 fail,
    2 config error, 3 runtime error)."""
    import os
    if name not in REGISTRY:
        print(f"error: unknown experiment {name!r}")
        return 2
    exp = REGISTRY[name]
    params = dict(exp.defaults)
    for k, v in (overrides or {}).items():
        if k not in params:
            print(f"error: unknown config key {k!r} for {name} "
                  f"(known: {', '.join(sorted(params))})")
            return 2
        params[k] = v
    t0 = time.perf_counter()
    try:
        outcome = exp.runner(params)
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {name} failed: {exc}")
        return 3
    dt = time.perf_counter() - t0
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        try:
            emit_csv(outcome.rows, os.path.join(out_dir, f"{name}.csv"),
                     outcome.header)
            if outcome.series:
                emit_plot(outcome.series, os.path.join(out_dir, f"{name}.svg"),
                          outcome.axes)
        except OSError as exc:
            print(f"error: writing artifacts for {name}: {exc}")
            return 3
    status = "PASS" if outcome.passed else "FAIL"
    print(f"{name}: {outcome.summary} [{dt:.1f}s]")
    print(f"{status}: {name}")
    return 0 if outcome.passed else 1
