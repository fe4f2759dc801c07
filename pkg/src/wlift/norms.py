"""Path-regularity functionals: dyadic Besov sums (exact closed form for
piecewise geodesics), fractional Sobolev quadrature, Hölder / variation /
modulus functionals on dyadic grids, and related checks.

Conventions:
  * `*_norm_*` functions return the norm itself (p-th or q-th root);
  * `besov_energy_pg` and `frac_sobolev_energy` return the p-th power;
  * `besov_norm_truncated` returns the p-th-power partial sum together with
    its last increment (a convergence diagnostic);
  * `limsup_variation_dyadic` returns raw per-level sums of d^q.
"""

from __future__ import annotations

import numpy as np

from . import spaces
from .errors import ValidationError
from .paths import PiecewiseGeodesicPath, dyadic_times


def _check_alpha_p(alpha, p, require_continuity=False):
    if not (0 < alpha < 1):
        raise ValidationError("alpha must lie in (0, 1)")
    if not (p > 1):
        raise ValidationError("p must lie in (1, inf)")
    if require_continuity and alpha * p <= 1:
        raise ValidationError("alpha * p > 1 required for continuity claims")


# ---------------------------------------------------------------------------
# Besov dyadic sums


def besov_energy_pg(path: PiecewiseGeodesicPath, alpha: float, p: float) -> float:
    """Exact |X|_{b^{alpha,p}}^p for a level-n piecewise-geodesic path:
    the finite double sum over scales m <= n plus the geometric tail
    2^{n(alpha p - 1)} / (2^{p - alpha p} - 1) * sum_i d(x_i, x_{i+1})^p.
    """
    _check_alpha_p(alpha, p)
    n = path.level
    bp = path.breakpoints
    ap = alpha * p
    total = 0.0
    for m in range(n + 1):
        step = 2 ** (n - m)
        i = np.arange(0, 2**n, step)
        d = spaces._distance_arrays(path.space, bp[i], bp[i + step])
        total += 2.0 ** (m * (ap - 1)) * float(np.sum(d**p))
    seg = path.segment_lengths()
    total += 2.0 ** (n * (ap - 1)) / (2.0 ** (p - ap) - 1.0) * float(np.sum(seg**p))
    return total


def besov_norm_pg(path: PiecewiseGeodesicPath, alpha: float, p: float) -> float:
    return besov_energy_pg(path, alpha, p) ** (1.0 / p)


def _level_power_sum(curve, m: int, p: float, dist) -> float:
    """Sum_k d(X_{t_k}, X_{t_{k+1}})^p over the level-m dyadic grid."""
    ts = dyadic_times(m)
    if isinstance(curve, PiecewiseGeodesicPath):
        X = curve.eval_many(ts)
        d = spaces._distance_arrays(curve.space, X[:-1], X[1:])
        return float(np.sum(d**p))
    if dist is None:
        raise ValidationError("generic curve evaluators need a distance callback")
    vals = [curve(t) for t in ts]
    return float(sum(dist(a, b) ** p for a, b in zip(vals, vals[1:])))


def besov_norm_truncated(curve, alpha: float, p: float, M: int, dist=None):
    """Partial dyadic Besov sum over scales m = 0..M (p-th power) and the
    m = M increment.  Monotone nondecreasing in M.

    For piecewise-geodesic paths the level sums beyond the breakpoint level
    scale exactly like 2^{(n-m)(p-1)} (each segment splits into equal
    geodesic pieces), so arbitrarily deep truncations stay cheap."""
    _check_alpha_p(alpha, p)
    if M < 0:
        raise ValidationError("M must be >= 0")
    ap = alpha * p
    n_exact = curve.level if isinstance(curve, PiecewiseGeodesicPath) else None
    total = 0.0
    last = 0.0
    S_top = None
    for m in range(M + 1):
        if n_exact is not None and m > n_exact:
            S = S_top * 2.0 ** ((n_exact - m) * (p - 1.0))
        else:
            S = _level_power_sum(curve, m, p, dist)
            if n_exact is not None and m == n_exact:
                S_top = S
        last = 2.0 ** (m * (ap - 1)) * S
        total += last
    return total, last


# ---------------------------------------------------------------------------
# Fractional Sobolev quadrature


def _gl_nodes(a: float, b: float, g: int):
    x, w = np.polynomial.legendre.leggauss(g)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def _cell_pair_quad(path, sa, sb, ta, tb, alpha, p, g):
    ss, ws = _gl_nodes(sa, sb, g)
    tt, wt = _gl_nodes(ta, tb, g)
    Xs = path.eval_many(ss)
    Xt = path.eval_many(tt)
    D = spaces.distance_matrix(path.space, Xs, Xt)
    dt = tt[None, :] - ss[:, None]
    integrand = D**p / np.abs(dt) ** (1.0 + alpha * p)
    return float(ws @ integrand @ wt)


def frac_sobolev_energy(
    path: PiecewiseGeodesicPath,
    alpha: float,
    p: float,
    interval=(0.0, 1.0),
    gl_order: int = 8,
    corner_splits: int = 10,
) -> float:
    """Double integral over interval^2 of d(X_s, X_t)^p / |t-s|^{1+alpha p}.

    The domain is cut along the path's own breakpoints.  Within one segment
    the path is a constant-speed geodesic, so the diagonal cells are
    integrated in closed form; adjacent cells are geometrically refined
    toward the shared corner; separated cells use tensor Gauss-Legendre.
    """
    _check_alpha_p(alpha, p)
    lo, hi = float(interval[0]), float(interval[1])
    if not (0.0 <= lo < hi <= 1.0):
        raise ValidationError("interval must satisfy 0 <= lo < hi <= 1")
    n = path.level
    grid = dyadic_times(n)
    knots = [lo] + [t for t in grid if lo < t < hi] + [hi]
    knots = np.array(knots)
    cells = list(zip(knots[:-1], knots[1:]))
    speeds = []
    for (a, b) in cells:
        speeds.append(
            spaces.distance(path.space, path(a), path(b)) / (b - a)
        )

    beta = p - alpha * p  # > 0
    total = 0.0
    # diagonal cells: d = speed * (t - s) exactly
    for (a, b), v in zip(cells, speeds):
        L = b - a
        total += v**p * L ** (beta + 1.0) / (beta * (beta + 1.0))
    # off-diagonal ordered cell pairs
    for i in range(len(cells)):
        sa, sb = cells[i]
        for j in range(i + 1, len(cells)):
            ta, tb = cells[j]
            if j > i + 1:
                total += _cell_pair_quad(path, sa, sb, ta, tb, alpha, p, gl_order)
                continue
            # adjacent: refine both cells geometrically toward the corner sb
            c = sb
            s_breaks = c - (c - sa) * 2.0 ** (-np.arange(corner_splits + 1))
            s_breaks = np.concatenate([[sa], s_breaks[1:], [c]])
            t_breaks = c + (tb - c) * 2.0 ** (-np.arange(corner_splits + 1))
            t_breaks = np.concatenate([[tb], t_breaks[1:], [c]])[::-1]
            for u0, u1 in zip(s_breaks[:-1], s_breaks[1:]):
                for v0, v1 in zip(t_breaks[:-1], t_breaks[1:]):
                    total += _cell_pair_quad(
                        path, u0, u1, v0, v1, alpha, p, max(4, gl_order - 2)
                    )
    return 2.0 * total


def frac_sobolev_norm_quadrature(
    path: PiecewiseGeodesicPath, alpha: float, p: float, **quad
) -> float:
    return frac_sobolev_energy(path, alpha, p, **quad) ** (1.0 / p)


# ---------------------------------------------------------------------------
# dyadic-grid functionals on paths or generic curve evaluators


def _pairwise(curve, M: int, dist):
    ts = dyadic_times(M)
    if isinstance(curve, PiecewiseGeodesicPath):
        X = curve.eval_many(ts)
        return ts, spaces.distance_matrix(curve.space, X, X)
    if dist is None:
        raise ValidationError("generic curve evaluators need a distance callback")
    vals = [curve(t) for t in ts]
    n = len(ts)
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            D[i, j] = D[j, i] = dist(vals[i], vals[j])
    return ts, D


def holder_norm_dyadic(curve, gamma: float, M: int, dist=None) -> float:
    """sup over level-M dyadic pairs of d(X_s, X_t) / |t-s|^gamma."""
    if not (0 < gamma <= 1):
        raise ValidationError("gamma must lie in (0, 1]")
    ts, D = _pairwise(curve, M, dist)
    iu, ju = np.triu_indices(len(ts), k=1)
    dt = ts[ju] - ts[iu]
    return float(np.max(D[iu, ju] / dt**gamma, initial=0.0))


def modulus_of_continuity(curve, delta: float, M: int, dist=None) -> float:
    """sup of d(X_s, X_t) over level-M dyadic pairs with |t-s| <= delta."""
    if not (0 < delta <= 1):
        raise ValidationError("delta must lie in (0, 1]")
    ts, D = _pairwise(curve, M, dist)
    iu, ju = np.triu_indices(len(ts), k=1)
    sel = (ts[ju] - ts[iu]) <= delta + 1e-15
    if not np.any(sel):
        return 0.0
    return float(np.max(D[iu[sel], ju[sel]]))


def _variation_dp(D: np.ndarray, q: float) -> float:
    """max over partitions (as index subsets containing both endpoints) of
    sum d^q, by dynamic programming."""
    n = D.shape[0]
    Dq = D**q
    V = np.full(n, -np.inf)
    V[0] = 0.0
    for j in range(1, n):
        V[j] = np.max(V[:j] + Dq[:j, j])
    return float(V[-1])


def p_variation(curve, q: float, mode: str = "dyadic", M: int = 8, dist=None) -> float:
    """q-variation norm: (sup over partitions of sum d^q)^(1/q).

    mode="dyadic": partitions with points in the level-M dyadic grid.
    mode="vertex": piecewise-geodesic paths only; partitions over the
    breakpoints, which is exact for q >= 1.
    """
    if q < 1:
        raise ValidationError("q must be >= 1")
    if mode == "vertex":
        if not isinstance(curve, PiecewiseGeodesicPath):
            raise ValidationError("vertex mode needs a piecewise-geodesic path")
        D = spaces.distance_matrix(curve.space, curve.breakpoints, curve.breakpoints)
        return _variation_dp(D, q) ** (1.0 / q)
    if mode != "dyadic":
        raise ValidationError(f"unknown mode {mode!r}")
    _, D = _pairwise(curve, M, dist)
    return _variation_dp(D, q) ** (1.0 / q)


def limsup_variation_dyadic(curve, q: float, levels, dist=None) -> np.ndarray:
    """For each level m: sum_k d(X_{t_k}, X_{t_{k+1}})^q over the level-m
    consecutive dyadic pairs.  The trend over growing m stands in for the
    limsup over shrinking dyadic meshes."""
    if q < 1:
        raise ValidationError("q must be >= 1")
    return np.array([_level_power_sum(curve, m, q, dist) for m in levels])


def w1p_norm_pg(path: PiecewiseGeodesicPath, p: float) -> float:
    """Exact W^{1,p} norm of a piecewise-geodesic path (L^p norm of speed)."""
    if p < 1:
        raise ValidationError("p must be >= 1")
    dt = 1.0 / 2**path.level
    seg = path.segment_lengths()
    return float(np.sum(dt * (seg / dt) ** p)) ** (1.0 / p)


# ---------------------------------------------------------------------------
# checks


def grr_constant(alpha: float, p: float) -> float:
    """The explicit admissible constant (32 (alpha p + 1)/(alpha p - 1))^{1/p}."""
    if alpha * p <= 1:
        raise ValidationError("requires alpha * p > 1")
    return (32.0 * (alpha * p + 1.0) / (alpha * p - 1.0)) ** (1.0 / p)


def grr_check(path: PiecewiseGeodesicPath, alpha: float, p: float, level: int = 2, **quad):
    """Verify d(X_s, X_t) <= cbar |t-s|^{alpha - 1/p} |X|_{W^{alpha,p};[s,t]}
    over all pairs of level-`level` dyadic times; reports the largest attained
    ratio relative to cbar (must be <= 1)."""
    _check_alpha_p(alpha, p, require_continuity=True)
    cbar = grr_constant(alpha, p)
    ts = dyadic_times(level)
    max_ratio = 0.0
    checked = 0
    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            s, t = ts[i], ts[j]
            d = spaces.distance(path.space, path(s), path(t))
            if d == 0.0:
                continue
            energy = frac_sobolev_energy(path, alpha, p, interval=(s, t), **quad)
            if energy <= 0.0:
                continue
            bound = cbar * (t - s) ** (alpha - 1.0 / p) * energy ** (1.0 / p)
            max_ratio = max(max_ratio, d / bound)
            checked += 1
    return {"max_ratio": max_ratio, "cbar": cbar, "pairs_checked": checked}


def geodesic_characterization_check(
    path: PiecewiseGeodesicPath, alpha: float, p: float, tol: float = 1e-9
) -> bool:
    """True iff d(X_0, X_1)^p equals (1 - 2^{-(p - alpha p)}) |X|^p_{b^{alpha,p}}
    within tol (relative to the Besov energy) — the equality characterizing
    constant-speed geodesics."""
    energy = besov_energy_pg(path, alpha, p)
    d01 = spaces.distance(path.space, path.breakpoints[0], path.breakpoints[-1])
    factor = 1.0 - 2.0 ** (-(p - alpha * p))
    return abs(d01**p - factor * energy) <= tol * max(energy, 1.0e-30) + 1e-30
