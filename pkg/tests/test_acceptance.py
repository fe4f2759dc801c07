"""Acceptance gate: ten numbered criteria, each printing one PASS/FAIL line.

Each test collects its sub-checks, always emits its "[criterion N] ..." line
(also to the real stdout when pytest captures output), and then fails if any
sub-check failed.
"""

import math
import time

import numpy as np

import conftest
import wlift as w
from conftest import ALL_SPACES, random_measure, random_path, random_points
from wlift.lifts import EnergySpec, curve_besov_norm
from wlift.norms import (
    besov_energy_pg,
    besov_norm_truncated,
    holder_norm_dyadic,
    limsup_variation_dyadic,
)
from wlift.paths import dyadic_times
from wlift.spaces import distance


def _report(num, fails):
    status = "PASS" if not fails else "FAIL"
    line = f"[criterion {num}] {status}"
    if fails:
        line += " - " + "; ".join(fails)
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    assert not fails, line


def _check(fails, ok, msg):
    if not ok:
        fails.append(msg)


def test_criterion_01_geodesic_besov_identity():
    fails = []
    try:
        seg = w.geodesic_segment(w.euclidean(1), [0.0], [1.0])
        t0 = time.perf_counter()
        exact = besov_energy_pg(seg, 0.75, 2.0)
        partial, _ = besov_norm_truncated(seg, 0.75, 2.0, 40)
        elapsed = time.perf_counter() - t0
        want = 2.0 + math.sqrt(2.0)
        _check(fails, abs(exact - want) <= 1e-12, f"closed form {exact} != 2+sqrt2")
        _check(fails, abs(partial - want) <= 1e-5, f"truncated M=40 off by {abs(partial - want):.2e}")
        _check(fails, elapsed < 0.1, f"runtime {elapsed:.3f}s >= 0.1s")
    except Exception as exc:  # noqa: BLE001
        fails.append(f"error: {exc!r}")
    _report(1, fails)


def test_criterion_02_jump_curve():
    fails = []
    try:
        t0 = time.perf_counter()
        curve = w.make_curve(w.jump())
        ts = dyadic_times(6)
        rng = np.random.default_rng(2)
        pairs = set()
        while len(pairs) < 100:
            i, j = sorted(rng.integers(0, len(ts), size=2))
            if i != j:
                pairs.add((ts[i], ts[j]))
        worst = 0.0
        for p in (1.5, 2.0, 3.0):
            for (s, t) in pairs:
                worst = max(worst, abs(w.wasserstein_power(curve(s), curve(t), p) - (t - s)))
        _check(fails, worst <= 1e-12, f"W_p^p vs |t-s| off by {worst:.2e}")

        alpha, p, eps = 0.75, 2.0, 0.01
        spec = EnergySpec.besov(alpha, p)
        energies = []
        for n in range(1, 9):
            lift = w.construct_lift_A(curve, n, p)
            energies.append(w.lift_energy(lift, spec))
        ratios = [b / a for a, b in zip(energies, energies[1:])]
        _check(
            fails,
            min(ratios) >= 2.0 ** (alpha * p - 1.0) - eps,
            f"min energy ratio {min(ratios):.4f} < 2^(ap-1)-eps",
        )
        _check(fails, all(b > a for a, b in zip(energies, energies[1:])),
               "energies not strictly increasing")
        elapsed = time.perf_counter() - t0
        _check(fails, elapsed < 5.0, f"runtime {elapsed:.2f}s >= 5s")
    except Exception as exc:  # noqa: BLE001
        fails.append(f"error: {exc!r}")
    _report(2, fails)


def test_criterion_03_compatibility_gate():
    fails = []
    try:
        t0 = time.perf_counter()
        curve = w.make_curve(w.circle_splitting(0))
        feas = w.compatibility_multicoupling([curve(t) for t in (0.0, 0.25, 0.5)], 2.0)
        _check(fails, feas.feasible, "three-measure collection reported infeasible")
        infeas = w.compatibility_multicoupling(
            [curve(t) for t in (0.0, 0.25, 0.5, 0.75)], 2.0
        )
        _check(fails, not infeas.feasible, "four-measure collection reported feasible")
        _check(fails, infeas.max_pair_gap > 1e-6,
               f"phase-1 gap {infeas.max_pair_gap:.2e} <= 1e-6")
        elapsed = time.perf_counter() - t0
        _check(fails, elapsed < 10.0, f"runtime {elapsed:.2f}s >= 10s")
    except Exception as exc:  # noqa: BLE001
        fails.append(f"error: {exc!r}")
    _report(3, fails)


def test_criterion_04_circle_splitting_norms():
    fails = []
    try:
        alpha, p = 0.75, 2.0
        c = 2.0 ** (p - alpha * p) / (2.0 ** (p - alpha * p) - 1.0)
        energies = []
        for j in range(5):
            spec = w.circle_splitting(j)
            got = curve_besov_norm(w.make_curve(spec), alpha, p, j + 1).value
            want = c * 2.0 ** (-(j + 1) * p * (1.0 - alpha))
            _check(fails, abs(got - want) <= 1e-6 * want,
                   f"j={j} curve norm {got} vs {want}")
            lift = w.known_lift(spec).discretize(j + 1)
            energies.append(w.lift_energy(lift, EnergySpec.besov(alpha, p)))
        spread = (max(energies) - min(energies)) / max(energies)
        _check(fails, spread <= 1e-6, f"lift energies vary by rel {spread:.2e}")
    except Exception as exc:  # noqa: BLE001
        fails.append(f"error: {exc!r}")
    _report(4, fails)


def test_criterion_05_oscillating_tents():
    fails = []
    try:
        t0 = time.perf_counter()
        J, p, ups, alpha = 10, 2.0, 0.8, 0.6
        spec = w.oscillating_tents(J, p, ups)
        curve = w.make_curve(spec)
        q = 1.0 / ups

        # (a) consecutive W_p^p vs truncated closed form
        worst_a = 0.0
        for m in range(1, J + 1):
            dt = 2.0**-m
            want = w.reference_value(spec, "wpp_consecutive", m=m)
            for k in (0, 1, 2**m - 1):
                got = w.wasserstein_power(curve(k * dt), curve((k + 1) * dt), p)
                worst_a = max(worst_a, abs(got - want) / max(1.0, want))
        _check(fails, worst_a <= 1e-8, f"consecutive W_p^p off by rel {worst_a:.2e}")

        # (b) dyadic q-variation level sums vs closed form; trend to c_J^{1/ups}
        dist = lambda a, b: w.wasserstein_distance(a, b, p)  # noqa: E731
        vals = limsup_variation_dyadic(curve, q, range(1, J + 1), dist=dist)
        worst_b = 0.0
        for m, v in zip(range(1, J + 1), vals):
            want = w.reference_value(spec, "dyadic_variation", m=m)
            worst_b = max(worst_b, abs(v - want) / want)
        _check(fails, worst_b <= 1e-6, f"q-variation off by rel {worst_b:.2e}")
        const = w.reference_value(spec, "variation_constant")
        gaps = const - vals
        _check(fails, np.all(np.diff(vals) > 0) and np.all(gaps > 0),
               "values not increasing toward the constant")
        _check(fails, gaps[-1] < 0.1 * gaps[0],
               f"deviation from constant not shrinking: {gaps[0]:.4f} -> {gaps[-1]:.4f}")

        # (c) known-lift limsup-variation sums decay to 0
        lift = w.known_lift(spec).discretize(J + 1)
        ms = range(J + 1, J + 5)
        lift_sums = np.zeros(len(ms))
        for path, wt in zip(lift.paths, lift.weights):
            lift_sums += wt * limsup_variation_dyadic(path, q, ms)
        _check(fails, np.all(np.diff(lift_sums) < 0), "lift level sums not decreasing")
        ratio = 2.0 ** (1.0 - q)
        obs = lift_sums[1:] / lift_sums[:-1]
        _check(fails, np.all(np.abs(obs - ratio) < 0.1 * ratio),
               f"lift decay ratios {obs} not near 2^(1-q)={ratio:.3f}")

        elapsed = time.perf_counter() - t0
        _check(fails, elapsed < 60.0, f"runtime {elapsed:.1f}s >= 60s")
    except Exception as exc:  # noqa: BLE001
        fails.append(f"error: {exc!r}")
    _report(5, fails)


def _geodesic_curve(space, mu, nu, p):
    plan, _ = w.optimal_coupling(mu, nu, p)
    idx = np.argwhere(plan.weights > 1e-15)
    wts = plan.weights[idx[:, 0], idx[:, 1]]

    def ev(t):
        pts = np.stack(
            [
                w.geodesic_point(space, mu.atoms[i], nu.atoms[j], t)
                for i, j in idx
            ]
        )
        return w.make_measure(space, pts, wts)

    return w.WassersteinCurve(space, ev, level=0)


def test_criterion_06_realizing_lift():
    fails = []
    try:
        alpha, p = 0.75, 2.0
        factor = 1.0 - 2.0 ** (-(p - alpha * p))
        rng = np.random.default_rng(6)
        sp = w.euclidean(2)
        mu = w.make_measure(sp, random_points(rng, sp, 4), np.full(4, 0.25))
        nu = w.make_measure(sp, random_points(rng, sp, 4), np.full(4, 0.25))
        curves = {
            "geodesic": _geodesic_curve(sp, mu, nu, p),
            "two_tent": w.make_curve(w.two_tent()),
        }
        spec = EnergySpec.besov(alpha, p)
        for name, curve in curves.items():
            for n in range(1, 7):
                lift = w.construct_lift_B(curve, n, p)
                ts = dyadic_times(n)
                pairs = [(ts[i], ts[j]) for (i, j) in w.dyadic_pattern_pairs(n)]
                gap = w.pairwise_optimality_check(lift, curve, pairs, p, 1e-10)["max_gap"]
                _check(fails, gap <= 1e-10, f"{name} n={n} pattern gap {gap:.2e}")
                out = w.energy_vs_curve_gap(lift, curve, spec, M=max(n, 6))
                cnorm = out["curve_norm_power"]
                _check(
                    fails,
                    abs(out["gap"]) <= 1e-8 * max(1.0, cnorm),
                    f"{name} n={n} besov gap {out['gap']:.2e}",
                )
                _check(
                    fails,
                    out["lift_energy"] <= cnorm / factor * (1 + 1e-10),
                    f"{name} n={n} energy {out['lift_energy']:.4f} above bound",
                )
    except Exception as exc:  # noqa: BLE001
        fails.append(f"error: {exc!r}")
    _report(6, fails)


def test_criterion_07_strict_gap_counterexample():
    fails = []
    try:
        p = 2.0
        curve = w.make_curve(w.two_tent())
        lift = w.construct_lift_B(curve, 4, p)
        besov = w.energy_vs_curve_gap(lift, curve, EnergySpec.besov(0.75, p), M=6)
        _check(
            fails,
            abs(besov["gap"]) <= 1e-8 * max(1.0, besov["curve_norm_power"]),
            f"besov gap {besov['gap']:.2e} not ~0",
        )
        for spec, label in [
            (EnergySpec.holder(1.0, p), "holder(1,2)"),
            (EnergySpec.variation(2.0, p), "variation(2,2)"),
            (EnergySpec.modulus(1.0, p), "modulus(1,2)"),
        ]:
            gap = w.energy_vs_curve_gap(lift, curve, spec, M=6)["gap"]
            _check(fails, gap > 0.1, f"{label} gap {gap:.6f} <= 0.1")
    except Exception as exc:  # noqa: BLE001
        fails.append(f"error: {exc!r}")
    _report(7, fails)


def test_criterion_08_dynamic_identity():
    fails = []
    try:
        t0 = time.perf_counter()
        alpha, p = 0.75, 2.0
        rng = np.random.default_rng(8)
        sp = w.euclidean(2)
        worst_id = worst_ex = 0.0
        for _ in range(50):
            mu = random_measure(rng, sp, int(rng.integers(2, 6)))
            nu = random_measure(rng, sp, int(rng.integers(2, 6)))
            out = w.benamou_brenier_check(mu, nu, alpha, p)
            worst_id = max(worst_id, out["identity_error"] / max(out["wpp"], 1e-9))
            worst_ex = max(worst_ex, out["excess_error"] / max(1.0, out["wpp"]))
        _check(fails, worst_id <= 1e-8, f"identity error rel {worst_id:.2e}")
        _check(fails, worst_ex <= 1e-8, f"perturbed excess error {worst_ex:.2e}")
        elapsed = time.perf_counter() - t0
        _check(fails, elapsed < 30.0, f"runtime {elapsed:.1f}s >= 30s")
    except Exception as exc:  # noqa: BLE001
        fails.append(f"error: {exc!r}")
    _report(8, fails)


def test_criterion_09_cylinder_family():
    fails = []
    try:
        J, p, alpha = 8, 2.0, 0.75
        spec = w.cylinder_family(J, p, alpha)
        wts = w.wbar(J, p, alpha) * 2.0 ** (-np.arange(J + 1) * p * alpha)

        increments = []
        for j in range(J + 1):
            comp = w.single_circle_curve(j, J, p, alpha)
            got = curve_besov_norm(comp, alpha, p, 2 * (j + 1)).value
            want = w.reference_value(spec, "component_besov_power", j=j)
            _check(fails, abs(got - want) <= 1e-6 * want,
                   f"component j={j}: {got} vs {want}")
            increments.append(wts[j] * got)
        ratios = np.array(increments[1:]) / np.array(increments[:-1])
        target = 2.0 ** (alpha * p - p)
        _check(
            fails,
            np.all(np.abs(ratios - target) <= 1e-6 * target),
            f"partial-sum increment ratios {ratios} != 2^(ap-p)={target}",
        )

        circle_energies = w.cylinder_circle_energies(J, p, alpha)
        want = w.reference_value(spec, "per_circle_lift_energy")
        spread = np.max(np.abs(circle_energies - want)) / want
        _check(fails, spread <= 1e-6,
               f"per-circle lift increments vary by rel {spread:.2e}")
    except Exception as exc:  # noqa: BLE001
        fails.append(f"error: {exc!r}")
    _report(9, fails)


def test_criterion_10_property_suites():
    fails = []
    rng = np.random.default_rng(10)
    try:
        # metric axioms: 100 triples per space
        bad = 0
        for space in ALL_SPACES:
            for _ in range(100):
                x, y, z = random_points(rng, space, 3)
                dxy = distance(space, x, y)
                if abs(dxy - distance(space, y, x)) > 1e-10:
                    bad += 1
                if distance(space, x, x) > 1e-10 or dxy < 0:
                    bad += 1
                if distance(space, x, z) > dxy + distance(space, y, z) + 1e-10:
                    bad += 1
        _check(fails, bad == 0, f"metric axiom violations: {bad}")

        # coupling marginal conservation: 100 LP solves
        bad = 0
        for i in range(100):
            space = ALL_SPACES[i % len(ALL_SPACES)]
            mu = random_measure(rng, space, int(rng.integers(1, 6)))
            nu = random_measure(rng, space, int(rng.integers(1, 6)))
            r, c = w.optimal_coupling(mu, nu, 2.0)[0].marginal_errors()
            if max(r, c) > 1e-10:
                bad += 1
        _check(fails, bad == 0, f"coupling marginal violations: {bad}")

        # GRR ratio <= 1: 100 level-2 paths
        bad = 0
        for i in range(100):
            space = ALL_SPACES[i % len(ALL_SPACES)]
            path = random_path(rng, space, 2)
            out = w.grr_check(path, 0.75, 2.0, level=2, gl_order=4, corner_splits=5)
            if out["max_ratio"] > 1.0 + 1e-10:
                bad += 1
        _check(fails, bad == 0, f"GRR violations: {bad}")

        # Besov lower bound: 100 random paths
        alpha, p = 0.75, 2.0
        factor = 1.0 - 2.0 ** (-(p - alpha * p))
        bad = 0
        for i in range(100):
            space = ALL_SPACES[i % len(ALL_SPACES)]
            path = random_path(rng, space, int(rng.integers(0, 4)))
            e = besov_energy_pg(path, alpha, p)
            d01 = distance(space, path.breakpoints[0], path.breakpoints[-1])
            if d01**p > factor * e * (1 + 1e-10) + 1e-10:
                bad += 1
        _check(fails, bad == 0, f"Besov lower-bound violations: {bad}")

        # Holder-Besov embedding: 100 random paths
        bad = 0
        al, ups = 0.6, 0.9
        for i in range(100):
            space = ALL_SPACES[i % len(ALL_SPACES)]
            path = random_path(rng, space, int(rng.integers(0, 4)))
            H = holder_norm_dyadic(path, ups, max(path.level, 6))
            e = besov_energy_pg(path, al, p)
            bound = H**p / (1.0 - 2.0 ** (al * p - ups * p))
            if e > bound * (1 + 1e-10) + 1e-10:
                bad += 1
        _check(fails, bad == 0, f"Holder-Besov embedding violations: {bad}")
    except Exception as exc:  # noqa: BLE001
        fails.append(f"error: {exc!r}")
    _report(10, fails)
