"""Generators for the example curve families with closed-form reference
values.

Families (all on the time interval [0,1]):
  * jump:              mu_t = (1-t) delta_0 + t delta_1 on R.
  * two_tent:          1/2 delta_{t} + 1/2 delta_{3-|2t-1|} on R.
  * oscillating_tents: atoms (j*a, y^j_t) in R^2, where y^j is a train of
        2^j unit tents traversed at speed 2^{j+1}; weights w_j proportional
        to 2^{-j p upsilon}, truncated at J and renormalized.
  * circle_splitting:  2^{j+1} equally spaced atoms rotating at unit speed
        on the circle of perimeter 2.
  * cylinder_family:   circles at heights j*a on the cylinder; circle j
        carries 2^{j+1} atoms rotating at speed 2^{j+1} with total mass
        proportional to 2^{-j p alpha}, truncated at J and renormalized.

Truncated families carry the renormalization factor wbar_J explicitly in
every reference formula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spaces
from .errors import NoContinuousLiftError, ValidationError
from .lifts import Lift, WassersteinCurve
from .measures import make_measure
from .paths import PiecewiseGeodesicPath, dyadic_times

FAMILIES = ("jump", "two_tent", "oscillating_tents", "circle_splitting", "cylinder_family")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: dict

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ValidationError(f"unknown family {self.name!r}")
        q = self.params
        if self.name == "oscillating_tents":
            p, ups, a, J = q["p"], q["upsilon"], q.get("a", 2.0), q["J"]
            if not (1.0 / p < ups < 1.0):
                raise ValidationError("need upsilon in (1/p, 1)")
            if a <= 1.0:
                raise ValidationError("need spacing a > 1")
            if J < 0:
                raise ValidationError("need J >= 0")
        elif self.name == "cylinder_family":
            p, al, a, J = q["p"], q["alpha"], q.get("a", 3.0), q["J"]
            if not (1.0 / p < al < 1.0):
                raise ValidationError("need alpha in (1/p, 1)")
            if a <= 2.0:
                raise ValidationError("need spacing a > 2")
            if J < 0:
                raise ValidationError("need J >= 0")
        elif self.name == "circle_splitting":
            if q.get("j", 0) < 0:
                raise ValidationError("need j >= 0")


def jump(**kw) -> FamilySpec:
    return FamilySpec("jump", kw)


def two_tent(**kw) -> FamilySpec:
    return FamilySpec("two_tent", kw)


def oscillating_tents(J, p, upsilon, a=2.0) -> FamilySpec:
    return FamilySpec("oscillating_tents", {"J": J, "p": p, "upsilon": upsilon, "a": a})


def circle_splitting(j) -> FamilySpec:
    return FamilySpec("circle_splitting", {"j": j})


def cylinder_family(J, p, alpha, a=3.0) -> FamilySpec:
    return FamilySpec("cylinder_family", {"J": J, "p": p, "alpha": alpha, "a": a})


# ---------------------------------------------------------------------------
# trajectory building blocks


def _tent_profile(j: int, t: float) -> float:
    """Height of the 2^j-tent train at time t: zero at multiples of 2^-j,
    peaks of height 1 at odd multiples of 2^-(j+1); slopes +-2^{j+1}."""
    cell = 2.0**-j
    u = t % cell if t < 1.0 else 0.0
    return max(1.0 - 2.0 ** (j + 1) * abs(u - cell / 2.0), 0.0)


def _tent_weights(J: int, p: float, exponent: float) -> np.ndarray:
    """Renormalized truncated weights w_j = wbar_J 2^{-j p exponent}."""
    raw = 2.0 ** (-np.arange(J + 1) * p * exponent)
    return raw / raw.sum()


def wbar(J: int, p: float, exponent: float) -> float:
    """Renormalization constant: 1 / sum_{j<=J} 2^{-j p exponent}."""
    return 1.0 / float(np.sum(2.0 ** (-np.arange(J + 1) * p * exponent)))


# ---------------------------------------------------------------------------
# curves


def make_curve(spec: FamilySpec) -> WassersteinCurve:
    q = spec.params
    if spec.name == "jump":
        space = spaces.euclidean(1)

        def ev(t):
            if t <= 0.0:
                return make_measure(space, [[0.0]], [1.0])
            if t >= 1.0:
                return make_measure(space, [[1.0]], [1.0])
            return make_measure(space, [[0.0], [1.0]], [1.0 - t, t])

        return WassersteinCurve(space, ev, level=None, name="jump", params=q)

    if spec.name == "two_tent":
        space = spaces.euclidean(1)

        def ev(t):
            return make_measure(
                space, [[t], [3.0 - abs(2.0 * t - 1.0)]], [0.5, 0.5]
            )

        return WassersteinCurve(space, ev, level=1, name="two_tent", params=q)

    if spec.name == "oscillating_tents":
        J, p, ups, a = q["J"], q["p"], q["upsilon"], q.get("a", 2.0)
        space = spaces.euclidean(2)
        w = _tent_weights(J, p, ups)

        def ev(t):
            atoms = [[j * a, _tent_profile(j, t)] for j in range(J + 1)]
            return make_measure(space, atoms, w)

        return WassersteinCurve(
            space, ev, level=J + 1, name="oscillating_tents", params=q
        )

    if spec.name == "circle_splitting":
        j = q["j"]
        space = spaces.circle(2.0)
        k = np.arange(2 ** (j + 1))
        wts = np.full(2 ** (j + 1), 2.0 ** -(j + 1))

        def ev(t):
            return make_measure(space, (t + k * 2.0**-j)[:, None], wts)

        return WassersteinCurve(
            space,
            ev,
            level=j + 1,
            period=2.0**-j,  # rotation by the atom spacing restores the state
            name="circle_splitting",
            params=q,
        )

    if spec.name == "cylinder_family":
        J, p, al, a = q["J"], q["p"], q["alpha"], q.get("a", 3.0)
        space = spaces.cylinder(2.0)
        w = _tent_weights(J, p, al)

        def ev(t):
            atoms, wts = [], []
            for j in range(J + 1):
                kk = np.arange(2 ** (j + 1))
                arc = 2.0 ** (j + 1) * t + kk * 2.0**-j
                for s in arc:
                    atoms.append([s, j * a])
                wts.extend([w[j] / 2 ** (j + 1)] * 2 ** (j + 1))
            return make_measure(space, atoms, wts)

        # circle j repeats with period 2^{-(2j+1)}; all of these divide 1/2,
        # so the full measure path has exact period 1/2
        return WassersteinCurve(
            space,
            ev,
            level=2 * (J + 1),
            period=0.5,
            name="cylinder_family",
            params=q,
        )

    raise ValidationError(f"unknown family {spec.name!r}")


def single_circle_curve(j: int, J: int, p: float, alpha: float, a: float = 3.0) -> WassersteinCurve:
    """The j-th circle component of the cylinder family, as a curve of
    probability measures in its own right (unit mass on circle j)."""
    space = spaces.cylinder(2.0)
    kk = np.arange(2 ** (j + 1))
    wts = np.full(2 ** (j + 1), 2.0 ** -(j + 1))

    def ev(t):
        arc = 2.0 ** (j + 1) * t + kk * 2.0**-j
        atoms = np.stack([arc, np.full_like(arc, j * a)], axis=1)
        return make_measure(space, atoms, wts)

    return WassersteinCurve(
        space, ev, level=2 * (j + 1), period=2.0 ** -(2 * j + 1),
        name=f"cylinder_circle_{j}",
    )


# ---------------------------------------------------------------------------
# known lifts


class KnownLift:
    """Exact particle-trajectory lift: callables t -> point plus weights,
    discretizable to any dyadic level >= natural_level."""

    def __init__(self, space, trajectories, weights, natural_level):
        self.space = space
        self.trajectories = list(trajectories)
        self.weights = np.asarray(weights, dtype=float)
        self.natural_level = natural_level

    def discretize(self, n: int) -> Lift:
        if n < self.natural_level:
            raise ValidationError(
                f"level {n} below the natural breakpoint level {self.natural_level}"
            )
        ts = dyadic_times(n)
        paths = tuple(
            PiecewiseGeodesicPath(
                self.space, np.stack([np.atleast_1d(traj(t)) for t in ts]), n
            )
            for traj in self.trajectories
        )
        return Lift(paths, self.weights / self.weights.sum(), n)


def known_lift(spec: FamilySpec) -> KnownLift:
    q = spec.params
    if spec.name == "jump":
        raise NoContinuousLiftError(
            "the jump family has no lift concentrated on continuous paths"
        )
    if spec.name == "two_tent":
        return KnownLift(
            spaces.euclidean(1),
            [lambda t: [t], lambda t: [3.0 - abs(2.0 * t - 1.0)]],
            [0.5, 0.5],
            1,
        )
    if spec.name == "oscillating_tents":
        J, p, ups, a = q["J"], q["p"], q["upsilon"], q.get("a", 2.0)
        trajs = [
            (lambda j: (lambda t: [j * a, _tent_profile(j, t)]))(j)
            for j in range(J + 1)
        ]
        return KnownLift(spaces.euclidean(2), trajs, _tent_weights(J, p, ups), J + 1)
    if spec.name == "circle_splitting":
        j = q["j"]
        trajs = [
            (lambda k: (lambda t: [t + k * 2.0**-j]))(k)
            for k in range(2 ** (j + 1))
        ]
        wts = np.full(2 ** (j + 1), 2.0 ** -(j + 1))
        return KnownLift(spaces.circle(2.0), trajs, wts, j + 1)
    if spec.name == "cylinder_family":
        J, p, al, a = q["J"], q["p"], q["alpha"], q.get("a", 3.0)
        w = _tent_weights(J, p, al)
        trajs, wts = [], []
        for j in range(J + 1):
            for k in range(2 ** (j + 1)):
                trajs.append(
                    (lambda j, k: (lambda t: [2.0 ** (j + 1) * t + k * 2.0**-j, j * a]))(j, k)
                )
                wts.append(w[j] / 2 ** (j + 1))
        return KnownLift(spaces.cylinder(2.0), trajs, wts, 2 * (J + 1))
    raise ValidationError(f"unknown family {spec.name!r}")


def cylinder_circle_energies(J: int, p: float, alpha: float, a: float = 3.0):
    """Besov lift-energy contribution of each circle j <= J of the cylinder
    family: sum over the circle's particles of weight times path energy,
    discretizing each trajectory at its own natural level 2(j+1)."""
    from .norms import besov_energy_pg

    space = spaces.cylinder(2.0)
    w = _tent_weights(J, p, alpha)
    out = []
    for j in range(J + 1):
        n = 2 * (j + 1)
        ts = dyadic_times(n)
        # the 2^{j+1} particles of circle j are arc rotations of one another,
        # so they share the same path energy
        arc = 2.0 ** (j + 1) * ts
        bp = np.stack([arc, np.full_like(arc, j * a)], axis=1)
        path = PiecewiseGeodesicPath(space, bp, n)
        out.append(w[j] * besov_energy_pg(path, alpha, p))
    return np.array(out)


# ---------------------------------------------------------------------------
# closed-form reference values


def reference_value(spec: FamilySpec, quantity: str, **kw) -> float:
    """Closed-form reference values, truncation-aware (wbar_J factors)."""
    q = spec.params
    if spec.name == "jump":
        if quantity == "wpp":
            return abs(kw["t"] - kw["s"])
        raise ValidationError(f"unsupported quantity {quantity!r} for jump")

    if spec.name == "two_tent":
        if quantity == "wpp":
            s, t, p = kw["s"], kw["t"], kw["p"]
            d2 = abs(abs(2.0 * t - 1.0) - abs(2.0 * s - 1.0))
            return 0.5 * abs(t - s) ** p + 0.5 * d2**p
        raise ValidationError(f"unsupported quantity {quantity!r} for two_tent")

    if spec.name == "oscillating_tents":
        J, p, ups = q["J"], q["p"], q["upsilon"]
        wJ = wbar(J, p, ups)
        if quantity == "wpp_consecutive":
            # W_p^p between consecutive level-m dyadic times (same for all k);
            # curves j >= m are flat at those times, so truncation at J >= m
            # is invisible
            m = kw["m"]
            if m > J:
                raise ValidationError("need truncation J >= level m")
            dt_m = 2.0**-m
            return wJ * sum(
                2.0 ** (-j * p * ups) * (dt_m * 2.0 ** (j + 1)) ** p
                for j in range(m)
            )
        if quantity == "dyadic_variation":
            # sum over level-m pairs of W_p^{1/upsilon}
            m = kw["m"]
            if m > J:
                raise ValidationError("need truncation J >= level m")
            cJ = (wJ / (2.0 ** (-ups * p) - 2.0**-p)) ** (1.0 / p)
            return cJ ** (1.0 / ups) * (1.0 - 2.0 ** (m * p * (ups - 1.0))) ** (
                1.0 / (p * ups)
            )
        if quantity == "variation_constant":
            cJ = (wJ / (2.0 ** (-ups * p) - 2.0**-p)) ** (1.0 / p)
            return cJ ** (1.0 / ups)
        if quantity == "lift_besov_energy":
            al = kw["alpha"]
            return (
                wJ
                / (2.0 ** (-al * p) - 2.0**-p)
                * sum(2.0 ** (j * (al * p - ups * p)) for j in range(J + 1))
            )
        raise ValidationError(f"unsupported quantity {quantity!r}")

    if spec.name == "circle_splitting":
        j = q["j"]
        if quantity == "curve_besov_power":
            al, p = kw["alpha"], kw["p"]
            c = 2.0 ** (p - al * p) / (2.0 ** (p - al * p) - 1.0)
            return c * 2.0 ** (-(j + 1) * p * (1.0 - al))
        if quantity == "lift_besov_energy":
            al, p = kw["alpha"], kw["p"]
            return 1.0 / (1.0 - 2.0 ** (-(p - al * p)))
        raise ValidationError(f"unsupported quantity {quantity!r}")

    if spec.name == "cylinder_family":
        J, p, al = q["J"], q["p"], q["alpha"]
        wJ = wbar(J, p, al)
        if quantity == "component_besov_power":
            # |mu^j|^p for the unit-mass circle-j component
            j = kw["j"]
            return (
                2.0 ** (2 * al * p - p)
                / (1.0 - 2.0 ** (al * p - p))
                * 2.0 ** (j * (2 * al * p - p))
            )
        if quantity == "curve_besov_power":
            # sum_j w_j |mu^j|^p (block decomposition, spacing a > 2)
            comp = [
                reference_value(spec, "component_besov_power", j=j)
                for j in range(J + 1)
            ]
            w = _tent_weights(J, p, al)
            return float(np.dot(w, comp))
        if quantity == "per_circle_lift_energy":
            # each circle contributes the same Besov energy to the lift
            return wJ / (2.0 ** (-al * p) - 2.0**-p)
        raise ValidationError(f"unsupported quantity {quantity!r}")

    raise ValidationError(f"unknown family {spec.name!r}")
