"""The compatibility feasibility gate.

A collection of measures is compatible when one joint multi-coupling makes
every 2-D marginal an optimal coupling.  The rotating split measure on the
circle shows why checking three time points is not enough: {0, 1/4, 1/2} is
feasible, but adding t = 3/4 breaks it with a strictly positive gap.
"""

import wlift as w


def main():
    curve = w.make_curve(w.circle_splitting(0))
    print("mu_t = (delta_t + delta_{t+1}) / 2 rotating on the circle of perimeter 2")

    for times in [(0.0, 0.25, 0.5), (0.0, 0.25, 0.5, 0.75)]:
        ms = [curve(t) for t in times]
        rep = w.compatibility_multicoupling(ms, 2.0, labels=times)
        verdict = "feasible" if rep.feasible else "infeasible"
        print(f"\ntimes {times}: {verdict}")
        print(f"  minimized excess over pairwise optimal costs: {rep.max_pair_gap:.6f}")
        print(f"  product support size: {rep.product_size}")
        if rep.feasible:
            print(f"  certificate support: {len(rep.certificate.weights)} tuples, "
                  f"marginal error {rep.certificate.marginal_error():.2e}")

    print("\nA genuinely incompatible triple also exists in the plane:")
    import math
    sp = w.euclidean(2)

    def antipodal(deg):
        th = math.radians(deg)
        a = [math.cos(th), math.sin(th)]
        return w.make_measure(sp, [a, [-a[0], -a[1]]], [0.5, 0.5])

    rep = w.compatibility_multicoupling([antipodal(0), antipodal(61), antipodal(122)], 2.0)
    print(f"antipodal pairs at 0/61/122 degrees: feasible={rep.feasible}, "
          f"gap={rep.max_pair_gap:.6f}")
    print("(the optimal matchings rotate by +61, +61, -58 degrees; "
          "they cannot coexist in one joint law)")


if __name__ == "__main__":
    main()
