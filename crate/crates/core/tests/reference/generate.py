#!/usr/bin/env python3
"""Arbitrary-precision reference values for the cpshift-core test suite.

Run from this directory:  python3 generate.py
Writes bessel_grid.csv and values.rs (both checked in). Needs mpmath.
"""
import mpmath as mp

mp.mp.dps = 50
pi = mp.pi
BIG = dict(maxterms=10**6, maxprec=20000)


def split(v):
    """ln|v| and sign, as strings."""
    if v == 0:
        return "-inf", "0"
    return mp.nstr(mp.log(abs(v)), 30), ("1" if v > 0 else "-1")


def bessel_grid(path):
    orders = [0, 1, 2, 3, 5, 10, 20, 21, 22, 23, 30, 50, 100, 200, 500, 1000, 2000]
    args = ["1e-3", "0.01", "0.1", "0.5", "1", "2", "2.5", "5", "10", "21",
            "22", "25", "50", "100", "1000", "1e4", "1e5"]
    rows = ["kind,order,x,ln_abs,sign"]
    top = max(orders) + 1
    for xs in args:
        x = mp.mpf(xs)
        # K by forward recurrence from K_0, K_1, which is stable in the
        # increasing-order direction; extra digits absorb the rounding.
        with mp.workdps(80):
            ks = [mp.besselk(0, x), mp.besselk(1, x)]
            for n in range(1, top):
                ks.append(ks[n - 1] + 2 * n / x * ks[n])
        for m in orders:
            i = mp.besseli(m, x, **BIG)
            k = ks[m]
            kp = -ks[1] if m == 0 else -(ks[m - 1] + ks[m + 1]) / 2
            for kind, v in (("i", i), ("k", k), ("kp", kp)):
                rows.append(",".join([kind, str(m), xs, *split(v)]))
    jorders = [0, 1, 2, 3, 5, 10, 20, 50, 100, 200]
    jargs = ["0.1", "0.5", "1", "2.5", "5", "10", "30", "100", "500"]
    for n in jorders:
        for xs in jargs:
            x = mp.mpf(xs)
            for kind, order in (("j", mp.mpf(n)), ("jh", n + mp.mpf(1) / 2)):
                v = mp.besselj(order, x)
                rows.append(",".join([kind, str(n), xs, *split(v)]))
    with open(path, "w") as f:
        f.write("\n".join(rows) + "\n")


def ascending_j(m, x, terms=200):
    s = mp.mpf(0)
    for k in range(terms):
        s += (-1) ** k * (x / 2) ** (2 * k + m) / (mp.factorial(k) * mp.factorial(k + m))
    return s


def ascending_i(m, x, terms=200):
    return mp.fsum((x / 2) ** (2 * k + m) / (mp.factorial(k) * mp.factorial(k + m))
                   for k in range(terms))


def k0_integral(x):
    # exp(-cosh t) < 1e-230 beyond t = 7
    return mp.quad(lambda t: mp.exp(-x * mp.cosh(t)), [0, 1, 3, 5, 7])


def k_upto(m, x):
    """K_0(x), ..., K_m(x) by forward recurrence (stable for K)."""
    ks = [mp.besselk(0, x), mp.besselk(1, x)]
    for n in range(1, m):
        ks.append(ks[n - 1] + 2 * n / x * ks[n])
    return ks[: m + 1]


def wire_kappa_integral(m, R, rho, weight):
    def f(k):
        if k == 0:
            return mp.mpf(0)
        return weight(k) * mp.besseli(m, k * R) / k_upto(m, k * R)[m] * k_upto(m, k * rho)[m] ** 2
    d = rho - R
    return mp.quad(f, [0, 0.1 / d, 1 / d, 5 / d, 20 / d, mp.inf])


def wire_xi_z(R, rho, mmax=300, tol=mp.mpf("1e-18")):
    s = mp.mpf(0)
    for m in range(0, mmax + 1):
        t = wire_kappa_integral(m, R, rho, lambda k: k * k)
        s += t / 2 if m == 0 else t
        print("  xi_z", float(rho), m, mp.nstr(t, 5), flush=True)
        if m > 5 and abs(t) < tol * abs(s):
            break
    return s


def gh_halfplane_closed(r, rp):
    (p, f, z), (q, g, w) = r, rp
    dz = z - w

    def part(a, outer):
        D = mp.sqrt(dz ** 2 + p ** 2 + q ** 2 - 2 * p * q * mp.cos(a))
        V = mp.sqrt(2 * p * q * (1 + mp.cos(a)))
        c = mp.cos(a / 2)
        sgn = 1 if c > 0 else (-1 if c < 0 else 0)
        return 1 / (2 * D) + outer * sgn / (pi * D) * mp.atan(V / D)

    return -1 / (4 * pi) * (part(f + g, 1) + part(f - g, -1))


def gh_wire_series(r, rp, R, tol=mp.mpf("1e-18")):
    (p, f, z), (q, g, w) = r, rp
    dz = z - w
    s = mp.mpf(0)
    for m in range(0, 200):
        def fn(k):
            if k == 0:
                return mp.mpf(0)
            kr, kp, kq = k_upto(m, k * R)[m], k_upto(m, k * p)[m], k_upto(m, k * q)[m]
            return mp.cos(k * dz) * mp.besseli(m, k * R) / kr * kp * kq
        t = mp.cos(m * (f - g)) * mp.quad(fn, [0, 0.5, 2, 8, 30, mp.inf])
        s += t / 2 if m == 0 else t
        print("  gh_wire", m, mp.nstr(t, 5), flush=True)
        if m > 5 and abs(t) < tol * abs(s):
            break
    return -s / pi ** 2


def halfint_sum_lhs(k, rho, rhop, alpha, nmax=400):
    return mp.fsum(mp.besselj(n + mp.mpf(1) / 2, k * rho) * mp.besselj(n + mp.mpf(1) / 2, k * rhop)
                   * mp.cos((n + mp.mpf(1) / 2) * alpha) for n in range(nmax))


def halfint_sum_rhs(k, rho, rhop, alpha):
    t1 = k * mp.sqrt(rho ** 2 + rhop ** 2 - 2 * rho * rhop * mp.cos(alpha))
    t2 = k * (rho + rhop)
    # t = t1 cosh u removes the endpoint singularity
    umax = mp.acosh(t2 / t1) if t1 > 0 else None
    if t1 == 0:
        return mp.si(t2) / pi
    return mp.quad(lambda u: mp.sin(t1 * mp.cosh(u)), [0, umax]) / pi


def xi_halfplane(rho, e):
    """Closed-form coefficients at phi = pi - e. Near e = 0 the terms cancel
    to ~e^2 against ~1/e^3, hence the extra precision."""
    with mp.workdps(80):
        e = mp.mpf(e)
        phi = mp.pi - e
        s, c = mp.sin(phi), mp.cos(phi)
        p = mp.pi
        a = 5 / (48 * p) + c / (16 * p * s ** 2) + e * (1 + s ** 2) / (16 * p * s ** 3)
        b = -1 / (48 * p) + c / (8 * p * s ** 2) + e * (1 + c ** 2) / (16 * p * s ** 3)
        z = 1 / (24 * p) + c / (16 * p * s ** 2) + e / (16 * p * s ** 3)
        return [v / mp.mpf(rho) ** 3 for v in (a, b, z)]


def a_kernel(x, r):
    a = mp.sqrt(1 + x * x)
    b = mp.sqrt(1 + x * x * r * r)
    return r * r * mp.exp(-2 * (a - b)) * ((1 + a) / (1 + b)) ** 2


def main():
    bessel_grid("bessel_grid.csv")
    print("grid done", flush=True)
    mp.mp.dps = 22
    out = []

    def const(name, v, doc):
        out.append(f"/// {doc}\npub const {name}: f64 = {mp.nstr(v, 25)};")

    const("J3_AT_2_5", ascending_j(3, mp.mpf("2.5")), "J_3(2.5), ascending series.")
    const("I2_AT_10", ascending_i(2, mp.mpf(10)), "I_2(10), ascending series.")
    const("K0_AT_1", k0_integral(mp.mpf(1)), "K_0(1) = int_0^inf exp(-cosh t) dt.")
    k5 = mp.besselk(5, mp.mpf("0.01"))
    const("K5_AT_0_01", k5, "K_5(0.01).")
    const("K5_AT_0_01_LEADING", mp.factorial(4) / 2 * (2 / mp.mpf("0.01")) ** 5,
          "(m-1)!/2 (2/x)^m at m = 5, x = 0.01.")
    h = mp.mpf("1e-8")
    with mp.workdps(80):
        kp3 = (mp.besselk(3, 2 + h) - mp.besselk(3, 2 - h)) / (2 * h)
    const("K3_PRIME_AT_2", kp3, "K_3'(2), central difference of K_3 at step 1e-8.")

    f0 = wire_kappa_integral(0, mp.mpf(1), mp.mpf(2), lambda k: k * k)
    const("WIRE_M0_Z_INTEGRAL_R1_RHO2", f0,
          "int_0^inf k^2 I_0(k)/K_0(k) K_0(2k)^2 dk.")
    s15 = wire_xi_z(mp.mpf(1), mp.mpf("1.5"))
    const("WIRE_Z_PRIMED_SUM_R1_RHO1_5", s15,
          "sum'_m int_0^inf k^2 I_m(k)/K_m(k) K_m(1.5k)^2 dk.")
    s2 = wire_xi_z(mp.mpf(1), mp.mpf(2))
    const("WIRE_XI_Z_R1_RHO2", 2 / pi * s2, "Xi_z for R = 1, rho = 2.")

    const("A_KERNEL_1_HALF", a_kernel(mp.mpf(1), mp.mpf("0.5")), "A(x = 1, r = 0.5).")

    const("GH_HALFPLANE_REF",
          gh_halfplane_closed((1, pi / 2, 0), (1, pi / 2, 1)),
          "Halfplane G_H at (1, pi/2, 0), (1, pi/2, 1).")
    const("GH_WIRE_REF", gh_wire_series((2, 0, 0), (3, 0, mp.mpf("0.5")), 1),
          "Wire G_H at (2, 0, 0), (3, 0, 0.5), R = 1.")

    xs = xi_halfplane(1, pi / 2)
    for n, v in zip(("RHO", "PHI", "Z"), xs):
        const(f"XI_HALFPLANE_{n}_HALF_PI", v, f"Halfplane Xi_{n.lower()} at rho = 1, phi = pi/2.")
    xs = xi_halfplane(1, mp.mpf("1e-6"))
    for n, v in zip(("RHO", "PHI", "Z"), xs):
        const(f"XI_HALFPLANE_{n}_NEAR_PI", v,
              f"Halfplane Xi_{n.lower()} at rho = 1, phi = pi - 1e-6.")

    for tag, args, where in (
        ("K1_EQUAL_ALPHA0", (1, 1, 1, 0), "k = 1, rho = rho' = 1, alpha = 0"),
        ("K2_PI_THIRD", (2, 1, mp.mpf("0.5"), pi / 3), "k = 2, rho = 1, rho' = 0.5, alpha = pi/3"),
    ):
        a = [mp.mpf(v) for v in args]
        lhs = halfint_sum_lhs(*a)
        rhs = halfint_sum_rhs(*a)
        const(f"HALFINT_LHS_{tag}", lhs, f"sum_n J_(n+1/2)(k rho) J_(n+1/2)(k rho') cos((n+1/2) alpha), {where}.")
        const(f"HALFINT_RHS_{tag}", rhs, f"Integral side of the half-integer sum, {where}.")

    with open("values.rs", "w") as f:
        f.write("// Generated by generate.py; do not edit.\n#![allow(dead_code, clippy::excessive_precision)]\n\n")
        f.write("\n\n".join(out) + "\n")


if __name__ == "__main__":
    main()
