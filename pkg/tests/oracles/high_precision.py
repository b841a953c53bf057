"""Independent high-precision evaluation of threshold formulas and slope extremes.

Run directly to print the frozen reference values used across the test suite.
Uses mpmath only; shares no code with the package.
"""

import mpmath as mp

mp.mp.dps = 40


def const_ab(ga, gb, inf_d0):
    ga, gb, inf_d0 = mp.mpf(ga), mp.mpf(gb), mp.mpf(inf_d0)
    s = (ga + gb) / (ga * gb)
    inner = min(mp.mpf(-1), inf_d0 / s)
    return s * (mp.mpf(1) / 2 + mp.sqrt(2) / 4 * mp.sqrt(3 - inner))


def lin_ab(ga, gb):
    ga, gb = mp.mpf(ga), mp.mpf(gb)
    s = (ga + gb) / (ga * gb)
    return s * (1 + mp.sqrt(mp.mpf(3) / 2 + (ga / (2 * (ga + gb))) ** 2))


def const_a(ga, inf_d0):
    ga, inf_d0 = mp.mpf(ga), mp.mpf(inf_d0)
    inner = min(mp.mpf(-1), ga * inf_d0)
    return (mp.mpf(1) / 2 + mp.sqrt(2) / 4 * mp.sqrt(3 - inner)) / ga


def steep_plateau_slope_max():
    # d/dx 0.8 exp(-8 s^4) = -25.6 s^3 exp(-8 s^4); extremum at s^4 = 3/32
    s = -(mp.mpf(3) / 32) ** (mp.mpf(1) / 4)
    return -mp.mpf("25.6") * s**3 * mp.exp(-8 * s**4)


def two_plateaus_slope_extremes():
    def d(x):
        return (-2 * mp.mpf("0.35") * (x + 5) * mp.exp(-((x + 5) ** 2))
                - 2 * mp.mpf("0.55") * (x + 3) * mp.exp(-((x + 3) ** 2)))

    def dd(x):
        return mp.diff(d, x)

    # brute-force scan, then polish each bracketed stationary point
    xs = [mp.mpf(-15) + mp.mpf(k) / 1000 for k in range(25001)]
    vals = [d(x) for x in xs]
    hi = max(range(len(xs)), key=lambda k: vals[k])
    lo = min(range(len(xs)), key=lambda k: vals[k])
    return d(mp.findroot(dd, xs[hi])), d(mp.findroot(dd, xs[lo]))


if __name__ == "__main__":
    print("const_ab(1,0.5,-1)     ", mp.nstr(const_ab(1, 0.5, -1), 20))
    print("const_ab(1,1,0)        ", mp.nstr(const_ab(1, 1, 0), 20))
    print("const_ab(3,1.5,-2.0489)", mp.nstr(const_ab(3, 1.5, "-2.0489"), 20))
    print("lin_ab(1,1)            ", mp.nstr(lin_ab(1, 1), 20))
    print("lin_ab(1,0.5)          ", mp.nstr(lin_ab(1, 0.5), 20))
    print("lin_ab(3,1.5)          ", mp.nstr(lin_ab(3, 1.5), 20))
    print("const_a(1,-1)          ", mp.nstr(const_a(1, -1), 20))
    print("const_a(1,-5)          ", mp.nstr(const_a(1, -5), 20))
    print("const_a(2,0)           ", mp.nstr(const_a(2, 0), 20))
    m4 = steep_plateau_slope_max()
    print("steep plateau sup u0'  ", mp.nstr(m4, 20))
    print("const_ab(3,1.5,-sup4)  ", mp.nstr(const_ab(3, 1.5, -m4), 20))
    print("gaussian 0.35 sup u0'  ", mp.nstr(mp.mpf("0.35") * mp.sqrt(2) * mp.exp(mp.mpf(-1) / 2), 20))
    print("LookA 0.5,1 flux       ", mp.nstr(mp.mpf("0.25") * mp.exp(-1), 20))
    print("two plateaus at -5     ", mp.nstr(mp.mpf("0.45") + mp.mpf("0.55") * mp.exp(-4), 20))
    hi, lo = two_plateaus_slope_extremes()
    print("two plateaus sup/inf   ", mp.nstr(hi, 20), mp.nstr(lo, 20))
