"""Independent brute-force oracles used by the tests.

Everything here evaluates defining series or bisection directly in
high-precision arithmetic, deliberately sharing no code with the library
paths under test.
"""

import mpmath as mp


def series_bessel_j(alpha, z, dps=50, terms=300):
    """Partial sums of the defining alternating series."""
    with mp.workdps(dps):
        a = mp.mpf(alpha)
        half = mp.mpf(z) / 2
        tot = mp.mpf(0)
        for n in range(terms):
            tot += (-1) ** n * half ** (2 * n + a) / (mp.factorial(n) * mp.gamma(n + a + 1))
        return float(tot)


def series_bessel_i(alpha, z, dps=50, terms=400):
    with mp.workdps(dps):
        a = mp.mpf(alpha)
        half = mp.mpf(z) / 2
        tot = mp.mpf(0)
        for n in range(terms):
            tot += half ** (2 * n + a) / (mp.factorial(n) * mp.gamma(n + a + 1))
        return float(tot)


def series_hyp1f2(a, b, c, x, dps=None):
    """Direct summation with working precision scaled to the cancellation."""
    import math

    if dps is None:
        dps = int(2.0 * math.sqrt(abs(x)) / math.log(10)) + 45
    with mp.workdps(dps):
        A, B, C, X = (mp.mpf(v) for v in (a, b, c, x))
        term = mp.mpf(1)
        tot = mp.mpf(1)
        for n in range(1, 60000):
            term = term * ((A + (n - 1)) * X) / ((B + (n - 1)) * (C + (n - 1)) * n)
            tot += term
            if abs(term) < mp.mpf(10) ** (-(dps - 10)) * (abs(tot) + 1):
                break
        return float(tot)


def bisect_first_j_zero(alpha, lo, hi, dps=40):
    """Sign-change bisection on the high-precision series."""
    with mp.workdps(dps):
        f = lambda z: mp.besselj(alpha, z)
        a, b = mp.mpf(lo), mp.mpf(hi)
        fa = f(a)
        assert fa * f(b) < 0, "oracle bracket must straddle the zero"
        for _ in range(200):
            m = (a + b) / 2
            if fa * f(m) <= 0:
                b = m
            else:
                a = m
                fa = f(a)
        return float((a + b) / 2)


def quad_moment(f, dps=30, upper=60):
    """mpmath quadrature of f over (0, upper) as a crude cross-check."""
    with mp.workdps(dps):
        return float(mp.quad(f, [0, upper]))
