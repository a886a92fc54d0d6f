# cython: boundscheck=False, cdivision=True, language_level=3
"""Compiled twin of _kernels_py: the same scalar kernels with C arithmetic.

Keep the two implementations in lockstep; the test suite runs the shared
battery against both backends.
"""

from libc.math cimport (M_PI, cos, cosh, erfc, exp, fabs, floor, isfinite,
                        isnan, log, sin, sinh, sqrt)

BACKEND_NAME = "compiled"

cdef double _LN_SQRT_2PI = 0.9189385332046727417803297
cdef double _SQRT_2PI = 2.5066282746310005024157653
cdef double _LANCZOS_G = 7.0
cdef double[9] _LC
_LC[0] = 0.99999999999980993
_LC[1] = 676.5203681218851
_LC[2] = -1259.1392167224028
_LC[3] = 771.32342877765313
_LC[4] = -176.61502916214059
_LC[5] = 12.507343278686905
_LC[6] = -0.13857109526572012
_LC[7] = 9.9843695780195716e-6
_LC[8] = 1.5056327351493116e-7


cdef double _ln_gamma_c(double x) except? -1e300:
    cdef double acc, t
    cdef int k
    if x < 0.5:
        return log(M_PI / sin(M_PI * x)) - _ln_gamma_c(1.0 - x)
    acc = _LC[0]
    for k in range(1, 9):
        acc += _LC[k] / (x - 1.0 + k)
    t = x + _LANCZOS_G - 0.5
    return _LN_SQRT_2PI + (x - 0.5) * log(t) - t + log(acc)


def ln_gamma(double x):
    """log Gamma(x) for x > 0, relative error ~1e-15."""
    if not x > 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x!r}")
    return _ln_gamma_c(x)


def digamma(double x):
    """psi(x) for x > 0: recurrence lift to x >= 10, then asymptotic series."""
    cdef double acc = 0.0
    cdef double inv, inv2, tail
    if not x > 0.0:
        raise ValueError(f"digamma requires x > 0, got {x!r}")
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    tail = inv2 * (1.0 / 12.0
                   - inv2 * (1.0 / 120.0
                             - inv2 * (1.0 / 252.0
                                       - inv2 * (1.0 / 240.0
                                                 - inv2 * (1.0 / 132.0
                                                           - inv2 * (691.0 / 32760.0
                                                                     - inv2 * (1.0 / 12.0)))))))
    return acc + log(x) - 0.5 * inv - tail


def j_crossover(double alpha):
    """Smallest argument where the large-argument expansion is reliable."""
    cdef double c = 0.25 * alpha * alpha + 2.0
    return c if c > 14.0 else 14.0


cdef int _half_integer_k(double alpha, double z):
    cdef double k = floor(alpha)
    if alpha - k == 0.5 and -1.0 <= k <= 6.0 and (k < 1.0 or z >= 2.0 * k + 2.0):
        return <int>k
    return -2


cdef double _bessel_j_half(int k, double z):
    cdef double c = sqrt(2.0 / (M_PI * z))
    cdef double jm, jc, tmp, nu
    cdef int i
    if k == -1:
        return c * cos(z)
    jm = c * cos(z)
    jc = c * sin(z)
    nu = 0.5
    for i in range(k):
        tmp = (2.0 * nu / z) * jc - jm
        jm = jc
        jc = tmp
        nu += 1.0
    return jc


cdef double _bessel_i_half(int k, double z):
    cdef double c = sqrt(2.0 / (M_PI * z))
    cdef double im, ic, tmp, nu
    cdef int i
    if k == -1:
        return c * cosh(z)
    im = c * cosh(z)
    ic = c * sinh(z)
    nu = 0.5
    for i in range(k):
        tmp = im - (2.0 * nu / z) * ic
        im = ic
        ic = tmp
        nu += 1.0
    return ic


cdef (double, double) _bessel_j_series_bound_c(double alpha, double z):
    # Kahan-compensated series plus a cancellation bound (~eps * max term)
    cdef double half = 0.5 * z
    cdef double term, ratio, total, comp, y, t, at, max_term
    cdef int n
    term = exp(alpha * log(half) - _ln_gamma_c(alpha + 1.0))
    ratio = -half * half
    total = term
    comp = 0.0
    max_term = fabs(term)
    for n in range(1, 400):
        term *= ratio / (n * (n + alpha))
        at = fabs(term)
        if at > max_term:
            max_term = at
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if at <= 1e-17 * (fabs(total) + 1e-300):
            break
    return total, 4e-16 * max_term


cdef double _bessel_j_series_c(double alpha, double z) except? -1e300:
    cdef double v, b
    v, b = _bessel_j_series_bound_c(alpha, z)
    return v


def bessel_j_series(double alpha, double z):
    """Kahan-compensated power series for J_alpha."""
    if z == 0.0:
        if alpha == 0.0:
            return 1.0
        if alpha > 0.0:
            return 0.0
        raise ZeroDivisionError("J_alpha(0) is singular for alpha < 0")
    return _bessel_j_series_c(alpha, z)


cdef (double, double) _hankel_pq(double alpha, double z):
    cdef double mu = 4.0 * alpha * alpha
    cdef double p = 1.0, q = 0.0, term = 1.0
    cdef double eight_z = 8.0 * z
    cdef double prev = 1e308
    cdef double at
    cdef int k, r
    for k in range(1, 40):
        term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * eight_z)
        at = fabs(term)
        if at >= prev or at < 1e-18:
            break
        prev = at
        r = k % 4
        if r == 0:
            p += term
        elif r == 1:
            q += term
        elif r == 2:
            p -= term
        else:
            q -= term
    return p, q


def bessel_j_asymptotic(double alpha, double z):
    """Large-argument expansion sqrt(2/(pi z)) (P cos w - Q sin w)."""
    cdef double p, q, w
    p, q = _hankel_pq(alpha, z)
    w = z - alpha * M_PI / 2.0 - M_PI / 4.0
    return sqrt(2.0 / (M_PI * z)) * (p * cos(w) - q * sin(w))


cdef double _bessel_j_c(double alpha, double z) except? -1e300:
    cdef int k
    cdef double p, q, w, cross, val, bound
    k = _half_integer_k(alpha, z)
    if k != -2:
        return _bessel_j_half(k, z)
    cross = 0.25 * alpha * alpha + 2.0
    if cross < 14.0:
        cross = 14.0
    if z >= cross:
        p, q = _hankel_pq(alpha, z)
        w = z - alpha * M_PI / 2.0 - M_PI / 4.0
        return sqrt(2.0 / (M_PI * z)) * (p * cos(w) - q * sin(w))
    val, bound = _bessel_j_series_bound_c(alpha, z)
    if bound <= 2e-11:
        return val
    from besselprob import _highprec
    return _highprec.bessel_j_mp(alpha, z)


def bessel_j(double alpha, double z):
    """J_alpha(z) for alpha > -1, z >= 0."""
    if not alpha > -1.0 or isnan(alpha):
        raise ValueError(f"bessel_j requires alpha > -1, got {alpha!r}")
    if z < 0.0:
        raise ValueError(f"bessel_j requires z >= 0, got {z!r}")
    if z == 0.0:
        if alpha < 0.0:
            raise ZeroDivisionError("J_alpha(0) is singular for alpha < 0")
        return 1.0 if alpha == 0.0 else 0.0
    return _bessel_j_c(alpha, z)


def bessel_j_prime(double alpha, double z):
    """J_alpha'(z); recurrence form below alpha = 0 keeps orders in range."""
    if alpha > 0.0:
        return 0.5 * (bessel_j(alpha - 1.0, z) - bessel_j(alpha + 1.0, z))
    return (alpha / z) * bessel_j(alpha, z) - bessel_j(alpha + 1.0, z)


def bessel_j_normalized(double alpha, double z):
    """Gamma(alpha+1) (z/2)^{-alpha} J_alpha(z); equal to 1 at z = 0."""
    cdef double term, total, ratio
    cdef int n
    if not alpha > -1.0 or isnan(alpha):
        raise ValueError(f"bessel_j_normalized requires alpha > -1, got {alpha!r}")
    if z < 0.0:
        raise ValueError(f"requires z >= 0, got {z!r}")
    if z <= 1e-2 or (z <= 14.0 and _half_integer_k(alpha, z) == -2):
        term = 1.0
        total = 1.0
        ratio = -0.25 * z * z
        for n in range(1, 400):
            term *= ratio / (n * (n + alpha))
            total += term
            if fabs(term) <= 1e-17 * (fabs(total) + 1e-300):
                break
        return total
    return _bessel_j_c(alpha, z) * exp(_ln_gamma_c(alpha + 1.0) - alpha * log(0.5 * z))


def bessel_i(double alpha, double z):
    """I_alpha(z); positive series, OverflowError past z ~ 690."""
    cdef double half, term, ratio, total, log_val
    cdef int n
    if not alpha > -1.0 or isnan(alpha):
        raise ValueError(f"bessel_i requires alpha > -1, got {alpha!r}")
    if z < 0.0:
        raise ValueError(f"bessel_i requires z >= 0, got {z!r}")
    if z == 0.0:
        if alpha < 0.0:
            raise ZeroDivisionError("I_alpha(0) is singular for alpha < 0")
        return 1.0 if alpha == 0.0 else 0.0
    if z > 690.0:
        log_val = z - 0.5 * log(2.0 * M_PI * z)
        raise OverflowError(f"I_alpha overflow: log I_{alpha}({z}) ~ {log_val:.6g}")
    cdef int k = _half_integer_k(alpha, z)
    if k != -2:
        return _bessel_i_half(k, z)
    half = 0.5 * z
    term = exp(alpha * log(half) - _ln_gamma_c(alpha + 1.0))
    ratio = half * half
    total = term
    for n in range(1, 1600):
        term *= ratio / (n * (n + alpha))
        total += term
        if term <= 1e-17 * total:
            break
    return total


def bessel_i_normalized(double alpha, double z):
    """Gamma(alpha+1) (z/2)^{-alpha} I_alpha(z); even in z, >= 1."""
    cdef double term, total, ratio
    cdef int n
    if not alpha > -1.0 or isnan(alpha):
        raise ValueError(f"bessel_i_normalized requires alpha > -1, got {alpha!r}")
    z = fabs(z)
    if z <= 1e-2:
        term = 1.0
        total = 1.0
        ratio = 0.25 * z * z
        for n in range(1, 400):
            term *= ratio / (n * (n + alpha))
            total += term
            if term <= 1e-17 * total:
                break
        return total
    return bessel_i(alpha, z) * exp(_ln_gamma_c(alpha + 1.0) - alpha * log(0.5 * z))


def hyp1f2_series(double a, double b, double c, double x):
    """(value, abs_error_bound, terms) for the direct 1F2 sum."""
    cdef double term = 1.0, total = 1.0, comp = 0.0, max_term = 1.0
    cdef double at, y, t, err
    cdef int n = 0
    for n in range(1, 1600):
        term *= (a + n - 1.0) * x / ((b + n - 1.0) * (c + n - 1.0) * n)
        at = fabs(term)
        if at > max_term:
            max_term = at
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if at <= 1e-18 * (fabs(total) + max_term * 1e-16):
            break
    err = 4.0e-15 * max_term * (1.0 + n / 16.0)
    return total, err, n


def normal_inv_cdf(double u):
    """Inverse standard normal CDF (Newton refinement on erfc)."""
    cdef double v, x, p, t, diff, pdf
    cdef int i
    if not 0.0 < u < 1.0:
        raise ValueError(f"normal_inv_cdf requires 0 < u < 1, got {u!r}")
    v = u - 0.5
    if fabs(v) <= 0.425:
        x = _SQRT_2PI * v * (1.0 + M_PI * v * v / 6.0)
    else:
        p = u if u < 0.5 else 1.0 - u
        t = sqrt(-2.0 * log(p))
        x = t - (log(t * t) + log(2.0 * M_PI)) / (2.0 * t)
        if v < 0.0:
            x = -x
    for i in range(4):
        if x < 0.0:
            diff = 0.5 * erfc(-x / sqrt(2.0)) - u
        else:
            diff = (1.0 - u) - 0.5 * erfc(x / sqrt(2.0))
        pdf = exp(-0.5 * x * x) / _SQRT_2PI
        if pdf <= 0.0:
            break
        x -= diff / pdf
    return x
