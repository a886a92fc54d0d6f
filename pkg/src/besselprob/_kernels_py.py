"""Pure-Python scalar kernels: log-gamma, digamma, Bessel J/I, 1F2 series.

This module is the fallback backend for the compiled extension
(`_kernels_cy`).  Both expose the same function signatures; see
`besselprob.backend` for the selection logic.  Everything here is scalar,
pure and reentrant.
"""

from __future__ import annotations

import math

__all__ = [
    "ln_gamma",
    "bessel_j_normalized",
    "bessel_i_normalized",
    "digamma",
    "bessel_j",
    "bessel_j_series",
    "bessel_j_asymptotic",
    "bessel_j_prime",
    "bessel_i",
    "hyp1f2_series",
    "normal_inv_cdf",
    "j_crossover",
    "BACKEND_NAME",
]

BACKEND_NAME = "python"

_LN_SQRT_2PI = 0.9189385332046727417803297  # log sqrt(2*pi)
_SQRT_2PI = 2.5066282746310005024157653

# Lanczos coefficients, g = 7, 9 terms (double precision grade).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def ln_gamma(x: float) -> float:
    """log Gamma(x) for x > 0, relative error ~1e-15."""
    if not x > 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x!r}")
    if x < 0.5:
        # reflection keeps the Lanczos argument away from the poles
        return math.log(math.pi / math.sin(math.pi * x)) - ln_gamma(1.0 - x)
    acc = _LANCZOS_C[0]
    for k in range(1, 9):
        acc += _LANCZOS_C[k] / (x - 1.0 + k)
    t = x + _LANCZOS_G - 0.5
    return _LN_SQRT_2PI + (x - 0.5) * math.log(t) - t + math.log(acc)


# Asymptotic digamma below this threshold loses the ~1e-15 target.
_DIGAMMA_LIFT = 10.0


def digamma(x: float) -> float:
    """psi(x) for x > 0: recurrence lift to x >= 10, then asymptotic series."""
    if not x > 0.0:
        raise ValueError(f"digamma requires x > 0, got {x!r}")
    acc = 0.0
    while x < _DIGAMMA_LIFT:
        acc -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    # B_{2k}/(2k) x^{-2k} terms through k = 7
    tail = inv2 * (1.0 / 12.0
                   - inv2 * (1.0 / 120.0
                             - inv2 * (1.0 / 252.0
                                       - inv2 * (1.0 / 240.0
                                                 - inv2 * (1.0 / 132.0
                                                           - inv2 * (691.0 / 32760.0
                                                                     - inv2 * (1.0 / 12.0)))))))
    return acc + math.log(x) - 0.5 * inv - tail


def j_crossover(alpha: float) -> float:
    """Smallest argument where the large-argument expansion is reliable
    (~1e-12); calibrated empirically, growing like alpha^2/4 for large
    orders.  Below it the power series is used, with a high-precision
    fallback for the large-order window where its cancellation exceeds
    ~1e-11."""
    return max(14.0, 0.25 * alpha * alpha + 2.0)


_MAX_SERIES_TERMS = 400


def _half_integer_k(alpha: float, z: float) -> int:
    """Return k for alpha = k + 1/2 with k in [-1, 6], else -2.

    The trigonometric closed forms use k forward recurrence steps, which
    amplify rounding by ~(2k-1)!! (2/z)^k; only safe once z outgrows k.
    """
    k = math.floor(alpha)
    if alpha - k == 0.5 and -1 <= k <= 6 and (k < 1 or z >= 2.0 * k + 2.0):
        return int(k)
    return -2


def _bessel_j_half(k: int, z: float) -> float:
    # closed trigonometric forms; forward recurrence is safe for k <= 6
    c = math.sqrt(2.0 / (math.pi * z))
    if k == -1:
        return c * math.cos(z)
    jm = c * math.cos(z)          # J_{-1/2}
    jc = c * math.sin(z)          # J_{+1/2}
    nu = 0.5
    for _ in range(k):
        jm, jc = jc, (2.0 * nu / z) * jc - jm
        nu += 1.0
    return jc


def _bessel_i_half(k: int, z: float) -> float:
    c = math.sqrt(2.0 / (math.pi * z))
    if k == -1:
        return c * math.cosh(z)
    im = c * math.cosh(z)         # I_{-1/2}
    ic = c * math.sinh(z)         # I_{+1/2}
    nu = 0.5
    for _ in range(k):
        im, ic = ic, im - (2.0 * nu / z) * ic
        nu += 1.0
    return ic


def _bessel_j_series_bound(alpha: float, z: float) -> tuple[float, float]:
    """Kahan-compensated power series with a cancellation bound
    (~eps * max term); the bound explodes once e^z outruns the order
    suppression."""
    half = 0.5 * z
    term = math.exp(alpha * math.log(half) - ln_gamma(alpha + 1.0))
    ratio = -half * half
    total = term
    comp = 0.0
    max_term = abs(term)
    for n in range(1, _MAX_SERIES_TERMS):
        term *= ratio / (n * (n + alpha))
        at = abs(term)
        if at > max_term:
            max_term = at
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if at <= 1e-17 * (abs(total) + 1e-300):
            break
    return total, 4e-16 * max_term


def bessel_j_series(alpha: float, z: float) -> float:
    """Power series sum_{n} (-1)^n (z/2)^{2n+alpha} / (n! Gamma(n+alpha+1))."""
    if z == 0.0:
        if alpha == 0.0:
            return 1.0
        if alpha > 0.0:
            return 0.0
        raise ZeroDivisionError("J_alpha(0) is singular for alpha < 0")
    return _bessel_j_series_bound(alpha, z)[0]


def _hankel_pq(alpha: float, z: float) -> tuple[float, float]:
    """P and Q sums of the large-argument expansion, truncated at the
    smallest term."""
    mu = 4.0 * alpha * alpha
    p = 1.0
    q = 0.0
    term = 1.0
    eight_z = 8.0 * z
    prev = math.inf
    for k in range(1, 40):
        term *= (mu - (2.0 * k - 1.0) ** 2) / (k * eight_z)
        at = abs(term)
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


def bessel_j_asymptotic(alpha: float, z: float) -> float:
    """Large-argument form sqrt(2/(pi z)) (P cos w - Q sin w)."""
    p, q = _hankel_pq(alpha, z)
    w = z - alpha * math.pi / 2.0 - math.pi / 4.0
    return math.sqrt(2.0 / (math.pi * z)) * (p * math.cos(w) - q * math.sin(w))


def bessel_j(alpha: float, z: float) -> float:
    """J_alpha(z) for alpha > -1, z >= 0."""
    if not alpha > -1.0 or math.isnan(alpha):
        raise ValueError(f"bessel_j requires alpha > -1, got {alpha!r}")
    if z < 0.0:
        raise ValueError(f"bessel_j requires z >= 0, got {z!r}")
    if z == 0.0:
        if alpha < 0.0:
            raise ZeroDivisionError("J_alpha(0) is singular for alpha < 0")
        return 1.0 if alpha == 0.0 else 0.0
    k = _half_integer_k(alpha, z)
    if k != -2:
        return _bessel_j_half(k, z)
    if z >= j_crossover(alpha):
        return bessel_j_asymptotic(alpha, z)
    val, bound = _bessel_j_series_bound(alpha, z)
    if bound <= 2e-11:
        return val
    from . import _highprec

    return _highprec.bessel_j_mp(alpha, z)


def bessel_j_prime(alpha: float, z: float) -> float:
    """J_alpha'(z) via (J_{alpha-1} - J_{alpha+1}) / 2 (z > 0).

    For alpha <= 0 the order alpha-1 leaves the supported range, so the
    equivalent recurrence form (alpha/z) J_alpha - J_{alpha+1} is used.
    """
    if alpha > 0.0:
        return 0.5 * (bessel_j(alpha - 1.0, z) - bessel_j(alpha + 1.0, z))
    return (alpha / z) * bessel_j(alpha, z) - bessel_j(alpha + 1.0, z)


def bessel_j_normalized(alpha: float, z: float) -> float:
    """Gamma(alpha+1) (z/2)^{-alpha} J_alpha(z): the removable-singularity
    form, equal to 1 at z = 0.  Stable for all z >= 0 and alpha > -1."""
    if not alpha > -1.0 or math.isnan(alpha):
        raise ValueError(f"bessel_j_normalized requires alpha > -1, got {alpha!r}")
    if z < 0.0:
        raise ValueError(f"requires z >= 0, got {z!r}")
    if z <= 1e-2 or (z <= 14.0 and _half_integer_k(alpha, z) == -2):
        # series with the (z/2)^alpha / Gamma(alpha+1) prefactor removed
        term = 1.0
        total = 1.0
        ratio = -0.25 * z * z
        for n in range(1, _MAX_SERIES_TERMS):
            term *= ratio / (n * (n + alpha))
            total += term
            if abs(term) <= 1e-17 * (abs(total) + 1e-300):
                break
        return total
    return bessel_j(alpha, z) * math.exp(ln_gamma(alpha + 1.0) - alpha * math.log(0.5 * z))


_I_OVERFLOW_Z = 690.0


def bessel_i_normalized(alpha: float, z: float) -> float:
    """Gamma(alpha+1) (z/2)^{-alpha} I_alpha(z); equal to 1 at z = 0 and
    >= 1 for all real z (even in z)."""
    if not alpha > -1.0 or math.isnan(alpha):
        raise ValueError(f"bessel_i_normalized requires alpha > -1, got {alpha!r}")
    z = abs(z)
    if z <= 1e-2:
        term = 1.0
        total = 1.0
        ratio = 0.25 * z * z
        for n in range(1, _MAX_SERIES_TERMS):
            term *= ratio / (n * (n + alpha))
            total += term
            if term <= 1e-17 * total:
                break
        return total
    return bessel_i(alpha, z) * math.exp(ln_gamma(alpha + 1.0) - alpha * math.log(0.5 * z))


def bessel_i(alpha: float, z: float) -> float:
    """I_alpha(z) for alpha > -1, z >= 0.  All series terms are positive so
    there is no cancellation; raises OverflowError past z ~ 690 with the
    log-scale value in the message."""
    if not alpha > -1.0 or math.isnan(alpha):
        raise ValueError(f"bessel_i requires alpha > -1, got {alpha!r}")
    if z < 0.0:
        raise ValueError(f"bessel_i requires z >= 0, got {z!r}")
    if z == 0.0:
        if alpha < 0.0:
            raise ZeroDivisionError("I_alpha(0) is singular for alpha < 0")
        return 1.0 if alpha == 0.0 else 0.0
    if z > _I_OVERFLOW_Z:
        log_val = z - 0.5 * math.log(2.0 * math.pi * z)
        raise OverflowError(f"I_alpha overflow: log I_{alpha}({z}) ~ {log_val:.6g}")
    k = _half_integer_k(alpha, z)
    if k != -2:
        return _bessel_i_half(k, z)
    half = 0.5 * z
    term = math.exp(alpha * math.log(half) - ln_gamma(alpha + 1.0))
    ratio = half * half
    total = term
    for n in range(1, 4 * _MAX_SERIES_TERMS):
        term *= ratio / (n * (n + alpha))
        total += term
        if term <= 1e-17 * total:
            break
    return total


def hyp1f2_series(a: float, b: float, c: float, x: float) -> tuple[float, float, int]:
    """Double-precision 1F2(a; b, c; x) by direct summation.

    Returns (value, abs_error_bound, terms).  The bound tracks the largest
    intermediate term: for x < 0 the sum cancels down from that magnitude
    and the result is unreliable once the bound swamps the value.
    """
    term = 1.0
    total = 1.0
    comp = 0.0
    max_term = 1.0
    n = 0
    for n in range(1, 4 * _MAX_SERIES_TERMS):
        term *= (a + n - 1.0) * x / ((b + n - 1.0) * (c + n - 1.0) * n)
        at = abs(term)
        if at > max_term:
            max_term = at
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if at <= 1e-18 * (abs(total) + max_term * 1e-16):
            break
    err = 4.0e-15 * max_term * (1.0 + n / 16.0)
    return total, err, n


def normal_inv_cdf(u: float) -> float:
    """Inverse standard normal CDF by Newton refinement on erfc.

    Accurate to ~1e-15 over (0, 1); deterministic (no rejection loops).
    """
    if not 0.0 < u < 1.0:
        raise ValueError(f"normal_inv_cdf requires 0 < u < 1, got {u!r}")
    v = u - 0.5
    if abs(v) <= 0.425:
        x = _SQRT_2PI * v * (1.0 + math.pi * v * v / 6.0)
    else:
        p = min(u, 1.0 - u)
        t = math.sqrt(-2.0 * math.log(p))
        x = t - (math.log(t * t) + math.log(2.0 * math.pi)) / (2.0 * t)
        if v < 0.0:
            x = -x
    for _ in range(4):
        # Phi(x) - u, written tail-first so tiny u keeps relative accuracy
        if x < 0.0:
            diff = 0.5 * math.erfc(-x / math.sqrt(2.0)) - u
        else:
            diff = (1.0 - u) - 0.5 * math.erfc(x / math.sqrt(2.0))
        pdf = math.exp(-0.5 * x * x) / _SQRT_2PI
        if pdf <= 0.0:
            break
        x -= diff / pdf
    return x
