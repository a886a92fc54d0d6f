"""Quadrature engines: adaptive Gauss-Legendre panels, tanh-sinh for
endpoint singularities, and the oscillatory infinite integrals (moment of
cos, squared-Bessel Mellin integral) evaluated by zero-partitioned panels
with epsilon-algorithm acceleration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from . import backend
from .errors import DivergenceError
from .policy import DEFAULT_POLICY, PrecisionPolicy
from .specfun import ZeroTable, bessel_zeros, ln_gamma

__all__ = [
    "QuadratureResult",
    "OscillatoryPlan",
    "gauss_legendre",
    "tanh_sinh",
    "wynn_epsilon",
    "fresnel_cos_moment",
    "ws_integral",
    "ws_rhs",
]


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool

    def __post_init__(self):
        if self.abs_error_estimate < 0.0:
            raise ValueError("error estimate must be >= 0")


@dataclass(frozen=True)
class OscillatoryPlan:
    """Partition and acceleration settings for an oscillatory tail."""

    alpha: float
    s: float
    breakpoints: tuple
    acceleration_depth: int = 12

    def __post_init__(self):
        if self.acceleration_depth < 4:
            raise ValueError("acceleration_depth must be >= 4")
        bp = tuple(float(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bp)
        for a, b in zip(bp, bp[1:]):
            if not b > a:
                raise ValueError("breakpoints must be strictly increasing")


@lru_cache(maxsize=8)
def _gl_nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return tuple(x.tolist()), tuple(w.tolist())


def _gl_panel(f, lo: float, hi: float, n: int) -> float:
    xs, ws = _gl_nodes(n)
    m = 0.5 * (lo + hi)
    r = 0.5 * (hi - lo)
    return r * math.fsum(w * f(m + r * x) for x, w in zip(xs, ws))


_MAX_GL_PANELS = 2048


def gauss_legendre(f: Callable[[float], float], lo: float, hi: float,
                   tol: float = 1e-10) -> QuadratureResult:
    """Adaptive panel integration, 32-point base rule, panels split until
    the local 16- vs 32-point discrepancy sums below `tol`."""
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    width = hi - lo
    stack = [(lo, hi)]
    total = 0.0
    err = 0.0
    evals = 0
    panels = 0
    while stack:
        a, b = stack.pop()
        coarse = _gl_panel(f, a, b, 16)
        fine = _gl_panel(f, a, b, 32)
        evals += 48
        panels += 1
        local = abs(fine - coarse)
        if local <= max(tol * (b - a) / width, 1e-16 * abs(fine)) or panels >= _MAX_GL_PANELS:
            total += fine
            err += local
        else:
            mid = 0.5 * (a + b)
            stack.append((a, mid))
            stack.append((mid, b))
    return QuadratureResult(value=total, abs_error_estimate=err,
                            evaluations=evals, converged=err <= tol)


_TS_TMAX = 5.5
_TS_MAX_LEVEL = 11


def tanh_sinh(f, lo: float, hi: float, tol: float = 1e-12,
              edges: bool = False) -> QuadratureResult:
    """Double-exponential quadrature on [lo, hi].

    With edges=True the integrand is called f(x, dlo, dhi) where dlo/dhi
    are the exact distances to the endpoints; algebraically singular
    weights should use those instead of recomputing x - lo (which rounds
    to zero near the boundary).
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    m = 0.5 * (lo + hi)
    r = 0.5 * (hi - lo)

    def node_value(t: float) -> float:
        w = 0.5 * math.pi * math.sinh(t)
        ch = math.cosh(w)
        if not math.isfinite(ch):
            return 0.0
        e2 = math.exp(-2.0 * w)
        omu = 2.0 * e2 / (1.0 + e2)           # 1 - u
        opu = 2.0 / (1.0 + e2)                # 1 + u
        dudt = 0.5 * math.pi * math.cosh(t) / (ch * ch)
        if dudt < 1e-320:
            return 0.0
        u = math.tanh(w)
        if edges:
            vp = f(m + r * u, r * opu, r * omu)
            vm = f(m - r * u, r * omu, r * opu) if t != 0.0 else 0.0
        else:
            vp = f(m + r * u)
            vm = f(m - r * u) if t != 0.0 else 0.0
        return dudt * (vp + vm)

    evals = 0
    levels = []
    trapz = 0.0  # h-scaled trapezoid value: T_k = T_{k-1}/2 + h_k * (new nodes)
    tail_mag = 0.0
    for k in range(_TS_MAX_LEVEL + 1):
        h = 1.0 / (1 << k)
        jmax = int(_TS_TMAX / h)
        js = range(0, jmax + 1) if k == 0 else range(1, jmax + 1, 2)
        s_new = 0.0
        last_contrib = 0.0
        for j in js:
            v = node_value(j * h)
            evals += 1 if j == 0 else 2
            if not math.isfinite(v):
                raise DivergenceError(f"non-finite integrand contribution at level {k}")
            s_new += v
            last_contrib = abs(v)
        trapz = h * s_new if k == 0 else 0.5 * trapz + h * s_new
        levels.append(trapz * r)
        tail_mag = last_contrib * h * r
        # a divergent endpoint makes the boundary node dominate the sum
        if k >= 1 and tail_mag > 0.05 * abs(levels[-1]) and tail_mag > tol:
            raise DivergenceError(
                "tanh-sinh boundary contribution grows without bound "
                f"(level {k}, tail {tail_mag:.3g} vs sum {levels[-1]:.3g})")
        if k >= 2:
            diff = abs(levels[-1] - levels[-2])
            est = diff + 4.0 * tail_mag
            if est <= tol:
                return QuadratureResult(value=levels[-1], abs_error_estimate=est,
                                        evaluations=evals, converged=True)
    diff = abs(levels[-1] - levels[-2]) + 4.0 * tail_mag
    return QuadratureResult(value=levels[-1], abs_error_estimate=diff,
                            evaluations=evals, converged=diff <= tol)


def wynn_epsilon(seq: Sequence[float]):
    """Wynn epsilon acceleration of a sequence of partial sums.

    Returns (limit_estimate, stability_estimate); zero differences are
    treated as exact convergence.
    """
    s = [float(v) for v in seq]
    n = len(s)
    if n < 3:
        return s[-1], abs(s[-1] - s[0]) if n > 1 else 0.0
    scale = max(abs(v) for v in s) + 1e-300
    e0 = [0.0] * (n + 1)
    e1 = list(s)
    best_prev = s[-1]
    best = s[-1]
    for k in range(1, n):
        e2 = []
        done = None
        for j in range(len(e1) - 1):
            d = e1[j + 1] - e1[j]
            if abs(d) < 1e-16 * scale:
                done = e1[j + 1]
                break
            e2.append(e0[j + 1] + 1.0 / d)
        if done is not None:
            if k % 2 == 1:
                return done, abs(done - best) + 1e-16 * scale
            break
        e0, e1 = e1, e2
        if k % 2 == 0 and e1:
            best_prev = best
            best = e1[-1]
    return best, abs(best - best_prev) + 1e-16 * scale


def fresnel_cos_moment(mu: float, tol: float = 1e-10,
                       npanels: int = 48, depth: int = 12) -> QuadratureResult:
    """integral_0^inf z^{mu-1} cos z dz for 0 < mu < 1.

    Head on [0, pi/2] by tanh-sinh (algebraic singularity at 0), then
    panels between consecutive cosine zeros accelerated by Wynn epsilon.
    Target identity value: Gamma(mu) cos(pi mu / 2).
    """
    if not 0.0 < mu < 1.0:
        raise ValueError(f"need 0 < mu < 1, got {mu!r}")
    head = tanh_sinh(lambda x, dlo, dhi: dlo ** (mu - 1.0) * math.cos(dlo),
                     0.0, 0.5 * math.pi, tol=min(tol, 1e-12), edges=True)
    g = lambda z: z ** (mu - 1.0) * math.cos(z)
    total = 0.0
    psums = []
    evals = head.evaluations
    for k in range(npanels):
        a = 0.5 * math.pi + k * math.pi
        total += _gl_panel(g, a, a + math.pi, 32)
        evals += 32
        psums.append(total)
    window = min(len(psums), 2 * depth)
    accel, est = wynn_epsilon(psums[-window:])
    est = est + head.abs_error_estimate
    return QuadratureResult(value=head.value + accel, abs_error_estimate=est,
                            evaluations=evals, converged=est <= tol)


def ws_rhs(alpha: float, s: float) -> float:
    """Closed Gamma form Gamma(s)Gamma(a+1/2-s) /
    (2 sqrt(pi) Gamma(1/2+s) Gamma(a+1/2+s))."""
    if not (alpha > -0.5 and 0.0 < s < alpha + 0.5):
        raise ValueError(f"need 0 < s < alpha + 1/2, got alpha={alpha}, s={s}")
    return math.exp(
        ln_gamma(s) + ln_gamma(alpha + 0.5 - s)
        - ln_gamma(0.5 + s) - ln_gamma(alpha + 0.5 + s)
    ) / (2.0 * math.sqrt(math.pi))


def ws_integral(alpha: float, s: float, tol: float = 1e-9,
                policy: PrecisionPolicy = DEFAULT_POLICY,
                zeros: Optional[ZeroTable] = None,
                npanels: int = 48,
                acceleration_depth: int = 12,
                breakpoints: Optional[Sequence[float]] = None) -> QuadratureResult:
    """integral_0^inf z^{-2s} J_alpha(z)^2 dz for 0 < s < alpha + 1/2.

    Head [0, j_1] by tanh-sinh; the smooth envelope mean
    (1/(pi z))(1 + (mu-1)/(8 z^2)) integrates in closed form over
    [j_1, inf); the oscillatory remainder is integrated panel-by-panel
    between consecutive zeros (split at midpoints) and its partial sums
    are Wynn-accelerated.
    """
    if not alpha > -0.5:
        raise ValueError(f"need alpha > -1/2, got {alpha!r}")
    if not 0.0 < s < alpha + 0.5:
        raise ValueError(f"s={s} outside the strip (0, {alpha + 0.5})")
    if zeros is None:
        zeros = bessel_zeros(alpha, npanels + 1, policy)
    elif len(zeros) < npanels + 1:
        raise ValueError("zero table too short for the requested panel count")
    mu = 4.0 * alpha * alpha
    j1 = zeros[0]

    # z^{-2s} J^2 = exp((2a-2s) ln z) * Jnorm(z)^2 * 4^{-a} / Gamma(a+1)^2
    c_head = math.exp(-2.0 * ln_gamma(alpha + 1.0) - alpha * math.log(4.0))
    head = tanh_sinh(
        lambda x, dlo, dhi: c_head * math.exp((2.0 * alpha - 2.0 * s) * math.log(dlo))
        * backend.bessel_j_normalized(alpha, dlo) ** 2,
        0.0, j1, tol=min(tol * 0.1, 1e-12), edges=True)

    smooth = j1 ** (-2.0 * s) / (2.0 * math.pi * s) \
        + (mu - 1.0) / (8.0 * math.pi) * j1 ** (-2.0 * s - 2.0) / (2.0 * s + 2.0)

    def remainder(z: float) -> float:
        jj = backend.bessel_j(alpha, z)
        return z ** (-2.0 * s) * (jj * jj - (1.0 + (mu - 1.0) / (8.0 * z * z)) / (math.pi * z))

    if breakpoints is None:
        bps = []
        for i in range(npanels):
            a, b = zeros[i], zeros[i + 1]
            bps.extend((a, 0.5 * (a + b)))
        bps.append(zeros[npanels])
    else:
        bps = [float(b) for b in breakpoints]
    plan = OscillatoryPlan(alpha=alpha, s=s, breakpoints=tuple(bps),
                           acceleration_depth=acceleration_depth)

    total = 0.0
    psums = []
    evals = head.evaluations
    for a, b in zip(plan.breakpoints, plan.breakpoints[1:]):
        total += _gl_panel(remainder, a, b, 32)
        evals += 32
        psums.append(total)
    window = min(len(psums), 2 * plan.acceleration_depth)
    accel, est = wynn_epsilon(psums[-window:])
    est = est + head.abs_error_estimate + 1e-15 * abs(smooth)
    value = head.value + smooth + accel
    return QuadratureResult(value=value, abs_error_estimate=est,
                            evaluations=evals, converged=est <= tol)
