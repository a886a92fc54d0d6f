"""Kernel backend selection: compiled extension when available, pure Python
otherwise.

Set BESSELPROB_PURE_PYTHON=1 to force the fallback (used by the benchmark
and by tests that compare the two implementations).
"""

from __future__ import annotations

import os

if os.environ.get("BESSELPROB_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

BACKEND_NAME: str = kernels.BACKEND_NAME

ln_gamma = kernels.ln_gamma
digamma = kernels.digamma
bessel_j = kernels.bessel_j
bessel_j_series = kernels.bessel_j_series
bessel_j_asymptotic = kernels.bessel_j_asymptotic
bessel_j_prime = kernels.bessel_j_prime
bessel_j_normalized = kernels.bessel_j_normalized
bessel_i = kernels.bessel_i
bessel_i_normalized = kernels.bessel_i_normalized
hyp1f2_series = kernels.hyp1f2_series
normal_inv_cdf = kernels.normal_inv_cdf
j_crossover = kernels.j_crossover
