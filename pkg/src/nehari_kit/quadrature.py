"""Order-adaptive Gauss-Legendre quadrature along straight segments [0, z]."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ConvergenceError

ORDERS = (8, 16, 32, 64, 128, 256)


@lru_cache(maxsize=None)
def _nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) / 2, w / 2


def segment_integral(g, z, rtol: float = 1e-10):
    """Integrate analytic ``g`` from 0 to each ``z`` along the straight segment.

    ``g`` must accept a complex array. The order doubles until two successive
    Gauss-Legendre estimates agree to ``rtol`` at every point; points that
    converge early are frozen.
    """
    scalar = np.ndim(z) == 0
    zz = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    result = np.zeros_like(zz)
    prev = None
    active = np.ones(zz.shape, dtype=bool)
    for n in ORDERS:
        t, w = _nodes(n)
        za = zz[active]
        est = za * (g(za[:, None] * t[None, :]) @ w)
        if prev is not None:
            err = np.abs(est - prev)
            done = err <= rtol * np.abs(est)
            idx = np.flatnonzero(active)
            result[idx[done]] = est[done]
            active[idx[done]] = False
            prev = est[~done]
        else:
            prev = est
        if not active.any():
            break
    else:
        raise ConvergenceError("Gauss-Legendre order budget exhausted", float(np.max(err / np.abs(est))))
    result = result.reshape(np.shape(np.asarray(z)))
    return complex(result.reshape(())) if scalar else result
