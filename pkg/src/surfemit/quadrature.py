"""Adaptive Gauss-Legendre quadrature tuned for the rate integrals.

A fixed 15/31-point Gauss-Legendre pair is evaluated on every panel;
the high-order value is kept and the difference serves as the panel
error estimate.  Panels are refined worst-first until the summed
estimate meets the requested tolerance.  Integrands must be vectorized
(ndarray in, ndarray out).

Two branch drivers wrap the generic integrator.  Both substitute the
integration variable so that the square-root behavior at the upper
endpoint (where the dielectric-side or vacuum-side propagation constant
vanishes) becomes smooth, and the radiation driver seeds enough initial
panels to resolve the interference oscillations at large emitter
heights.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .optics import InterfaceConfig

_LO_NODES, _LO_WEIGHTS = np.polynomial.legendre.leggauss(15)
_HI_NODES, _HI_WEIGHTS = np.polynomial.legendre.leggauss(31)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and subdivision budget for the adaptive integrator."""

    rtol: float = 1e-10
    atol: float = 1e-14
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.rtol > 0.0 and self.atol > 0.0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions must be at least 10")


class QuadratureError(RuntimeError):
    """Tolerance not reached within the subdivision budget.

    Carries the best available value in `estimate` and the error bound
    actually achieved in `error`.
    """

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


def _panel(f, a: float, b: float):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    hi = half * float(np.dot(_HI_WEIGHTS, f(mid + half * _HI_NODES)))
    lo = half * float(np.dot(_LO_WEIGHTS, f(mid + half * _LO_NODES)))
    return hi, abs(hi - lo)


def integrate(f, breakpoints, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Adaptive integral of f over [breakpoints[0], breakpoints[-1]].

    Parameters
    ----------
    f : callable
        Vectorized integrand, ndarray -> ndarray.
    breakpoints : array_like
        Strictly increasing panel edges seeding the subdivision.
    spec : QuadratureSpec

    Raises
    ------
    QuadratureError
        When the summed panel error cannot be brought below
        max(atol, rtol * |integral|) within the subdivision budget.
    """
    pts = np.asarray(breakpoints, dtype=float)
    if pts.ndim != 1 or pts.size < 2 or np.any(np.diff(pts) <= 0.0):
        raise ValueError("breakpoints must be strictly increasing")
    heap = []
    seq = 0
    toterr = 0.0
    total = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        val, err = _panel(f, a, b)
        heapq.heappush(heap, (-err, seq, a, b, val))
        seq += 1
        total += val
        toterr += err
    splits = 0
    while toterr > max(spec.atol, spec.rtol * abs(total)):
        if splits >= spec.max_subdivisions:
            raise QuadratureError(
                f"integral stalled at error {toterr:.3e} after {splits} "
                f"panel subdivisions", total, toterr)
        neg_err, _, a, b, val = heapq.heappop(heap)
        total -= val
        toterr += neg_err
        mid = 0.5 * (a + b)
        for lo, hi in ((a, mid), (mid, b)):
            v, e = _panel(f, lo, hi)
            heapq.heappush(heap, (-e, seq, lo, hi, v))
            seq += 1
            total += v
            toterr += e
        splits += 1
    # re-sum panel values to shed the rounding noise of the running total
    return float(np.sum(np.asarray(sorted(item[4] for item in heap))))


def integrate_evanescent(cfg: InterfaceConfig, g, x_nm: float,
                         spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Integral of g(xi) over the evanescent branch [0, sqrt(n1^2 - 1)].

    Substitutes xi = xi_max sin(t) so kernels containing
    sqrt(n1^2 - 1 - xi^2) stay smooth at the upper endpoint.  Extra
    panel edges resolve the e^{-2 xi k0 x} boundary layer at large x.
    """
    xi_max = cfg.xi_max

    def h(t):
        return g(xi_max * np.sin(t)) * (xi_max * np.cos(t))

    edges = [0.0, np.pi / 2.0]
    decay = 2.0 * cfg.k0_nm * x_nm * xi_max
    if decay > 10.0:
        edges.extend(float(np.arcsin(c / decay))
                     for c in (1.0, 8.0, 64.0) if c / decay < 1.0)
    return integrate(h, np.unique(edges), spec)


def integrate_radiation(cfg: InterfaceConfig, g, x_nm: float,
                        spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Integral of g(xi) over the radiation branch [0, 1].

    Substitutes xi = sin(t), making sqrt(1 - xi^2) smooth, and seeds
    ceil(2 k0 x / pi) + 1 uniform panels so each initial panel covers
    about half a period of cos/sin(2 xi k0 x).
    """

    def h(t):
        return g(np.sin(t)) * np.cos(t)

    n_panels = int(np.ceil(2.0 * cfg.k0_nm * x_nm / np.pi)) + 1
    return integrate(h, np.linspace(0.0, np.pi / 2.0, n_panels + 1), spec)
