"""Sampling (weighting) functions and the lower-bound functional.

A sampling function is non-negative, continuous and normalized to unit
integral.  Two concrete kinds are provided:

* :class:`Lorentzian` -- tau/(pi (v^2 + tau^2)) on the whole line;
* :class:`QuarticCompact` -- N t^2 (t - tau)^2 on [0, tau], N = 30/tau^5.

The lower-bound functional is

    xi_min[rho] = -(1/(24 pi)) * int rho'(v)^2 / rho(v) dv

with the integrand taken as zero wherever rho vanishes.  It is always
computed by generic quadrature of the defining integral, including cases a
human would simplify by hand; closed forms live in tests and in
:func:`xi_min_exact`, never inside the quadrature path.

To add a sampling kind, subclass :class:`SamplingFunction` and implement
``value``, ``derivative``, ``support`` and (optionally, for exact piecewise
averages) ``window_mass``.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .energy import PiecewiseProfile
from .quadrature import QuadratureSpec, integrate


class SamplingFunction:
    """Base class: normalized non-negative weight with closed-form derivative."""

    kind: str = "generic"

    def __init__(self, tau: float):
        if tau <= 0:
            raise ValueError("width tau must be positive")
        self.tau = float(tau)

    def value(self, v):
        raise NotImplementedError

    def derivative(self, v):
        raise NotImplementedError

    @property
    def support(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def window_mass(self, lo: float, hi: float) -> float:
        """int_lo^hi rho(v) dv; override with a closed form where available."""
        return integrate(self.value, lo, hi).require()

    def __repr__(self):
        return f"{type(self).__name__}(tau={self.tau!r})"


class Lorentzian(SamplingFunction):
    """rho(v) = tau / (pi (v^2 + tau^2)); full-line support."""

    kind = "lorentzian"

    def value(self, v):
        v = np.asarray(v, dtype=float)
        out = self.tau / (np.pi * (v * v + self.tau * self.tau))
        return out if out.ndim else float(out)

    def derivative(self, v):
        v = np.asarray(v, dtype=float)
        out = -2.0 * self.tau * v / (np.pi * (v * v + self.tau * self.tau) ** 2)
        return out if out.ndim else float(out)

    def _cdf(self, v: float) -> float:
        if v == math.inf:
            return 1.0
        if v == -math.inf:
            return 0.0
        return 0.5 + math.atan(v / self.tau) / math.pi

    def window_mass(self, lo: float, hi: float) -> float:
        return self._cdf(hi) - self._cdf(lo)


class QuarticCompact(SamplingFunction):
    """rho(t) = N t^2 (t - tau)^2 on [0, tau], zero elsewhere; N = 30/tau^5.

    rho and rho' both vanish at the support edges, so the weight is C^1
    across them and rho'^2/rho stays bounded (it tends to 4 N (2t - tau)^2).
    """

    kind = "quartic"

    def __init__(self, tau: float):
        super().__init__(tau)
        self.norm = 30.0 / self.tau**5

    def value(self, v):
        v = np.asarray(v, dtype=float)
        inside = (v >= 0.0) & (v <= self.tau)
        out = np.where(inside, self.norm * v * v * (v - self.tau) ** 2, 0.0)
        return out if out.ndim else float(out)

    def derivative(self, v):
        v = np.asarray(v, dtype=float)
        inside = (v >= 0.0) & (v <= self.tau)
        out = np.where(inside, 2.0 * self.norm * v * (v - self.tau) * (2.0 * v - self.tau), 0.0)
        return out if out.ndim else float(out)

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, self.tau)

    def _cdf(self, v: float) -> float:
        t = min(max(v, 0.0), self.tau)
        return self.norm * (t**5 / 5.0 - self.tau * t**4 / 2.0 + self.tau**2 * t**3 / 3.0)

    def window_mass(self, lo: float, hi: float) -> float:
        return self._cdf(hi) - self._cdf(lo)


def _check_edge_behaviour(rho: SamplingFunction):
    """Reject weights whose rho'^2/rho diverges toward a compact-support edge.

    Such a weight would make the bound integrand non-integrable and silently
    wrong under plain quadrature, so it is refused with a diagnostic instead.
    """
    lo, hi = rho.support
    if not (math.isfinite(lo) and math.isfinite(hi)):
        return
    width = hi - lo
    for edge, sign in ((lo, +1.0), (hi, -1.0)):
        probes = []
        for h in (1e-4, 1e-6, 1e-8):
            v = edge + sign * h * width
            r = float(rho.value(v))
            d = float(rho.derivative(v))
            probes.append(d * d / r if r > 0 else 0.0)
        if probes[0] > 0 and probes[2] > 10.0 * probes[1] > 100.0 * probes[0]:
            raise ValueError(
                f"{rho!r}: rho'^2/rho grows without bound near the support edge "
                f"{edge}; the lower-bound integral is not integrable")


def xi_min(rho: SamplingFunction, spec: QuadratureSpec | None = None) -> float:
    """Lower bound -(1/(24 pi)) int rho'^2/rho by generic quadrature.

    Raises ``ValueError`` for weights that go negative on a probe grid or
    whose integrand diverges at a compact-support edge;
    :class:`qilab.quadrature.NonConvergenceError` if the quadrature fails.
    """
    lo, hi = rho.support
    plo = lo if math.isfinite(lo) else -100.0 * rho.tau
    phi = hi if math.isfinite(hi) else 100.0 * rho.tau
    grid = np.linspace(plo, phi, 513)
    if np.any(np.asarray(rho.value(grid)) < 0):
        raise ValueError(f"{rho!r} takes negative values; not a sampling function")
    _check_edge_behaviour(rho)

    def integrand(v):
        r = rho.value(v)
        d = rho.derivative(v)
        r_arr = np.asarray(r, dtype=float)
        out = np.where(r_arr > 0.0, np.asarray(d) ** 2 / np.where(r_arr > 0.0, r_arr, 1.0), 0.0)
        return out if out.ndim else float(out)

    result = integrate(integrand, lo, hi, spec)
    return -result.require() / (24.0 * math.pi)


def xi_min_exact(rho: SamplingFunction) -> float:
    """Analytic value of the bound functional for the built-in kinds.

    Lorentzian: int rho'^2/rho = 1/(2 tau^2), giving -1/(48 pi tau^2).
    Quartic:    int 4N(2t-tau)^2 = 40/tau^2, giving -5/(3 pi tau^2).
    """
    if isinstance(rho, Lorentzian):
        return -1.0 / (48.0 * math.pi * rho.tau**2)
    if isinstance(rho, QuarticCompact):
        return -5.0 / (3.0 * math.pi * rho.tau**2)
    raise ValueError(f"no closed form registered for {rho!r}")


def weighted_average(profile: PiecewiseProfile | Callable[[float], float],
                     rho: SamplingFunction,
                     spec: QuadratureSpec | None = None) -> float:
    """Average of a density against ``rho``: int density(v) rho(v) dv.

    Piecewise-constant profiles integrate exactly through ``rho.window_mass``
    over every interval (interval intersection, no sampling); a bare callable
    falls back to adaptive quadrature over the support of ``rho``.
    """
    if isinstance(profile, PiecewiseProfile):
        terms = [v * rho.window_mass(lo, hi)
                 for lo, hi, v in profile.intervals() if v != 0.0]
        return math.fsum(terms)
    lo, hi = rho.support
    points = None
    result = integrate(lambda v: profile(v) * rho.value(v), lo, hi, spec, points)
    return result.require()
