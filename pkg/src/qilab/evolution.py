"""Free evolution of the modes after the potential is switched off at t = 0.

For t >= 0 each mode propagates as a d'Alembert superposition built from the
static mode chi and its antiderivative,

    f(x, t) = [chi(x-t) + chi(x+t) - i*omega*int_{x-t}^{x+t} chi] / (2*sqrt(2*pi*omega)),

which matches the static data f = chi/sqrt(2*pi*omega), df/dt = -i*omega*f
at t = 0 and solves the free wave equation afterwards.  Outside the light
cone of the switch-off (|x| - t > a/2) this reduces identically to the
static oscillation e^(-i omega t) chi(x)/sqrt(2 pi omega).

Queries with t < 0 return the static form; this makes continuity checks at
t = 0 symmetric.  Derivatives across the characteristic kinks x +- t = +-a/2
use the interior one-sided convention of :func:`qilab.modes.chi_derivative`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modes import ModeId, PotentialConfig, chi, chi_antiderivative, chi_derivative


@dataclass(frozen=True)
class EvolvedModeValue:
    """Mode value and first derivatives at one spacetime point."""

    value: complex
    d_dt: complex
    d_dx: complex


def _norm(omega: float) -> float:
    return 1.0 / np.sqrt(2.0 * np.pi * omega)


def f_plus(mode: ModeId, cfg: PotentialConfig, x: float, t: float) -> EvolvedModeValue:
    """Evolved mode function and its t/x derivatives at (x, t)."""
    om = mode.omega
    n = _norm(om)
    if t < 0:
        ph = np.exp(-1j * om * t)
        val = ph * chi(mode, cfg, x) * n
        return EvolvedModeValue(val, -1j * om * val, ph * chi_derivative(mode, cfg, x) * n)
    cm, cp = chi(mode, cfg, x - t), chi(mode, cfg, x + t)
    dm, dp = chi_derivative(mode, cfg, x - t), chi_derivative(mode, cfg, x + t)
    window = chi_antiderivative(mode, cfg, x + t) - chi_antiderivative(mode, cfg, x - t)
    half_n = 0.5 * n
    value = half_n * (cm + cp - 1j * om * window)
    d_dt = half_n * ((-dm + dp) - 1j * om * (cp + cm))
    d_dx = half_n * ((dm + dp) - 1j * om * (cp - cm))
    return EvolvedModeValue(value, d_dt, d_dx)


def mode_energy_evolved(mode: ModeId, cfg: PotentialConfig, x, t: float):
    """Energy density carried by one mode at (x, t >= 0).

    Equals (1/(8 pi omega)) * [chi'(x-t)^2 + chi'(x+t)^2
    + omega^2 (chi(x+t)^2 + chi(x-t)^2)], i.e. the half-sum of the static
    per-mode density evaluated at x-t and x+t.  ``x`` may be an array.
    For t < 0 the static, time-independent density is returned.
    """
    om = mode.omega
    if t < 0:
        c, d = chi(mode, cfg, x), chi_derivative(mode, cfg, x)
        return (om * om * c * c + d * d) / (4.0 * np.pi * om)
    cm, cp = chi(mode, cfg, x - t), chi(mode, cfg, x + t)
    dm, dp = chi_derivative(mode, cfg, x - t), chi_derivative(mode, cfg, x + t)
    return (dm * dm + dp * dp + om * om * (cm * cm + cp * cp)) / (8.0 * np.pi * om)
