"""Stationary eigenmodes of a massless field on a double-delta potential.

The potential lam*[delta(x - a/2) + delta(x + a/2)] admits, for every
frequency omega > 0, one odd (sine-like, j=1) and one even (cosine-like,
j=2) scattering mode chi.  Inside |x| < a/2 the mode is A_j * sin/cos(omega x);
outside it is a unit-amplitude wave sin/cos(omega x + delta_j * sgn(x)).
Amplitude and phase follow from continuity of chi and the derivative jump
chi'(s+) - chi'(s-) = lam * chi(s) at each delta site, and are evaluated here
in closed form.

Everything is a pure closed-form evaluation; all entry points accept numpy
arrays for ``x`` or ``omega`` where noted and are trivially thread-safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PotentialConfig:
    """Double-delta potential: coupling ``lam`` >= 0, site separation ``a`` > 0."""

    lam: float
    a: float = 1.0

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("coupling lam must be non-negative")
        if self.a <= 0:
            raise ValueError("separation a must be positive")

    @property
    def Lambda(self) -> float:
        """Dimensionless strength lam*a/2."""
        return self.lam * self.a / 2.0


@dataclass(frozen=True)
class ModeId:
    """One scattering mode: family ``j`` in {1 (odd), 2 (even)}, frequency ``omega`` > 0."""

    j: int
    omega: float

    def __post_init__(self):
        if self.j not in (1, 2):
            raise ValueError("mode family j must be 1 or 2")
        if not self.omega > 0:
            raise ValueError("omega must be positive")

    def Omega(self, cfg: PotentialConfig) -> float:
        """Dimensionless frequency omega*a/2."""
        return self.omega * cfg.a / 2.0


@dataclass(frozen=True)
class ModeShape:
    """Interior amplitude and exterior phase of one mode."""

    j: int
    omega: float
    amplitude: float
    phase: float


def shape_arrays(Lambda, Omega):
    """Amplitudes-squared and phases for both families, vectorized over Omega.

    Returns ``(A1sq, A2sq, delta1, delta2)``.  The phases are fixed by
    ``atan2`` of the (numerator, denominator) pair of the tan(delta_j) closed
    forms, which is the branch that satisfies the matching conditions at the
    delta sites identically; the principal arctan branch does not once the
    denominator changes sign.  Both reduce to delta=0 as Lambda -> 0.
    """
    Om = np.asarray(Omega, dtype=float)
    s, c = np.sin(Om), np.cos(Om)
    r = Lambda / Om
    half_r_sin2 = 0.5 * r * np.sin(2 * Om)
    a1sq = 1.0 / (s * s + (r * s + c) ** 2)
    a2sq = 1.0 / (c * c + (r * c - s) ** 2)
    d1 = np.arctan2(-r * s * s, 1.0 + half_r_sin2)
    d2 = np.arctan2(-r * c * c, 1.0 - half_r_sin2)
    return a1sq, a2sq, d1, d2


def mode_shape(mode: ModeId, cfg: PotentialConfig) -> ModeShape:
    """Closed-form amplitude (positive root) and phase of one mode."""
    a1sq, a2sq, d1, d2 = shape_arrays(cfg.Lambda, mode.Omega(cfg))
    if mode.j == 1:
        return ModeShape(1, mode.omega, float(np.sqrt(a1sq)), float(d1))
    return ModeShape(2, mode.omega, float(np.sqrt(a2sq)), float(d2))


def _split(cfg: PotentialConfig, x):
    """Inside/outside masks; |x| == a/2 counts as inside (inside-limit convention)."""
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) <= cfg.a / 2.0
    return x, inside


def chi(mode: ModeId, cfg: PotentialConfig, x):
    """Mode function chi_j,omega(x).  ``x`` may be an array."""
    shape = mode_shape(mode, cfg)
    om = mode.omega
    x, inside = _split(cfg, x)
    sgn = np.where(x >= 0, 1.0, -1.0)
    if mode.j == 1:
        out = np.where(inside, shape.amplitude * np.sin(om * x),
                       np.sin(om * x + shape.phase * sgn))
    else:
        out = np.where(inside, shape.amplitude * np.cos(om * x),
                       np.cos(om * x + shape.phase * sgn))
    return out if out.ndim else float(out)


def chi_derivative(mode: ModeId, cfg: PotentialConfig, x, side: int | None = None):
    """Piecewise-analytic derivative of :func:`chi`.

    The derivative jumps at x = +-a/2.  At exactly those points the
    inside-region one-sided value is returned by default; pass ``side=+1``
    (limit from above) or ``side=-1`` (from below) to select explicitly.
    """
    shape = mode_shape(mode, cfg)
    om = mode.omega
    x = np.asarray(x, dtype=float)
    half = cfg.a / 2.0
    if side is not None and x.ndim == 0 and abs(float(x)) == half:
        # one-sided value at a kink: side>0 means limit from x+, side<0 from x-
        inside = (float(x) > 0) != (side > 0)
    else:
        inside = np.abs(x) <= half
    sgn = np.where(x >= 0, 1.0, -1.0)
    if mode.j == 1:
        out = np.where(inside, shape.amplitude * om * np.cos(om * x),
                       om * np.cos(om * x + shape.phase * sgn))
    else:
        out = np.where(inside, -shape.amplitude * om * np.sin(om * x),
                       -om * np.sin(om * x + shape.phase * sgn))
    return out if out.ndim else float(out)


def chi_antiderivative(mode: ModeId, cfg: PotentialConfig, x):
    """int_0^x chi(y) dy, closed form, continuous across the region boundaries.

    The odd family gives an even antiderivative and vice versa, so only the
    |x| branch is evaluated and the sign restored.  Constants are matched at
    |x| = a/2 to keep the result globally continuous.
    """
    shape = mode_shape(mode, cfg)
    om, d = mode.omega, shape.phase
    A = shape.amplitude
    x = np.asarray(x, dtype=float)
    half = cfg.a / 2.0
    Om = om * half
    ax = np.abs(x)
    inside = ax <= half
    if mode.j == 1:
        F_in = A * (1.0 - np.cos(om * ax)) / om
        F_bnd = A * (1.0 - np.cos(Om)) / om
        F_out = F_bnd + (np.cos(Om + d) - np.cos(om * ax + d)) / om
        out = np.where(inside, F_in, F_out)              # even in x
    else:
        F_in = A * np.sin(om * ax) / om
        F_bnd = A * np.sin(Om) / om
        F_out = F_bnd + (np.sin(om * ax + d) - np.sin(Om + d)) / om
        out = np.where(x >= 0, 1.0, -1.0) * np.where(inside, F_in, F_out)  # odd in x
    return out if out.ndim else float(out)
