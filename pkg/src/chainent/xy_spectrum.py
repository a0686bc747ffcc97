"""Quasiparticle dispersion, gap and critical classification of the XY chain."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .xy_core import XYParams

__all__ = [
    "CRITICAL_ISING",
    "CRITICAL_XX",
    "CRITICAL_CIRCLE",
    "NON_CRITICAL",
    "DispersionProfile",
    "Classification",
    "dispersion",
    "dispersion_profile",
    "classify",
]

CRITICAL_ISING = "critical-ising-class"
CRITICAL_XX = "critical-xx-class"
CRITICAL_CIRCLE = "critical-circle"
NON_CRITICAL = "non-critical"

_CIRCLE_TOL = 1e-12


def dispersion(params: XYParams, phi):
    """Single-particle energy ``sqrt((lam - cos phi)^2 + gamma^2 sin^2 phi)``.

    Accepts scalars or arrays.
    """
    phi = np.asarray(phi, dtype=float)
    out = np.hypot(params.lam - np.cos(phi), params.gamma * np.sin(phi))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class DispersionProfile:
    samples: np.ndarray  # shape (n, 2): phi, Lambda_phi
    gap: float
    xi: Optional[float]


def dispersion_profile(params: XYParams, n: int = 2001) -> DispersionProfile:
    """Dispersion sampled on a symmetric grid over [-pi, pi]."""
    phi = np.linspace(-math.pi, math.pi, n)
    lam = dispersion(params, phi)
    samples = np.column_stack([phi, lam])
    samples.setflags(write=False)
    return DispersionProfile(samples, dispersion(params, 0.0), correlation_length(params))


def correlation_length(params: XYParams) -> Optional[float]:
    """Closed-form correlation length where one is available, else ``None``.

    ``1/|lam - 1|`` in the Ising-class neighbourhood (``gamma > 0``) and
    ``1/sqrt(lam - 1)`` on the isotropic line above saturation.
    """
    g, lam = params.gamma, params.lam
    if lam == 1.0:
        return math.inf
    if g > 0.0:
        return 1.0 / abs(lam - 1.0)
    if lam > 1.0:
        return 1.0 / math.sqrt(lam - 1.0)
    return math.inf  # gapless segment


@dataclass(frozen=True)
class Classification:
    label: str
    exponents: Optional[Tuple[float, float, float]] = None  # (nu, s, z)
    xi: Optional[float] = None

    @property
    def critical(self) -> bool:
        return self.label != NON_CRITICAL

    @property
    def z(self) -> Optional[float]:
        return None if self.exponents is None else self.exponents[2]


def classify(params: XYParams) -> Classification:
    """Critical region of the ``(gamma, lam)`` phase diagram.

    The boundary point ``gamma = 0, lam = 1`` belongs to the XX class.
    """
    g, lam = params.gamma, params.lam
    if g == 0.0 and lam <= 1.0:
        return Classification(CRITICAL_XX, (0.5, 1.0, 2.0), math.inf)
    if lam == 1.0:
        return Classification(CRITICAL_ISING, (1.0, 1.0, 1.0), math.inf)
    if g != 0.0 and abs(g * g + lam * lam - 1.0) <= _CIRCLE_TOL:
        return Classification(CRITICAL_CIRCLE, None, None)
    return Classification(NON_CRITICAL, None, correlation_length(params))
