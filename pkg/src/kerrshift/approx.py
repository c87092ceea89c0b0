"""Analytic approximations of the optimally displaced Fano factor.

Two regimes joined at the crossover length (Kz)_app:
    short lengths:   F1 = exp(-4 |a|^2 Kz + |a|^4 (Kz)^2)
    near optimum:    F2 = (8/3) |a|^4 (Kz)^4 + 1 / (16 |a|^4 (Kz)^2)
All radical constants are evaluated at runtime, not hard-coded decimals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import OutOfValidityRange

# (sqrt(3)/2)^(1/3) ~ 0.953: crossover coefficient
KZ_APP_COEFF = (np.sqrt(3.0) / 2.0) ** (1.0 / 3.0)
# 3^(1/6) / 2^(4/3) ~ 0.477: optimal-length coefficient (argmin of F2)
KZ_OPT_COEFF = 3.0 ** (1.0 / 6.0) / 2.0 ** (4.0 / 3.0)
# 3^(2/3) / 2^(7/3) ~ 0.413: minimal-Fano coefficient (F2 at its argmin)
F_MIN_COEFF = 3.0 ** (2.0 / 3.0) / 2.0 ** (7.0 / 3.0)


class ApproxRegime(enum.Enum):
    SHORT_LENGTH = "short_length"
    NEAR_OPTIMUM = "near_optimum"


@dataclass(frozen=True)
class ApproxCurve:
    regime: ApproxRegime
    valid_kz_range: tuple[float, float]


def f1_short(alpha_sq: float, kz: float) -> float:
    """Short-length approximation exp(-4 |a|^2 kz + |a|^4 kz^2)."""
    if alpha_sq <= 0:
        raise ValueError("alpha_sq must be positive")
    if kz < 0:
        raise ValueError("kz must be non-negative")
    return float(np.exp(-4.0 * alpha_sq * kz + (alpha_sq * kz) ** 2))


def f2_near_opt(alpha_sq: float, kz: float) -> float:
    """Near-optimum approximation (8/3)|a|^4 kz^4 + 1/(16 |a|^4 kz^2)."""
    if alpha_sq <= 0:
        raise ValueError("alpha_sq must be positive")
    if kz == 0:
        raise ZeroDivisionError("f2_near_opt diverges at kz = 0")
    if kz < 0:
        raise ValueError("kz must be positive")
    a4 = alpha_sq * alpha_sq
    return float((8.0 / 3.0) * a4 * kz ** 4 + 1.0 / (16.0 * a4 * kz * kz))


def kz_app(alpha_sq: float) -> float:
    """Crossover length between the two regimes: (sqrt(3)/2)^(1/3) / |a|^2."""
    if alpha_sq <= 0:
        raise ValueError("alpha_sq must be positive")
    return KZ_APP_COEFF / alpha_sq


def kz_opt_approx(alpha: float) -> float:
    """Estimated optimal length ~ 0.477 / |a|^(4/3)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return KZ_OPT_COEFF / alpha ** (4.0 / 3.0)


def f_min_approx(alpha: float) -> float:
    """Estimated minimal Fano factor ~ 0.413 / |a|^(4/3)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return F_MIN_COEFF / alpha ** (4.0 / 3.0)


def validity_curves(alpha: float) -> tuple[ApproxCurve, ApproxCurve]:
    """The two regime descriptors for a given amplitude."""
    boundary = kz_app(alpha * alpha)
    top = 2.0 * kz_opt_approx(alpha)
    return (ApproxCurve(ApproxRegime.SHORT_LENGTH, (0.0, boundary)),
            ApproxCurve(ApproxRegime.NEAR_OPTIMUM, (boundary, top)))


@dataclass(frozen=True)
class PiecewiseFano:
    value: float
    curve: ApproxCurve


def f_piecewise(alpha: float, kz: float) -> PiecewiseFano:
    """F1 below the crossover, F2 above, with the regime recorded.

    The switch sits exactly at (Kz)_app; the two branches disagree there by
    about 1 dB, which is the documented seam of the approximation.
    """
    short, near = validity_curves(alpha)
    if kz < 0 or kz > near.valid_kz_range[1]:
        raise OutOfValidityRange(
            f"kz = {kz} outside [0, {near.valid_kz_range[1]}] for alpha = {alpha}")
    a2 = alpha * alpha
    if kz <= short.valid_kz_range[1]:
        return PiecewiseFano(f1_short(a2, kz), short)
    return PiecewiseFano(f2_near_opt(a2, kz), near)
