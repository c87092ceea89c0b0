"""Wigner quasiprobability of truncated Fock states on a phase-space grid.

For a pure state with amplitudes c_n,

    W(w) = (2/pi) e^{-2|w|^2} [ sum_n (-1)^n |c_n|^2 L_n(4|w|^2)
           + sum_{m>0, n} (-1)^n sqrt(n!/(n+m)!) c*_{n+m} c_n (2w)^m L_n^m(4|w|^2)
           + c.c. ]

Evaluating the Laguerre polynomials naively overflows long before the
amplitudes of interest (L_n^m(4|a|^2) with |a| ~ 10 and n ~ 200), so the
double sum is assembled from the bounded combination

    T_n^m(x) = sqrt(n!/(n+m)!) x^{m/2} e^{-x/2} L_n^m(x),   x = 4|w|^2,

which is the magnitude of a displacement matrix element (<= 1) and satisfies
a clean three-term recurrence in n. The (2w)^m prefactor then contributes
only its phase e^{i m arg w}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import NumericalOverflow, StateTooLarge
from .fock import FockState, field_moment, photon_distribution

MAX_WIGNER_TRUNC = 400
PURE_STATE_BOUND = 2.0 / np.pi

# per-diagonal coefficient products below this cannot move W at the 1e-13 level
DROP_TOL = 1e-18


def laguerre_assoc(n: int, m: int, x):
    """Associated Laguerre L_n^m(x) as (mantissa, exponent), value = mantissa * e^exponent.

    Upward three-term recurrence in n with periodic rescaling, so arguments up
    to x ~ 4 |a|^2_max stay representable. m = 0 gives the ordinary L_n. x may
    be a scalar or an ndarray.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0):
        raise ValueError("x must be non-negative")
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    mant = np.ones_like(x_arr)
    expo = np.zeros_like(x_arr)
    if n >= 1:
        prev = np.ones_like(x_arr)             # L_0^m = 1
        cur = m + 1.0 - x_arr                  # L_1^m
        for j in range(1, n):
            nxt = ((2.0 * j + m + 1.0 - x_arr) * cur - (j + m) * prev) / (j + 1.0)
            prev, cur = cur, nxt
            big = np.abs(cur) > 1e250
            if np.any(big):
                prev = np.where(big, prev * 1e-250, prev)
                cur = np.where(big, cur * 1e-250, cur)
                expo = np.where(big, expo + 250.0 * np.log(10.0), expo)
        mant = cur
    if scalar:
        return float(mant[0]), float(expo[0])
    return mant, expo


@dataclass(frozen=True)
class WignerGrid:
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    resolution: int
    values: np.ndarray

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_range[0], self.x_range[1], self.resolution)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.y_range[0], self.y_range[1], self.resolution)

    def integral(self) -> float:
        dx = (self.x_range[1] - self.x_range[0]) / (self.resolution - 1)
        dy = (self.y_range[1] - self.y_range[0]) / (self.resolution - 1)
        return float(self.values.sum() * dx * dy)


def wigner_at(state: FockState, points: np.ndarray) -> np.ndarray:
    """W evaluated at arbitrary complex phase-space points (vectorized kernel)."""
    if state.n_trunc > MAX_WIGNER_TRUNC:
        raise StateTooLarge(
            f"n_trunc = {state.n_trunc} above the double-sum cap {MAX_WIGNER_TRUNC}")
    w = np.asarray(points, dtype=complex)
    c = state.amplitudes
    n_top = state.n_trunc
    x = 4.0 * np.abs(w) ** 2
    unit = np.ones_like(w)
    nonzero = w != 0
    unit[nonzero] = w[nonzero] / np.abs(w[nonzero])
    signs = np.where(np.arange(n_top + 1) % 2 == 0, 1.0, -1.0)

    total = np.zeros_like(w, dtype=complex)
    phase_m = np.ones_like(w, dtype=complex)
    for m in range(0, n_top + 1):
        coef = np.conj(c[m:]) * c[: n_top + 1 - m] * signs[: n_top + 1 - m]
        if m > 0:
            phase_m = phase_m * unit
        mags = np.abs(coef)
        if mags.max() < DROP_TOL:
            continue
        keep = int(np.nonzero(mags >= DROP_TOL)[0][-1])
        # T_0^m in log domain; the recurrence itself stays in [-1, 1] territory
        with np.errstate(divide="ignore"):
            log_x = np.where(x > 0.0, np.log(np.where(x > 0.0, x, 1.0)), -np.inf)
        if m == 0:
            t_prev = np.exp(-x / 2.0)
        else:
            t_prev = np.exp(0.5 * m * log_x - x / 2.0 - 0.5 * gammaln(m + 1.0))
        inner = coef[0] * t_prev
        if keep >= 1:
            t_cur = t_prev * (m + 1.0 - x) / np.sqrt(m + 1.0)
            inner = inner + coef[1] * t_cur
            for n in range(1, keep):
                t_next = ((2.0 * n + m + 1.0 - x) / np.sqrt((n + 1.0) * (n + m + 1.0))) * t_cur \
                    - np.sqrt(n * (n + m) / ((n + 1.0) * (n + m + 1.0))) * t_prev
                t_prev, t_cur = t_cur, t_next
                inner = inner + coef[n + 1] * t_cur
        if m == 0:
            total = total + inner
        else:
            term = phase_m * inner
            total = total + term + np.conj(term)

    total = total * (2.0 / np.pi)
    if not np.all(np.isfinite(total)):
        raise NumericalOverflow("non-finite Wigner values; scaling exhausted")
    residue = float(np.max(np.abs(total.imag))) if total.size else 0.0
    if residue > 1e-10:
        raise NumericalOverflow(f"imaginary residue {residue} above 1e-10")
    return total.real


def wigner(state: FockState, center: complex | None = None,
           half_width: float = 6.0, resolution: int = 201) -> WignerGrid:
    """Wigner function on a square grid.

    Defaults: window centered on the mean field <a> with half-width 6 at
    201 x 201. Strongly wrapped states need a wider window; see auto_window.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if center is None:
        center = complex(field_moment(state, 0, 1))
    xs = center.real + np.linspace(-half_width, half_width, resolution)
    ys = center.imag + np.linspace(-half_width, half_width, resolution)
    grid_x, grid_y = np.meshgrid(xs, ys, indexing="ij")
    values = wigner_at(state, grid_x + 1j * grid_y)
    return WignerGrid(x_range=(float(xs[0]), float(xs[-1])),
                      y_range=(float(ys[0]), float(ys[-1])),
                      resolution=resolution, values=values)


def auto_window(state: FockState, margin: float = 3.0,
                quantile: float = 1e-9) -> tuple[complex, float]:
    """Origin-centered window guaranteed to contain the state's support.

    A state with photon content up to n_hi lives within the disk of radius
    sqrt(n_hi) no matter how far the Kerr phase wraps it around; the returned
    half-width is sqrt(n_hi) + margin.
    """
    cum = np.cumsum(photon_distribution(state))
    n_hi = int(np.searchsorted(cum, 1.0 - quantile)) + 1
    return 0j, float(np.sqrt(n_hi) + margin)
