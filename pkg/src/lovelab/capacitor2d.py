"""Two-dimensional semi-infinite parallel-plate capacitor on the symmetry
half-line: the potential Phi(x, 0), its harmonic conjugate Psi(x, 0), their
derivatives and series expansions, and the cumulative integrals whose
constants the verification harness extracts.

The complex potential is evaluated through the upper-cut Lambert W branch:
with W = W(-e^{pi x - 1}) the defining transcendental equation gives the
cancellation-free forms

    Phi(x, 0) = arg(W) / pi,        Psi(x, 0) = -log|W| / pi,
    Phi'(x, 0) = -Im(W) / |1 + W|^2,

which remain accurate to machine precision from the plate edge (x = 0,
where W sits at its branch point -1) out to x ~ 1e14 and beyond, since the
W solver works on log(-argument) = pi x - 1 directly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RegimeWarning
from .quadrature import _log_edges, _panel_sum, _tanh_sinh
from .specfun import _polylog_exp_neg, _w_upper_from_offset

__all__ = [
    "EdgePotentialSample",
    "phi_psi",
    "phi_series",
    "psi_series",
    "cumulative_phi",
    "cumulative_phi_log",
    "phi_prime_polylog_integral",
]

_PI = math.pi


@dataclass(frozen=True)
class EdgePotentialSample:
    """Potential data at one point of the half-line x >= 0, y = 0."""

    x: float
    phi: float
    psi: float
    phi_prime: float


def _values(x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized (Phi, Psi, Phi') on x > 0 (x = 0 allowed for Phi, Psi)."""
    W = _w_upper_from_offset(_PI * np.asarray(x, dtype=float))
    u, v = W.real, W.imag
    phi = np.arctan2(v, u) / _PI
    psi = -np.log(np.abs(W)) / _PI
    opu = 1.0 + u
    with np.errstate(divide="ignore", invalid="ignore"):
        dphi = np.where(v == 0.0, -np.inf, -v / (opu * opu + v * v))
    return phi, psi, dphi


def _phi(x: np.ndarray) -> np.ndarray:
    return _values(x)[0]


def _phi_prime(x: np.ndarray) -> np.ndarray:
    return _values(x)[2]


def phi_psi(x: float) -> EdgePotentialSample:
    """Exact potential sample at x >= 0.

    At x = 0 the potential is exactly 1 and Psi vanishes (our normalization
    Psi(0, 0) = 0); the derivative has an inverse-square-root singularity
    there and is reported as -inf.
    """
    if not x >= 0.0:
        raise DomainError(f"the modeled half-line is x >= 0, got {x!r}")
    phi, psi, dphi = (float(a[0]) for a in _values(np.asarray([x])))
    return EdgePotentialSample(x=x, phi=phi, psi=psi, phi_prime=dphi)


# ----------------------------------------------------------------------
# Truncated series.
# ----------------------------------------------------------------------

_SMALL_MAX = 0.1
_LARGE_MIN = 5.0


def _regime_check(x: float, regime: str) -> None:
    if regime not in ("small", "large"):
        raise DomainError(f"regime must be 'small' or 'large', got {regime!r}")
    if regime == "small" and x > _SMALL_MAX:
        warnings.warn(f"small-x series evaluated at x={x!r} > {_SMALL_MAX}",
                      RegimeWarning, stacklevel=3)
    if regime == "large" and x < _LARGE_MIN:
        warnings.warn(f"large-x series evaluated at x={x!r} < {_LARGE_MIN}",
                      RegimeWarning, stacklevel=3)


def phi_series(x: float, regime: str) -> float:
    """Truncated series for Phi(x, 0).

    small:  1 - sqrt(2/pi) x^{1/2} + (1/9) sqrt(pi/2) x^{3/2}
              - pi^{3/2}/(540 sqrt 2) x^{5/2}        + O(x^{7/2})
    large:  1/(pi x) + log(pi x)/(pi x)^2 ... /pi^2 x^2  + O(log^2 x / x^3)
    """
    if x < 0.0:
        raise DomainError(f"need x >= 0, got {x!r}")
    _regime_check(x, regime)
    if regime == "small":
        rx = math.sqrt(x)
        return (1.0 - math.sqrt(2.0 / _PI) * rx
                + math.sqrt(_PI / 2.0) / 9.0 * rx ** 3
                - _PI ** 1.5 / (540.0 * math.sqrt(2.0)) * rx ** 5)
    return 1.0 / (_PI * x) + math.log(_PI * x) / (_PI * _PI * x * x)


def psi_series(x: float, regime: str) -> float:
    """Truncated series for Psi(x, 0).

    small:  -x/3 + (2 pi/135) x^2 + (4 pi^2/8505) x^3 + O(x^4); the cubic
            coefficient follows from the branch-point expansion of W and is
            validated against the exact evaluator in the tests.
    large:  -(1/pi) log(pi x) + (log(pi x) + 1)/(pi^2 x) + O(log^2 x / x^2)
    """
    if x < 0.0:
        raise DomainError(f"need x >= 0, got {x!r}")
    _regime_check(x, regime)
    if regime == "small":
        return -x / 3.0 + 2.0 * _PI / 135.0 * x * x + 4.0 * _PI ** 2 / 8505.0 * x ** 3
    lpx = math.log(_PI * x)
    return -lpx / _PI + (lpx + 1.0) / (_PI * _PI * x)


# ----------------------------------------------------------------------
# Cumulative integrals.
# ----------------------------------------------------------------------

def cumulative_phi(X: float) -> float:
    """int_0^X Phi(t, 0) dt for X >= 1.

    tanh-sinh handles the sqrt cusp at t = 0; the smooth remainder is summed
    over geometrically spaced Gauss panels, so X up to ~1e15 costs only a
    few thousand evaluations.  Grows like (log X)/pi plus a constant.
    """
    if not X >= 1.0:
        raise DomainError(f"need X >= 1, got {X!r}")
    head, _ = _tanh_sinh(_phi, 0.0, 1.0, tol=1e-13)
    if X == 1.0:
        return head
    return head + _panel_sum(_phi, _log_edges(1.0, X))


def cumulative_phi_log(X: float) -> float:
    """int_0^X Phi(t, 0) log t dt for X >= 1; grows like (log X)^2 / (2 pi)."""
    if not X >= 1.0:
        raise DomainError(f"need X >= 1, got {X!r}")

    def integrand(t: np.ndarray) -> np.ndarray:
        return _phi(t) * np.log(t)

    head, _ = _tanh_sinh(integrand, 0.0, 1.0, tol=1e-13)
    if X == 1.0:
        return head
    return head + _panel_sum(integrand, _log_edges(1.0, X))


# Beyond this point Li_n(e^{-pi x}) < 1e-17 for every n >= 1; the omitted
# tail is below double precision against the O(1/x^2) decay of Phi'.
_POLYLOG_CUTOFF = (17.0 * math.log(10.0) + 2.0) / _PI


def phi_prime_polylog_integral(n: int) -> float:
    """int_0^inf Phi'(x) Li_n(e^{-pi x}) dx for 1 <= n <= 7.

    The integrand carries the x^{-1/2} singularity of Phi' at the edge (and
    for n = 1 an additional log factor); a tanh-sinh panel on [0, 1] absorbs
    both, with Gauss panels covering the exponentially decaying remainder.
    """
    if not isinstance(n, int) or not 1 <= n <= 7:
        raise DomainError(f"order must be an integer in [1, 7], got {n!r}")

    def integrand(x: np.ndarray) -> np.ndarray:
        dphi = _phi_prime(x)
        li = np.fromiter((_polylog_exp_neg(n, _PI * v) for v in x),
                         dtype=float, count=len(x))
        return dphi * li

    value, _ = _tanh_sinh(integrand, 0.0, 1.0, tol=1e-13)
    edges = np.linspace(1.0, _POLYLOG_CUTOFF, 14)
    return value + _panel_sum(integrand, edges)
