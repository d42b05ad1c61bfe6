"""Special functions: complete elliptic integrals, exponentially scaled
modified Bessel functions, Lambert W (real branch and upper-cut limit), and
polylogarithms.

Conventions
-----------
* Elliptic integrals use the modulus k (not the parameter m = k^2):
  K(k) = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t), likewise E(k).
* Bessel values are always exponentially scaled: e^{-x} I_nu(x) and
  e^{x} K_nu(x).  Unscaled values overflow long before the arguments this
  package feeds them (products of the form I_2(a) K_1(b) with a, b ~ 1e7),
  while the scaled product needs only one extra factor e^{a-b}.
* lambert_w is the real principal branch W_0 on [-1/e, inf).  For arguments
  below the branch point -1/e the function is complex; lambert_w_upper_cut
  returns the limit from above the cut, the branch with Im W in (0, pi).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.special import ive, kve

from .errors import BranchError, DivergenceError, DomainError, PoleError

__all__ = [
    "EllipticPair",
    "elliptic_ke",
    "elliptic_e",
    "elliptic_k_derivative",
    "bessel_scaled",
    "lambert_w",
    "lambert_w_upper_cut",
    "polylog",
]

_PI = math.pi
_INV_E = math.exp(-1.0)


class EllipticPair(NamedTuple):
    """Complete elliptic integrals of a common modulus."""

    k: float
    K: float
    E: float


# ----------------------------------------------------------------------
# Complete elliptic integrals via the arithmetic-geometric mean.
# ----------------------------------------------------------------------

def _agm_ke(k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized AGM iteration; k in [0, 1) elementwise.

    K = pi / (2 agm(1, k')) and E = K (1 - sum 2^{n-1} c_n^2) with
    c_0 = k, c_{n+1} = (a_n - b_n)/2.  Quadratic convergence: ~6 sweeps.
    """
    a = np.ones_like(k)
    b = np.sqrt((1.0 - k) * (1.0 + k))
    c2sum = 0.5 * k * k
    scale = 1.0
    for _ in range(60):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), np.sqrt(a * b)
        scale *= 2.0
        c2sum = c2sum + 0.5 * scale * c * c
        if np.max(c) < 1e-17:
            break
    K = _PI / (2.0 * a)
    return K, K * (1.0 - c2sum)


def elliptic_ke(k: float) -> EllipticPair:
    """Complete elliptic integrals (K, E) for modulus k in [0, 1).

    Computed by the arithmetic-geometric mean, accurate to ~1e-15 relative
    uniformly in k, including moduli exponentially close to 1.
    """
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"modulus must lie in [0, 1], got {k!r}")
    if k == 1.0:
        raise PoleError("K(k) has a logarithmic pole at k = 1; "
                        "use elliptic_e for E(1) = 1")
    K, E = _agm_ke(np.asarray(k, dtype=float))
    return EllipticPair(k, float(K), float(E))


def elliptic_e(k: float) -> float:
    """E(k) alone; valid on the closed interval [0, 1] (E(1) = 1 exactly)."""
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"modulus must lie in [0, 1], got {k!r}")
    if k == 1.0:
        return 1.0
    return elliptic_ke(k).E


# dK/dr = (pi/2) sum 2n c_n^2 r^{2n-1} with c_n = binom(2n, n)/4^n; the
# closed form below cancels catastrophically for small r, so switch to the
# leading series terms there (truncation ~r^11, < 1e-13 relative at r=0.05).
_DK_SERIES = (0.5, 9.0 / 16.0, 75.0 / 128.0, 1225.0 / 2048.0, 19845.0 / 32768.0)


def _dk_small(r: np.ndarray) -> np.ndarray:
    r2 = r * r
    acc = np.zeros_like(r)
    for c in reversed(_DK_SERIES):
        acc = acc * r2 + c
    return (_PI / 2.0) * r * acc


def elliptic_k_derivative(r: float) -> float:
    """dK/dr = (E(r) - (1 - r^2) K(r)) / (r (1 - r^2)) for 0 < r < 1."""
    if not 0.0 < r < 1.0:
        raise DomainError(f"dK/dr needs 0 < r < 1, got {r!r}")
    return float(_dk_vec(np.asarray([r], dtype=float))[0])


def _dk_vec(r: np.ndarray) -> np.ndarray:
    out = np.empty_like(r)
    small = r < 0.05
    out[small] = _dk_small(r[small])
    big = ~small
    if np.any(big):
        rb = r[big]
        K, E = _agm_ke(rb)
        omr2 = (1.0 - rb) * (1.0 + rb)
        out[big] = (E - omr2 * K) / (rb * omr2)
    return out


# ----------------------------------------------------------------------
# Exponentially scaled modified Bessel functions (scipy-backed).
# ----------------------------------------------------------------------

# scipy's ive/kve degrade to nan somewhere above 1e9; beyond the switch the
# large-argument expansions are exact to double precision anyway (the next
# omitted term is O(x^-3) with an O(100) numerator).
_BESSEL_ASYMPTOTIC = 1e8


def _bessel_large(x: np.ndarray, c1: float, c2: float, front: float,
                  power: float) -> np.ndarray:
    return front * x ** power * (1.0 + (c1 + c2 / x) / x)


def _i1e(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    big = x > _BESSEL_ASYMPTOTIC
    out = ive(1, np.where(big, 1.0, x))
    return np.where(big, _bessel_large(x, -3.0 / 8.0, -15.0 / 128.0,
                                       1.0 / math.sqrt(2.0 * _PI), -0.5), out)


def _i2e(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    big = x > _BESSEL_ASYMPTOTIC
    out = ive(2, np.where(big, 1.0, x))
    return np.where(big, _bessel_large(x, -15.0 / 8.0, 105.0 / 128.0,
                                       1.0 / math.sqrt(2.0 * _PI), -0.5), out)


def _k1e(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    big = x > _BESSEL_ASYMPTOTIC
    out = kve(1, np.where(big, 1.0, x))
    return np.where(big, _bessel_large(x, 3.0 / 8.0, -15.0 / 128.0,
                                       math.sqrt(_PI / 2.0), -0.5), out)


_BESSEL_KINDS = {"I1": _i1e, "I2": _i2e, "K1": _k1e}


def bessel_scaled(kind: str, x: float) -> float:
    """e^{-x} I_nu(x) for kind "I1"/"I2", or e^{x} K_1(x) for kind "K1".

    Finite and positive for every positive double; the scaling removes the
    e^{+-x} growth so products like I_2(a) K_1(b) can be reassembled as
    scaled-product times e^{a-b} without overflow.
    """
    if kind not in _BESSEL_KINDS:
        raise DomainError(f"unknown Bessel kind {kind!r}; expected I1, I2 or K1")
    if not x > 0.0:
        raise DomainError(f"argument must be positive, got {x!r}")
    return float(_BESSEL_KINDS[kind](np.asarray(x, dtype=float)))


# ----------------------------------------------------------------------
# Lambert W.
# ----------------------------------------------------------------------

# Branch-point expansion W = sum mu_k p^k, p = sqrt(2 (e z + 1))
# (Corless et al. 1996, eq. 4.22).  Truncation error ~ |p|^8.
_MU = (-1.0, 1.0, -1.0 / 3.0, 11.0 / 72.0, -43.0 / 540.0,
       769.0 / 17280.0, -221.0 / 8505.0, 680863.0 / 43545600.0)

# Below this |p| the series alone beats Halley (whose update divides by
# W + 1 ~ p and amplifies rounding near the branch point).
_P_SERIES = 0.025


def _w_branch_series(p):
    acc = np.zeros_like(p)
    for c in reversed(_MU):
        acc = acc * p + c
    return acc


def lambert_w(x: float) -> float:
    """Principal real branch W_0: the solution of w e^w = x for x >= -1/e.

    Halley iteration from piecewise asymptotic seeds; the round trip
    |W e^W - x| stays below 1e-13 max(1, |x|) over the whole branch.
    """
    if math.isnan(x):
        raise DomainError("lambert_w needs a real argument, got nan")
    if x < -_INV_E:
        raise BranchError(
            f"{x!r} is below the branch point -1/e; the principal branch is "
            "complex there (use lambert_w_upper_cut)")
    ex1 = math.e * x + 1.0          # distance above the branch point, scaled
    if ex1 <= 0.0:                  # x == -1/e up to rounding
        return -1.0
    p = math.sqrt(2.0 * ex1)
    if p < _P_SERIES:
        return float(_w_branch_series(np.float64(p)))
    # seeds
    if x < 0.0:
        w = float(_w_branch_series(np.float64(p)))
    elif x < 3.0:
        w = x * (1.0 - x + 1.5 * x * x) if x < 0.25 else math.log1p(x) * 0.7 + 0.1
    else:
        L = math.log(x)
        ll = math.log(L)
        w = L - ll + ll / L
    if x < 3.0:
        # Halley on f(w) = w e^w - x
        for _ in range(100):
            ew = math.exp(w)
            f = w * ew - x
            fp = ew * (w + 1.0)
            step = f / (fp - f * (w + 2.0) / (2.0 * (w + 1.0)))
            w -= step
            if abs(step) <= 1e-16 * (1.0 + abs(w)):
                break
    else:
        # log form avoids overflow of e^w for huge x
        Lx = math.log(x)
        for _ in range(100):
            f = w + math.log(w) - Lx
            fp = (w + 1.0) / w
            step = f / (fp + f / (2.0 * w * fp))
            w -= step
            if abs(step) <= 1e-16 * (1.0 + abs(w)):
                break
    return w


def _w_upper_from_offset(d) -> np.ndarray:
    """Upper-cut Lambert W at z = -e^{d-1}, parametrized by d = log(-z) + 1 >= 0.

    The branch with Im W in (0, pi) satisfies W + Log W = (d - 1) + i pi,
    which is solved entirely in the log domain so d (hence -z = e^{d-1}) may
    reach ~1e16 and beyond without overflow.  d = 0 is the branch point.
    """
    d = np.atleast_1d(np.asarray(d, dtype=float))
    W = np.empty(d.shape, dtype=complex)
    tiny = d < 3e-4
    if np.any(tiny):
        p = 1j * np.sqrt(2.0 * np.expm1(d[tiny]))
        W[tiny] = _w_branch_series(p)
    rest = ~tiny
    if np.any(rest):
        dr = d[rest]
        Wr = np.empty(dr.shape, dtype=complex)
        near = dr < 0.5
        p = 1j * np.sqrt(2.0 * np.expm1(dr[near]))
        Wr[near] = _w_branch_series(p)
        t = dr[~near] - 1.0 + 1j * _PI
        lt = np.log(t)
        Wr[~near] = t - lt + lt / t
        target = dr - 1.0 + 1j * _PI
        for _ in range(60):
            f = Wr + np.log(Wr) - target
            fp = (Wr + 1.0) / Wr
            halley = f * (-1.0 / (Wr * Wr)) / (2.0 * fp)
            step = f / (fp - halley)
            Wr = Wr - step
            if np.max(np.abs(step) / (1.0 + np.abs(Wr))) < 2e-16:
                break
        W[rest] = Wr
    return W


def lambert_w_upper_cut(x: float) -> complex:
    """Lambert W on the branch cut, approached from above: for x < -1/e the
    value lim_{eps -> 0+} W(x + i eps), the root of w e^w = x with
    Im w in (0, pi).

    Near the branch point the value follows the Puiseux series in
    sqrt(2(e x + 1)); elsewhere Halley iteration runs on the logarithmic
    form w + log w = log(-x) + i pi, which also serves arguments far beyond
    double-precision exponent range of -x on the linear scale.
    """
    if math.isnan(x):
        raise DomainError("lambert_w_upper_cut needs a real argument, got nan")
    if x >= -_INV_E:
        raise BranchError(
            f"{x!r} is not on the branch cut (needs x < -1/e); "
            "use lambert_w for the real principal branch")
    if -x < 1e300:
        d = math.log1p(-math.e * x - 1.0)   # log(-x) + 1, accurate near cut
    else:
        d = math.log(-x) + 1.0
    return complex(_w_upper_from_offset(max(d, 0.0))[0])


# ----------------------------------------------------------------------
# Riemann zeta at integers and the polylogarithm on [0, 1].
# ----------------------------------------------------------------------

def _bernoulli(count: int) -> list[Fraction]:
    """B_0 .. B_count as exact fractions (B_1 = -1/2 convention)."""
    B = [Fraction(1)]
    for n in range(1, count + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += Fraction(math.comb(n + 1, k)) * B[k]
        B.append(-acc / Fraction(n + 1))
    return B


_BER = _bernoulli(42)


def _zeta_int(n: int) -> float:
    """zeta(n) for integer n != 1.

    Positive arguments by Euler-Maclaurin off a short partial sum; negative
    arguments from Bernoulli numbers, zeta(-m) = -B_{m+1}/(m+1).
    """
    if n == 1:
        raise PoleError("zeta has a pole at 1")
    if n == 0:
        return -0.5
    if n < 0:
        m = -n
        if m % 2 == 0:
            return 0.0
        return -float(_BER[m + 1]) / (m + 1)
    N, M = 20, 10
    s = sum(j ** (-float(n)) for j in range(1, N))
    s += 0.5 * N ** (-float(n)) + N ** (1.0 - n) / (n - 1.0)
    fact = float(n)
    power = N ** (-float(n) - 1.0)
    for m in range(1, M + 1):
        s += float(_BER[2 * m]) / math.factorial(2 * m) * fact * power
        fact *= (n + 2 * m - 1) * (n + 2 * m)
        power /= N * N
    return s


_ZETA_CACHE: dict[int, float] = {}


def _zeta(n: int) -> float:
    if n not in _ZETA_CACHE:
        _ZETA_CACHE[n] = _zeta_int(n)
    return _ZETA_CACHE[n]


_HARMONIC = [0.0]
for _j in range(1, 40):
    _HARMONIC.append(_HARMONIC[-1] + 1.0 / _j)


def _polylog_exp_neg(n: int, t: float) -> float:
    """Li_n(e^{-t}) for t >= 0, with the argument kept in the exponent.

    Callers integrating against e^{-pi x} tails pass t = pi x directly, so
    arguments exponentially close to 1 lose no precision to exp/log round
    trips.  t = 0 requires n >= 2 (Li_1 diverges there).
    """
    if t < 0.0:
        raise DomainError(f"need t >= 0, got {t!r}")
    if n == 1:
        if t == 0.0:
            raise DivergenceError("Li_1(1) diverges")
        return -math.log(-math.expm1(-t))
    if t == 0.0:
        return _zeta(n)
    if t > math.log(2.0):
        # direct series in x = e^{-t} <= 1/2
        x = math.exp(-t)
        total, xk = 0.0, 1.0
        for k in range(1, 400):
            xk *= x
            term = xk / float(k) ** n
            total += term
            if abs(term) <= 1e-17 * abs(total):
                break
        return total
    # expansion in mu = log x = -t about the unit argument
    # (DLMF 25.12.12); converges for |mu| < 2 pi, fast for |mu| <= log 2
    mu = -t
    total = mu ** (n - 1) / math.factorial(n - 1) * (_HARMONIC[n - 1] - math.log(t))
    muk = 1.0
    for k in range(0, 80):
        if k != n - 1:
            total += _zeta(n - k) * muk / math.factorial(k)
        muk *= mu
        if k > n and abs(muk) / math.factorial(k) < 1e-19:
            break
    return total


def polylog(n: int, x: float) -> float:
    """Polylogarithm Li_n(x) = sum_{k>=1} x^k / k^n for n >= 1, x in [0, 1].

    Direct summation for x <= 1/2; for x > 1/2 the expansion about x = 1 in
    powers of log x, which keeps full accuracy up to and including x = 1
    (where the value is zeta(n)).  Li_1(1) diverges.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"order must be an integer >= 1, got {n!r}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"argument must lie in [0, 1], got {x!r}")
    if x == 0.0:
        return 0.0
    if n == 1:
        if x == 1.0:
            raise DivergenceError("Li_1(1) diverges")
        return -math.log1p(-x)
    if x == 1.0:
        return _zeta(n)
    return _polylog_exp_neg(n, -math.log(x))
