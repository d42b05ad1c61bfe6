"""Closed-form asymptotics of the disc capacitor and the weak-coupling Bose
gas: capacitance expansions, energy expansions, the kernels entering the
third-moment identity, the matched inner/outer (edge/far-field) integral
machinery with its intermediate-scale split, and the symbolic assembly of
the ground-state energy through order gamma^2.

The assembly is done with a small truncated-series algebra over terms
c * t^p * log(1/t)^q (p rational, q a small non-negative integer), which is
exactly the class of expansions appearing here.  Working symbolically in
the expansion variable is what exposes the cancellation of every logarithm
when the energy is re-expressed in the coupling: the surviving gamma^2
coefficient is produced to rounding, not to a fitted tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from .capacitor2d import _phi, phi_prime_polylog_integral
from .errors import DomainError, WindowError
from .quadrature import _log_edges, _panel_sum, _tanh_sinh
from .specfun import _agm_ke, _i1e, _i2e, _k1e, elliptic_ke

__all__ = [
    "AsymptoticSeries",
    "SeriesTerm",
    "ThirdMomentBreakdown",
    "energy_series",
    "capacitance_series",
    "epsilon_of_gamma",
    "epsilon_series",
    "far_field",
    "green_traces",
    "kernel_k",
    "k2_energy_integral",
    "j_split",
    "default_delta",
    "third_moment_expansion",
    "assemble_ground_state",
    "ground_state_series",
]

_PI = math.pi
_LOG8 = math.log(8.0)

# gamma^2 coefficients of the weak-coupling energy: the established value
# 1/6 - 1/pi^2 and the rival 1/8 - 1/pi^2.
ENERGY_GAMMA2 = 1.0 / 6.0 - 1.0 / _PI ** 2
ENERGY_GAMMA2_RIVAL = 1.0 / 8.0 - 1.0 / _PI ** 2


# ----------------------------------------------------------------------
# Truncated log-power series.
# ----------------------------------------------------------------------

class SeriesTerm(NamedTuple):
    power: Fraction
    log_power: int
    coefficient: float


class AsymptoticSeries:
    """Truncated expansion sum_i c_i t^{p_i} log(1/t)^{q_i} for small t > 0.

    Supports ring arithmetic plus reciprocal and logarithm of series whose
    leading term is a positive log-free power; terms beyond max_power are
    dropped on every operation.
    """

    __slots__ = ("variable", "max_power", "_terms")

    def __init__(self, variable: str,
                 terms: Iterable[tuple[Fraction | int, int, float]] = (),
                 max_power: Fraction = Fraction(3)):
        self.variable = variable
        self.max_power = Fraction(max_power)
        self._terms: dict[tuple[Fraction, int], float] = {}
        for p, q, c in terms:
            self._add_term(Fraction(p), int(q), float(c))

    def _add_term(self, p: Fraction, q: int, c: float) -> None:
        if p > self.max_power or c == 0.0:
            return
        key = (p, q)
        new = self._terms.get(key, 0.0) + c
        if new == 0.0:
            self._terms.pop(key, None)
        else:
            self._terms[key] = new

    @property
    def terms(self) -> list[SeriesTerm]:
        """Terms sorted by growth order (largest contribution as t -> 0 first)."""
        keys = sorted(self._terms, key=lambda k: (k[0], -k[1]))
        return [SeriesTerm(p, q, self._terms[(p, q)]) for p, q in keys]

    def coefficient(self, power: Fraction | int | float, log_power: int = 0) -> float:
        return self._terms.get((Fraction(power), log_power), 0.0)

    def evaluate(self, t: float) -> float:
        if not 0.0 < t < 1.0:
            raise DomainError(f"series argument must lie in (0, 1), got {t!r}")
        ell = math.log(1.0 / t)
        return sum(c * t ** float(p) * ell ** q
                   for (p, q), c in self._terms.items())

    def truncated(self, max_power: Fraction | int) -> "AsymptoticSeries":
        out = AsymptoticSeries(self.variable, max_power=Fraction(max_power))
        for (p, q), c in self._terms.items():
            out._add_term(p, q, c)
        return out

    # -- arithmetic --------------------------------------------------

    def _coerce(self, other) -> "AsymptoticSeries":
        if isinstance(other, AsymptoticSeries):
            return other
        return AsymptoticSeries(self.variable, [(0, 0, float(other))],
                                self.max_power)

    def __add__(self, other) -> "AsymptoticSeries":
        other = self._coerce(other)
        out = AsymptoticSeries(self.variable, max_power=self.max_power)
        for (p, q), c in self._terms.items():
            out._add_term(p, q, c)
        for (p, q), c in other._terms.items():
            out._add_term(p, q, c)
        return out

    __radd__ = __add__

    def __neg__(self) -> "AsymptoticSeries":
        return AsymptoticSeries(self.variable,
                                [(p, q, -c) for (p, q), c in self._terms.items()],
                                self.max_power)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "AsymptoticSeries":
        if not isinstance(other, AsymptoticSeries):
            return AsymptoticSeries(
                self.variable,
                [(p, q, c * float(other)) for (p, q), c in self._terms.items()],
                self.max_power)
        out = AsymptoticSeries(self.variable, max_power=self.max_power)
        for (p1, q1), c1 in self._terms.items():
            for (p2, q2), c2 in other._terms.items():
                out._add_term(p1 + p2, q1 + q2, c1 * c2)
        return out

    __rmul__ = __mul__

    def _leading(self) -> tuple[Fraction, int, float]:
        if not self._terms:
            raise DomainError("empty series")
        p, q = min(self._terms, key=lambda k: (k[0], -k[1]))
        return p, q, self._terms[(p, q)]

    def _relative_rest(self, p0: Fraction, c0: float) -> "AsymptoticSeries":
        rest = AsymptoticSeries(self.variable, max_power=self.max_power)
        for (p, q), c in self._terms.items():
            if (p, q) != (p0, 0):
                rest._add_term(p - p0, q, c / c0)
        return rest

    def reciprocal(self) -> "AsymptoticSeries":
        p0, q0, c0 = self._leading()
        if q0 != 0:
            raise DomainError("reciprocal needs a log-free leading term")
        rest = self._relative_rest(p0, c0)
        geom = AsymptoticSeries(self.variable, [(0, 0, 1.0)], self.max_power)
        term = AsymptoticSeries(self.variable, [(0, 0, 1.0)], self.max_power)
        for _ in range(80):
            term = term * rest * (-1.0)
            if not term._terms:
                break
            geom = geom + term
        return AsymptoticSeries(
            self.variable,
            [(p - p0, q, c / c0) for (p, q), c in geom._terms.items()],
            self.max_power)

    def log(self) -> "AsymptoticSeries":
        """log of the series; leading term must be a positive log-free power."""
        p0, q0, c0 = self._leading()
        if q0 != 0 or c0 <= 0.0:
            raise DomainError("log needs a positive log-free leading term")
        rest = self._relative_rest(p0, c0)
        out = AsymptoticSeries(self.variable,
                               [(0, 0, math.log(c0)), (0, 1, -float(p0))],
                               self.max_power)
        term = AsymptoticSeries(self.variable, [(0, 0, 1.0)], self.max_power)
        sign = -1.0
        for k in range(1, 80):
            term = term * rest
            if not term._terms:
                break
            sign = -sign
            out = out + term * (sign / k)
        return out


# ----------------------------------------------------------------------
# Energy and capacitance expansions.
# ----------------------------------------------------------------------

def energy_series(which: str, gamma: float) -> float:
    """Truncated weak-coupling ground-state energy e(gamma).

    "bogoliubov":       gamma - (4/(3 pi)) gamma^{3/2}
    "takahashi":        ... + (1/6 - 1/pi^2) gamma^2
    "kaminaka_wadati":  ... + (1/8 - 1/pi^2) gamma^2   (the rival value)
    """
    if gamma < 0.0:
        raise DomainError(f"gamma must be >= 0, got {gamma!r}")
    base = gamma - 4.0 / (3.0 * _PI) * gamma ** 1.5
    if which == "bogoliubov":
        return base
    if which == "takahashi":
        return base + ENERGY_GAMMA2 * gamma * gamma
    if which == "kaminaka_wadati":
        return base + ENERGY_GAMMA2_RIVAL * gamma * gamma
    raise DomainError(f"unknown energy series {which!r}")


def capacitance_series(which: str, kappa: float) -> float:
    """Small-separation capacitance of the unit disc pair.

    "kirchhoff":  1/(4 kappa) + log(1/kappa)/(4 pi) + (log(16 pi) - 1)/(4 pi)
    "extended":   ... + kappa/(16 pi^2) [log^2(kappa/(16 pi)) - 2]
    """
    if not kappa > 0.0:
        raise DomainError(f"kappa must be positive, got {kappa!r}")
    value = (1.0 / (4.0 * kappa) + math.log(1.0 / kappa) / (4.0 * _PI)
             + (math.log(16.0 * _PI) - 1.0) / (4.0 * _PI))
    if which == "kirchhoff":
        return value
    if which == "extended":
        return value + kappa / (16.0 * _PI ** 2) * (
            math.log(kappa / (16.0 * _PI)) ** 2 - 2.0)
    raise DomainError(f"unknown capacitance series {which!r}")


_L32 = math.log(32.0 * _PI)
_EPS_COEFFS = (
    0.25,                                # gamma^{1/2}
    -1.0 / (32.0 * _PI),                 # gamma log gamma
    (_L32 - 1.0) / (16.0 * _PI),         # gamma
    1.0 / (256.0 * _PI ** 2),            # gamma^{3/2} log^2 gamma
    (1.0 - _L32) / (64.0 * _PI ** 2),    # gamma^{3/2} log gamma
    (1.0 - 4.0 * _L32 + 2.0 * _L32 ** 2) / (128.0 * _PI ** 2),  # gamma^{3/2}
)


def epsilon_series(max_power: Fraction | int = Fraction(3)) -> AsymptoticSeries:
    """The half-separation as a series in the coupling, epsilon(gamma).

    Inverts gamma = 2 epsilon / C(2 epsilon) through order gamma^{3/2} with
    its log^2 and log companions; see epsilon_of_gamma for the evaluated
    form.  (Terms are stored against log(1/gamma), hence the sign flips on
    odd log powers.)
    """
    a0, a1, a2, a3, a4, a5 = _EPS_COEFFS
    h = Fraction(1, 2)
    return AsymptoticSeries("gamma", [
        (h, 0, a0),
        (1, 1, -a1), (1, 0, a2),
        (3 * h, 2, a3), (3 * h, 1, -a4), (3 * h, 0, a5),
    ], Fraction(max_power))


def epsilon_of_gamma(gamma: float) -> float:
    """Half-separation epsilon with gamma = 2 epsilon / C(2 epsilon):
    a0 sqrt(gamma) + a1 gamma log gamma + a2 gamma + gamma^{3/2} (a3 log^2
    gamma + a4 log gamma + a5).  Meaningful for gamma well below 1."""
    if not gamma > 0.0:
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    a0, a1, a2, a3, a4, a5 = _EPS_COEFFS
    lg = math.log(gamma)
    return (a0 * math.sqrt(gamma) + a1 * gamma * lg + a2 * gamma
            + gamma ** 1.5 * (a3 * lg * lg + a4 * lg + a5))


# ----------------------------------------------------------------------
# Far field, Green traces, kernels.
# ----------------------------------------------------------------------

def far_field(r: float) -> float:
    """Free-space potential scale outside the disc (coefficient of epsilon):
    F(r) = E(2 sqrt(r)/(1+r)) / (pi (r-1)) - K(2 sqrt(r)/(1+r)) / (pi (r+1)),
    valid for r > 1; decays like 1/(2 r^3) far out (the naive K, E -> pi/2
    limit suggests 1/(r^2 - 1), but the modulus corrections cancel that
    order) and diverges like 1/(pi (r-1)) at the edge."""
    if not r > 1.0:
        raise DomainError(f"far field needs r > 1, got {r!r}")
    k = 2.0 * math.sqrt(r) / (1.0 + r)
    K, E = _agm_ke(np.asarray(min(k, 1.0 - 1e-17), dtype=float))
    return float(E) / (_PI * (r - 1.0)) - float(K) / (_PI * (r + 1.0))


_SUM_CAP = 3_000_000


def green_traces(r: float, r1: float, epsilon: float) -> tuple[float, float]:
    """Boundary traces of the two Green functions at z = z1 = 0.

    g_minus (gap region): -(1/(2 eps)) r_</r_> minus a Bessel sum whose
    term n decays like e^{-n pi (r_> - r_<)/eps}; summed in scaled form and
    truncated once terms drop below 1e-16 of the total.
    g_plus (upper half space): (2/(pi r_<)) (E(r_</r_>) - K(r_</r_>)).
    """
    if r <= 0.0 or r1 <= 0.0:
        raise DomainError("radii must be positive")
    if r == r1:
        raise DomainError("the traces have a logarithmic singularity at r = r1")
    if not epsilon > 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    rlt, rgt = min(r, r1), max(r, r1)
    total = 0.0
    n0, chunk = 1, 64
    while n0 <= _SUM_CAP:
        n = np.arange(n0, min(n0 + chunk, _SUM_CAP + 1), dtype=float)
        a = n * _PI * rlt / epsilon
        b = n * _PI * rgt / epsilon
        terms = _i1e(a) * _k1e(b) * np.exp(a - b)
        total += float(np.sum(terms))
        if terms[-1] < 1e-16 * max(abs(total), 1e-300):
            break
        n0 += len(n)
        chunk = min(2 * chunk, 500_000)
    g_minus = -(rlt / rgt) / (2.0 * epsilon) - (2.0 / epsilon) * total
    pair = elliptic_ke(rlt / rgt)
    g_plus = (2.0 / (_PI * rlt)) * (pair.E - pair.K)
    return g_minus, g_plus


def _k2_sum(r: float, epsilon: float, n_terms: int | None = None,
            rel: float = 1e-15) -> float:
    """sum_n (1/n) I_2(n pi/eps) K_1(n pi r/eps), scaled-product form.

    With n_terms set, sums exactly that many terms (truncation-stability
    hook); otherwise stops at relative `rel` or at the term cap.
    """
    cap = n_terms if n_terms is not None else _SUM_CAP
    total = 0.0
    n0, chunk = 1, 64
    while n0 <= cap:
        n = np.arange(n0, min(n0 + chunk, cap + 1), dtype=float)
        a = n * _PI / epsilon
        b = n * _PI * r / epsilon
        terms = (1.0 / n) * _i2e(a) * _k1e(b) * np.exp(a - b)
        total += float(np.sum(terms))
        if n_terms is None and terms[-1] < rel * max(abs(total), 1e-300):
            break
        n0 += len(n)
        chunk = min(2 * chunk, 500_000)
    return total


def _k1_part(r: float, epsilon: float) -> float:
    if r == 1.0:
        # (1 - r^2) K(1/r) -> 0; only the E term survives
        return -1.0 / (8.0 * epsilon) - 2.0 / (3.0 * _PI)
    pair = elliptic_ke(1.0 / r)
    return (-1.0 / (8.0 * epsilon)
            - 4.0 * r * (1.0 - r * r) * pair.K / (3.0 * _PI)
            + 2.0 * r * (1.0 - 2.0 * r * r) * pair.E / (3.0 * _PI))


def _k3_part(r: float) -> float:
    pair = elliptic_ke(1.0 / r)    # PoleError at r = 1: log divergence
    return 2.0 * r * r * pair.E + (1.0 - 2.0 * r * r) * pair.K


def _k3_vec(r: np.ndarray) -> np.ndarray:
    K, E = _agm_ke(1.0 / r)
    return 2.0 * r * r * E + (1.0 - 2.0 * r * r) * K


def kernel_k(part: str, r: float, epsilon: float = math.nan) -> float:
    """Kernels of the third-moment identity, for r >= 1.

    "k1": -1/(8 eps) - (4 r (1-r^2)/(3 pi)) K(1/r) + (2 r (1-2 r^2)/(3 pi)) E(1/r)
    "k2": -(2 r / pi) sum_n (1/n) I_2(n pi/eps) K_1(n pi r/eps)
    "k3": 2 r^2 E(1/r) + (1 - 2 r^2) K(1/r)   (the bracket from integrating
          k1's elliptic part by parts; log-divergent at r = 1)
    "full": k1 + k2
    """
    if not r >= 1.0:
        raise DomainError(f"kernels are defined for r >= 1, got {r!r}")
    if part in ("k1", "k2", "full") and not epsilon > 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    if part == "k1":
        return _k1_part(r, epsilon)
    if part == "k2":
        return -(2.0 / _PI) * r * _k2_sum(r, epsilon)
    if part == "k3":
        return _k3_part(r)
    if part == "full":
        return _k1_part(r, epsilon) - (2.0 / _PI) * r * _k2_sum(r, epsilon)
    raise DomainError(f"unknown kernel part {part!r}")


# ----------------------------------------------------------------------
# Edge-approximation integrals.
# ----------------------------------------------------------------------

def k2_energy_integral(epsilon: float) -> float:
    """int_1^inf phi'(r) k2(r) dr in the edge approximation.

    Under r = 1 + eps x the Bessel sum collapses to a dilogarithm,
    k2 ~ -(eps/pi^2) Li_2(e^{-pi x}), and phi' dr = Phi' dx, so the integral
    equals -(eps/pi^2) int_0^inf Phi'(x) Li_2(e^{-pi x}) dx = eps/(2 pi^2),
    evaluated here by quadrature rather than asserted.
    """
    if not 0.0 < epsilon <= 0.05:
        raise WindowError(f"edge approximation needs 0 < eps <= 0.05, got {epsilon!r}")
    return -(epsilon / _PI ** 2) * phi_prime_polylog_integral(2)


def default_delta(epsilon: float) -> float:
    """Intermediate matching scale: sqrt(0.2 eps), the geometric midpoint
    (in log scale) of the admissible window, floored at 5 eps so the window
    constraint eps/delta <= 0.2 also holds for eps near its upper end."""
    return max(math.sqrt(0.2 * epsilon), 5.0 * epsilon)


# Subtraction that renders the transformed outer integrand integrable up to
# its endpoint: c0 log(1-s)/(1-s) + c1/(1-s).
_SUB_C0 = 1.0 / (2.0 * _PI)
_SUB_C1 = 2.0 / _PI - _LOG8 / (2.0 * _PI)


def _outer_transformed(s: np.ndarray) -> np.ndarray:
    """F(1/s) k3(1/s) / s^2 for s in (0, 1): the outer integrand after
    r -> 1/s, expressed through same-modulus elliptic integrals.

    A Landen-type descent turns the half-angle moduli into
    (2/(pi s^3 (1-s^2))) [2E - (2-s^2)K] [E - (1-s^2)K] (all at modulus s).
    The first bracket is O(s^4) by cancellation, so a series form takes
    over below s = 0.05; near s = 1 the factor 1 - s^2 is assembled as
    (1-s)(1+s) to keep the exact endpoint distance.
    """
    s = np.asarray(s, dtype=float)
    out = np.empty_like(s)
    small = s < 0.05
    ss = s[small]
    if ss.size:
        s2 = ss * ss
        pa = (1.0 + 0.75 * s2 + (75.0 / 128.0) * s2 * s2
              + (245.0 / 512.0) * s2 ** 3)
        pb = (1.0 + s2 / 8.0 + (3.0 / 64.0) * s2 * s2
              + (25.0 / 1024.0) * s2 ** 3 + (245.0 / 16384.0) * s2 ** 4)
        # combined form: the s^6/s^3 cancellation done symbolically so s^3
        # may underflow to an honest 0
        out[small] = -(_PI / 32.0) * ss ** 3 * pa * pb / (1.0 - s2)
    sl = s[~small]
    if sl.size:
        K, E = _agm_ke(sl)
        oms2 = (1.0 - sl) * (1.0 + sl)
        A = 2.0 * E - (2.0 - sl * sl) * K
        B = E - oms2 * K
        out[~small] = (2.0 / (_PI * sl ** 3 * oms2)) * A * B
    return out


def _outer_subtracted(s: np.ndarray) -> np.ndarray:
    om = 1.0 - s
    return _outer_transformed(s) - _SUB_C0 * np.log(om) / om - _SUB_C1 / om


def j_split(epsilon: float, delta: float | None = None) -> tuple[float, float]:
    """Inner/outer split of eps * int_1^inf phi(r) k3(r) dr at r = 1 + delta.

    J1 = eps int_0^{delta/eps} Phi(x) [ (1/2) log(x eps / 8) + 2 ] dx uses
    the edge forms of both factors; J2 = eps int_{1+delta}^inf F(r) k3(r) dr
    uses the outer forms, computed after r -> 1/s with the logarithmic
    endpoint growth removed by the exact subtraction above.  J1 + J2 must
    be insensitive to the (arbitrary) delta inside the admissible window;
    enforce eps/delta <= 0.2 and delta <= 0.2.
    """
    if not epsilon > 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    if delta is None:
        delta = default_delta(epsilon)
    if delta > 0.2 + 1e-12 or epsilon / delta > 0.2 + 1e-12:
        raise WindowError(
            f"(epsilon, delta)=({epsilon!r}, {delta!r}) violates "
            "eps/delta <= 0.2 and delta <= 0.2")

    cutoff = delta / epsilon

    def inner(x: np.ndarray) -> np.ndarray:
        return _phi(x) * (0.5 * np.log(x * epsilon / 8.0) + 2.0)

    j1, _ = _tanh_sinh(inner, 0.0, 1.0, tol=1e-13)
    j1 += _panel_sum(inner, _log_edges(1.0, cutoff, per_decade=6))
    j1 *= epsilon

    S = 1.0 / (1.0 + delta)
    val, _ = _tanh_sinh(_outer_subtracted, 0.0, S, tol=1e-13)
    om = 1.0 - S                      # = delta / (1 + delta)
    val += -0.5 * _SUB_C0 * math.log(om) ** 2 - _SUB_C1 * math.log(om)
    j2 = epsilon * val
    return j1, j2


# ----------------------------------------------------------------------
# Third-moment expansion and the ground-state assembly.
# ----------------------------------------------------------------------

# epsilon-order coefficient of int phi' k dr, in closed form and as the
# combination of the extracted integral constants; the two agree to
# rounding (cross-checked in the tests).
_GAMMA0 = (1.0 + math.log(_PI)) / _PI
_GAMMA1 = _PI / 6.0 - 1.0 / _PI - math.log(_PI) / _PI - math.log(_PI) ** 2 / (2.0 * _PI)
_GAMMA2 = -2.0 / _PI - _PI / 4.0


def _eps_bracket_closed() -> float:
    l8p = math.log(8.0 * _PI)
    return (-1.0 / 3.0 - 1.0 / (2.0 * _PI ** 2) + 3.0 * l8p / _PI ** 2
            - l8p ** 2 / (2.0 * _PI ** 2))


def _eps_bracket_from_constants() -> float:
    inner = ((2.0 - 0.5 * _LOG8) * _GAMMA0 + 0.5 * _GAMMA1 + _GAMMA2
             + 2.0 * _LOG8 / _PI - _LOG8 ** 2 / (4.0 * _PI))
    return (2.0 / _PI) * inner + 1.0 / (2.0 * _PI ** 2)


@dataclass(frozen=True)
class ThirdMomentBreakdown:
    """Termwise expansion of int_1^inf phi'(r) k(r) dr, plus the third
    moment it implies through 4 pi int r^3 sigma = C1 - 2 int phi' k."""

    epsilon: float
    leading: float          # 1/(8 eps)
    constant: float         # 2/(3 pi)
    log2_term: float        # -(1/(2 pi^2)) eps log^2 eps
    log_term: float         # ((log(8 pi) - 3)/pi^2) eps log eps
    order_eps_term: float   # bracket * eps
    total: float
    capacitance_c1: float   # C1 = 4 C_extended(2 eps)
    third_moment: float     # 4 pi int_0^1 r^3 sigma dr


def third_moment_expansion(epsilon: float) -> ThirdMomentBreakdown:
    """Evaluate the kernel integral expansion and the implied third moment."""
    if not 0.0 < epsilon <= 0.05:
        raise WindowError(f"expansion needs 0 < eps <= 0.05, got {epsilon!r}")
    le = math.log(epsilon)
    leading = 1.0 / (8.0 * epsilon)
    constant = 2.0 / (3.0 * _PI)
    log2_term = -epsilon * le * le / (2.0 * _PI ** 2)
    log_term = (math.log(8.0 * _PI) - 3.0) / _PI ** 2 * epsilon * le
    order_eps = _eps_bracket_closed() * epsilon
    total = leading + constant + log2_term + log_term + order_eps
    c1 = 4.0 * capacitance_series("extended", 2.0 * epsilon)
    return ThirdMomentBreakdown(
        epsilon=epsilon, leading=leading, constant=constant,
        log2_term=log2_term, log_term=log_term, order_eps_term=order_eps,
        total=total, capacitance_c1=c1, third_moment=c1 - 2.0 * total)


_ground_state_cache: AsymptoticSeries | None = None


def ground_state_series() -> AsymptoticSeries:
    """The weak-coupling energy as a series in gamma, assembled symbolically.

    Composes e = 1/(2 C^2) - T/(4 C^3) (from the third-moment identity with
    C1 = 4C) with C = C_extended(2 eps), T the kernel-integral expansion,
    and eps = eps(gamma).  Every log(gamma) coefficient cancels to rounding
    and the quadratic coefficient lands on 1/6 - 1/pi^2; the returned series
    is truncated at gamma^2 (higher orders are incomplete by construction).
    """
    global _ground_state_cache
    if _ground_state_cache is not None:
        return _ground_state_cache
    work = Fraction(3)
    eps = epsilon_series(max_power=work)
    kappa = eps * 2.0
    log_kappa = kappa.log()
    l16p = math.log(16.0 * _PI)
    shifted = log_kappa - l16p
    C = (kappa.reciprocal() * 0.25 + log_kappa * (-1.0 / (4.0 * _PI))
         + (l16p - 1.0) / (4.0 * _PI)
         + kappa * (1.0 / (16.0 * _PI ** 2)) * (shifted * shifted - 2.0))
    log_eps = eps.log()
    T = (eps.reciprocal() * 0.125 + 2.0 / (3.0 * _PI)
         + eps * log_eps * log_eps * (-1.0 / (2.0 * _PI ** 2))
         + eps * log_eps * ((math.log(8.0 * _PI) - 3.0) / _PI ** 2)
         + eps * _eps_bracket_closed())
    Cinv = C.reciprocal()
    energy = Cinv * Cinv * 0.5 - T * Cinv * Cinv * Cinv * 0.25
    _ground_state_cache = energy.truncated(Fraction(2))
    return _ground_state_cache


def assemble_ground_state(gamma: float) -> float:
    """Evaluate the assembled weak-coupling energy at the given coupling.

    By construction this reproduces the takahashi series through gamma^2
    (all logarithm coefficients cancel); use ground_state_series() for the
    coefficient report.
    """
    if not 0.0 < gamma < 1.0:
        raise DomainError(f"gamma must lie in (0, 1), got {gamma!r}")
    return ground_state_series().evaluate(gamma)
