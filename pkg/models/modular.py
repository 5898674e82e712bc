"""
Theta constants, the modular functions lambda, nu, j, the Eisenstein
series E4, fundamental-domain reduction and q-expansion extraction.

Everything except the raw `theta` sum reduces tau to the SL2(Z)
fundamental domain first, evaluates the theta squares there and walks the
reduction back with the exact squared T/J laws.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from models.errors import (AliasingError, AtPole, DomainError, LowImaginaryPartError,
                           ReductionError, UnsupportedElementError)
from models.monodromy import GroupId, group_membership
from models.numcore import I2, J, OMEGA, PI, SQRT3, T, W, W2, int_det, int_mat2, int_power

logger = logging.getLogger(__name__)

TH00, TH01, TH10, TH11 = (0, 0), (0, 1), (1, 0), (1, 1)
THETA_CHARS = (TH00, TH01, TH10, TH11)

MIN_DIRECT_IM = 0.05
POLE_RATIO = 1e-13
BOUNDARY_TOL = 1e-14

J_INV = int_mat2(0, -1, 1, 0)


def as_tau(tau):
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"tau={tau} is not in the upper half-plane")
    return tau


@dataclass(frozen=True)
class QConfig:
    """Symmetric summation range -n_max..n_max for a theta series."""

    n_max: int
    tail_bound: float

    @classmethod
    def for_tau(cls, tau):
        im = complex(tau).imag
        n_max = max(1, math.ceil(math.sqrt(40.0 / (PI * im))))
        return cls(n_max, math.exp(-PI * im * n_max ** 2))


def theta(ch, tau, cfg=None):
    """
    theta_pq(tau) = sum_n exp(pi i (n + p/2)^2 tau + pi i (n + p/2) q).

    Raises:
        LowImaginaryPartError: Im(tau) < 0.05; reduce tau first
    """
    p, q = ch
    if (p, q) not in THETA_CHARS:
        raise ValueError(f"bad theta characteristic {ch}")
    tau = as_tau(tau)
    if tau.imag < MIN_DIRECT_IM:
        raise LowImaginaryPartError(f"Im(tau)={tau.imag:.3g} < {MIN_DIRECT_IM}")
    cfg = cfg or QConfig.for_tau(tau)
    m = np.arange(-cfg.n_max, cfg.n_max + 1) + p / 2
    terms = np.exp(1j * PI * m * m * tau + 1j * PI * m * q)
    return complex(np.sum(terms))


# --- reduction ------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """tau = g . tau0 with tau0 in the closed fundamental region."""

    tau0: complex
    g: np.ndarray
    steps: tuple = field(default=(), repr=False)


def _reduce_steps(tau, max_steps=10_000):
    """
    Steps taking tau into D.  Each step is ('T', n) for tau -> tau + n or
    ('J',) for tau -> -1/tau.
    """
    tau = as_tau(tau)
    steps = []
    for _ in range(max_steps):
        shift = -math.ceil(tau.real - 0.5)
        if shift:
            tau += shift
            steps.append(('T', shift))
        if abs(tau) ** 2 < 1 - BOUNDARY_TOL:
            tau = -1 / tau
            steps.append(('J',))
            continue
        if abs(abs(tau) ** 2 - 1) <= BOUNDARY_TOL and tau.real < 0:
            # left half of the arc is identified with the right half
            tau = -1 / tau
            steps.append(('J',))
        return tau, tuple(steps)
    raise ReductionError(f"reduction did not terminate within {max_steps} steps")


def _steps_to_matrix(steps):
    g = I2.copy()
    for step in steps:
        g = g @ (int_power(T, -step[1]) if step[0] == 'T' else J_INV)
    return g


def _is_cube_root_element(g):
    return group_membership(g, GroupId.Gamma2CubeRoot)


def reduce_fundamental(tau, group='SL2Z'):
    """
    Reduce tau to D (SL2Z) or to D~ (Gamma2CubeRoot).

    D~ = D u T^-1 D.  Its bottom edges pair up through JT: the arc
    |tau + 1| = 1 is identified with the unit arc |tau| = 1, and the unit
    arc is the one kept, like the x = 1/2 side.

    Returns:
        Reduction with g . tau0 = tau, g in the requested group
    """
    tau0, steps = _reduce_steps(tau)
    g = _steps_to_matrix(steps)
    group = GroupId(group)
    if group is GroupId.SL2Z:
        return Reduction(tau0, g, steps)
    if group is not GroupId.Gamma2CubeRoot:
        raise UnsupportedElementError(f"no fundamental domain for {group.value}")
    if _is_cube_root_element(g):
        return Reduction(tau0, g, steps)
    # [SL2Z : Gamma(2)^{1/3}] = 2 and J is outside, so g J^-1 is inside
    if abs(abs(tau0) ** 2 - 1) <= BOUNDARY_TOL:
        return Reduction(-1 / tau0, g @ J_INV, steps + (('J',),))
    # T is outside too
    return Reduction(tau0 - 1, g @ T, steps + (('T', -1),))


def in_domain(tau, region, closed=False, margin=0.0):
    """
    Membership in the regions used by the package.

    region: 'D', 'Dtilde', 'D2', 'phi0', 'phi1', 'phi2'.  The open test
    requires every slack > margin; the closed test every slack >= -margin.
    """
    tau = complex(tau)
    x = tau.real
    if tau.imag <= 0:
        return False
    if region in ('D', 'phi1'):
        slacks = (x + 0.5, 0.5 - x, abs(tau) - 1)
    elif region == 'Dtilde':
        slacks = (x + 1.5, 0.5 - x, abs(tau) - 1, abs(tau + 1) - 1)
    elif region == 'D2':
        slacks = (x + 1, 1 - x, abs(tau - 0.5) - 0.5, abs(tau + 0.5) - 0.5)
    elif region == 'phi0':
        slacks = (x, 1 - x, abs(tau - 0.5) - 0.5)
    elif region == 'phi2':
        slacks = (x, 0.5 - x, abs(tau) - 1)
    else:
        raise ValueError(f"unknown region {region!r}")
    if closed:
        return all(s >= -margin for s in slacks)
    return all(s > margin for s in slacks)


# --- theta squares and transformation laws ---------------------------------

def _apply_T(squares, n):
    a, b, c = squares
    if n % 2:
        a, b = b, a
    return (a, b, c * 1j ** (n % 4))


def _apply_J(squares, x):
    a, b, c = squares
    f = -1j * x
    return (f * a, f * c, f * b)


def theta_squares(tau):
    """(theta00^2, theta01^2, theta10^2) at any tau in H."""
    tau = as_tau(tau)
    tau0, steps = _reduce_steps(tau)
    squares = tuple(theta(ch, tau0) ** 2 for ch in (TH00, TH01, TH10))
    here = tau0
    for step in reversed(steps):
        if step[0] == 'T':
            squares = _apply_T(squares, -step[1])
            here -= step[1]
        else:
            squares = _apply_J(squares, here)
            here = -1 / here
    return squares


def theta_fourth_powers(tau):
    return tuple(s * s for s in theta_squares(tau))


# value at g.tau = factor * (square of the listed characteristic at tau)
_SQUARED_LAWS = {
    'T': {TH00: (TH01, lambda t: 1), TH01: (TH00, lambda t: 1), TH10: (TH10, lambda t: 1j)},
    'Tinv': {TH00: (TH01, lambda t: 1), TH01: (TH00, lambda t: 1), TH10: (TH10, lambda t: -1j)},
    'J': {TH00: (TH00, lambda t: -1j * t), TH01: (TH10, lambda t: -1j * t), TH10: (TH01, lambda t: -1j * t)},
    'W': {TH00: (TH10, lambda t: -1j * t), TH01: (TH00, lambda t: -1j * t), TH10: (TH01, lambda t: -t)},
    'W2': {TH00: (TH01, lambda t: -1j * (t + 1)), TH01: (TH10, lambda t: t + 1),
           TH10: (TH00, lambda t: -1j * (t + 1))},
}

LAW_MATRICES = {
    'T': T,
    'Tinv': int_power(T, -1),
    'J': J,
    'W': W,
    'W2': W2,
}


def gamma12_character(g):
    """
    chi(g) for g in Gamma_12, after normalising g21 > 0 or (g21 = 0, g22 > 0).

    Returns:
        (normalised g, chi)
    """
    g = np.asarray(g, dtype=np.int64)
    if g[1, 0] < 0 or (g[1, 0] == 0 and g[1, 1] < 0):
        g = -g
    g21, g22 = int(g[1, 0]), int(g[1, 1])
    if g21 % 2 == 0 and g22 % 2 == 1:
        return g, 1j ** ((g22 - 1) % 4)
    if g21 % 2 == 1 and g22 % 2 == 0:
        return g, 1j ** ((-g21) % 4)
    raise UnsupportedElementError(f"{g.tolist()} is not in Gamma_12")


def theta_transform(ch, g, tau):
    """
    Right-hand side of the squared transformation law for theta_ch at g.tau.

    Args:
        ch: theta characteristic
        g: 'T', 'Tinv', 'J', 'W', 'W2', or a Gamma_12 integer matrix (ch = (0,0))

    Returns:
        (expected, factor) with theta_ch(g.tau)^2 = expected = factor * theta_ch'(tau)^2
    """
    tau = as_tau(tau)
    squares = dict(zip((TH00, TH01, TH10), theta_squares(tau)))
    if isinstance(g, str):
        if g not in _SQUARED_LAWS or ch not in _SQUARED_LAWS[g]:
            raise UnsupportedElementError(f"no squared law for theta{ch} under {g}")
        source, factor_fn = _SQUARED_LAWS[g][ch]
        factor = complex(factor_fn(tau))
        return factor * squares[source], factor

    g = np.asarray(g, dtype=np.int64)
    if ch != TH00 or int_det(g) != 1 or not group_membership(g, GroupId.Gamma12):
        raise UnsupportedElementError(f"no law for theta{ch} under {g.tolist()}")
    g, chi = gamma12_character(g)
    factor = chi * (int(g[1, 0]) * tau + int(g[1, 1]))
    return factor * squares[TH00], factor


# --- modular functions ----------------------------------------------------

def modular_lambda(tau):
    """lambda(tau) = theta10^4 / theta00^4."""
    a, _, c = theta_squares(tau)
    return (c / a) ** 2


_LAMBDA_ACTIONS = {
    'I': lambda lam: lam,
    'T': lambda lam: lam / (lam - 1),
    'J': lambda lam: 1 - lam,
    'W': lambda lam: 1 - 1 / lam,
    'W2': lambda lam: 1 / (1 - lam),
    'JinvTJ': lambda lam: 1 / lam,
}


def lambda_action(g, lam):
    """lambda(g.tau) in terms of lambda(tau) for g in SL2(Z)/Gamma(2)."""
    return _LAMBDA_ACTIONS[g](complex(lam))


def _check_pole(what, tau, numerator, denominator):
    if abs(denominator) < POLE_RATIO * abs(numerator):
        raise AtPole(what, tau)


def nu(tau, form='theta'):
    """
    nu = 3 sqrt(3) i theta00^4 theta01^4 theta10^4 / (theta00^4 + omega theta10^4)^3
       = 3 sqrt(3) i lambda (1 - lambda) / (lambda + omega^2)^3

    Raises:
        AtPole: on the Gamma(2)^{1/3}-orbit of -omega^2
    """
    tau = as_tau(tau)
    if form == 'theta':
        a4, b4, c4 = theta_fourth_powers(tau)
        num = 3 * SQRT3 * 1j * a4 * b4 * c4
        den = (a4 + OMEGA * c4) ** 3
    elif form == 'lambda':
        lam = modular_lambda(tau)
        num = 3 * SQRT3 * 1j * lam * (1 - lam)
        den = (lam + OMEGA ** 2) ** 3
    else:
        raise ValueError(f"unknown nu form {form!r}")
    _check_pole('nu', tau, num, den)
    return num / den


def j_invariant(tau, form='theta'):
    """
    j = (1/54)(theta00^8 + theta01^8 + theta10^8)^3 / (theta00 theta01 theta10)^8
      = (4/27)(lambda^2 - lambda + 1)^3 / (lambda^2 (1 - lambda)^2)

    Normalised so that j(i) = 1; 1728 j = 1/q + 744 + ...
    """
    tau = as_tau(tau)
    if form == 'theta':
        a, b, c = theta_squares(tau)
        return (a ** 4 + b ** 4 + c ** 4) ** 3 / (54 * (a * b * c) ** 4)
    if form == 'lambda':
        lam = modular_lambda(tau)
        return 4 / 27 * (lam * lam - lam + 1) ** 3 / (lam * lam * (1 - lam) ** 2)
    raise ValueError(f"unknown j form {form!r}")


def inverse_j(tau):
    """
    1/j(tau).

    Raises:
        AtPole: on the SL2(Z)-orbit of -omega^2, where j vanishes
    """
    tau = as_tau(tau)
    a, b, c = theta_squares(tau)
    num = 54 * (a * b * c) ** 4
    den = (a ** 4 + b ** 4 + c ** 4) ** 3
    _check_pole('1/j', tau, num, den)
    return num / den


def j_from_nu(nu_value):
    return 4 * (nu_value - 1) / nu_value ** 2


def inverse_j_from_nu(nu_value):
    return nu_value ** 2 / (4 * (nu_value - 1))


# --- E4 -------------------------------------------------------------------

ZETA4_TWICE = PI ** 4 / 45


def sigma3(n_max):
    """Array of sigma_3(n) for n = 0..n_max."""
    sig = np.zeros(n_max + 1, dtype=float)
    for d in range(1, n_max + 1):
        sig[d::d] += float(d) ** 3
    return sig


def _e4_fourier(tau):
    red = reduce_fundamental(tau)
    q = cmath.exp(2j * PI * red.tau0)
    n_max = max(4, math.ceil(40 * math.log(10) / (2 * PI * red.tau0.imag)))
    sig = sigma3(n_max)
    powers = q ** np.arange(n_max + 1)
    value = 1 + 240 * complex(np.sum(sig[1:] * powers[1:]))
    g21, g22 = int(red.g[1, 0]), int(red.g[1, 1])
    return (g21 * red.tau0 + g22) ** 4 * value


def _lattice_sum(tau, radius):
    n = np.arange(-radius, radius + 1)
    n1, n2 = np.meshgrid(n, n, indexing='ij')
    weight = np.ones(n1.shape)
    weight[np.abs(n1) == radius] *= 0.5
    weight[np.abs(n2) == radius] *= 0.5
    weight[radius, radius] = 0.0
    points = n1 * tau + n2
    points[radius, radius] = 1.0
    return complex(np.sum(weight / points ** 4))


def _e4_lattice(tau, radius):
    full = _lattice_sum(tau, radius)
    half = _lattice_sum(tau, radius // 2)
    # truncation error ~ C / R^2: Richardson between R and R/2
    return (4 * full - half) / 3 / ZETA4_TWICE


def e4(tau, method='theta', radius=200):
    """Normalised Eisenstein series of weight 4."""
    tau = as_tau(tau)
    if method == 'theta':
        a, b, c = theta_squares(tau)
        return (a ** 4 + b ** 4 + c ** 4) / 2
    if method == 'fourier':
        return _e4_fourier(tau)
    if method == 'lattice':
        return _e4_lattice(tau, radius)
    raise ValueError(f"unknown E4 method {method!r}")


# --- q-expansions ---------------------------------------------------------

@dataclass(frozen=True)
class FourierSeries:
    """c_0 .. c_N in powers of q = exp(2 pi i tau), optional 1/q coefficient."""

    coefficients: tuple
    polar: Optional[complex]
    residual: float
    im0: float

    def rounded(self):
        return tuple(round(c.real) for c in self.coefficients)

    def rounding_error(self):
        errs = [abs(c - round(c.real)) for c in self.coefficients]
        if self.polar is not None:
            errs.append(abs(self.polar - round(self.polar.real)))
        return max(errs)

    def __call__(self, tau):
        q = cmath.exp(2j * PI * complex(tau))
        value = sum(c * q ** n for n, c in enumerate(self.coefficients))
        if self.polar is not None:
            value += self.polar / q
        return value


def q_expand(fn, N, im0=1.1, samples=128, polar=False, alias_tol=1e-8):
    """
    Fourier coefficients of a 1-periodic function by discrete orthogonality
    on the segment Im(tau) = im0.

    Raises:
        AliasingError: when the unused part of the spectrum is not negligible
    """
    samples = max(samples, 4 * (N + 2))
    x = np.arange(samples) / samples
    values = np.array([fn(complex(xk, im0)) for xk in x], dtype=complex)
    spectrum = np.fft.fft(values) / samples
    scale = float(np.max(np.abs(values)))

    # the 1/q coefficient sits in the last bin
    upper = np.abs(spectrum[samples // 2:samples - 1])
    if float(np.max(upper)) > alias_tol * scale:
        raise AliasingError(f"upper spectrum {float(np.max(upper)):.2e} exceeds {alias_tol:.0e} * {scale:.3g}")

    coeffs = tuple(complex(spectrum[n] * math.exp(2 * PI * n * im0)) for n in range(N + 1))
    polar_coeff = complex(spectrum[-1] * math.exp(-2 * PI * im0)) if polar else None
    series = FourierSeries(coeffs, polar_coeff, 0.0, im0)

    shifted = [complex((k + 0.5) / 8, im0) for k in range(8)]
    residual = max(abs(fn(t) - series(t)) for t in shifted)
    logger.debug("q_expand residual %.3e at im0=%s", residual, im0)
    return FourierSeries(coeffs, polar_coeff, residual, im0)
