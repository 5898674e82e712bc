"""
Gauss hypergeometric function F(a,b,c;z) and the solution basis (f1, f2)
of the hypergeometric differential equation

    z(1-z) f'' + {c - (a+b+1) z} f' - ab f = 0.

Evaluation routes for the principal branch on C - [1, inf):

    |z| <= 0.8                  direct series
    |1-z| <= 0.8, c-a-b not int two-term connection at z = 1
    |z/(z-1)| < 0.8             Pfaff transformation
    anything else               Taylor continuation of the ODE
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from models.errors import (BranchCutError, HypothesisError, ParameterError,
                           SeriesConvergenceError)
from models.numcore import beta, gamma, rational, reciprocal_gamma
from models.quadrature import tanh_sinh

logger = logging.getLogger(__name__)

SERIES_RADIUS = 0.8
CONTINUATION_START = 0.5 + 0.5j


@dataclass(frozen=True)
class HGParams:
    """Exact rational parameter triple (a, b, c)."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ('a', 'b', 'c'):
            object.__setattr__(self, name, rational(getattr(self, name)))
        if self.c.denominator == 1 and self.c <= 0:
            raise ParameterError(f"c = {self.c} is a non-positive integer")

    @classmethod
    def of(cls, a, b, c):
        return cls(rational(a), rational(b), rational(c))

    def as_tuple(self):
        return (self.a, self.b, self.c)

    def complex_tuple(self):
        return (complex(self.a), complex(self.b), complex(self.c))

    def check_basis_hypotheses(self):
        """a, b not integers; a > 0, b - c + 1 > 0, c - a > 0."""
        a, b, c = self.a, self.b, self.c
        if a.denominator == 1 or b.denominator == 1:
            raise ParameterError(f"basis needs a, b not integers, got {self}")
        if not (a > 0 and b - c + 1 > 0 and c - a > 0):
            raise ParameterError(f"basis needs a > 0, b-c+1 > 0, c-a > 0, got {self}")

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


# the three triples studied throughout the package
LAMBDA_PARAMS = HGParams.of('1/2', '1/2', 1)
NU_PARAMS = HGParams.of('1/6', '1/2', 1)
J_PARAMS = HGParams.of('1/12', '5/12', 1)
STANDARD_TRIPLES = (LAMBDA_PARAMS, NU_PARAMS, J_PARAMS)


@dataclass(frozen=True)
class SeriesConfig:
    rel_tol: float = 1e-16
    max_terms: int = 4000

    def __post_init__(self):
        if not 0 < self.rel_tol <= 1e-6:
            raise ValueError("rel_tol must lie in (0, 1e-6]")
        if self.max_terms < 64:
            raise ValueError("max_terms must be at least 64")


DEFAULT_SERIES = SeriesConfig()


class BasisPair(NamedTuple):
    f1: complex
    f2: complex


def _params(p):
    a, b, c = p.complex_tuple()
    return a, b, c


def _power(base, exponent):
    """Principal power base**exponent."""
    return cmath.exp(exponent * cmath.log(base))


def hg_series(p, z, cfg=DEFAULT_SERIES):
    """
    Partial sum of the hypergeometric series.

    Stops once three consecutive terms are below rel_tol times the partial
    sum.

    Raises:
        BranchCutError: if |z| >= 1
        SeriesConvergenceError: max_terms reached with |z| >= 0.95
    """
    return hg_series_derivatives(p, z, cfg, order=0)[0]


def hg_series_derivatives(p, z, cfg=DEFAULT_SERIES, order=2):
    """
    F, F' and F'' at z by term-wise differentiation of the series.

    Returns:
        tuple (F, F', F''); entries above `order` are 0
    """
    z = complex(z)
    if abs(z) >= 1:
        raise BranchCutError(f"series used outside the unit disk (|z|={abs(z):.6g})")
    a, b, c = _params(p)

    coeff = 1 + 0j          # (a)_n (b)_n / ((c)_n n!)
    z_n, z_n1, z_n2 = 1 + 0j, 0j, 0j
    sums = [1 + 0j, 0j, 0j]
    quiet = 0
    for n in range(1, cfg.max_terms + 1):
        coeff *= (a + n - 1) * (b + n - 1) / ((c + n - 1) * n)
        z_n2, z_n1, z_n = z_n1, z_n, z_n * z
        terms = (coeff * z_n, n * coeff * z_n1, n * (n - 1) * coeff * z_n2)
        small = True
        for k in range(order + 1):
            sums[k] += terms[k]
            if abs(terms[k]) >= cfg.rel_tol * abs(sums[k]) and terms[k] != 0:
                small = False
        quiet = quiet + 1 if small else 0
        if quiet >= 3:
            return tuple(sums)

    if abs(z) >= 0.95:
        raise SeriesConvergenceError(
            f"F{p} series did not converge in {cfg.max_terms} terms at z={z}"
        )
    logger.warning("⚠️ F%s series hit max_terms=%d at z=%s", p, cfg.max_terms, z)
    return tuple(sums)


def connection_coefficients(p):
    """
    (A, B) in F(a,b,c;z) = A F(a,b,a+b-c+1;1-z) + B (1-z)^(c-a-b) F(c-a,c-b,c-a-b+1;1-z).

    Raises:
        HypothesisError: when c-a-b is an integer (logarithmic case)
    """
    s = p.c - p.a - p.b
    if s.denominator == 1:
        raise HypothesisError(f"c-a-b = {s} is an integer; no two-term connection")
    a, b, c = _params(p)
    A = gamma(c) * gamma(c - a - b) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b)
    B = gamma(c) * gamma(a + b - c) * reciprocal_gamma(a) * reciprocal_gamma(b)
    return A, B


def _taylor_step(a, b, c, z0, y0, dy0, h, rel_tol=1e-17):
    """
    Advance (y, y') of the hypergeometric ODE from z0 to z0 + h.

    The recurrence runs on scaled coefficients c_n = y_n h^n, which stay
    bounded when |h| is at most half the distance from z0 to {0, 1}.
    """
    A = z0 * (1 - z0)
    B = 1 - 2 * z0
    C = c - (a + b + 1) * z0
    D = -(a + b + 1)
    ab = a * b

    c_prev, c_cur = y0, dy0 * h      # c_n, c_{n+1}
    value = c_prev + c_cur
    slope = c_cur                    # sum of n c_n
    quiet = 0
    n = 0
    while quiet < 3 and n < 400:
        c_next = -((B * n + C) * (n + 1) * h * c_cur + (-n * (n - 1) + D * n - ab) * h * h * c_prev) / (
            A * (n + 1) * (n + 2)
        )
        value += c_next
        slope += (n + 2) * c_next
        small = abs(c_next) < rel_tol * abs(value) and (n + 2) * abs(c_next) < rel_tol * max(abs(slope), 1e-300)
        quiet = quiet + 1 if small else 0
        c_prev, c_cur = c_cur, c_next
        n += 1
    return value, slope / h


def _taylor_continue(p, z):
    """Principal F at z by integrating the ODE along a straight path."""
    a, b, c = _params(p)
    start = CONTINUATION_START if z.imag >= 0 else CONTINUATION_START.conjugate()
    y, dy = hg_series_derivatives(p, start, order=1)[:2]
    here = start
    steps = 0
    while here != z:
        radius = min(abs(here), abs(1 - here))
        remaining = z - here
        last = abs(remaining) <= 0.5 * radius
        step = remaining if last else remaining / abs(remaining) * 0.5 * radius
        y, dy = _taylor_step(a, b, c, here, y, dy, step)
        here = z if last else here + step
        steps += 1
        if steps > 10_000:
            raise SeriesConvergenceError(f"continuation to z={z} did not terminate")
    logger.debug("F%s at %s by ODE continuation in %d steps", p, z, steps)
    return y


def hg_principal(p, z, cfg=DEFAULT_SERIES):
    """
    Principal branch of F(a,b,c;z) on C - [1, inf).

    Raises:
        BranchCutError: for real z >= 1
    """
    z = complex(z)
    if z.imag == 0 and z.real >= 1:
        raise BranchCutError(f"z={z.real} lies on the branch cut [1, inf)")

    if abs(z) <= SERIES_RADIUS:
        return hg_series(p, z, cfg)

    s = p.c - p.a - p.b
    if not hg_triple_is_log_case(p) and abs(1 - z) <= SERIES_RADIUS:
        A, B = connection_coefficients(p)
        w = 1 - z
        left = HGParams(p.a, p.b, p.a + p.b - p.c + 1)
        right = HGParams(p.c - p.a, p.c - p.b, s + 1)
        logger.debug("F%s at %s by the z=1 connection", p, z)
        return A * hg_series(left, w, cfg) + B * _power(w, complex(s)) * hg_series(right, w, cfg)

    w = z / (z - 1)
    if abs(w) < SERIES_RADIUS:
        logger.debug("F%s at %s by Pfaff", p, z)
        pfaff = HGParams(p.a, p.c - p.b, p.c)
        return _power(1 - z, -complex(p.a)) * hg_series(pfaff, w, cfg)

    return _taylor_continue(p, z)


def hg_basis(p, z):
    """
    The fundamental system

        f1 = exp(-pi i (a-1)) B(a, b-c+1) F(a, b, a+b-c+1; 1-z)
        f2 = B(a, c-a) F(a, b, c; z)

    Raises:
        ParameterError: if a, b are integers or a, b-c+1, c-a are not positive
    """
    p.check_basis_hypotheses()
    a, b, c = _params(p)
    z = complex(z)
    conj = HGParams(p.a, p.b, p.a + p.b - p.c + 1)
    f1 = cmath.exp(-1j * math.pi * (a - 1)) * beta(a, b - c + 1) * hg_principal(conj, 1 - z)
    f2 = beta(a, c - a) * hg_principal(p, z)
    return BasisPair(f1, f2)


EULER_PATHS = ('f1', 'f2', 'zero_to_z', 'z_to_one')


def euler_integral(p, z, which, tol=1e-12):
    """
    Euler integral representation of the basis and of the two eigen-integrals.

    u(t) = t^(b-c) (t-z)^(-b) (t-1)^(c-a-1) is positive on (1, inf) and is
    continued through the upper half t-plane.  After the substitutions
    t = 1/s (f1, f2), t = z s (zero_to_z) and t = z + (1-z) s (z_to_one)
    each integral runs over [0, 1].

    Args:
        which: 'f1', 'f2', 'zero_to_z' or 'z_to_one'
    """
    a, b, c = _params(p)
    z = complex(z)
    A, Bp, Cp = p.a, p.b, p.c

    if which == 'f2':
        if not (A > 0 and Cp - A > 0):
            raise ParameterError(f"f2 integral diverges for {p}")

        def integrand(s, s_bar):
            return s ** (a - 1) * s_bar ** (c - a - 1) * _power(s_bar + s * (1 - z), -b)

        return tanh_sinh(integrand, tol=tol)

    if which == 'f1':
        if not (A > 0 and Bp - Cp + 1 > 0):
            raise ParameterError(f"f1 integral diverges for {p}")

        def integrand(s, s_bar):
            return s ** (a - 1) * s_bar ** (b - c) * _power(s_bar + s * z, -b)

        return cmath.exp(-1j * math.pi * (a - 1)) * tanh_sinh(integrand, tol=tol)

    if which not in EULER_PATHS:
        raise ValueError(f"unknown integral {which!r}")
    if z.imag != 0 or not 0 < z.real < 1:
        raise ParameterError(f"{which} needs real z in (0, 1), got {z}")
    x = z.real
    phase = cmath.exp(1j * math.pi * (c - a - 1))

    if which == 'zero_to_z':
        if not (Bp - Cp > -1 and Bp < 1):
            raise ParameterError(f"zero_to_z integral diverges for {p}")

        def integrand(s, s_bar):
            return s ** (b - c) * s_bar ** (-b) * (s_bar + s * (1 - x)) ** (c - a - 1)

        return phase * cmath.exp(-1j * math.pi * b) * x ** (1 - c) * tanh_sinh(integrand, tol=tol)

    if not (Bp < 1 and Cp - A > 0):
        raise ParameterError(f"z_to_one integral diverges for {p}")

    def integrand(s, s_bar):
        return s ** (-b) * s_bar ** (c - a - 1) * (x + (1 - x) * s) ** (b - c)

    return phase * (1 - x) ** (c - a - b) * tanh_sinh(integrand, tol=tol)


def gauss_limit(p):
    """
    F(a,b,c;1) = Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b)).

    Raises:
        HypothesisError: unless Re(c-a-b) > 0
    """
    if not p.c - p.a - p.b > 0:
        raise HypothesisError(f"Gauss limit needs c-a-b > 0, got {p}")
    a, b, c = _params(p)
    return gamma(c) * gamma(c - a - b) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b)


def in_lens(z):
    z = complex(z)
    return abs(z) < 1 and abs(1 - z) < 1


def wronskian_closed_form(p, z):
    a, b, c = _params(p)
    z = complex(z)
    return (gamma(c) * gamma(a + b - c + 1) * reciprocal_gamma(a) * reciprocal_gamma(b)
            * _power(z, -c) * _power(1 - z, c - a - b - 1))


def wronskian_residual(p, z, cfg=DEFAULT_SERIES):
    """
    |det [[F(..;1-z), d/dz F(..;1-z)], [F(..;z), d/dz F(..;z)]] - closed form|
    with F(..;1-z) = F(a, b, a+b-c+1; 1-z).
    """
    z = complex(z)
    if not in_lens(z):
        raise ParameterError(f"Wronskian check needs z in the lens, got {z}")
    conj = HGParams(p.a, p.b, p.a + p.b - p.c + 1)
    g, dg_w, _ = hg_series_derivatives(conj, 1 - z, cfg, order=1)
    f, df, _ = hg_series_derivatives(p, z, cfg, order=1)
    dg = -dg_w
    return abs(g * df - dg * f - wronskian_closed_form(p, z))


def ode_residual(p, z, cfg=DEFAULT_SERIES):
    """Magnitude of the hypergeometric operator applied to the series at z."""
    z = complex(z)
    if abs(z) >= 0.95:
        raise ParameterError(f"ODE residual needs |z| < 0.95, got {z}")
    a, b, c = _params(p)
    f, df, d2f = hg_series_derivatives(p, z, cfg, order=2)
    return abs(z * (1 - z) * d2f + (c - (a + b + 1) * z) * df - a * b * f)


def hg_triple_is_log_case(p):
    """True when c-a-b is an integer, so the z=1 connection has logarithms."""
    return (p.c - p.a - p.b).denominator == 1
