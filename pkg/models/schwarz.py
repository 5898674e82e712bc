"""
Schwarz maps of the three hypergeometric equations and their inverses.

    phi0(z) = i F(1/2,1/2,1;1-z) / F(1/2,1/2,1;z)                  inverse lambda
    phi1(z) = omega^2 + i B(1/6,1/2)/pi F(1/6,1/2,2/3;1-z) / F(1/6,1/2,1;z)
                                                                      inverse nu
    phi2(z) = i B(1/12,5/12)/(2 pi) F(1/12,5/12,1/2;1-z) / F(1/12,5/12,1;z) - i
                                                                      inverse 1/j
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

from models.errors import CuspError, DomainError
from models.hypergeometric import HGParams, J_PARAMS, LAMBDA_PARAMS, NU_PARAMS, hg_principal
from models.modular import in_domain, inverse_j, modular_lambda, nu
from models.monodromy import triangle_data
from models.numcore import OMEGA, PI, beta

logger = logging.getLogger(__name__)

I_INFINITY = complex(0.0, math.inf)
CUSP_RATIO = 1e8
VERTEX_WARNING_DISTANCE = 1e-3


class SchwarzId(str, Enum):
    phi0 = 'phi0'
    phi1 = 'phi1'
    phi2 = 'phi2'


@dataclass(frozen=True)
class SchwarzData:
    params: HGParams
    # F(a, b, a+b-c+1; 1-z) in the numerator
    conjugate: HGParams
    scale: complex
    offset: complex
    vertices: tuple
    region: str


_MAPS = {
    SchwarzId.phi0: SchwarzData(
        LAMBDA_PARAMS, HGParams.of('1/2', '1/2', 1), 1j, 0j,
        (I_INFINITY, 0j, 1 + 0j), 'phi0'),
    SchwarzId.phi1: SchwarzData(
        NU_PARAMS, HGParams.of('1/6', '1/2', '2/3'), 1j * beta(1 / 6, 1 / 2) / PI, OMEGA ** 2,
        (I_INFINITY, OMEGA, -OMEGA ** 2), 'phi1'),
    SchwarzId.phi2: SchwarzData(
        J_PARAMS, HGParams.of('1/12', '5/12', '1/2'), 1j * beta(1 / 12, 5 / 12) / (2 * PI), -1j,
        (I_INFINITY, 1j, -OMEGA ** 2), 'phi2'),
}

_INVERSES = {
    SchwarzId.phi0: modular_lambda,
    SchwarzId.phi1: nu,
    SchwarzId.phi2: inverse_j,
}


def schwarz_params(sid):
    return _MAPS[SchwarzId(sid)].params


def vertex_limits(sid):
    """Images of z = 0, 1, infinity; i infinity is complex(0, inf)."""
    return _MAPS[SchwarzId(sid)].vertices


@dataclass(frozen=True)
class SchwarzTriangle:
    vertices: tuple
    angles: tuple
    region: str

    def contains(self, tau, closed=False, margin=0.0):
        return in_domain(tau, self.region, closed=closed, margin=margin)


def schwarz_triangle(sid):
    """Image of the upper half z-plane: vertices, angles (units of pi) and region."""
    data = _MAPS[SchwarzId(sid)]
    angles, _ = triangle_data(data.params)
    return SchwarzTriangle(data.vertices, angles, data.region)


def schwarz_map(sid, z):
    """
    tau = phi_k(z) on the principal sheet C - ((-inf, 0] U [1, inf)).

    Raises:
        CuspError: at z = 0, or when the ratio has run off towards i infinity
        BranchCutError: for real z outside (0, 1)
    """
    sid = SchwarzId(sid)
    data = _MAPS[sid]
    z = complex(z)
    if z == 0:
        raise CuspError(f"{sid.value}(0) is the cusp i infinity")
    if min(abs(z), abs(1 - z)) < VERTEX_WARNING_DISTANCE:
        logger.warning("⚠️ %s evaluated within %.0e of a vertex (z=%s)", sid.value, VERTEX_WARNING_DISTANCE, z)

    numerator = hg_principal(data.conjugate, 1 - z)
    denominator = hg_principal(data.params, z)
    if abs(numerator) > CUSP_RATIO * abs(denominator):
        raise CuspError(f"{sid.value}({z}) is numerically at the cusp")
    tau = data.offset + data.scale * numerator / denominator
    if not tau.imag > 0:
        raise DomainError(f"{sid.value}({z}) = {tau} left the upper half-plane")
    return tau


def inverse_map(sid, tau):
    """lambda, nu or 1/j, the inverse of the corresponding Schwarz map."""
    return _INVERSES[SchwarzId(sid)](tau)


def roundtrip_residual(sid, z):
    z = complex(z)
    return abs(inverse_map(sid, schwarz_map(sid, z)) - z)
