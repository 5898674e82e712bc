"""
Identity verification engine.

Every identity is a registry entry whose `sides` callable returns a list of
(component, lhs, rhs) triples.  Left-hand sides come from theta constants
and modular functions, right-hand sides from the hypergeometric module
composed with modular arguments, so the two never share an evaluation path.
Only squares and fourth powers of F are ever compared.
"""

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from typing import Callable

import numpy as np
from scipy.stats import qmc

from models.errors import AtPole, CuspError, IdentityDomainError
from models.hypergeometric import J_PARAMS, LAMBDA_PARAMS, NU_PARAMS, hg_principal
from models.modular import (MIN_DIRECT_IM, POLE_RATIO, TH00, TH01, TH10, e4, in_domain, inverse_j,
                            j_invariant, modular_lambda, nu, q_expand, theta, theta_fourth_powers, theta_squares)
from models.numcore import OMEGA, SQRT3
from models.schwarz import SchwarzId, schwarz_map

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
QUARTIC_TOL = 1e-12
FOURIER_TOL = 1e-4
GRID_MARGIN = 0.02
FE_RADIUS = 0.15
FOURIER_HEIGHT = 1.1


def _F(p, z):
    return hg_principal(p, z)


def _direct_fourth_powers(tau):
    if tau.imag < MIN_DIRECT_IM:
        raise IdentityDomainError(f"direct theta sums need Im(tau) >= {MIN_DIRECT_IM}")
    return tuple(theta(ch, tau) ** 4 for ch in (TH00, TH01, TH10))


# --- sides of each identity -----------------------------------------------

def _jacobi_id_theta(tau):
    a4, b4, c4 = _direct_fourth_powers(tau)
    return [('theta00^4 = theta01^4 + theta10^4', a4, b4 + c4)]


def _jacobi_formula(tau):
    a, _, _ = theta_squares(tau)
    return [('theta00^2 = F(lambda)', a, _F(LAMBDA_PARAMS, modular_lambda(tau)))]


def _jacobi_T(tau):
    _, b, _ = theta_squares(tau)
    lam = modular_lambda(tau)
    return [('theta01^2 = F(lambda/(lambda-1))', b, _F(LAMBDA_PARAMS, lam / (lam - 1)))]


def _jacobi_pullback(z):
    a, b, _ = theta_squares(schwarz_map(SchwarzId.phi0, z))
    return [
        ('F(z) = theta00(phi0)^2', _F(LAMBDA_PARAMS, z), a),
        ('F(z/(z-1)) = theta01(phi0)^2', _F(LAMBDA_PARAMS, z / (z - 1)), b),
    ]


def _j621(tau):
    a4, _, c4 = theta_fourth_powers(tau)
    return [('theta00^4 + w theta10^4 = F(nu)^2', a4 + OMEGA * c4, _F(NU_PARAMS, nu(tau)) ** 2)]


def _j621_inv(tau):
    a4, b4, c4 = theta_fourth_powers(tau)
    lhs = b4 - OMEGA * c4
    den = lhs ** 3
    num = -3 * SQRT3 * 1j * a4 * b4 * c4
    if abs(den) < POLE_RATIO * abs(num):
        raise AtPole('nu(T tau)', tau)
    v = nu(tau)
    return [
        ('theta01^4 - w theta10^4 = F(nu(T tau))^2', lhs, _F(NU_PARAMS, num / den) ** 2),
        ('theta01^4 - w theta10^4 = F(nu/(nu-1))^2', lhs, _F(NU_PARAMS, v / (v - 1)) ** 2),
    ]


def _quartic_components(tau):
    a4, b4, c4 = _direct_fourth_powers(tau)
    w, w2 = OMEGA, OMEGA ** 2
    first = a4 + w * c4
    second = a4 + w2 * c4
    e4_value = (a4 * a4 + b4 * b4 + c4 * c4) / 2
    return [
        ('theta00^4 + w theta10^4 = theta01^4 - w^2 theta10^4', first, b4 - w2 * c4),
        ('theta00^4 + w theta10^4 = -w^2 theta00^4 - w theta01^4', first, -w2 * a4 - w * b4),
        ('theta00^4 + w theta10^4 = (1-w^2)/3 (...)', first, (1 - w2) / 3 * (a4 - w * b4 - w2 * c4)),
        ('theta00^4 + w^2 theta10^4 = theta01^4 - w theta10^4', second, b4 - w * c4),
        ('theta00^4 + w^2 theta10^4 = -w theta00^4 - w^2 theta01^4', second, -w * a4 - w2 * b4),
        ('theta00^4 + w^2 theta10^4 = (1-w)/3 (...)', second, (1 - w) / 3 * (a4 - w2 * b4 - w * c4)),
        ('E4 = theta00^8 - theta00^4 theta10^4 + theta10^8', e4_value, a4 * a4 - a4 * c4 + c4 * c4),
        ('E4 = theta00^8 - theta00^4 theta01^4 + theta01^8', e4_value, a4 * a4 - a4 * b4 + b4 * b4),
        ('E4 = theta01^8 + theta01^4 theta10^4 + theta10^8', e4_value, b4 * b4 + b4 * c4 + c4 * c4),
    ]


def _e4_product(tau):
    v = nu(tau)
    rhs = _F(NU_PARAMS, v) ** 2 * _F(NU_PARAMS, v / (v - 1)) ** 2
    return [
        ('E4 theta form = F(nu)^2 F(nu/(nu-1))^2', e4(tau, 'theta'), rhs),
        ('E4 q-series = F(nu)^2 F(nu/(nu-1))^2', e4(tau, 'fourier'), rhs),
    ]


def _e4_j_formula(tau):
    return [('E4 = F(1/j)^4', e4(tau, 'theta'), _F(J_PARAMS, inverse_j(tau)) ** 4)]


def _pullback_phi1(z):
    tau = schwarz_map(SchwarzId.phi1, z)
    a4, b4, c4 = theta_fourth_powers(tau)
    f = _F(NU_PARAMS, z) ** 2
    g = _F(NU_PARAMS, z / (z - 1)) ** 2
    return [
        ('F(z)^2 = theta00^4 + w theta10^4', f, a4 + OMEGA * c4),
        ('F(z/(z-1))^2 = theta00^4 + w^2 theta10^4', g, a4 + OMEGA ** 2 * c4),
        ('F(z)^2 F(z/(z-1))^2 = theta octic / 2', f * g, (a4 * a4 + b4 * b4 + c4 * c4) / 2),
        ('F(z)^2 F(z/(z-1))^2 = E4(phi1)', f * g, e4(tau, 'fourier')),
    ]


def _pullback_phi2(z):
    tau = schwarz_map(SchwarzId.phi2, z)
    f4 = _F(J_PARAMS, z) ** 4
    return [
        ('F(z)^4 = theta octic / 2', f4, e4(tau, 'theta')),
        ('F(z)^4 = E4(phi2)', f4, e4(tau, 'fourier')),
    ]


def _lambda_pair(z):
    return _F(LAMBDA_PARAMS, z), _F(LAMBDA_PARAMS, z / (z - 1))


def _fe1(z):
    f0, f1 = _lambda_pair(z)
    arg = 3 * SQRT3 * 1j * z * (1 - z) / (1 + OMEGA * z) ** 3
    return [('fe1', _F(NU_PARAMS, arg) ** 2, -OMEGA ** 2 * f0 ** 2 - OMEGA * f1 ** 2)]


def _fe2(z):
    f0, f1 = _lambda_pair(z)
    arg = -3 * SQRT3 * 1j * z * (1 - z) / (z + OMEGA) ** 3
    return [('fe2', _F(NU_PARAMS, arg) ** 2, -OMEGA * f0 ** 2 - OMEGA ** 2 * f1 ** 2)]


def _fe3(z):
    lhs = _F(J_PARAMS, z * z / (4 * (z - 1))) ** 2
    return [('fe3', lhs, _F(NU_PARAMS, z) * _F(NU_PARAMS, z / (z - 1)))]


def _fe4(z):
    f0, f1 = _lambda_pair(z)
    arg = 27 * z * z * (1 - z) ** 2 / (4 * (z * z - z + 1) ** 3)
    return [('fe4', _F(J_PARAMS, arg) ** 4, f0 ** 4 + f1 ** 4 - f0 ** 2 * f1 ** 2)]


# --- Fourier acceptance ---------------------------------------------------

def _f_of_inverse_j(k):
    def fn(tau):
        return _F(J_PARAMS, inverse_j(tau)) ** k
    return fn


def _scaled_j(tau):
    return 1728 * j_invariant(tau)


@dataclass(frozen=True)
class FourierTarget:
    fn: Callable
    expected: tuple
    polar: int = None


FOURIER_TARGETS = {
    'fourier_F1': FourierTarget(_f_of_inverse_j(1), (1, 60, -4860, 660480)),
    'fourier_F2': FourierTarget(_f_of_inverse_j(2), (1, 120, -6120, 737760)),
    'fourier_e4': FourierTarget(_f_of_inverse_j(4), (1, 240, 2160, 6720)),
    'fourier_1728j': FourierTarget(_scaled_j, (744, 196884), polar=1),
}


# --- registry -------------------------------------------------------------

@dataclass(frozen=True)
class IdentitySpec:
    """
    tag: identity name
    domain: 'H', 'D', 'Dtilde', 'D2', 'lens', 'fe' or 'height'
    sides: point -> [(component, lhs, rhs)], None for Fourier targets
    """

    tag: str
    domain: str
    sides: Callable = None
    tol: float = None


REGISTRY = {spec.tag: spec for spec in (
    IdentitySpec('jacobi_id_theta', 'H', _jacobi_id_theta),
    IdentitySpec('jacobi_formula', 'D2', _jacobi_formula),
    IdentitySpec('jacobi_T', 'D2', _jacobi_T),
    IdentitySpec('jacobi_pullback', 'lens', _jacobi_pullback),
    IdentitySpec('j621', 'Dtilde', _j621),
    IdentitySpec('j621_inv', 'Dtilde', _j621_inv),
    IdentitySpec('theta_quartic_relations', 'H', _quartic_components),
    IdentitySpec('e4_product', 'Dtilde', _e4_product),
    IdentitySpec('e4_j_formula', 'D', _e4_j_formula),
    IdentitySpec('pullback_phi1', 'lens', _pullback_phi1),
    IdentitySpec('pullback_phi2', 'lens', _pullback_phi2),
    IdentitySpec('fe1', 'fe', _fe1),
    IdentitySpec('fe2', 'fe', _fe2),
    IdentitySpec('fe3', 'fe', _fe3),
    IdentitySpec('fe4', 'fe', _fe4),
    IdentitySpec('fourier_e4', 'height', tol=FOURIER_TOL),
    IdentitySpec('fourier_F2', 'height', tol=FOURIER_TOL),
    IdentitySpec('fourier_F1', 'height', tol=FOURIER_TOL),
    IdentitySpec('fourier_1728j', 'height', tol=FOURIER_TOL),
)}

IDENTITY_TAGS = tuple(REGISTRY)
Z_DOMAINS = ('lens', 'fe')


def in_identity_domain(domain, point, closed=True, margin=0.0):
    point = complex(point)
    if domain in ('D', 'Dtilde', 'D2'):
        return in_domain(point, domain, closed=closed, margin=margin)
    if domain == 'H':
        return point.imag > 0
    if domain == 'height':
        return point.imag >= 1.05
    if domain == 'lens':
        slacks = (1 - abs(point), 1 - abs(1 - point))
    elif domain == 'fe':
        slacks = (FE_RADIUS - abs(point),)
    else:
        raise ValueError(f"unknown identity domain {domain!r}")
    if closed:
        return all(s >= -margin for s in slacks)
    return all(s > margin for s in slacks)


# --- reports --------------------------------------------------------------

def _complex_to_dict(value):
    if value is None:
        return None
    value = complex(value)
    return {'re': value.real, 'im': value.imag}


def _complex_from_dict(data):
    if data is None:
        return None
    return complex(data['re'], data['im'])


@dataclass
class CheckReport:
    id: str
    point: complex
    lhs: complex
    rhs: complex
    residual: float
    rel_residual: float
    tol: float
    passed: bool
    skipped: bool = False
    detail: dict = field(default_factory=dict)

    @classmethod
    def from_sides(cls, tag, point, components, tol):
        """Worst component decides; every component residual lands in detail."""
        detail = {}
        worst = None
        for name, lhs, rhs in components:
            lhs, rhs = complex(lhs), complex(rhs)
            residual = abs(lhs - rhs)
            scale = max(abs(lhs), abs(rhs))
            rel = residual / scale if scale else 0.0
            detail[name] = residual
            score = min(residual, rel)
            if worst is None or score > worst[0]:
                worst = (score, lhs, rhs, residual, rel)
        _, lhs, rhs, residual, rel = worst
        passed = residual <= tol or rel <= tol
        return cls(tag, complex(point), lhs, rhs, residual, rel, tol, passed, detail=detail)

    @classmethod
    def skip(cls, tag, point, tol, reason):
        return cls(tag, complex(point), None, None, float('nan'), float('nan'), tol, False,
                   skipped=True, detail={'reason': reason})

    def to_dict(self):
        return {
            'id': self.id,
            'point': _complex_to_dict(self.point),
            'lhs': _complex_to_dict(self.lhs),
            'rhs': _complex_to_dict(self.rhs),
            'residual': self.residual,
            'rel_residual': self.rel_residual,
            'tol': self.tol,
            'passed': self.passed,
            'skipped': self.skipped,
            'detail': self.detail,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            data['id'], _complex_from_dict(data['point']), _complex_from_dict(data['lhs']),
            _complex_from_dict(data['rhs']), data['residual'], data['rel_residual'], data['tol'],
            data['passed'], data.get('skipped', False), data.get('detail', {}),
        )

    def status(self):
        if self.skipped:
            return 'SKIP'
        return 'PASS' if self.passed else 'FAIL'


def _fourier_report(tag, point, tol):
    target = FOURIER_TARGETS[tag]
    im0 = complex(point).imag
    n = len(target.expected) - 1
    series = q_expand(target.fn, n, im0=im0, polar=target.polar is not None)
    coefficients = list(series.coefficients)
    expected = list(target.expected)
    if target.polar is not None:
        coefficients = [series.polar] + coefficients
        expected = [target.polar] + expected
    errors = [abs(c - e) for c, e in zip(coefficients, expected)]
    worst = int(np.argmax(errors))
    rounded = [round(c.real) for c in coefficients]
    residual = errors[worst]
    scale = abs(expected[worst]) or 1.0
    detail = {
        'coefficients': [_complex_to_dict(c) for c in coefficients],
        'rounded': rounded,
        'expected': expected,
        'series_residual': series.residual,
    }
    passed = rounded == expected and residual < tol
    return CheckReport(tag, complex(point), coefficients[worst], complex(expected[worst]),
                       residual, residual / scale, tol, passed, detail=detail)


def check_identity(tag, point, tol=DEFAULT_TOL):
    """
    Evaluate both sides of identity `tag` at `point`.

    Raises:
        IdentityDomainError: point outside the closed domain of the identity
    """
    if tag not in REGISTRY:
        raise KeyError(f"unknown identity {tag!r}")
    spec = REGISTRY[tag]
    point = complex(point)
    if not in_identity_domain(spec.domain, point, closed=True, margin=1e-12):
        raise IdentityDomainError(f"{tag} is stated on {spec.domain}; {point} is outside")
    tol = spec.tol if spec.tol is not None else tol

    if spec.sides is None:
        return _fourier_report(tag, point, tol)
    try:
        components = spec.sides(point)
    except (AtPole, CuspError) as exc:
        logger.info("%s skipped at %s: %s", tag, point, exc)
        return CheckReport.skip(tag, point, tol, str(exc))
    return CheckReport.from_sides(tag, point, components, tol)


def check_theta_quartics(tau, tol=QUARTIC_TOL):
    """One report per chained theta quartic equality at tau."""
    tau = complex(tau)
    return [CheckReport.from_sides('theta_quartic_relations', tau, [component], tol)
            for component in _quartic_components(tau)]


def fourier_acceptance(im0=FOURIER_HEIGHT):
    return [check_identity(tag, complex(0, im0)) for tag in FOURIER_TARGETS]


# --- sample grids ---------------------------------------------------------

_BOXES = {
    'D': ((-0.5, 0.5), (0.85, 2.5)),
    'Dtilde': ((-1.5, 0.5), (0.85, 2.5)),
    'D2': ((-1.0, 1.0), (0.05, 2.0)),
    'H': ((-1.5, 0.5), (0.85, 2.5)),
    'lens': ((0.0, 1.0), (0.0, 0.9)),
    'fe': ((-FE_RADIUS, FE_RADIUS), (-FE_RADIUS, FE_RADIUS)),
}


@dataclass(frozen=True)
class GridSpec:
    tau_points: int = 10
    z_points: int = 10
    seed: int = 2024
    margin: float = GRID_MARGIN
    height: float = FOURIER_HEIGHT


def sample_grid(domain, n, seed=2024, margin=GRID_MARGIN):
    """
    n seeded scrambled Halton points inside the open domain (with margin).
    The lens grid is the upper half of the lens plus its mirror image.
    """
    mirrored = domain == 'lens'
    wanted = (n + 1) // 2 if mirrored else n
    (x0, x1), (y0, y1) = _BOXES[domain]
    sampler = qmc.Halton(d=2, scramble=True, seed=seed)
    points = []
    for _ in range(200):
        batch = qmc.scale(sampler.random(64), [x0, y0], [x1, y1])
        for x, y in batch:
            p = complex(x, y)
            if mirrored and p.imag <= margin:
                continue
            if in_identity_domain(domain, p, closed=False, margin=margin):
                points.append(p)
                if len(points) == wanted:
                    break
        if len(points) == wanted:
            break
    if mirrored:
        points = points + [p.conjugate() for p in points]
        points = points[:n]
    logger.debug("grid %s: %d points (seed %d)", domain, len(points), seed)
    return points


def default_points(grid=None, tags=None):
    grid = grid or GridSpec()
    points = {}
    for tag in (REGISTRY if tags is None else tags):
        spec = REGISTRY[tag]
        if spec.domain == 'height':
            points[tag] = [complex(0, grid.height)]
            continue
        n = grid.z_points if spec.domain in Z_DOMAINS else grid.tau_points
        points[tag] = sample_grid(spec.domain, n, seed=grid.seed, margin=grid.margin)
    return points


# --- suite ----------------------------------------------------------------

@dataclass
class SuiteResult:
    reports: list
    tol: float

    @property
    def failed(self):
        return [r for r in self.reports if not r.passed and not r.skipped]

    @property
    def ok(self):
        return not self.failed

    def summary(self):
        per_tag = {}
        for r in self.reports:
            entry = per_tag.setdefault(r.id, {'passed': 0, 'failed': 0, 'skipped': 0, 'worst': 0.0})
            if r.skipped:
                entry['skipped'] += 1
                continue
            entry['passed' if r.passed else 'failed'] += 1
            entry['worst'] = max(entry['worst'], min(r.residual, r.rel_residual))
        return {
            'total': len(self.reports),
            'passed': sum(r.passed for r in self.reports),
            'failed': len(self.failed),
            'skipped': sum(r.skipped for r in self.reports),
            'tol': self.tol,
            'identities': per_tag,
        }


def _run_check(job):
    tag, point, tol = job
    return check_identity(tag, point, tol)


def verify_suite(grid=None, tol=DEFAULT_TOL, points=None, tags=None, threads=4):
    """
    Run every selected identity over its grid.

    Args:
        grid: GridSpec for the seeded default grids
        points: optional {tag: [points]} replacing the grid for those tags
        tags: subset of identity tags
        threads: worker count; results keep the job order
    """
    tags = list(tags or IDENTITY_TAGS)
    points = dict(points or {})
    # grids only for tags without explicit points
    grid_points = default_points(grid, [t for t in tags if t not in points])
    grid_points.update(points)
    jobs = [(tag, p, tol) for tag in tags for p in grid_points[tag]]
    logger.info("📊 verifying %d identities at %d points", len(tags), len(jobs))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        reports = list(pool.map(_run_check, jobs))
    result = SuiteResult(reports, tol)
    summary = result.summary()
    if result.ok:
        logger.info("✅ %d passed, %d skipped", summary['passed'], summary['skipped'])
    else:
        logger.warning("❌ %d of %d checks failed", summary['failed'], summary['total'])
    return result


# --- persistence ----------------------------------------------------------

def save_reports(reports, path):
    """Write reports as JSON; parent directories are created."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    payload = {
        'created': datetime.now().isoformat(timespec='seconds'),
        'reports': [r.to_dict() for r in reports],
    }
    with open(path, 'w') as f:
        json.dump(payload, f, indent=2)
    logger.info("💾 %d reports saved to %s", len(reports), path)
    return path


def load_reports(path):
    with open(path, 'r') as f:
        payload = json.load(f)
    reports = [CheckReport.from_dict(item) for item in payload['reports']]
    logger.info("📂 %d reports loaded from %s", len(reports), path)
    return reports
