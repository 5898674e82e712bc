"""
Monodromy of the hypergeometric equation, done exactly in Q(zeta_24).

Circuit matrices act on row vectors of the basis (f1, f2): continuing
(f1, f2) once around z = 0 (resp. 1) counterclockwise gives (f1, f2) M0
(resp. M1).
"""

import cmath
import logging
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from models.cyclotomic import ONE, ZERO, CycloMatrix, CycloNumber
from models.errors import ConjugatorError, DeterminantError
from models.hypergeometric import J_PARAMS, LAMBDA_PARAMS, NU_PARAMS, euler_integral, hg_basis
from models.numcore import I2, J, T, W, W2, int_det, int_inverse, int_power

logger = logging.getLogger(__name__)

INFINITY = math.inf


def e(r):
    """exp(2 pi i r), exact."""
    return CycloNumber.exp2pi(r)


@dataclass(frozen=True)
class RiemannScheme:
    """Local exponents at 0, 1, inf and their differences."""

    at_zero: tuple
    at_one: tuple
    at_infinity: tuple

    @property
    def differences(self):
        return tuple(hi - lo for lo, hi in (self.at_zero, self.at_one, self.at_infinity))

    def to_dict(self):
        return {
            'z=0': [str(x) for x in self.at_zero],
            'z=1': [str(x) for x in self.at_one],
            'z=inf': [str(x) for x in self.at_infinity],
            'difference': [str(x) for x in self.differences],
        }


def riemann_scheme(p):
    """Exponents (0, 1-c), (0, c-a-b), (a, b)."""
    a, b, c = p.as_tuple()
    return RiemannScheme((Fraction(0), 1 - c), (Fraction(0), c - a - b), (a, b))


@dataclass(frozen=True)
class CircuitSet:
    params: object
    M0: CycloMatrix
    M1: CycloMatrix
    Minf: CycloMatrix
    MinfPrime: CycloMatrix


def circuit_matrices(p):
    """
    Exact circuit matrices

        M0 = [[e(-c), e(-c) - e(-a)], [0, 1]]
        M1 = [[1, 0], [e(c-b) - 1, e(c-a-b)]]

    with Minf = (M0 M1)^-1 and MinfPrime = (M1 M0)^-1, e(r) = exp(2 pi i r).
    """
    p.check_basis_hypotheses()
    a, b, c = p.as_tuple()
    M0 = CycloMatrix(e(-c), e(-c) - e(-a), 0, 1)
    M1 = CycloMatrix(1, 0, e(c - b) - 1, e(c - a - b))
    return CircuitSet(p, M0, M1, (M0 @ M1).inverse(), (M1 @ M0).inverse())


def infinity_circuit(cs, orientation='upper'):
    """
    Circuit matrix around infinity with its eigen rows.

    Returns:
        (matrix, [(eigenvalue, (v1, v2)), ...]) with eigenvalues e(a), e(b)
    """
    a, b, c = cs.params.as_tuple()
    if orientation == 'upper':
        rows = [
            (e(a), (e(a + b) - e(a + c), e(a) - e(c))),
            (e(b), (e(a), ONE)),
        ]
        return cs.Minf, rows
    if orientation == 'lower':
        rows = [
            (e(a), (e(a + b) - e(a + c), e(a + b) - e(b + c))),
            (e(b), (ONE, ONE)),
        ]
        return cs.MinfPrime, rows
    raise ValueError(f"orientation must be 'upper' or 'lower', got {orientation!r}")


def is_left_eigen_row(m, eigenvalue, row):
    v1, v2 = row
    return (v1 * m[0, 0] + v2 * m[1, 0] == eigenvalue * v1
            and v1 * m[0, 1] + v2 * m[1, 1] == eigenvalue * v2)


# target (integer matrix, exponent k of the scalar zeta_24^k) for N1
CONJUGATION_TARGETS = {
    NU_PARAMS: (W, 16),   # omega^2 W
    J_PARAMS: (J, 6),     # i J
}


@dataclass(frozen=True)
class Conjugator:
    """R with R Mi R^-1 = zeta_24^ki * gi, gi integral of determinant 1."""

    R: CycloMatrix
    N0: CycloMatrix
    N1: CycloMatrix
    scalars: tuple      # (k0, k1)
    integer_parts: tuple
    x: CycloNumber

    @property
    def Ninf(self):
        return (self.N0 @ self.N1).inverse()


def _right_eigenvector(g, lam):
    g = CycloMatrix.from_int(g)
    v = (g[0, 1], lam - g[0, 0])
    if v[0].is_zero() and v[1].is_zero():
        v = (lam - g[1, 1], g[1, 0])
    return v


def _height(x):
    return sum(abs(c.numerator) + c.denominator for c in x.coeffs if c)


def _quadratic_roots(q1, q2, q3):
    """Roots of the quadratic through (1, q1), (2, q2), (3, q3), exactly."""
    A = (q1 - q2 * 2 + q3) * Fraction(1, 2)
    B = q2 - q1 - A * 3
    C = q1 - A - B
    if A.is_zero():
        if B.is_zero():
            return []
        return [-C / B]
    disc = B * B - A * C * 4
    if disc.is_zero():
        return [-B / (A * 2)]
    return None  # roots need a square root of disc; caller tries known factors


def find_conjugator(p):
    """
    Conjugate the local monodromy into scalar multiples of SL2(Z).

    M1 is diagonalised by P_x = [[alpha, 0], [1, x]]; composing with the
    eigenvector matrix Q of the target gives R_x = Q P_x^-1, and x is fixed
    by the vanishing of the (2,1)-entry of R_x M0 R_x^-1.

    Raises:
        ConjugatorError: no target, M1 not diagonalisable, or no integral N0
    """
    if p not in CONJUGATION_TARGETS:
        raise ConjugatorError(f"no conjugation target known for {p}")
    cs = circuit_matrices(p)
    M0, M1 = cs.M0, cs.M1
    beta_, mu = M1[1, 0], M1[1, 1]
    if mu == ONE or beta_.is_zero():
        raise ConjugatorError(f"M1 is not diagonalisable for {p}")
    alpha = (ONE - mu) / beta_

    target, k = CONJUGATION_TARGETS[p]
    inv_scalar = CycloNumber.zeta(-k)
    lams = (inv_scalar, mu * inv_scalar)
    target_c = CycloMatrix.from_int(target)
    for lam in lams:
        if not (target_c - CycloMatrix.scalar(lam)).det().is_zero():
            raise ConjugatorError(f"target {target.tolist()} does not match the spectrum of M1")
    (q11, q21), (q12, q22) = (_right_eigenvector(target, lam) for lam in lams)
    Q = CycloMatrix(q11, q12, q21, q22)

    def conjugator_at(x):
        P = CycloMatrix(alpha, ZERO, ONE, x)
        return Q @ P.inverse()

    def scaled_entry21(x):
        R = conjugator_at(x)
        return (R @ M0 @ R.inverse())[1, 0] * x

    nodes = [CycloNumber.from_rational(n) for n in (1, 2, 3)]
    roots = _quadratic_roots(*(scaled_entry21(n) for n in nodes))
    if roots is None:
        candidates = []
        if not q21.is_zero():
            candidates.append(q22 / q21)
        roots = [x for x in candidates if scaled_entry21(x).is_zero()]
    roots = sorted((x for x in roots if not x.is_zero()), key=_height)
    logger.debug("conjugator roots for %s: %s", p, roots)

    for x in roots:
        R = conjugator_at(x)
        if R[1, 0].is_zero() and not R[1, 1].is_zero():
            R = R * R[1, 1].inverse()
        R_inv = R.inverse()
        N0, N1 = R @ M0 @ R_inv, R @ M1 @ R_inv
        split0, split1 = N0.split_scalar(), N1.split_scalar()
        if split0 is None or split1 is None:
            continue
        return Conjugator(R, N0, N1, (split0[0], split1[0]), (split0[1], split1[1]), x)
    raise ConjugatorError(f"no root of the (2,1)-entry makes N0 integral for {p}")


def monodromy_generators(p):
    """Exact generators of the projective monodromy group in SL2(Z) form."""
    if p == LAMBDA_PARAMS:
        cs = circuit_matrices(p)
        return cs.M0, cs.M1
    conj = find_conjugator(p)
    return conj.N0, conj.N1


class GroupId(str, Enum):
    SL2Z = 'SL2Z'
    Gamma2 = 'Gamma2'
    Gamma24 = 'Gamma24'
    Gamma2CubeRoot = 'Gamma2CubeRoot'
    Gamma12 = 'Gamma12'


def _is_gamma2(g):
    return (g[0, 0] - 1) % 2 == 0 and (g[1, 1] - 1) % 2 == 0 and g[0, 1] % 2 == 0 and g[1, 0] % 2 == 0


def group_membership(g, group):
    """
    Exact congruence test.

    Raises:
        DeterminantError: if det g != 1
    """
    g = np.asarray(g, dtype=np.int64)
    if int_det(g) != 1:
        raise DeterminantError(f"det {g.tolist()} = {int_det(g)} != 1")
    group = GroupId(group)
    if group is GroupId.SL2Z:
        return True
    if group is GroupId.Gamma2:
        return bool(_is_gamma2(g))
    if group is GroupId.Gamma24:
        return bool(_is_gamma2(g) and g[0, 0] % 4 == 1 and g[1, 1] % 4 == 1)
    if group is GroupId.Gamma2CubeRoot:
        return bool(_is_gamma2((g % 2) @ (g % 2) @ (g % 2) % 2))
    return bool((g[0, 0] * g[0, 1]) % 2 == 0 and (g[1, 0] * g[1, 1]) % 2 == 0)


def projective_order(g, cap=24, tol=1e-10):
    """
    Least n <= cap with g^n scalar, else infinity.

    Exact for CycloMatrix input; numeric arrays use the trace criterion for
    real matrices and a tolerance otherwise.
    """
    if isinstance(g, CycloMatrix):
        power = g
        for n in range(1, cap + 1):
            if power.is_scalar():
                return n
            power = power @ g
        return INFINITY

    g = np.asarray(g, dtype=complex)
    d = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    unit = g / cmath.sqrt(d)
    if np.max(np.abs(unit.imag)) <= tol or np.max(np.abs((unit * 1j).imag)) <= tol:
        if abs(np.trace(unit)) >= 2 - tol and np.max(np.abs(unit - unit[0, 0] * np.eye(2))) > tol:
            return INFINITY
    power = np.eye(2, dtype=complex)
    for n in range(1, cap + 1):
        power = power @ unit
        if abs(power[0, 1]) <= tol and abs(power[1, 0]) <= tol and abs(power[0, 0] - power[1, 1]) <= tol:
            return n
    return INFINITY


def triangle_data(p):
    """Angles (|1-c|, |c-a-b|, |a-b|) in units of pi and orders 1/angle."""
    a, b, c = p.as_tuple()
    angles = (abs(1 - c), abs(c - a - b), abs(a - b))
    orders = []
    for angle in angles:
        if angle == 0:
            orders.append(INFINITY)
        else:
            inv = 1 / angle
            orders.append(int(inv) if inv.denominator == 1 else inv)
    return angles, tuple(orders)


def eigen_integral_combinations(p, z):
    """
    The two eigen-integrals as combinations of f1, f2.

    Returns:
        (int_0^z u, int_z^1 u) computed from hg_basis
    """
    a, b, c = p.complex_tuple()

    def E(r):
        return cmath.exp(2j * math.pi * r)

    f1, f2 = hg_basis(p, z)
    zero_to_z = (-(E(c) - 1) / (E(b) - 1) * f1
                 + (E(a) - E(c)) / (E(a + b) - E(a)) * f2)
    z_to_one = ((E(c) - E(b)) / (E(b) - 1) * f1
                - (E(a + b) - E(c)) / (E(a + b) - E(a)) * f2)
    return zero_to_z, z_to_one


def connection_check(p, z):
    """
    Residuals of the quadrature values of int_0^z u and int_z^1 u against
    their combinations of the basis.
    """
    z = complex(z)
    left = euler_integral(p, z, 'zero_to_z')
    right = euler_integral(p, z, 'z_to_one')
    comb_left, comb_right = eigen_integral_combinations(p, z)
    return abs(left - comb_left), abs(right - comb_right)


# --- cosets of Gamma(2) ---------------------------------------------------

COSET_GENERATORS = {
    GroupId.SL2Z: (T, J),
    GroupId.Gamma2CubeRoot: (int_power(T, 2), W),
}


def _residue(g):
    return tuple(int(x) % 2 for x in np.asarray(g).ravel())


def cosets(group):
    """
    Representatives of Gamma(2) g in `group`, via the reduction mod 2
    (Gamma(2) g = Gamma(2) h iff g = h mod 2).
    """
    gens = COSET_GENERATORS[GroupId(group)]
    gens = gens + tuple(int_inverse(g) for g in gens)
    seen = {_residue(I2): I2}
    queue = deque([I2])
    while queue:
        g = queue.popleft()
        for h in gens:
            gh = g @ h
            key = _residue(gh)
            if key not in seen:
                seen[key] = gh
                queue.append(gh)
    return list(seen.values())


_COSET_KEYS = {_residue(I2): 0, _residue(W): 1, _residue(W2): 2}


def coset_label(g):
    """Index of g in Gamma(2)^{1/3} / Gamma(2) = {I, W, W^2}, or None."""
    return _COSET_KEYS.get(_residue(g))


def scalar_coset_label(k):
    """Label of the scalar zeta_24^k in {+-1, +-omega^2, +-omega} -> {0, 1, 2}."""
    k %= 24
    if k % 4:
        return None
    return (k % 12) // 4
