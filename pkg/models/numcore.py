"""
Numeric substrate: gamma and beta functions, 2x2 matrices, Moebius action.

Mat2 values are 2x2 complex numpy arrays, IntMat2 values are 2x2 int64
arrays.  All functions here are pure.
"""

import cmath
import math
from fractions import Fraction

import numpy as np

from models.errors import DefectiveMatrixError, GammaPoleError, MoebiusPoleError

PI = math.pi
SQRT3 = math.sqrt(3.0)
I = 1j
OMEGA = complex(-0.5, SQRT3 / 2)  # primitive cube root of unity in H

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2 * PI)


def rational(value):
    """Coerce ints, strings like '5/12' and Fractions to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**6)
    return Fraction(value)


def is_nonpositive_integer(z, tol=1e-14):
    z = complex(z)
    if abs(z.imag) > tol or z.real > 0.5:
        return False
    return abs(z.real - round(z.real)) <= tol


def gamma(z):
    """
    Complex gamma function.

    Lanczos approximation for Re(z) >= 1/2, reflection formula
    Gamma(z)Gamma(1-z) = pi/sin(pi z) below that.

    Args:
        z: complex or real argument, not a non-positive integer

    Raises:
        GammaPoleError: at z = 0, -1, -2, ...
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        raise GammaPoleError(f"gamma has a pole at {z}")
    if z.real < 0.5:
        return PI / (cmath.sin(PI * z) * gamma(1 - z))
    z -= 1
    x = _LANCZOS_COEFFS[0]
    for k, coeff in enumerate(_LANCZOS_COEFFS[1:], start=1):
        x += coeff / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def reciprocal_gamma(z):
    """1/Gamma(z), entire; exactly 0 at the poles of Gamma."""
    if is_nonpositive_integer(z):
        return 0j
    return 1 / gamma(z)


def beta(a, b):
    """B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b)."""
    a, b = complex(a), complex(b)
    return gamma(a) * gamma(b) * reciprocal_gamma(a + b)


# --- 2x2 matrices ---------------------------------------------------------

def mat2(g11, g12, g21, g22):
    return np.array([[g11, g12], [g21, g22]], dtype=complex)


def int_mat2(g11, g12, g21, g22):
    return np.array([[g11, g12], [g21, g22]], dtype=np.int64)


def _frozen(m):
    m.setflags(write=False)
    return m


I2 = _frozen(int_mat2(1, 0, 0, 1))
T = _frozen(int_mat2(1, 1, 0, 1))
J = _frozen(int_mat2(0, 1, -1, 0))
W = _frozen(int_mat2(-1, -1, 1, 0))   # (J T)^{-1}
W2 = _frozen(int_mat2(0, 1, -1, -1))  # W^2
J1 = _frozen(int_mat2(-1, 1, -2, 1))  # fixes (1+i)/2
J2 = _frozen(int_mat2(-1, 2, -1, 1))  # fixes 1+i

NAMED_MATRICES = {'I': I2, 'T': T, 'J': J, 'W': W, 'W2': W2, 'J1': J1, 'J2': J2}


def det(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def int_det(m):
    return int(m[0, 0]) * int(m[1, 1]) - int(m[0, 1]) * int(m[1, 0])


def int_inverse(g):
    """Inverse of a determinant-one integer matrix."""
    return int_mat2(g[1, 1], -g[0, 1], -g[1, 0], g[0, 0])


def int_matmul(*mats):
    out = I2
    for m in mats:
        out = out @ m
    return out


def int_power(g, n):
    if n < 0:
        return int_power(int_inverse(g), -n)
    out = I2.copy()
    for _ in range(n):
        out = out @ g
    return out


def moebius(g, tau):
    """
    Linear fractional action g.tau = (g11 tau + g12)/(g21 tau + g22).

    Raises:
        MoebiusPoleError: when g21 tau + g22 = 0
    """
    tau = complex(tau)
    den = complex(g[1, 0]) * tau + complex(g[1, 1])
    if den == 0:
        raise MoebiusPoleError(f"g21*tau + g22 vanishes at tau={tau}")
    return (complex(g[0, 0]) * tau + complex(g[0, 1])) / den


def _normalize_row(v):
    """Scale a row so its largest-magnitude entry is 1 (first entry on ties)."""
    v1, v2 = complex(v[0]), complex(v[1])
    pivot = v1 if abs(v1) >= abs(v2) * (1 - 1e-12) else v2
    return (v1 / pivot, v2 / pivot)


def eigen2(m, tol=1e-10):
    """
    Eigenvalues and left (row) eigenvectors of a 2x2 matrix.

    Returns:
        list of (eigenvalue, (v1, v2)) with v.m = eigenvalue * v; rows are
        normalised so the largest-magnitude component is 1.

    Raises:
        DefectiveMatrixError: repeated eigenvalue with a 1-dim eigenspace
    """
    m = np.asarray(m, dtype=complex)
    trace = complex(m[0, 0] + m[1, 1])
    disc = trace * trace - 4 * det(m)
    scale = max(1.0, float(np.max(np.abs(m))))

    # repeated root decided on the discriminant; root-finders split it by sqrt(eps)
    if abs(disc) <= tol * scale * scale:
        lam = trace / 2
        if np.max(np.abs(m - lam * np.eye(2))) <= tol * scale:
            return [(lam, (1 + 0j, 0j)), (lam, (0j, 1 + 0j))]
        raise DefectiveMatrixError(f"repeated eigenvalue {lam} with a 1-dimensional eigenspace")

    pairs = []
    root = cmath.sqrt(disc)
    lams = ((trace + root) / 2, (trace - root) / 2)
    for lam in sorted(lams, key=lambda x: (round(cmath.phase(x), 12), abs(x))):
        # v (m - lam) = 0: two candidate rows, keep the better conditioned one
        from_col1 = (m[1, 0], lam - m[0, 0])
        from_col2 = (lam - m[1, 1], m[0, 1])
        row = max((from_col1, from_col2), key=lambda v: abs(v[0]) + abs(v[1]))
        pairs.append((lam, _normalize_row(row)))
    return pairs


def projective_equal(a, b, tol=1e-12):
    """a == s*b for some nonzero scalar s (2x2 complex arrays)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if b[k] == 0:
        return False
    s = a[k] / b[k]
    return bool(np.max(np.abs(a - s * b)) <= tol * max(1.0, float(np.max(np.abs(a)))))
