"""
Exact arithmetic in the cyclotomic field Q(zeta_24).

zeta_24 = exp(2 pi i / 24) contains i, omega and exp(pi i / 6), which is
enough for every circuit matrix of the three parameter triples.  Elements
are stored as rational coefficient vectors over 1, zeta, ..., zeta^7,
reduced modulo the 24th cyclotomic polynomial x^8 - x^4 + 1.
"""

import cmath
import math
from fractions import Fraction

import numpy as np

from models.numcore import int_mat2

ORDER = 24
DEGREE = 8
# units mod 24, i.e. the Galois group of Q(zeta_24)
GALOIS = (1, 5, 7, 11, 13, 17, 19, 23)


def _reduce(coeffs):
    """Reduce a coefficient list of any length modulo x^8 - x^4 + 1."""
    c = list(coeffs) + [Fraction(0)] * max(0, DEGREE - len(coeffs))
    for k in range(len(c) - 1, DEGREE - 1, -1):
        top = c[k]
        if top:
            c[k - 4] += top   # x^8 = x^4 - 1
            c[k - 8] -= top
        c[k] = Fraction(0)
    return tuple(c[:DEGREE])


class CycloNumber:
    """An element of Q(zeta_24)."""

    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        self.coeffs = _reduce([Fraction(x) for x in coeffs])

    @classmethod
    def from_rational(cls, value):
        return cls([Fraction(value)])

    @classmethod
    def zeta(cls, k):
        """zeta_24 ** k for any integer k."""
        return _POWERS[k % ORDER]

    @classmethod
    def exp2pi(cls, r):
        """
        exp(2 pi i r) for a rational r whose denominator divides 24.

        Raises:
            ValueError: if 24 r is not an integer
        """
        r = Fraction(r)
        k = r * ORDER
        if k.denominator != 1:
            raise ValueError(f"exp(2 pi i {r}) is not in Q(zeta_24)")
        return cls.zeta(int(k))

    @classmethod
    def expi_pi(cls, r):
        """exp(pi i r)."""
        return cls.exp2pi(Fraction(r) / 2)

    @staticmethod
    def _coerce(other):
        if isinstance(other, CycloNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNumber(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(-a for a in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = [Fraction(0)] * (2 * DEGREE - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return CycloNumber(prod)

    __rmul__ = __mul__

    def conjugate_by(self, j):
        """Galois automorphism zeta -> zeta^j."""
        out = CycloNumber()
        for k, a in enumerate(self.coeffs):
            if a:
                out = out + CycloNumber.zeta(j * k) * a
        return out

    def norm(self):
        """Field norm to Q, as a Fraction."""
        prod = self
        for j in GALOIS[1:]:
            prod = prod * self.conjugate_by(j)
        if any(prod.coeffs[1:]):
            raise ArithmeticError("norm did not land in Q")
        return prod.coeffs[0]

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in Q(zeta_24)")
        cofactor = CycloNumber.from_rational(1)
        for j in GALOIS[1:]:
            cofactor = cofactor * self.conjugate_by(j)
        n = (self * cofactor).coeffs[0]
        return cofactor * (1 / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycloNumber.from_rational(1)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def is_integer(self):
        return self.is_rational() and self.coeffs[0].denominator == 1

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __complex__(self):
        return sum(
            (float(a) * cmath.exp(2j * math.pi * k / ORDER) for k, a in enumerate(self.coeffs) if a),
            0j,
        )

    def __repr__(self):
        terms = [f"{a}*z^{k}" for k, a in enumerate(self.coeffs) if a]
        return f"CycloNumber({' + '.join(terms) or '0'})"


def _build_powers():
    zeta = CycloNumber([0, 1])
    powers = [CycloNumber([1])]
    for _ in range(ORDER - 1):
        powers.append(powers[-1] * zeta)
    return powers


_POWERS = _build_powers()

ONE = CycloNumber.from_rational(1)
ZERO = CycloNumber()
I_UNIT = CycloNumber.zeta(6)
OMEGA = CycloNumber.zeta(8)


def multiplicative_order(k):
    """Order of zeta_24 ** k."""
    return ORDER // math.gcd(k % ORDER, ORDER)


class CycloMatrix:
    """Exact 2x2 matrix over Q(zeta_24), entries (g11, g12, g21, g22)."""

    __slots__ = ('entries',)

    def __init__(self, g11, g12, g21, g22):
        self.entries = tuple(
            x if isinstance(x, CycloNumber) else CycloNumber.from_rational(x)
            for x in (g11, g12, g21, g22)
        )

    @classmethod
    def from_int(cls, g):
        return cls(int(g[0, 0]), int(g[0, 1]), int(g[1, 0]), int(g[1, 1]))

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def scalar(cls, s):
        return cls(s, 0, 0, s)

    def __getitem__(self, index):
        i, j = index
        return self.entries[2 * i + j]

    def __matmul__(self, other):
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return CycloMatrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __mul__(self, s):
        return CycloMatrix(*(x * s for x in self.entries))

    __rmul__ = __mul__

    def __add__(self, other):
        return CycloMatrix(*(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other):
        return CycloMatrix(*(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self):
        return self * CycloNumber.from_rational(-1)

    def det(self):
        a, b, c, d = self.entries
        return a * d - b * c

    def trace(self):
        return self.entries[0] + self.entries[3]

    def inverse(self):
        a, b, c, d = self.entries
        inv_det = self.det().inverse()
        return CycloMatrix(d * inv_det, -b * inv_det, -c * inv_det, a * inv_det)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycloMatrix.identity()
        for _ in range(n):
            out = out @ self
        return out

    def is_scalar(self):
        a, b, c, d = self.entries
        return b.is_zero() and c.is_zero() and a == d

    def is_integral(self):
        return all(x.is_integer() for x in self.entries)

    def to_int(self):
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        a, b, c, d = (int(x.coeffs[0]) for x in self.entries)
        return int_mat2(a, b, c, d)

    def to_complex(self):
        return np.array([[complex(self[0, 0]), complex(self[0, 1])],
                         [complex(self[1, 0]), complex(self[1, 1])]], dtype=complex)

    def split_scalar(self):
        """
        Write the matrix as zeta_24^k * g with g integral of determinant 1.

        Among valid k the one of smallest multiplicative order wins, then the
        smallest exponent.  Returns (k, g) or None.
        """
        for k in sorted(range(ORDER), key=lambda k: (multiplicative_order(k), k)):
            candidate = self * CycloNumber.zeta(-k)
            if candidate.is_integral() and candidate.det() == ONE:
                return k, candidate.to_int()
        return None

    def __eq__(self, other):
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"CycloMatrix{tuple(complex(x) for x in self.entries)}"
