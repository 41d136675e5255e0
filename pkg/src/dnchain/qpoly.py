"""Exact polynomials and truncated power series in q with integer coefficients."""
from __future__ import annotations

from numbers import Integral

from .errors import InexactDivision, InvalidParams


class QPolynomial:
    """Polynomial in q with arbitrary-size integer coefficients.

    Stored sparsely as ``{exponent: coefficient}`` with zero coefficients
    removed, so equality is structural.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs is not None:
            items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
            for k, v in items:
                k = int(k)
                if k < 0:
                    raise InvalidParams(f"negative exponent {k}")
                if not isinstance(v, Integral):
                    raise InvalidParams(f"coefficient {v!r} is not an integer")
                if v:
                    c[k] = c.get(k, 0) + int(v)
                    if not c[k]:
                        del c[k]
        self._c = c

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "QPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def one(cls) -> "QPolynomial":
        return cls({0: 1})

    @property
    def coeffs(self) -> dict:
        return dict(sorted(self._c.items()))

    def coeff(self, k: int) -> int:
        return self._c.get(k, 0)

    def degree(self) -> int:
        """Largest exponent, or -1 for the zero polynomial."""
        return max(self._c, default=-1)

    def is_zero(self) -> bool:
        return not self._c

    def items(self):
        return sorted(self._c.items())

    def _coerce(self, other):
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, Integral):
            return QPolynomial({0: int(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return QPolynomial(c)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial({k: -v for k, v in self._c.items()})

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
        c = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                c[i + j] = c.get(i + j, 0) + a * b
        return QPolynomial(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidParams("negative powers are not polynomials")
        out, base = QPolynomial.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __call__(self, q):
        return sum(v * q ** k for k, v in self._c.items())

    def divmod(self, divisor: "QPolynomial"):
        """Long division over the integers; the divisor must be monic up to sign."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        dd = divisor.degree()
        lead = divisor.coeff(dd)
        rem = dict(self._c)
        quot = {}
        while rem:
            top = max(rem)
            if top < dd:
                break
            c, r = divmod(rem[top], lead)
            if r:
                break
            shift = top - dd
            quot[shift] = c
            for k, v in divisor._c.items():
                rem[k + shift] = rem.get(k + shift, 0) - c * v
                if not rem[k + shift]:
                    del rem[k + shift]
        return QPolynomial(quot), QPolynomial(rem)

    def exact_div(self, divisor: "QPolynomial") -> "QPolynomial":
        quot, rem = self.divmod(divisor)
        if not rem.is_zero():
            raise InexactDivision(f"remainder {rem} is not zero")
        return quot

    def to_series(self, cutoff: int) -> "QSeries":
        return QSeries(cutoff, [self.coeff(k) for k in range(cutoff + 1)])

    def to_json(self) -> dict:
        return {str(k): str(v) for k, v in self.items()}

    def __repr__(self):
        if not self._c:
            return "QPolynomial(0)"
        terms = []
        for k, v in self.items():
            terms.append(str(v) if k == 0 else f"{v}*q^{k}")
        return "QPolynomial(" + " + ".join(terms) + ")"


class QSeries:
    """Power series in q truncated after ``q**cutoff``."""

    __slots__ = ("cutoff", "coeffs")

    def __init__(self, cutoff: int, coeffs=()):
        if cutoff < 0:
            raise InvalidParams("cutoff must be nonnegative")
        c = [int(x) for x in list(coeffs)[: cutoff + 1]]
        c.extend([0] * (cutoff + 1 - len(c)))
        self.cutoff = cutoff
        self.coeffs = c

    @classmethod
    def one(cls, cutoff):
        return cls(cutoff, [1])

    @classmethod
    def monomial(cls, cutoff, exponent, coeff=1):
        c = [0] * (cutoff + 1)
        if exponent <= cutoff:
            c[exponent] = coeff
        return cls(cutoff, c)

    @classmethod
    def geometric(cls, cutoff, step):
        """1 / (1 - q**step)."""
        if step <= 0:
            raise InvalidParams("geometric step must be positive")
        c = [0] * (cutoff + 1)
        for k in range(0, cutoff + 1, step):
            c[k] = 1
        return cls(cutoff, c)

    def _coerce(self, other):
        if isinstance(other, QSeries):
            if other.cutoff != self.cutoff:
                raise InvalidParams(f"cutoff mismatch {self.cutoff} vs {other.cutoff}")
            return other
        if isinstance(other, QPolynomial):
            return other.to_series(self.cutoff)
        if isinstance(other, Integral):
            return QSeries(self.cutoff, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSeries(self.cutoff, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.cutoff, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSeries(self.cutoff, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.cutoff + 1
        out = [0] * n
        b = other.coeffs
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n - i):
                    if b[j]:
                        out[i + j] += a * b[j]
        return QSeries(self.cutoff, out)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise InvalidParams("series inversion needs a unit constant term")
        n = self.cutoff + 1
        inv = [0] * n
        inv[0] = c0
        for k in range(1, n):
            acc = sum(self.coeffs[j] * inv[k - j] for j in range(1, k + 1))
            inv[k] = -acc * c0
        return QSeries(self.cutoff, inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, (QSeries, QPolynomial)):
            other = self._coerce(other)
            return self.coeffs == other.coeffs
        return NotImplemented

    def first_difference(self, other):
        """Smallest exponent where the two series differ, or None."""
        other = self._coerce(other)
        for k, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return k
        return None

    def to_json(self) -> dict:
        return {str(k): str(v) for k, v in enumerate(self.coeffs) if v}

    def __repr__(self):
        return f"QSeries(cutoff={self.cutoff}, coeffs={self.coeffs})"
