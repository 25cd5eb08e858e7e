"""Exact arithmetic in simple radical extensions Q(theta), theta^d = a.

Elements are stored in the power basis (1, theta, ..., theta^(d-1)) with
Fraction coordinates.  Only one generator per field; towers are out of scope.
The numeric embedding sends theta to a declared complex root of x^d = a
(by default the real root, which exists for every case this package builds:
d odd, or d even with a > 0).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _is_nth_power(q: Fraction, n: int):
    """Return the exact rational n-th root of q, or None."""
    if q == 0:
        return Fraction(0)
    sign = 1
    if q < 0:
        if n % 2 == 0:
            return None
        sign = -1
        q = -q

    def iroot(k: int):
        if k == 0:
            return 0
        lo, hi = 0, 1
        while hi**n < k:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**n < k:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo**n == k else None

    rn = iroot(q.numerator)
    rd = iroot(q.denominator)
    if rn is None or rd is None:
        return None
    return sign * Fraction(rn, rd)


class ExtField:
    """The field Q(theta) with theta^degree = base (base not a perfect power)."""

    def __init__(self, gen_name: str, degree: int, base: Rat, embed: complex | None = None):
        base = _as_fraction(base)
        if degree < 2:
            raise ValueError("extension degree must be >= 2")
        if _is_nth_power(base, degree) is not None:
            raise ValueError(f"{base} is a perfect {degree}-th power; no extension needed")
        for p in range(2, degree + 1):
            if degree % p == 0 and p != degree and _is_nth_power(base, p) is not None:
                # x^d - a reducible when a is a p-th power for a prime p | d
                raise ValueError(f"x^{degree} - {base} is reducible over Q")
        self.gen_name = gen_name
        self.degree = degree
        self.base = base
        if embed is None:
            if base > 0:
                embed = float(base) ** (1.0 / degree)
            elif degree % 2 == 1:
                embed = -((-float(base)) ** (1.0 / degree))
            else:
                raise ValueError("no real root; pass an explicit complex embedding")
        self.embed_value = embed

    def __repr__(self):
        return f"ExtField({self.gen_name}^{self.degree} = {self.base})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and self.degree == other.degree
            and self.base == other.base
            and self.gen_name == other.gen_name
        )

    def __hash__(self):
        return hash((self.gen_name, self.degree, self.base))

    def zero(self) -> "Ext":
        return Ext(self, (Fraction(0),) * self.degree)

    def one(self) -> "Ext":
        return self.from_rational(1)

    def gen(self) -> "Ext":
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return Ext(self, tuple(c))

    def from_rational(self, q: Rat) -> "Ext":
        c = [Fraction(0)] * self.degree
        c[0] = _as_fraction(q)
        return Ext(self, tuple(c))

    def element(self, coeffs) -> "Ext":
        c = [_as_fraction(x) for x in coeffs]
        if len(c) != self.degree:
            raise ValueError("coefficient vector has wrong length")
        return Ext(self, tuple(c))


class Ext:
    """An element of an ExtField, exact in the power basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, Ext):
            if other.field != self.field:
                raise ValueError("elements of different extension fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ext(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Ext(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ext(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d, a = self.field.degree, self.field.base
        out = [Fraction(0)] * d
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(o.coeffs):
                if not y:
                    continue
                k = i + j
                if k < d:
                    out[k] += x * y
                else:
                    out[k - d] += x * y * a
        return Ext(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Ext":
        """Multiplicative inverse via the d x d linear system for x*y = 1."""
        if not self:
            raise ZeroDivisionError("inverse of zero extension element")
        d, a = self.field.degree, self.field.base
        # column k of M = coordinates of self * theta^k
        cols = []
        power = self
        theta = self.field.gen()
        for _ in range(d):
            cols.append(power.coeffs)
            power = power * theta
        m = [[cols[k][i] for k in range(d)] for i in range(d)]
        rhs = [Fraction(1)] + [Fraction(0)] * (d - 1)
        sol = _solve_rational(m, rhs)
        return Ext(self.field, tuple(sol))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def conj2(self) -> "Ext":
        """The automorphism theta -> -theta (quadratic fields only)."""
        if self.field.degree != 2:
            raise ValueError("conj2 is defined for degree-2 extensions only")
        return Ext(self.field, (self.coeffs[0], -self.coeffs[1]))

    def rational_part(self):
        """Return self as a Fraction if it lies in Q, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def numeric(self) -> complex:
        t = self.field.embed_value
        val = 0.0 + 0.0j
        for c in reversed(self.coeffs):
            val = val * t + complex(c)
        return val

    def __repr__(self):
        g = self.field.gen_name
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = g if i == 1 else f"{g}^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"


def _solve_rational(m, rhs):
    """Solve a small square rational system by Gaussian elimination."""
    n = len(m)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("singular system in extension-field inverse")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]
