"""Exact arithmetic helpers: fraction-free determinants and truncated series."""

from __future__ import annotations

from fractions import Fraction

from .errors import ContractError


def bareiss_det(rows):
    """Exact determinant by fraction-free Bareiss elimination.

    Accepts a square matrix of ints or Fractions.  Integer input stays in
    integer arithmetic throughout; Fraction input is handled by clearing
    denominators first.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ContractError("bareiss_det needs a square matrix")
    if n == 0:
        return 1
    flat = [x for r in rows for x in r]
    if any(isinstance(x, Fraction) for x in flat):
        denom = 1
        for x in flat:
            if isinstance(x, Fraction):
                d = x.denominator
                g = _gcd(denom, d)
                denom = denom // g * d
        scaled = [[int(x * denom) if isinstance(x, Fraction) else x * denom for x in r]
                  for r in rows]
        return Fraction(bareiss_det(scaled), denom**n)
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class TruncatedSeries:
    """Power series with exact rational coefficients, truncated at q^order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        if order < 0:
            raise ContractError("series order must be >= 0")
        self.order = order
        c = [Fraction(x) for x in coeffs[: order + 1]]
        c += [Fraction(0)] * (order + 1 - len(c))
        self.coeffs = c

    @classmethod
    def zero(cls, order):
        return cls([], order)

    @classmethod
    def one(cls, order):
        return cls([1], order)

    @classmethod
    def monomial(cls, k, order, coeff=1):
        c = [Fraction(0)] * (order + 1)
        if 0 <= k <= order:
            c[k] = Fraction(coeff)
        return cls(c, order)

    def _check(self, other):
        if self.order != other.order:
            raise ContractError("series truncation orders differ")

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order
        )

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], self.order
        )

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([a * other for a in self.coeffs], self.order)
        self._check(other)
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(out, self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Series division; the divisor needs a nonzero constant term."""
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([a / other for a in self.coeffs], self.order)
        self._check(other)
        if other.coeffs[0] == 0:
            raise ContractError("series division by a series with zero constant term")
        inv0 = 1 / other.coeffs[0]
        out = [Fraction(0)] * (self.order + 1)
        for k in range(self.order + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                acc -= other.coeffs[j] * out[k - j]
            out[k] = acc * inv0
        return TruncatedSeries(out, self.order)

    def compose(self, inner):
        """Substitute a series with zero constant term into this one."""
        self._check(inner)
        if inner.coeffs[0] != 0:
            raise ContractError("composition requires zero constant term")
        out = TruncatedSeries.zero(self.order)
        power = TruncatedSeries.one(self.order)
        for k, a in enumerate(self.coeffs):
            if a != 0:
                out = out + power * a
            if k < self.order:
                power = power * inner
        return out

    def __repr__(self):
        terms = [f"{c}*q^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms) if terms else "0"
