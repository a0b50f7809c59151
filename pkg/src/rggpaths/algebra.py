"""Exact polynomial arithmetic in q and truncated bivariate series in (u, q).

Coefficients are Python ints or :class:`fractions.Fraction`; nothing here
touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np


def _trim(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class QPolynomial:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``q**i``.

    ``bound`` is an optional declared degree bound; it propagates through
    ring operations and is checked on construction.
    """

    __slots__ = ("coeffs", "bound")

    def __init__(self, coeffs: Sequence = (), bound: int | None = None):
        self.coeffs = _trim(coeffs)
        self.bound = bound
        if bound is not None and self.degree > bound:
            raise ValueError(f"degree {self.degree} exceeds declared bound {bound}")

    @classmethod
    def monomial(cls, power: int, c=1) -> "QPolynomial":
        return cls([0] * power + [c], bound=power)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        if i < 0:
            raise IndexError("negative power")
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPolynomial({list(self.coeffs)})"

    @staticmethod
    def _bound(a, b, op):
        if a is None or b is None:
            return None
        return op(a, b)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPolynomial([other], bound=0)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        n = max(len(self), len(other))
        return QPolynomial([self[i] + other[i] for i in range(n)],
                           self._bound(self.bound, other.bound, max))

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial([-c for c in self.coeffs], self.bound)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPolynomial([c * other for c in self.coeffs], self.bound)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return QPolynomial((), self._bound(self.bound, other.bound, lambda a, b: a + b))
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out, self._bound(self.bound, other.bound, lambda a, b: a + b))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        """Exact division by a scalar; results are Fractions."""
        if isinstance(scalar, QPolynomial):
            raise TypeError("use divmod() for polynomial division")
        return QPolynomial([Fraction(c) / scalar for c in self.coeffs], self.bound)

    def __divmod__(self, other: "QPolynomial"):
        """Long division by ``other``; returns (quotient, remainder)."""
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = len(self) - len(other)
        if dq < 0:
            return QPolynomial(()), QPolynomial(rem)
        quot = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            c = rem[i + len(other) - 1]
            if c:
                c = c // lead if isinstance(c, int) and isinstance(lead, int) and c % lead == 0 \
                    else Fraction(c) / lead
                quot[i] = c
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return QPolynomial(quot), QPolynomial(rem)

    def shift(self, power: int) -> "QPolynomial":
        """Multiply by ``q**power``."""
        bound = None if self.bound is None else self.bound + power
        return QPolynomial([0] * power + list(self.coeffs), bound) if self.coeffs else QPolynomial((), bound)

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_one(self):
        """Value at q = 1, i.e. the coefficient sum."""
        return sum(self.coeffs)

    def reverse(self, degree: int | None = None) -> "QPolynomial":
        """``q**degree * p(1/q)``; ``degree`` defaults to ``self.degree``."""
        degree = self.degree if degree is None else degree
        padded = list(self.coeffs) + [0] * (degree + 1 - len(self))
        return QPolynomial(padded[::-1])

    def truncate(self, qmax: int) -> "QPolynomial":
        return QPolynomial(self.coeffs[:qmax + 1])


@lru_cache(maxsize=None)
def _qbin_coeffs(m: int, r: int) -> tuple[int, ...]:
    if r == 0 or r == m:
        return (1,)
    # q-Pascal: [m, r] = [m-1, r-1] + q^r [m-1, r]
    a = _qbin_coeffs(m - 1, r - 1)
    b = _qbin_coeffs(m - 1, r)
    out = [0] * (r * (m - r) + 1)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + r] += c
    return tuple(out)


def q_binomial(m: int, r: int) -> QPolynomial:
    """Gaussian binomial coefficient; integer coefficients, degree r(m-r)."""
    if m < 0 or r < 0:
        raise ValueError("q-binomial arguments must be non-negative")
    if r > m:
        raise ValueError(f"q-binomial needs r <= m, got ({m}, {r})")
    return QPolynomial(_qbin_coeffs(m, min(r, m - r)), bound=r * (m - r))


def q_binomial_by_quotient(m: int, r: int) -> QPolynomial:
    """Gaussian binomial from the product quotient; raises if a remainder survives."""
    if not 0 <= r <= m:
        raise ValueError(f"q-binomial needs 0 <= r <= m, got ({m}, {r})")
    num = QPolynomial([1])
    den = QPolynomial([1])
    for i in range(r):
        num = num * (1 - QPolynomial.monomial(m - i))
        den = den * (1 - QPolynomial.monomial(i + 1))
    quot, rem = divmod(num, den)
    if rem.coeffs:
        raise ArithmeticError(f"non-zero remainder dividing out [{m} choose {r}]_q")
    return quot


class UQSeries:
    """Truncated power series in u and q with exact integer coefficients.

    Entries beyond ``(u_max, q_max)`` are never stored; asking for them is an
    error so that a truncation bug cannot masquerade as a zero coefficient.
    """

    def __init__(self, u_max: int, q_max: int, data: np.ndarray | None = None):
        if u_max < 0 or q_max < 0:
            raise ValueError("truncation bounds must be non-negative")
        self.u_max = u_max
        self.q_max = q_max
        if data is None:
            data = np.zeros((u_max + 1, q_max + 1), dtype=object)
            data[0, 0] = 1
        if data.shape != (u_max + 1, q_max + 1):
            raise ValueError("coefficient array does not match truncation bounds")
        self.data = data

    def coefficient(self, u_power: int, q_power: int):
        if not (0 <= u_power <= self.u_max and 0 <= q_power <= self.q_max):
            raise IndexError(f"u^{u_power} q^{q_power} lies outside the truncation "
                             f"u^{self.u_max} q^{self.q_max}")
        return self.data[u_power, q_power]

    def u_slice(self, u_power: int) -> QPolynomial:
        """``[u^u_power]`` as a polynomial in q."""
        if not 0 <= u_power <= self.u_max:
            raise IndexError(f"u^{u_power} lies outside the truncation u^{self.u_max}")
        return QPolynomial([int(c) for c in self.data[u_power]], bound=self.q_max)

    def mul_inverse_power(self, s: int, e: int) -> "UQSeries":
        """Multiply by ``(1 - u q^s)^(-e)`` in place and return self."""
        old = self.data
        new = old.copy()
        for n in range(1, self.u_max + 1):
            shift = n * s
            if shift > self.q_max:
                break
            c = math.comb(n + e - 1, n)
            new[n:, shift:] += c * old[:self.u_max + 1 - n, :self.q_max + 1 - shift]
        self.data = new
        return self


def restricted_partition_gf(s: Sequence[int], exponents: Sequence[int],
                            u_max: int, q_max: int) -> UQSeries:
    """Truncated expansion of prod_t (1 - u q^{s[t]})^(-exponents[t]).

    With all exponents 1, ``[u^r q^n]`` counts partitions of n into exactly r
    parts drawn from ``s``; larger exponents weight part ``s[t]`` used n times
    by ``C(n + e - 1, n)``.
    """
    if len(s) != len(exponents):
        raise ValueError(f"{len(s)} parts but {len(exponents)} exponents")
    if any(x < 0 for x in s):
        raise ValueError("part values must be non-negative")
    if any(e < 1 for e in exponents):
        raise ValueError("exponents must be positive")
    series = UQSeries(u_max, q_max)
    for value, e in zip(s, exponents):
        series.mul_inverse_power(value, e)
    return series
