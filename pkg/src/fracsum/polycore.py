"""Exact summation of polynomials with arbitrary complex bounds.

The central construction: every polynomial p has a unique antidifference P
with P(0) = 0 and P(z) - P(z-1) = p(z) identically. Declaring

    sum_{nu=x}^{y} p(nu) := P(y) - P(x-1)

extends classical summation to arbitrary complex bounds while keeping the
recurrence and translation properties of ordinary sums. P is assembled per
monomial from the Faulhaber expansion in Bernoulli numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError

__all__ = [
    "Polynomial",
    "BernoulliTable",
    "bernoulli",
    "antidifference",
    "poly_sum",
    "MAX_DEGREE",
]

# Coefficient growth in the Faulhaber expansion destroys double accuracy
# beyond this degree; refuse rather than return garbage.
MAX_DEGREE = 64


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial with complex coefficients, ascending powers.

    The empty tuple is the zero polynomial; its degree is -inf by the usual
    convention, so degree arithmetic (deg P = deg p + 1) stays uniform.
    """

    coeffs: tuple[complex, ...]

    @staticmethod
    def of(*coeffs: complex) -> "Polynomial":
        """Build from ascending coefficients, dropping trailing zeros."""
        cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Polynomial(tuple(cs))

    @staticmethod
    def monomial(degree: int, coeff: complex = 1.0) -> "Polynomial":
        if degree < 0:
            raise ParameterError(f"monomial degree must be >= 0, got {degree}")
        return Polynomial.of(*([0.0] * degree + [coeff]))

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0j] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0j] * (n - len(other.coeffs))
        return Polynomial.of(*(x + y for x, y in zip(a, b)))

    def scale(self, c: complex) -> "Polynomial":
        return Polynomial.of(*(c * a for a in self.coeffs))

    def shift(self, s: complex) -> "Polynomial":
        """Return q with q(z) = p(z + s), by binomial re-expansion."""
        n = len(self.coeffs)
        out = [0j] * n
        for k, ck in enumerate(self.coeffs):
            # ck (z+s)^k contributes ck C(k,j) s^{k-j} to z^j
            pw = 1.0 + 0j
            for j in range(k, -1, -1):
                out[j] += ck * math.comb(k, j) * pw
                pw *= s
        return Polynomial.of(*out)


@dataclass(frozen=True)
class BernoulliTable:
    """Exact Bernoulli numbers B_0..B_K, convention B_1 = +1/2.

    With this sign, Faulhaber's formula gives Sum_{nu=1}^{n} nu^d directly
    (no off-by-one against the P(0) = 0 normalization).
    """

    values: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]


def bernoulli(K: int) -> BernoulliTable:
    """Bernoulli numbers B_0..B_K as exact rationals.

    Uses the recurrence sum_{j=0}^{m} C(m+1,j) B_j = m+1 (valid for the
    B_1 = +1/2 convention), solved in exact rational arithmetic; the
    recurrence is catastrophically ill-conditioned in floating point.

    Args:
        K: highest index, 0 <= K <= 64.

    Returns:
        BernoulliTable of length K+1.

    Raises:
        ParameterError: K outside [0, 64].
    """
    if not 0 <= K <= MAX_DEGREE:
        raise ParameterError(f"bernoulli index bound must be in [0, {MAX_DEGREE}], got {K}")
    vals = [Fraction(1)]
    for m in range(1, K + 1):
        acc = Fraction(m + 1)
        for j in range(m):
            acc -= math.comb(m + 1, j) * vals[j]
        vals.append(acc / (m + 1))
    return BernoulliTable(tuple(vals))


def _faulhaber_row(d: int, table: BernoulliTable) -> list[Fraction]:
    """Ascending rational coefficients of the antidifference of z^d."""
    # P_d(z) = (1/(d+1)) sum_{j=0}^{d} C(d+1,j) B_j z^{d+1-j}; no constant
    # term, so P_d(0) = 0 automatically.
    out = [Fraction(0)] * (d + 2)
    for j in range(d + 1):
        out[d + 1 - j] = Fraction(math.comb(d + 1, j), d + 1) * table[j]
    return out


def antidifference(p: Polynomial) -> Polynomial:
    """The unique P with P(0) = 0 and P(z) - P(z-1) = p(z) identically.

    deg P = deg p + 1; the zero polynomial maps to itself.

    Raises:
        ParameterError: deg p > 64.
    """
    if not p.coeffs:
        return p
    d = len(p.coeffs) - 1
    if d > MAX_DEGREE:
        raise ParameterError(f"polynomial degree {d} exceeds cap {MAX_DEGREE}")
    table = bernoulli(d)
    acc = [0j] * (d + 2)
    for k, ck in enumerate(p.coeffs):
        if ck == 0:
            continue
        for idx, q in enumerate(_faulhaber_row(k, table)):
            if q:
                acc[idx] += ck * float(q)
    return Polynomial.of(*acc)


def poly_sum(p: Polynomial, x: complex, y: complex) -> complex:
    """Fractional sum of a polynomial: P(y) - P(x-1) with P = antidifference(p)."""
    P = antidifference(p)
    return P(complex(y)) - P(complex(x) - 1)
