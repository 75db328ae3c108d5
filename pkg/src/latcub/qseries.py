"""Exact truncated power series in q, graded by the integer norm m.

Coefficients are arbitrary-precision rationals.  A series knows its
truncation: coefficients are exact for every exponent m <= trunc and are
never reported beyond it.  Products propagate the truncation pessimistically
(min of the operands), so no silent extrapolation can occur.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]


class TruncationError(ValueError):
    """Requested coefficients beyond what is provably exact."""


class QSeries:
    """Immutable truncated formal power series sum_{m=0}^{trunc} a_m q^m."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Rational] | Mapping[int, Rational], trunc: int | None = None):
        if isinstance(coeffs, Mapping):
            if trunc is None:
                raise ValueError("trunc is required with a coefficient mapping")
            if any(m < 0 or m > trunc for m in coeffs):
                raise ValueError("coefficient exponent outside [0, trunc]")
            dense = [Fraction(coeffs.get(m, 0)) for m in range(trunc + 1)]
        else:
            dense = [Fraction(c) for c in coeffs]
            if trunc is not None and trunc != len(dense) - 1:
                raise ValueError("trunc inconsistent with dense coefficient list")
        if len(dense) == 0:
            raise TruncationError("truncation underflow: empty series")
        self._coeffs = tuple(dense)

    @property
    def trunc(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, m: int) -> Fraction:
        if m < 0:
            raise IndexError("negative exponent")
        if m > self.trunc:
            raise TruncationError(f"coefficient at m={m} beyond truncation {self.trunc}")
        return self._coeffs[m]

    def truncate(self, new_trunc: int) -> "QSeries":
        if new_trunc > self.trunc:
            raise TruncationError("cannot extend truncation")
        return QSeries(self._coeffs[: new_trunc + 1])

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        n = min(self.trunc, other.trunc)
        return QSeries([self._coeffs[m] + other._coeffs[m] for m in range(n + 1)])

    def __sub__(self, other: "QSeries") -> "QSeries":
        n = min(self.trunc, other.trunc)
        return QSeries([self._coeffs[m] - other._coeffs[m] for m in range(n + 1)])

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            n = min(self.trunc, other.trunc)
            a, b = self._coeffs, other._coeffs
            out = [Fraction(0)] * (n + 1)
            for i in range(min(len(a) - 1, n) + 1):
                ai = a[i]
                if ai == 0:
                    continue
                for j in range(min(len(b) - 1, n - i) + 1):
                    if b[j]:
                        out[i + j] += ai * b[j]
            return QSeries(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c: Rational) -> "QSeries":
        c = Fraction(c)
        return QSeries([c * a for a in self._coeffs])

    def __neg__(self) -> "QSeries":
        return self.scale(-1)

    def __pow__(self, e: int) -> "QSeries":
        if not isinstance(e, int) or e < 0:
            raise ValueError("power exponent must be a nonnegative integer")
        result = QSeries.one(self.trunc)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k (k >= 0); truncation is unchanged."""
        if k < 0:
            raise ValueError("negative shift")
        n = self.trunc
        if k > n:
            return QSeries.zero(n)
        return QSeries([Fraction(0)] * k + list(self._coeffs[: n + 1 - k]))

    # -- comparisons & misc -------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, QSeries) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._coeffs)

    def __repr__(self) -> str:
        terms = []
        for m, c in enumerate(self._coeffs):
            if c == 0:
                continue
            terms.append(f"{c}*q^{m}" if m else f"{c}")
            if len(terms) >= 8:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body}, trunc={self.trunc})"

    @staticmethod
    def one(trunc: int) -> "QSeries":
        return QSeries([1] + [0] * trunc)

    @staticmethod
    def zero(trunc: int) -> "QSeries":
        return QSeries([0] * (trunc + 1))


def series_arith(lhs: QSeries, rhs, op: str) -> QSeries:
    """Dispatch-style arithmetic entry point over QSeries values."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "scale":
        return lhs.scale(rhs)
    if op == "pow":
        return lhs ** rhs
    raise ValueError(f"unknown op {op!r}")


def _euler_product_powers(step: int, power: int, trunc: int) -> list[int]:
    """Integer coefficients of prod_{m>=1} (1 - q^{step*m})^power up to trunc."""
    # phi(x) = sum_k (-1)^k x^{k(3k-1)/2} by the pentagonal number theorem.
    phi = [0] * (trunc + 1)
    phi[0] = 1
    k = 1
    while True:
        e1 = step * (k * (3 * k - 1) // 2)
        e2 = step * (k * (3 * k + 1) // 2)
        if e1 > trunc and e2 > trunc:
            break
        sign = -1 if k % 2 else 1
        if e1 <= trunc:
            phi[e1] += sign
        if e2 <= trunc:
            phi[e2] += sign
        k += 1
    out = [1] + [0] * trunc
    base = phi
    e = power
    while e:
        if e & 1:
            out = _int_mul(out, base, trunc)
        e >>= 1
        if e:
            base = _int_mul(base, base, trunc)
    return out


def _int_mul(a: list[int], b: list[int], trunc: int) -> list[int]:
    out = [0] * (trunc + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        top = trunc - i
        for j, bj in enumerate(b[: top + 1]):
            if bj:
                out[i + j] += ai * bj
    return out


def eta_product(ell: int, k1: int, N: int) -> QSeries:
    """q-expansion of (eta(z) eta(ell z))^k1 in the norm grading q = e^{i pi z}.

    The leading term is q^{k1(1+ell)/12}; k1(1+ell) must be divisible by 12
    so the expansion has integer exponents.
    """
    if ell < 1 or k1 < 1:
        raise ValueError("ell and k1 must be positive")
    if (k1 * (1 + ell)) % 12 != 0:
        raise ValueError("non-integral leading exponent: k1*(1+ell)/12 not an integer")
    if N < 2:
        raise ValueError("truncation too small for a cusp form (need N >= 2)")
    lead = k1 * (1 + ell) // 12
    prod = _int_mul(
        _euler_product_powers(2, k1, N),
        _euler_product_powers(2 * ell, k1, N),
        N,
    )
    dense = [0] * (N + 1)
    for m, c in enumerate(prod):
        if m + lead <= N:
            dense[m + lead] = c
    return QSeries(dense)


def _sigma(k: int, m: int) -> int:
    return sum(d ** k for d in range(1, m + 1) if m % d == 0)


def eisenstein(k: int, N: int) -> QSeries:
    """Normalized Eisenstein series E_k (constant term 1) in the q^2 grading."""
    if k not in (4, 6):
        raise ValueError(f"unsupported Eisenstein weight {k}")
    if N < 0:
        raise ValueError("negative truncation")
    c = 240 if k == 4 else -504
    dense = [Fraction(0)] * (N + 1)
    dense[0] = Fraction(1)
    for m in range(1, N // 2 + 1):
        dense[2 * m] = Fraction(c * _sigma(k - 1, m))
    return QSeries(dense)
