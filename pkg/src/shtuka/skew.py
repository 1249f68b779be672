"""Twisted polynomial ring in the q-power Frobenius over a coefficient ring.

Elements are finite sums sum_i c_i * frob^i where frob denotes the q-power
map on operands and the commutation rule is frob * c = twist(c, 1) * frob.
The coefficient ring is duck-typed: any objects supporting +, -, * and a
Frobenius twist work.  Concretely we use class-field elements, rational
functions on the curve, and Laurent-series approximations.
"""

from __future__ import annotations


def twist_coeff(c, j: int):
    """Apply the q-power Frobenius twist j times to a coefficient."""
    if hasattr(c, "twist"):
        return c.twist(j)
    return c.frob(j)


def coeff_is_zero(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c.is_zero_to_prec()


class SkewPoly:
    """Polynomial in the Frobenius with coefficients acting on the left."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: list):
        if not coeffs:
            raise ValueError("skew polynomial needs at least one coefficient")
        self.coeffs = list(coeffs)

    @staticmethod
    def constant(c) -> "SkewPoly":
        return SkewPoly([c])

    @staticmethod
    def tau(one, k: int = 1) -> "SkewPoly":
        """frob^k as a skew polynomial; `one` is the coefficient-ring unit."""
        zero = one - one
        return SkewPoly([zero] * k + [one])

    @property
    def degree(self) -> int:
        """Frobenius-degree, ignoring trailing zero coefficients."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if not coeff_is_zero(self.coeffs[i]):
                return i
        return -1

    def trim(self) -> "SkewPoly":
        d = self.degree
        if d < 0:
            return SkewPoly([self.coeffs[0] - self.coeffs[0]])
        return SkewPoly(self.coeffs[: d + 1])

    def _zero_like(self):
        c0 = self.coeffs[0]
        return c0 - c0

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        z = self._zero_like()
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = other.coeffs + [z] * (n - len(other.coeffs))
        return SkewPoly([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "SkewPoly":
        return SkewPoly([-c for c in self.coeffs])

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + (-other)

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        z = self._zero_like()
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if coeff_is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * twist_coeff(b, i)
        return SkewPoly(out)

    def scale(self, c) -> "SkewPoly":
        """Left-multiply by a coefficient-ring element."""
        return SkewPoly([c * a for a in self.coeffs])

    def __pow__(self, n: int) -> "SkewPoly":
        if n < 0:
            raise ValueError("negative powers of skew polynomials undefined")
        acc = None
        base = self
        while n:
            if n & 1:
                acc = base if acc is None else acc * base
            n >>= 1
            if n:
                base = base * base
        if acc is None:
            raise ValueError("use an explicit identity for the zeroth power")
        return acc

    def apply(self, x):
        """Evaluate the operator on an operand x (which must support frob)."""
        acc = None
        for i, c in enumerate(self.coeffs):
            if coeff_is_zero(c):
                continue
            term = c * twist_coeff(x, i)
            acc = term if acc is None else acc + term
        if acc is None:
            return self._zero_like()
        return acc

    def map_coeffs(self, fn) -> "SkewPoly":
        return SkewPoly([fn(c) for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewPoly):
            return NotImplemented
        diff = self - other
        return all(coeff_is_zero(c) for c in diff.coeffs)

    def __repr__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if coeff_is_zero(c):
                continue
            if i == 0:
                parts.append(repr(c))
            else:
                parts.append("(%r)*F^%d" % (c, i))
        return " + ".join(parts) if parts else "0"
