"""The base function field K = F_q(theta, eta).

K is the fraction field of an isomorphic copy of the coordinate ring,
generated by theta (degree 2) and eta (degree 3) satisfying the same
Weierstrass equation as (t, y).  Elements are stored as
(a(theta) + b(theta)*eta) / d(theta) with d monic; the representation
is not gcd-reduced automatically (equality goes through cross
multiplication), which keeps the large product chains cheap.

The p-power Frobenius is structural: a(theta) -> a(theta^p) is an
exponent spread, and eta^p is cached, so x -> x^q costs O(deg) rather
than a full power.
"""

from __future__ import annotations

import numpy as np

from . import fqpoly
from .curve import AElem, Curve


class KField:
    """Context for K = Frac F_q[theta, eta] over a fixed curve."""

    def __init__(self, curve: Curve):
        self.curve = curve
        self.p = curve.ctx.p
        self.R_arr = curve.R_arr
        self.tau_arr = curve.tau_arr
        self._eta_p: "KElem | None" = None

    # eta^p = eta * (R - tau*eta)^((p-1)/2), cached as an element
    def eta_p(self) -> "KElem":
        if self._eta_p is None:
            base = KElem(self, self.R_arr, fqpoly.neg(self.tau_arr, self.p))
            acc = self.one()
            for _ in range((self.p - 1) // 2):
                acc = acc * base
            self._eta_p = acc * self.eta()
        return self._eta_p

    def zero(self) -> "KElem":
        return KElem(self, fqpoly.ZERO, fqpoly.ZERO)

    def one(self) -> "KElem":
        return KElem(self, fqpoly.const(1, self.p), fqpoly.ZERO)

    def scalar(self, c: int) -> "KElem":
        return KElem(self, fqpoly.const(c, self.p), fqpoly.ZERO)

    def theta(self) -> "KElem":
        return KElem(self, fqpoly.from_list([0, 1], self.p), fqpoly.ZERO)

    def eta(self) -> "KElem":
        return KElem(self, fqpoly.ZERO, fqpoly.const(1, self.p))

    def from_aelem(self, a: AElem) -> "KElem":
        """Image of an A-element under t -> theta, y -> eta."""
        return KElem(self, a.b.copy(), a.c.copy())

    def __eq__(self, other):
        return isinstance(other, KField) and self.curve is other.curve


class KElem:
    """Element (a + b*eta)/d of K; d monic."""

    __slots__ = ("field", "a", "b", "d")

    def __init__(self, field: KField, a, b, d=None):
        self.field = field
        p = field.p
        self.a = a if isinstance(a, np.ndarray) else fqpoly.from_list(a, p)
        self.b = b if isinstance(b, np.ndarray) else fqpoly.from_list(b, p)
        if d is None:
            d = fqpoly.const(1, p)
        elif not isinstance(d, np.ndarray):
            d = fqpoly.from_list(d, p)
        if fqpoly.is_zero(d):
            raise ZeroDivisionError("zero denominator in K")
        if fqpoly.lead(d) != 1:
            inv = pow(fqpoly.lead(d), p - 2, p)
            d = fqpoly.scalar_mul(inv, d, p)
            self.a = fqpoly.scalar_mul(inv, self.a, p)
            self.b = fqpoly.scalar_mul(inv, self.b, p)
        self.d = d

    def is_zero(self) -> bool:
        return fqpoly.is_zero(self.a) and fqpoly.is_zero(self.b)

    def __add__(self, other: "KElem") -> "KElem":
        p = self.field.p
        if fqpoly.eq(self.d, other.d):
            return KElem(
                self.field,
                fqpoly.add(self.a, other.a, p),
                fqpoly.add(self.b, other.b, p),
                self.d,
            )
        # Strip the common power of theta from both denominators first;
        # without this, chains of additions sum the theta-exponents of
        # the denominators instead of taking their maximum.
        d1, d2 = self.d, other.d
        v1 = int(np.argmax(d1 != 0))
        v2 = int(np.argmax(d2 != 0))
        v = min(v1, v2)
        if v > 0:
            d1c, d2c = d1[v:], d2[v:]
        else:
            d1c, d2c = d1, d2
        a = fqpoly.add(fqpoly.mul(self.a, d2c, p), fqpoly.mul(other.a, d1c, p), p)
        b = fqpoly.add(fqpoly.mul(self.b, d2c, p), fqpoly.mul(other.b, d1c, p), p)
        den = fqpoly.mul(d1, d2c, p)
        return KElem(self.field, a, b, den)

    def __neg__(self) -> "KElem":
        p = self.field.p
        return KElem(self.field, fqpoly.neg(self.a, p), fqpoly.neg(self.b, p), self.d)

    def __sub__(self, other: "KElem") -> "KElem":
        return self + (-other)

    def __mul__(self, other: "KElem") -> "KElem":
        p = self.field.p
        f = self.field
        if len(self.d) == 1 and int(self.d[0]) == 1:
            den = other.d
        elif len(other.d) == 1 and int(other.d[0]) == 1:
            den = self.d
        else:
            den = fqpoly.mul(self.d, other.d, p)
        a1a2 = fqpoly.mul(self.a, other.a, p)
        b1z = fqpoly.is_zero(self.b)
        b2z = fqpoly.is_zero(other.b)
        if b1z and b2z:
            return KElem(f, a1a2, fqpoly.ZERO, den)
        if b1z:
            return KElem(f, a1a2, fqpoly.mul(self.a, other.b, p), den)
        if b2z:
            return KElem(f, a1a2, fqpoly.mul(self.b, other.a, p), den)
        b1b2 = fqpoly.mul(self.b, other.b, p)
        # one-multiplication cross term: (a1+b1)(a2+b2) - a1a2 - b1b2
        cross = fqpoly.sub(
            fqpoly.sub(
                fqpoly.mul(
                    fqpoly.add(self.a, self.b, p), fqpoly.add(other.a, other.b, p), p
                ),
                a1a2,
                p,
            ),
            b1b2,
            p,
        )
        a = fqpoly.add(a1a2, fqpoly.mul(b1b2, f.R_arr, p), p)
        b = fqpoly.sub(cross, fqpoly.mul(b1b2, f.tau_arr, p), p)
        return KElem(f, a, b, den)

    def conj(self) -> "KElem":
        """Image under eta -> -eta - tauE(theta)."""
        p = self.field.p
        a = fqpoly.sub(self.a, fqpoly.mul(self.b, self.field.tau_arr, p), p)
        return KElem(self.field, a, fqpoly.neg(self.b, p), self.d)

    def norm_num(self) -> np.ndarray:
        """Numerator of x * conj(x): a^2 - a*b*tauE - b^2*R, a theta-poly."""
        p = self.field.p
        t1 = fqpoly.mul(self.a, self.a, p)
        t2 = fqpoly.mul(fqpoly.mul(self.a, self.b, p), self.field.tau_arr, p)
        t3 = fqpoly.mul(fqpoly.mul(self.b, self.b, p), self.field.R_arr, p)
        return fqpoly.sub(fqpoly.sub(t1, t2, p), t3, p)

    def inv(self) -> "KElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in K")
        p = self.field.p
        n = self.norm_num()
        a = fqpoly.sub(self.a, fqpoly.mul(self.b, self.field.tau_arr, p), p)
        a = fqpoly.mul(a, self.d, p)
        b = fqpoly.neg(fqpoly.mul(self.b, self.d, p), p)
        return KElem(self.field, a, b, n)

    def __truediv__(self, other: "KElem") -> "KElem":
        return self * other.inv()

    def __pow__(self, n: int) -> "KElem":
        if n < 0:
            return self.inv() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def frob(self, j: int = 1) -> "KElem":
        """q-power Frobenius applied j times (q = p here: prime base)."""
        x = self
        p = self.field.p
        for _ in range(j):
            a = fqpoly.spread(x.a, p)
            b = fqpoly.spread(x.b, p)
            d = fqpoly.spread(x.d, p)
            etap = self.field.eta_p()
            # (a' + b'*eta^p) / d' with eta^p = etap (den 1 by construction)
            num_b = KElem(self.field, a, fqpoly.ZERO) + KElem(
                self.field, b, fqpoly.ZERO
            ) * etap
            x = KElem(self.field, num_b.a, num_b.b, fqpoly.mul(d, num_b.d, p))
        return x

    def reduce(self) -> "KElem":
        """gcd-reduce the representation (optional; used for display)."""
        p = self.field.p
        g = fqpoly.gcd(fqpoly.gcd(self.a, self.b, p), self.d, p)
        if fqpoly.deg(g) < 1:
            return self
        a = fqpoly.divmod_(self.a, g, p)[0]
        b = fqpoly.divmod_(self.b, g, p)[0]
        d = fqpoly.divmod_(self.d, g, p)[0]
        return KElem(self.field, a, b, d)

    def deg(self) -> int | None:
        """Degree at the infinite place; None for zero."""
        if self.is_zero():
            return None
        da, db = fqpoly.deg(self.a), fqpoly.deg(self.b)
        cand = []
        if da >= 0:
            cand.append(2 * da)
        if db >= 0:
            cand.append(3 + 2 * db)
        return max(cand) - 2 * fqpoly.deg(self.d)

    def sgn(self) -> int:
        if self.is_zero():
            return 0
        da, db = fqpoly.deg(self.a), fqpoly.deg(self.b)
        top_a = 2 * da if da >= 0 else -1
        top_b = 3 + 2 * db if db >= 0 else -1
        return fqpoly.lead(self.a) if top_a > top_b else fqpoly.lead(self.b)

    def __eq__(self, other):
        if not isinstance(other, KElem):
            return NotImplemented
        p = self.field.p
        if fqpoly.eq(self.d, other.d):
            return fqpoly.eq(self.a, other.a) and fqpoly.eq(self.b, other.b)
        return fqpoly.eq(
            fqpoly.mul(self.a, other.d, p), fqpoly.mul(other.a, self.d, p)
        ) and fqpoly.eq(
            fqpoly.mul(self.b, other.d, p), fqpoly.mul(other.b, self.d, p)
        )

    def __repr__(self):
        x = self.reduce() if fqpoly.deg(self.d) <= 64 else self

        def poly_str(arr, var="theta"):
            terms = []
            for k, cf in enumerate(arr):
                if cf == 0:
                    continue
                if k == 0:
                    terms.append(str(int(cf)))
                else:
                    head = "" if cf == 1 else f"{int(cf)}*"
                    terms.append(f"{head}{var}" + (f"^{k}" if k > 1 else ""))
            return " + ".join(terms) if terms else "0"

        num = []
        if not fqpoly.is_zero(x.a):
            num.append(poly_str(x.a))
        if not fqpoly.is_zero(x.b):
            bs = poly_str(x.b)
            num.append(f"({bs})*eta" if ("+" in bs or bs != "1") else "eta")
        ns = " + ".join(num) if num else "0"
        if fqpoly.deg(x.d) == 0:
            return ns
        return f"({ns})/({poly_str(x.d)})"
