"""Elliptic curves over F_q and their coordinate rings.

The curve is a generalized Weierstrass model
    y^2 + a1*t*y + a3*y = t^3 + a2*t^2 + a4*t + a6
over F_q.  The affine coordinate ring A = F_q[t, y] has the F_q-basis
t^i, t^j*y; the degree grading assigns deg t = 2, deg y = 3, so every
nonzero element has a well-defined degree (even from the t-part, odd
>= 3 from the y-part; the two never tie) and a leading coefficient
("sign") in F_q.

The chord-tangent group law is written for arbitrary coordinate domains:
any ring whose elements support +, -, *, /, ==; constants from F_q are
lifted through a caller-supplied coercion.
"""

from __future__ import annotations

import numpy as np

from . import fqpoly
from .finitefield import FieldCtx, FqElem


class Curve:
    """Generalized Weierstrass curve over F_q (prime base fields only)."""

    def __init__(self, ctx: FieldCtx, a1, a2, a3, a4, a6):
        if ctx.e != 1:
            raise NotImplementedError(
                "coordinate-ring arithmetic requires a prime base field"
            )
        self.ctx = ctx
        p = ctx.p

        def cv(x):
            return x if isinstance(x, FqElem) else ctx.elem(x)

        self.a1, self.a2, self.a3, self.a4, self.a6 = map(cv, (a1, a2, a3, a4, a6))
        ai = [int(a.coords[0]) for a in (self.a1, self.a2, self.a3, self.a4, self.a6)]
        a1i, a2i, a3i, a4i, a6i = ai
        # b-invariant discriminant formula, valid in every characteristic
        b2 = a1i * a1i + 4 * a2i
        b4 = 2 * a4i + a1i * a3i
        b6 = a3i * a3i + 4 * a6i
        b8 = (
            a1i * a1i * a6i
            + 4 * a2i * a6i
            - a1i * a3i * a4i
            + a2i * a3i * a3i
            - a4i * a4i
        )
        disc = (-b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6) % p
        if disc == 0:
            raise ValueError("singular Weierstrass model (discriminant zero)")
        # y^2 = R(t) - tauE(t)*y with R = t^3+a2t^2+a4t+a6, tauE = a1t+a3
        self.R_arr = fqpoly.from_list([a6i, a4i, a2i, 1], p)
        self.tau_arr = fqpoly.from_list([a3i, a1i], p)

    def rhs_at(self, x, lift):
        """R(x) = x^3 + a2 x^2 + a4 x + a6 in the domain of x."""
        a2, a4, a6 = lift(self.a2), lift(self.a4), lift(self.a6)
        return ((x + a2) * x + a4) * x + a6

    def taue_at(self, x, lift):
        """a1 x + a3 in the domain of x."""
        return lift(self.a1) * x + lift(self.a3)

    def on_curve(self, P: "Point", lift) -> bool:
        if P.inf:
            return True
        lhs = P.y * P.y + self.taue_at(P.x, lift) * P.y
        return lhs == self.rhs_at(P.x, lift)

    def rational_points(self, field: FieldCtx | None = None) -> list["Point"]:
        """All points over the given field (default: the base field)."""
        field = field or self.ctx
        lift = field.embed_scalar if field.e != 1 or field != self.ctx else (lambda c: c)
        pts = [Point.infinity()]
        for x in field.elements():
            for y in field.elements():
                P = Point(x, y)
                if self.on_curve(P, lift):
                    pts.append(P)
        return pts


class Point:
    """Affine point (x, y) in any coordinate domain, or the point at infinity."""

    __slots__ = ("x", "y", "inf")

    def __init__(self, x=None, y=None, inf: bool = False):
        self.x = x
        self.y = y
        self.inf = inf

    @staticmethod
    def infinity() -> "Point":
        return Point(inf=True)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.inf or other.inf:
            return self.inf and other.inf
        return self.x == other.x and self.y == other.y

    def frob(self, j: int = 1) -> "Point":
        """Coordinate-wise q-power Frobenius (q^j)."""
        if self.inf:
            return self
        return Point(self.x.frob(j), self.y.frob(j))

    def __repr__(self):
        return "O" if self.inf else f"({self.x!r}, {self.y!r})"


def point_neg(curve: Curve, P: Point, lift) -> Point:
    if P.inf:
        return P
    return Point(P.x, -P.y - curve.taue_at(P.x, lift))


def point_add(curve: Curve, P: Point, Q: Point, lift) -> Point:
    """Chord-tangent addition in any coordinate domain."""
    if P.inf:
        return Q
    if Q.inf:
        return P
    a1, a2, a3 = lift(curve.a1), lift(curve.a2), lift(curve.a3)
    a4 = lift(curve.a4)
    if P.x == Q.x:
        if Q.y == -P.y - curve.taue_at(P.x, lift):
            return Point.infinity()
        # doubling
        num = (lift(curve.ctx.elem(3)) * P.x + lift(curve.ctx.elem(2)) * a2) * P.x
        num = num + a4 - a1 * P.y
        den = lift(curve.ctx.elem(2)) * P.y + a1 * P.x + a3
        lam = num / den
        y1 = P.y
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
        y1 = P.y
    nu = y1 - lam * P.x
    x3 = lam * lam + a1 * lam - a2 - P.x - Q.x
    y3 = -(lam + a1) * x3 - nu - a3
    return Point(x3, y3)


def point_sub(curve: Curve, P: Point, Q: Point, lift) -> Point:
    return point_add(curve, P, point_neg(curve, Q, lift), lift)


def point_mul(curve: Curve, n: int, P: Point, lift) -> Point:
    if n < 0:
        return point_mul(curve, -n, point_neg(curve, P, lift), lift)
    acc = Point.infinity()
    base = P
    while n:
        if n & 1:
            acc = point_add(curve, acc, base, lift)
        base = point_add(curve, base, base, lift)
        n >>= 1
    return acc


class AElem:
    """Element b(t) + c(t)*y of the coordinate ring A = F_q[t, y]."""

    __slots__ = ("curve", "b", "c")

    def __init__(self, curve: Curve, b, c=None):
        self.curve = curve
        p = curve.ctx.p
        self.b = b if isinstance(b, np.ndarray) else fqpoly.from_list(b, p)
        if c is None:
            c = fqpoly.ZERO
        self.c = c if isinstance(c, np.ndarray) else fqpoly.from_list(c, p)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(curve: Curve) -> "AElem":
        return AElem(curve, fqpoly.ZERO)

    @staticmethod
    def one(curve: Curve) -> "AElem":
        return AElem(curve, fqpoly.const(1, curve.ctx.p))

    @staticmethod
    def t(curve: Curve) -> "AElem":
        return AElem(curve, [0, 1])

    @staticmethod
    def y(curve: Curve) -> "AElem":
        return AElem(curve, [], [1])

    @staticmethod
    def monomial(curve: Curve, d: int) -> "AElem":
        """The monic monomial of degree d (d = 0 or d >= 2)."""
        if d == 0:
            return AElem.one(curve)
        if d < 2 or d == 1:
            raise ValueError("no monomial of degree 1 exists in A")
        if d % 2 == 0:
            return AElem(curve, [0] * (d // 2) + [1])
        return AElem(curve, [], [0] * ((d - 3) // 2) + [1])

    # -- ring structure -----------------------------------------------

    def is_zero(self) -> bool:
        return fqpoly.is_zero(self.b) and fqpoly.is_zero(self.c)

    def __add__(self, other: "AElem") -> "AElem":
        p = self.curve.ctx.p
        return AElem(
            self.curve, fqpoly.add(self.b, other.b, p), fqpoly.add(self.c, other.c, p)
        )

    def __neg__(self) -> "AElem":
        p = self.curve.ctx.p
        return AElem(self.curve, fqpoly.neg(self.b, p), fqpoly.neg(self.c, p))

    def __sub__(self, other: "AElem") -> "AElem":
        return self + (-other)

    def __mul__(self, other: "AElem") -> "AElem":
        # (b1 + c1 y)(b2 + c2 y), reduced by y^2 = R(t) - tauE(t) y
        p = self.curve.ctx.p
        b1b2 = fqpoly.mul(self.b, other.b, p)
        c1c2 = fqpoly.mul(self.c, other.c, p)
        cross = fqpoly.add(
            fqpoly.mul(self.b, other.c, p), fqpoly.mul(self.c, other.b, p), p
        )
        b = fqpoly.add(b1b2, fqpoly.mul(c1c2, self.curve.R_arr, p), p)
        c = fqpoly.sub(cross, fqpoly.mul(c1c2, self.curve.tau_arr, p), p)
        return AElem(self.curve, b, c)

    def scalar_mul(self, k: int) -> "AElem":
        p = self.curve.ctx.p
        return AElem(
            self.curve, fqpoly.scalar_mul(k, self.b, p), fqpoly.scalar_mul(k, self.c, p)
        )

    def __pow__(self, n: int) -> "AElem":
        out = AElem.one(self.curve)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, AElem)
            and fqpoly.eq(self.b, other.b)
            and fqpoly.eq(self.c, other.c)
        )

    # -- grading ------------------------------------------------------

    def deg(self) -> int | None:
        """Degree in the grading deg t = 2, deg y = 3; None for zero."""
        db = fqpoly.deg(self.b)
        dc = fqpoly.deg(self.c)
        if db < 0 and dc < 0:
            return None
        cand = []
        if db >= 0:
            cand.append(2 * db)
        if dc >= 0:
            cand.append(3 + 2 * dc)
        return max(cand)

    def sgn(self) -> int:
        """Leading coefficient in the monomial basis; 0 for the zero element."""
        d = self.deg()
        if d is None:
            return 0
        if d % 2 == 0 and fqpoly.deg(self.b) == d // 2:
            return fqpoly.lead(self.b)
        return fqpoly.lead(self.c)

    def is_monic(self) -> bool:
        return self.sgn() == 1

    # -- evaluation ---------------------------------------------------

    def evaluate(self, x, y, lift):
        """b(x) + c(x)*y in the domain of (x, y); lift maps FqElem up."""
        ctx = self.curve.ctx

        def horner(arr):
            acc = lift(ctx.zero())
            for cf in arr[::-1]:
                acc = acc * x + lift(ctx.elem(int(cf)))
            return acc

        return horner(self.b) + horner(self.c) * y

    def __repr__(self):
        def side(arr, suffix):
            out = []
            for k, cf in enumerate(arr):
                if cf == 0:
                    continue
                mono = f"t^{k}" if k > 1 else ("t" if k == 1 else "")
                body = "*".join(x for x in (str(int(cf)) if (cf != 1 or (not mono and not suffix)) else "", mono, suffix) if x)
                out.append(body)
            return out
        terms = side(self.b, "") + side(self.c, "y")
        return " + ".join(terms) if terms else "0"


def enumerate_monic(curve: Curve, i: int) -> list[AElem]:
    """All monic elements of A of degree exactly i, in a fixed order.

    The order is lexicographic over the coefficient tuple of the basis
    monomials of degrees (i-1, i-2, ..., 2, 0), most significant first.
    Degree 1 yields the empty list; degree 0 yields [1].
    """
    if i == 0:
        return [AElem.one(curve)]
    if i == 1 or i < 0:
        return []
    lead = AElem.monomial(curve, i)
    degrees = [d for d in range(i - 1, -1, -1) if d != 1]
    q = curve.ctx.q
    out = []
    for idx in range(q ** len(degrees)):
        a = lead
        k = idx
        for d in reversed(degrees):  # least significant digit -> lowest degree
            c = k % q
            k //= q
            if c:
                a = a + AElem.monomial(curve, d).scalar_mul(c)
        out.append(a)
    return out


class PrimeDeg1:
    """Degree-one prime of A: the ideal of functions vanishing at an
    affine F_q-rational point."""

    def __init__(self, curve: Curve, P: Point):
        if P.inf:
            raise ValueError("degree-one primes correspond to affine points")
        self.curve = curve
        self.point = P
        self.t0 = P.x
        self.y0 = P.y

    def basis_monomial(self, d: int) -> AElem:
        """Monic element of the prime of degree d (d >= 2):
        (t - t0)^j or (t - t0)^j (y - y0)."""
        if d < 2:
            raise ValueError("prime basis starts at degree 2")
        c = self.curve
        tshift = AElem(c, [int(-self.t0.coords[0]) % c.ctx.p, 1])
        yshift = AElem(c, [int(-self.y0.coords[0]) % c.ctx.p], [1])
        if d % 2 == 0:
            return tshift ** (d // 2)
        return (tshift ** ((d - 3) // 2)) * yshift

    def enumerate_monic(self, i: int) -> list[AElem]:
        """Monic elements of the prime of degree exactly i (i >= 2)."""
        if i < 2:
            return []
        lead = self.basis_monomial(i)
        degrees = list(range(i - 1, 1, -1))
        q = self.curve.ctx.q
        out = []
        for idx in range(q ** len(degrees)):
            a = lead
            k = idx
            for d in reversed(degrees):
                c = k % q
                k //= q
                if c:
                    a = a + self.basis_monomial(d).scalar_mul(c)
            out.append(a)
        return out

    def __repr__(self):
        return f"PrimeDeg1({self.point!r})"
