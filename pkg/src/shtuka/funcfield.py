"""Rational functions on the curve with coefficients in H.

A `CurveFn` is (B(t) + C(t)*y) / D(t) with B, C, D polynomials over H
and D monic.  This is the shape every shtuka-side object takes: the
numerator and denominator of the shtuka function, their Frobenius
twists, Galois conjugates, and the polynomial identities between them
all live here.

Evaluation at a point with coordinates in H goes directly when the
denominator does not vanish there; otherwise `local_series` expands
numerator and denominator in a uniformizer and cancels, which also
serves pole-order and residue bookkeeping.  Charts exist for generic
finite points (uniformizer t - x0) and for 2-torsion points
(uniformizer y - y0).
"""

from __future__ import annotations

from .errors import (
    IndeterminateEval,
    NegativeTwistUnsupported,
    PoleAtPoint,
)
from .hfield import HElem, HField


# ---------------------------------------------------------------------------
# polynomials over H, as plain low-to-high lists of HElem


def ptrim(v: list[HElem]) -> list[HElem]:
    while v and v[-1].is_zero():
        v = v[:-1]
    return v


def padd(H: HField, a, b):
    n = max(len(a), len(b))
    a = a + [H.zero()] * (n - len(a))
    b = b + [H.zero()] * (n - len(b))
    return ptrim([x + y for x, y in zip(a, b)])


def pneg(a):
    return [-x for x in a]


def psub(H: HField, a, b):
    return padd(H, a, pneg(b))


def pmul(H: HField, a, b):
    if not a or not b:
        return []
    out = [H.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return ptrim(out)

def pscale(a, c: HElem):
    return ptrim([x * c for x in a])


def peval(H: HField, a, x0: HElem) -> HElem:
    acc = H.zero()
    for c in reversed(a):
        acc = acc * x0 + c
    return acc


def pfrob(a, j: int):
    return [c.frob(j) for c in a]


def lift_fp_poly(H: HField, arr) -> list[HElem]:
    """Lift an F_p coefficient array to a polynomial over H."""
    return ptrim([H.scalar(int(c)) for c in arr])


# ---------------------------------------------------------------------------
# truncated power series over H (implicit valuation 0, fixed length)


def strim(H: HField, a, order):
    a = list(a[:order])
    return a + [H.zero()] * (order - len(a))


def smul(H: HField, a, b, order):
    out = [H.zero()] * order
    for i, x in enumerate(a):
        if i >= order or x.is_zero():
            continue
        for j, y in enumerate(b):
            if i + j >= order:
                break
            if y.is_zero():
                continue
            out[i + j] = out[i + j] + x * y
    return out


def sinv(H: HField, a, order):
    """Inverse of a series with invertible constant term."""
    c0 = a[0].inv()
    out = [H.zero()] * order
    out[0] = c0
    for n in range(1, order):
        s = H.zero()
        for k in range(1, min(n, len(a) - 1) + 1):
            s = s + a[k] * out[n - k]
        out[n] = -(c0 * s)
    return out


def seval_poly(H: HField, poly, xs, order):
    """Substitute a series for the variable of a polynomial over H."""
    acc = [H.zero()] * order
    for c in reversed(poly):
        acc = smul(H, acc, xs, order)
        acc[0] = acc[0] + c
    return acc


# ---------------------------------------------------------------------------
# points with H coordinates


class HPoint:
    __slots__ = ("H", "x", "y")

    def __init__(self, H: HField, x: HElem, y: HElem, check: bool = True):
        self.H = H
        self.x = x
        self.y = y
        if check and not self.on_curve():
            raise ValueError("point does not satisfy the curve equation")

    def on_curve(self) -> bool:
        cv = self.H.K.curve
        R = peval(self.H, lift_fp_poly(self.H, cv.R_arr), self.x)
        tau = peval(self.H, lift_fp_poly(self.H, cv.tau_arr), self.x)
        return (self.y * self.y + tau * self.y - R).is_zero()

    def neg(self) -> "HPoint":
        cv = self.H.K.curve
        tau = peval(self.H, lift_fp_poly(self.H, cv.tau_arr), self.x)
        return HPoint(self.H, self.x, -self.y - tau, check=False)

    def frob(self, j: int = 1) -> "HPoint":
        return HPoint(self.H, self.x.frob(j), self.y.frob(j), check=False)

    def is_two_torsion(self) -> bool:
        cv = self.H.K.curve
        tau = peval(self.H, lift_fp_poly(self.H, cv.tau_arr), self.x)
        return (self.y + self.y + tau).is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, HPoint)
            and self.x == other.x
            and self.y == other.y
        )

    def __repr__(self):
        return f"HPoint({self.x!r}, {self.y!r})"


def xi_point(H: HField) -> HPoint:
    """The distinguished point (theta, eta)."""
    return HPoint(H, H.theta(), H.eta(), check=False)


# ---------------------------------------------------------------------------
# local charts


class LocalChart:
    """Series expansions of t and y at a finite point.

    `kind` is "t" when the uniformizer is t - x0 (generic point) and
    "y" when it is y - y0 (2-torsion point).  `t_series`, `y_series`
    and `dt_ds` are truncated series over H in the uniformizer.
    """

    __slots__ = ("H", "point", "kind", "order", "t_series", "y_series", "dt_ds")

    def __init__(self, H: HField, point: HPoint, order: int):
        self.H = H
        self.point = point
        self.order = order
        cv = H.K.curve
        Rp = lift_fp_poly(H, cv.R_arr)
        taup = lift_fp_poly(H, cv.tau_arr)
        if not point.is_two_torsion():
            self.kind = "t"
            ts = strim(H, [point.x, H.one()], order)
            R_s = seval_poly(H, Rp, ts, order)
            tau_s = seval_poly(H, taup, ts, order)
            ys = strim(H, [point.y], order)
            # Newton for Y^2 + tau(t) Y - R(t) = 0
            for _ in range(order.bit_length() + 1):
                F = padd_series(H, smul(H, ys, ys, order), smul(H, tau_s, ys, order), order)
                F = sub_series(H, F, R_s, order)
                dF = padd_series(H, padd_series(H, ys, ys, order), tau_s, order)
                ys = sub_series(H, ys, smul(H, F, sinv(H, dF, order), order), order)
            self.t_series = ts
            self.y_series = ys
            self.dt_ds = strim(H, [H.one()], order)
        else:
            self.kind = "y"
            ys = strim(H, [point.y, H.one()], order)
            ts = strim(H, [point.x], order)
            y2 = smul(H, ys, ys, order)
            # Newton for R(T) - tau(T) y - y^2 = 0 in T
            dRp = pderiv(H, Rp)
            dtaup = pderiv(H, taup)
            for _ in range(order.bit_length() + 1):
                G = sub_series(H, seval_poly(H, Rp, ts, order),
                               smul(H, seval_poly(H, taup, ts, order), ys, order), order)
                G = sub_series(H, G, y2, order)
                dG = sub_series(H, seval_poly(H, dRp, ts, order),
                                smul(H, seval_poly(H, dtaup, ts, order), ys, order), order)
                ts = sub_series(H, ts, smul(H, G, sinv(H, dG, order), order), order)
            self.t_series = ts
            self.y_series = ys
            self.dt_ds = series_deriv(H, ts, order)


def padd_series(H, a, b, order):
    return [x + y for x, y in zip(strim(H, a, order), strim(H, b, order))]


def sub_series(H, a, b, order):
    return [x - y for x, y in zip(strim(H, a, order), strim(H, b, order))]


def series_deriv(H: HField, a, order):
    out = [H.zero()] * order
    for k in range(1, len(a)):
        if k - 1 >= order:
            break
        out[k - 1] = H.scalar(k % H.K.p) * a[k]
    return out


def pderiv(H: HField, a):
    out = []
    for k in range(1, len(a)):
        out.append(H.scalar(k % H.K.p) * a[k])
    return ptrim(out)


# ---------------------------------------------------------------------------
# the rational functions themselves


class CurveFn:
    """(B(t) + C(t)*y) / D(t) over H, with D monic."""

    __slots__ = ("H", "B", "C", "D")

    def __init__(self, H: HField, B, C, D=None):
        self.H = H
        B = ptrim(list(B))
        C = ptrim(list(C))
        if D is None:
            D = [H.one()]
        else:
            D = ptrim(list(D))
        if not D:
            raise ZeroDivisionError("zero denominator")
        if not (D[-1] == H.one()):
            linv = D[-1].inv()
            B = pscale(B, linv)
            C = pscale(C, linv)
            D = pscale(D, linv)
        self.B = B
        self.C = C
        self.D = D

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(H: HField) -> "CurveFn":
        return CurveFn(H, [], [])

    @staticmethod
    def one(H: HField) -> "CurveFn":
        return CurveFn(H, [H.one()], [])

    @staticmethod
    def t(H: HField) -> "CurveFn":
        return CurveFn(H, [H.zero(), H.one()], [])

    @staticmethod
    def y(H: HField) -> "CurveFn":
        return CurveFn(H, [], [H.one()])

    @staticmethod
    def const(H: HField, c: HElem) -> "CurveFn":
        return CurveFn(H, [c], [])

    @staticmethod
    def from_aelem(H: HField, a) -> "CurveFn":
        return CurveFn(H, lift_fp_poly(H, a.b), lift_fp_poly(H, a.c))

    def is_zero(self) -> bool:
        return not self.B and not self.C

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "CurveFn") -> "CurveFn":
        H = self.H
        if pl_eq(self.D, other.D):
            return CurveFn(
                H, padd(H, self.B, other.B), padd(H, self.C, other.C), self.D
            )
        B = padd(H, pmul(H, self.B, other.D), pmul(H, other.B, self.D))
        C = padd(H, pmul(H, self.C, other.D), pmul(H, other.C, self.D))
        return CurveFn(H, B, C, pmul(H, self.D, other.D))

    def __neg__(self) -> "CurveFn":
        return CurveFn(self.H, pneg(self.B), pneg(self.C), self.D)

    def __sub__(self, other: "CurveFn") -> "CurveFn":
        return self + (-other)

    def __mul__(self, other: "CurveFn") -> "CurveFn":
        H = self.H
        cv = H.K.curve
        Rp = lift_fp_poly(H, cv.R_arr)
        taup = lift_fp_poly(H, cv.tau_arr)
        bb = pmul(H, self.B, other.B)
        cc = pmul(H, self.C, other.C)
        cross = padd(H, pmul(H, self.B, other.C), pmul(H, self.C, other.B))
        B = padd(H, bb, pmul(H, cc, Rp))
        C = psub(H, cross, pmul(H, cc, taup))
        return CurveFn(H, B, C, pmul(H, self.D, other.D))

    def conj(self) -> "CurveFn":
        """Image under y -> -y - tauE(t) (the hyperelliptic involution)."""
        H = self.H
        taup = lift_fp_poly(H, H.K.curve.tau_arr)
        return CurveFn(
            H, psub(H, self.B, pmul(H, self.C, taup)), pneg(self.C), self.D
        )

    def norm_poly(self) -> list[HElem]:
        """Numerator of self * conj(self): B^2 - B*C*tauE - C^2*R in t."""
        H = self.H
        cv = H.K.curve
        Rp = lift_fp_poly(H, cv.R_arr)
        taup = lift_fp_poly(H, cv.tau_arr)
        t1 = pmul(H, self.B, self.B)
        t2 = pmul(H, pmul(H, self.B, self.C), taup)
        t3 = pmul(H, pmul(H, self.C, self.C), Rp)
        return psub(H, psub(H, t1, t2), t3)

    def inv(self) -> "CurveFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero function")
        H = self.H
        taup = lift_fp_poly(H, H.K.curve.tau_arr)
        n = self.norm_poly()
        B = pmul(H, psub(H, self.B, pmul(H, self.C, taup)), self.D)
        C = pneg(pmul(H, self.C, self.D))
        return CurveFn(H, B, C, n)

    def __truediv__(self, other: "CurveFn") -> "CurveFn":
        return self * other.inv()

    def __pow__(self, n: int) -> "CurveFn":
        if n < 0:
            return self.inv() ** (-n)
        out = CurveFn.one(self.H)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: HElem) -> "CurveFn":
        return CurveFn(self.H, pscale(self.B, c), pscale(self.C, c), self.D)

    # -- twists and Galois --------------------------------------------
    def twist(self, j: int = 1) -> "CurveFn":
        """Apply the q-power Frobenius to every coefficient."""
        if j < 0:
            raise NegativeTwistUnsupported(
                "twist by a negative amount; restate the identity in a "
                "positively twisted form instead"
            )
        return CurveFn(self.H, pfrob(self.B, j), pfrob(self.C, j), pfrob(self.D, j))

    def galois(self, k: int) -> "CurveFn":
        H = self.H
        return CurveFn(
            H,
            [H.galois_apply(c, k) for c in self.B],
            [H.galois_apply(c, k) for c in self.C],
            [H.galois_apply(c, k) for c in self.D],
        )

    # -- evaluation ---------------------------------------------------
    def eval_at(self, P: HPoint) -> HElem:
        """Value at a finite point; expands locally if D vanishes there."""
        H = self.H
        den = peval(H, self.D, P.x)
        if not den.is_zero():
            num = peval(H, self.B, P.x) + peval(H, self.C, P.x) * P.y
            return num * den.inv()
        val, coeffs = self.local_series(LocalChart(H, P, 2 * len(self.D) + 4))
        if val > 0:
            return H.zero()
        if val == 0:
            return coeffs[0]
        raise PoleAtPoint("function has a pole at the evaluation point")

    def local_series(self, chart: LocalChart) -> tuple[int, list[HElem]]:
        """Expansion in the chart uniformizer: (valuation, coefficients).

        The coefficient list starts at the valuation and has
        chart.order - (denominator valuation) usable entries.
        """
        H = self.H
        order = chart.order
        num = seval_poly(H, self.B, chart.t_series, order)
        if self.C:
            cpart = seval_poly(H, self.C, chart.t_series, order)
            num = padd_series(H, num, smul(H, cpart, chart.y_series, order), order)
        den = seval_poly(H, self.D, chart.t_series, order)
        vd = series_valuation(den, order)
        if vd is None:
            raise IndeterminateEval(
                "denominator vanishes to the full probed order"
            )
        vn = series_valuation(num, order)
        if vn is None:
            return order - vd, [H.zero()] * (order - vd)
        m = order - vd
        nshift = strim(H, num[vn:], m)
        dshift = strim(H, den[vd:], m)
        q = smul(H, nshift, sinv(H, dshift, m), m)
        return vn - vd, q

    def order_at(self, P: HPoint, probe: int = 12) -> int:
        """Vanishing order at P (negative for a pole)."""
        val, coeffs = self.local_series(LocalChart(self.H, P, probe))
        for k, c in enumerate(coeffs):
            if not c.is_zero():
                return val + k
        raise ValueError("vanishing order exceeds probe depth")

    def residue_at(self, P: HPoint, probe: int = 12) -> HElem:
        """Residue of self * dt at the finite point P."""
        chart = LocalChart(self.H, P, probe)
        val, coeffs = self.local_series(chart)
        prod = smul(self.H, coeffs, chart.dt_ds, len(coeffs))
        idx = -1 - val
        if idx < 0:
            return self.H.zero()
        if idx >= len(prod):
            raise ValueError("probe depth too small for residue")
        return prod[idx]

    # -- behaviour at infinity ----------------------------------------
    def infinity_data(self) -> tuple[int | None, HElem]:
        """(pole order at infinity, leading coefficient).

        The degree of a function t^i or t^j y is 2i or 2j + 3; the two
        parts can never tie.  Returns (None, 0) for the zero function.
        """
        H = self.H
        if self.is_zero():
            return None, H.zero()
        db = 2 * (len(self.B) - 1) if self.B else -1
        dc = 2 * (len(self.C) - 1) + 3 if self.C else -1
        if db > dc:
            lead = self.B[-1]
            d = db
        else:
            lead = self.C[-1]
            d = dc
        return d - 2 * (len(self.D) - 1), lead

    def __eq__(self, other):
        if not isinstance(other, CurveFn):
            return NotImplemented
        H = self.H
        if pl_eq(self.D, other.D):
            return pl_eq(self.B, other.B) and pl_eq(self.C, other.C)
        return pl_eq(
            pmul(H, self.B, other.D), pmul(H, other.B, self.D)
        ) and pl_eq(pmul(H, self.C, other.D), pmul(H, other.C, self.D))

    def __repr__(self):
        return f"CurveFn(B={self.B!r}, C={self.C!r}, D={self.D!r})"


def residue_at_xi(g: CurveFn, probe: int = 14) -> HElem:
    """Residue at (theta, eta) of g times the invariant differential.

    The differential is dt / (2y + a1 t + a3).  The pole of g at the
    point must have order at most one.
    """
    from .errors import HigherOrderPole

    H = g.H
    cv = H.K.curve
    lam_den = CurveFn(
        H,
        lift_fp_poly(H, cv.tau_arr),
        [H.scalar(2)],
    )
    integrand = g / lam_den
    P = xi_point(H)
    chart = LocalChart(H, P, probe)
    val, coeffs = integrand.local_series(chart)
    vv = series_valuation(coeffs, len(coeffs))
    if vv is not None and val + vv < -1:
        raise HigherOrderPole("pole of order greater than one at (theta, eta)")
    prod = smul(H, coeffs, chart.dt_ds, len(coeffs))
    idx = -1 - val
    if idx < 0:
        return H.zero()
    return prod[idx]


def aelem_eval(a, P, lift):
    """Evaluate a coordinate-ring element at an affine point."""
    from .errors import EvalAtInfinity

    if P.inf:
        raise EvalAtInfinity("coordinate-ring elements have poles at infinity")
    return a.evaluate(P.x, P.y, lift)


def pl_eq(a: list[HElem], b: list[HElem]) -> bool:
    if len(a) != len(b):
        return False
    return all(x == y for x, y in zip(a, b))


def series_valuation(a: list[HElem], order: int) -> int | None:
    for k in range(min(len(a), order)):
        if not a[k].is_zero():
            return k
    return None
