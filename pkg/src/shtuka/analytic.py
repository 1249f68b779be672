"""Evaluation at the infinite place, in F_q((pi)) with tracked precision.

The exact tower constants (theta, eta, the slope and pole data of the
shtuka function, the coordinates of the distinguished points) are
embedded once at a fixed working precision.  Frobenius twists of the
embedded constants are cached with a bounded relative window: the
products evaluated here converge so fast that only the first few twists
carry information below any given precision, and the window keeps every
cached series short without discarding anything that matters.

Every public entry point states the absolute precision it wants for its
result.  The precision tracking built into the series arithmetic turns
any overreach into a TruncationInsufficient error instead of a silently
wrong coefficient.
"""

from __future__ import annotations

from .curve import Point
from .errors import (
    CrossCheckFailed,
    IdentityViolated,
    RouteDisagreement,
    TruncationInsufficient,
)
from .formal import build_embedding
from .laurent import LaurentElem
from .shtuka import DrinfeldModule, explog_coeffs

_MAX_TERMS = 64


class AnalyticContext:
    """Laurent-series side of a Drinfeld module at the infinite place.

    prec is the largest absolute precision the instance is prepared to
    certify; the working precision carries a fixed amount of headroom
    above it.
    """

    def __init__(self, dm: DrinfeldModule, prec: int = 40, exact_depth: int = 3):
        self.dm = dm
        self.tower = dm.tower
        self.curve = self.tower.curve
        self.q = self.curve.ctx.q
        self.prec = prec
        self.window = prec + 16
        self.emb = build_embedding(self.curve, prec + 16, self.tower)
        self.ctx = self.emb.ctx
        sh = dm.shtuka
        base = {
            "theta": self.emb.theta,
            "eta": self.emb.eta,
            "m": self.emb.embed_h(sh.m),
            "alpha": self.emb.embed_h(sh.alpha),
            "beta": self.emb.embed_h(sh.beta),
            "xi": self.emb.embed_h(sh.xi),
            "x1": self.emb.embed_h(dm.x1),
        }
        self._tw: dict[tuple[str, int], LaurentElem] = {
            (name, 0): val for name, val in base.items()
        }
        one = LaurentElem.one(self.ctx, self.window)
        self._d = [one]
        self._dinv = [one]
        self._l = [one]
        self._linv = [one]
        self._a1 = int(self.curve.a1.coords[0])
        self._a3 = int(self.curve.a3.coords[0])
        if exact_depth > 0:
            self._crosscheck(exact_depth)

    # -- embedded constants and their twists ---------------------------

    def atom(self, name: str, i: int = 0) -> LaurentElem:
        """Embedded tower constant, twisted i times, window-truncated."""
        key = (name, i)
        got = self._tw.get(key)
        if got is None:
            got = self._shorten(self.atom(name, i - 1).frob(1))
            self._tw[key] = got
        return got

    def _shorten(self, x: LaurentElem) -> LaurentElem:
        cap = x.val + self.window
        return x.truncate(cap) if cap < x.prec else x

    def _const(self, c: int, prec: int) -> LaurentElem:
        return LaurentElem.constant(self.ctx.field.elem(c), self.ctx, prec)

    def xi_point(self, i: int = 0) -> tuple[LaurentElem, LaurentElem]:
        """Coordinates of the i-th twist of the distinguished point."""
        return self.atom("theta", i), self.atom("eta", i)

    def v_point(self, i: int = 0) -> tuple[LaurentElem, LaurentElem]:
        """Coordinates of the i-th twist of the shifted point V."""
        return self.atom("alpha", i), self.atom("beta", i)

    def embed_point(self, P: Point) -> tuple[LaurentElem, LaurentElem]:
        """Constant coordinates of a rational point of the curve."""
        if P.inf:
            raise ValueError("the point at infinity has no affine coordinates")
        t0 = int(P.x.coords[0])
        y0 = int(P.y.coords[0])
        return self._const(t0, self.window), self._const(y0, self.window)

    def point_from_t(self, tx: LaurentElem, branch: int = 1) -> tuple[LaurentElem, LaurentElem]:
        """Point of the curve above a given t-series.

        branch picks the square root of the completed-square right side
        by its leading coefficient.
        """
        a = [
            int(c.coords[0])
            for c in (
                self.curve.a1,
                self.curve.a2,
                self.curve.a3,
                self.curve.a4,
                self.curve.a6,
            )
        ]
        a1, a2, a3, a4, a6 = a
        rhs = ((tx + self._const(a2, tx.prec)) * tx + self._const(a4, tx.prec)) * tx
        if a6:
            rhs = rhs + self._const(a6, tx.prec)
        half = tx.scale(a1) + self._const(a3, tx.prec)
        half = half.scale(pow(2, self.ctx.field.p - 2, self.ctx.field.p))
        disc = rhs + half * half
        root = disc.nth_root(2, lead_hint=self.ctx.field.elem(branch))
        return tx, root - half

    # -- shtuka-function values ----------------------------------------

    def f_value(self, i: int) -> LaurentElem:
        """Untwisted shtuka function at the i-th twist of the
        distinguished point (i >= 1)."""
        th, et = self.atom("theta"), self.atom("eta")
        thi, eti = self.atom("theta", i), self.atom("eta", i)
        num = eti - et - self.atom("m") * (thi - th)
        return num / (thi - self.atom("alpha"))

    def f_twist_value(self, i: int) -> LaurentElem:
        """i-th twist of the shtuka function at the distinguished point."""
        th, et = self.atom("theta"), self.atom("eta")
        thi, eti = self.atom("theta", i), self.atom("eta", i)
        num = et - eti - self.atom("m", i) * (th - thi)
        return num / (th - self.atom("alpha", i))

    def f_twist_at(self, i: int, tx: LaurentElem, yx: LaurentElem) -> LaurentElem:
        """i-th twist of the shtuka function at Laurent coordinates."""
        num = yx - self.atom("eta", i) - self.atom("m", i) * (
            tx - self.atom("theta", i)
        )
        return num / (tx - self.atom("alpha", i))

    # -- exponential and logarithm denominator chains ------------------

    def _extend_chains(self, n: int) -> None:
        th = self.atom("theta")
        while len(self._d) <= n:
            i = len(self._d)
            d = self._shorten(self.f_value(i) * self._d[i - 1].frob(1))
            self._d.append(d)
            self._dinv.append(self._shorten(d.inv()))
        while len(self._l) <= n:
            i = len(self._l)
            g = (
                self.f_twist_value(i)
                * (th - self.atom("alpha", i))
                / (th - self.atom("alpha", i + 1))
            )
            el = self._shorten(g * self._l[i - 1])
            self._l.append(el)
            self._linv.append(self._shorten(el.inv()))

    def exp_denominator(self, i: int) -> LaurentElem:
        self._extend_chains(i)
        return self._d[i]

    def log_denominator(self, i: int) -> LaurentElem:
        self._extend_chains(i)
        return self._l[i]

    def _crosscheck(self, depth: int) -> None:
        """Compare the analytic chains with the exact ones."""
        data = explog_coeffs(self.dm, depth)
        self._extend_chains(depth)
        for i in range(1, depth + 1):
            if not (self.emb.embed_h(data.d[i]) - self._d[i]).is_zero_to_prec():
                raise CrossCheckFailed(
                    f"analytic exponential denominator {i} disagrees "
                    "with the exact chain"
                )
            if not (self.emb.embed_h(data.l[i]) - self._l[i]).is_zero_to_prec():
                raise CrossCheckFailed(
                    f"analytic logarithm denominator {i} disagrees "
                    "with the exact chain"
                )

    # -- entire functions ----------------------------------------------

    def exp_value(self, u: LaurentElem, prec: int) -> LaurentElem:
        """Value of the module exponential at u, modulo pi^prec."""
        acc = LaurentElem.zero(self.ctx, prec)
        up = u
        big = 0
        for i in range(_MAX_TERMS):
            self._extend_chains(i)
            term = up * self._dinv[i]
            if i > 0 and term.val >= prec:
                big += 1
                if big == 2:
                    break
            else:
                big = 0
            acc = acc + term
            up = up.frob(1)
        else:
            raise TruncationInsufficient(
                "exponential series did not settle within the term budget"
            )
        if acc.prec < prec:
            raise TruncationInsufficient(
                f"exponential value known modulo pi^{acc.prec}, wanted {prec}"
            )
        return acc.truncate(prec)

    def log_value(self, u: LaurentElem, prec: int) -> LaurentElem:
        """Value of the module logarithm at u, modulo pi^prec.

        The logarithm has a finite domain of convergence; arguments
        outside it surface as TruncationInsufficient.
        """
        acc = LaurentElem.zero(self.ctx, prec)
        up = u
        big = 0
        prev_val = None
        for i in range(_MAX_TERMS):
            self._extend_chains(i)
            term = up * self._linv[i]
            if prev_val is not None and term.val < prev_val:
                raise TruncationInsufficient(
                    "logarithm series diverges at this argument"
                )
            prev_val = term.val
            if i > 0 and term.val >= prec:
                big += 1
                if big == 2:
                    break
            else:
                big = 0
            acc = acc + term
            up = up.frob(1)
        else:
            raise TruncationInsufficient(
                "logarithm series did not settle within the term budget"
            )
        if acc.prec < prec:
            raise TruncationInsufficient(
                f"logarithm value known modulo pi^{acc.prec}, wanted {prec}"
            )
        return acc.truncate(prec)

    # -- the period ----------------------------------------------------

    def period_power(self, prec: int, route: int = 1) -> LaurentElem:
        """(q-1)-th power of the period generator, modulo pi^prec.

        Route 1 inverts the once-twisted pole factor at the
        distinguished point directly; route 2 replaces that inverse by
        the companion identity tying it to the module coefficient x1 and
        the twisted shtuka value, so the two routes share no division.
        """
        q = self.q
        th = self.atom("theta")
        xi = self.atom("xi")
        if route == 1:
            head = (xi**q) / ((th - self.atom("alpha", 1)) ** (q - 1))
        elif route == 2:
            num = self.atom("x1") + self.f_twist_value(1)
            wder = self._wder()
            head = (xi**q) * (num ** (q - 1)) / (wder ** (q - 1))
        else:
            raise ValueError(f"unknown route {route}")
        return self._tail_product(head, 1, None, None, prec)

    def period_power_checked(self, prec: int) -> LaurentElem:
        """Both period routes, compared modulo pi^prec."""
        p1 = self.period_power(prec, route=1)
        p2 = self.period_power(prec, route=2)
        if not (p1 - p2).is_zero_to_prec():
            raise RouteDisagreement(
                "period routes disagree at the requested precision"
            )
        return p1

    def omega_power_at(
        self, tx: LaurentElem, yx: LaurentElem, prec: int
    ) -> LaurentElem:
        """(q-1)-th power of the canonical lattice function at a point."""
        return self._tail_product(self.atom("xi"), 0, tx, yx, prec)

    def _tail_product(
        self,
        head: LaurentElem,
        start: int,
        tx: LaurentElem | None,
        yx: LaurentElem | None,
        prec: int,
    ) -> LaurentElem:
        """head times the product of (xi^(q^i) / f-twist value)^(q-1).

        The twists are evaluated at (tx, yx) when given, else at the
        distinguished point.  Factors are folded in until one is
        indistinguishable from 1 below the requested precision.
        """
        q = self.q
        acc = head
        rel = prec - head.val
        for i in range(start, start + _MAX_TERMS):
            if tx is None:
                fv = self.f_twist_value(i)
            else:
                fv = self.f_twist_at(i, tx, yx)
            fac = (self.atom("xi", i) / fv) ** (q - 1)
            delta = fac - LaurentElem.one(self.ctx, fac.prec)
            if delta.is_zero_to_prec():
                if delta.prec < rel:
                    raise TruncationInsufficient(
                        "product factor cannot be told from 1 at the "
                        "requested precision"
                    )
                break
            if delta.val >= rel:
                break
            acc = acc * fac
        else:
            raise TruncationInsufficient(
                "product did not settle within the factor budget"
            )
        if acc.prec < prec:
            raise TruncationInsufficient(
                f"product known modulo pi^{acc.prec}, wanted {prec}"
            )
        return acc.truncate(prec)

    def _wder(self) -> LaurentElem:
        """Derivative of the Weierstrass equation in y, at the
        distinguished point; the unit of the invariant differential."""
        out = self.atom("eta").scale(2)
        if self._a1:
            out = out + self.atom("theta").scale(self._a1)
        if self._a3:
            out = out + self._const(self._a3, self.window)
        return out

    # -- generating series ---------------------------------------------

    def _e_series(
        self, u: LaurentElem, tx: LaurentElem, twist: int, prec: int
    ) -> LaurentElem:
        """Twisted pole-expansion series at a point, modulo pi^prec."""
        acc = LaurentElem.zero(self.ctx, prec)
        up = u.frob(twist)
        big = 0
        for i in range(_MAX_TERMS):
            self._extend_chains(i)
            den = (self.atom("theta", i + twist) - tx) * self._d[i].frob(twist)
            term = up / den
            if i > 0 and term.val >= prec:
                big += 1
                if big == 2:
                    break
            else:
                big = 0
            acc = acc + term
            up = up.frob(1)
        else:
            raise TruncationInsufficient(
                "pole-expansion series did not settle within the term budget"
            )
        if acc.prec < prec:
            raise TruncationInsufficient(
                f"series value known modulo pi^{acc.prec}, wanted {prec}"
            )
        return acc.truncate(prec)

    def gen_series_at(
        self,
        u: LaurentElem,
        tx: LaurentElem,
        yx: LaurentElem,
        twist: int,
        prec: int,
    ) -> LaurentElem:
        """Twisted value at a point of the generating series for u."""
        lin = yx
        if self._a1:
            lin = lin + tx.scale(self._a1)
        if self._a3:
            lin = lin + self._const(self._a3, yx.prec)
        e_eta = self._e_series(self.atom("eta") * u, tx, twist, prec)
        e_pln = self._e_series(u, tx, twist, prec - min(0, lin.val))
        return e_eta + lin * e_pln

    def gen_series_check(
        self, u: LaurentElem, tx: LaurentElem, yx: LaurentElem, prec: int
    ) -> None:
        """Pointwise first-order equation of the generating series.

        Subtracting the value at V kills the lattice part; applying
        twist-minus-shtuka to what is left must produce the pole factor
        times the exponential value.  Checked modulo pi^prec.
        """
        pad = prec + 12
        z = self.exp_value(u, pad)
        gq = self.gen_series_at(u, tx, yx, 0, pad)
        gv = z.frob(1) + self.atom("m") * z
        jq = gq - gv
        j1 = self.gen_series_at(u, tx, yx, 1, pad) - gv.frob(1)
        lhs = j1 - self.f_twist_at(0, tx, yx) * jq
        rhs = (tx - self.atom("alpha", 1)) * z
        diff = lhs - rhs
        if diff.prec < prec:
            raise TruncationInsufficient(
                f"pointwise equation certified only modulo pi^{diff.prec}, "
                f"wanted {prec}"
            )
        if not diff.truncate(prec).is_zero_to_prec():
            raise IdentityViolated(
                "generating series fails its pointwise first-order equation"
            )

    def special_point_check(self, u: LaurentElem, prec: int) -> None:
        """Value of the generating series at V against the exponential.

        The series value at the shifted point V must match
        exp^q + slope * exp; the two sides are computed by unrelated
        routes (a pole expansion against the coefficient chain).
        """
        pad = prec + 12
        z = self.exp_value(u, pad)
        ax, bx = self.v_point()
        gv = self.gen_series_at(u, ax, bx, 0, pad)
        want = z.frob(1) + self.atom("m") * z
        diff = gv - want
        if diff.prec < prec:
            raise TruncationInsufficient(
                f"special value certified only modulo pi^{diff.prec}, "
                f"wanted {prec}"
            )
        if not diff.truncate(prec).is_zero_to_prec():
            raise IdentityViolated(
                "generating series at V disagrees with the exponential"
            )

    def residue_check(self, u: LaurentElem, prec: int) -> None:
        """Residue of the generating series against the invariant
        differential at the distinguished point; must equal -u."""
        pole_coeff = -(
            self.atom("eta") * u + self._wder_minus_eta() * u
        )
        res = pole_coeff / self._wder()
        diff = res + u
        if diff.prec < prec:
            raise TruncationInsufficient(
                f"residue certified only modulo pi^{diff.prec}, wanted {prec}"
            )
        if not diff.truncate(prec).is_zero_to_prec():
            raise IdentityViolated(
                "generating series residue at the distinguished point "
                "is not -u"
            )

    def _wder_minus_eta(self) -> LaurentElem:
        """eta + a1*theta + a3: the linear factor of the generating
        series evaluated at the distinguished point."""
        out = self.atom("eta")
        if self._a1:
            out = out + self.atom("theta").scale(self._a1)
        if self._a3:
            out = out + self._const(self._a3, self.window)
        return out
