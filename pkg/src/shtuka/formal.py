"""The infinite place: formal group, Laurent embeddings, and V.

The parameter on the formal group is z = -t/y.  The Weierstrass
expansion w(z) (with t = z/w, y = -1/w) is computed by the standard
fixed-point recursion, the addition law by the collinearity formula in
the (z, w) chart, with slopes taken as divided differences so that the
doubling case needs no special handling.

The completion at infinity is F_q((pi)) with pi = theta/eta, so that
z evaluated at (theta, eta) is exactly -pi.  This makes the images of
theta and eta monic Laurent series of degree 2 and 3, matching the
sign normalization of the symbolic side.

V is found by iterating s <- z_Xi (+) s^q, which contracts because the
q-th power multiplies valuations by q; the result is cross-checked
against the configured symbolic coordinates of V by the embedding
validator, which is also what pins down root branches for the class
field generator.
"""

from __future__ import annotations

import numpy as np

from . import fqpoly
from .curve import Curve
from .errors import RootBranchMismatch, VSolveDiverged, ZeroToPrecision
from .finitefield import FieldCtx
from .hfield import HElem
from .kfield import KElem
from .laurent import LaurentCtx, LaurentElem
from .series import MultiSeries
from .tower import Tower


def _wseries(curve: Curve, length: int) -> np.ndarray:
    """Coefficients of w(z) = z^3 + ... to the given length."""
    p = curve.ctx.p
    a = [int(x.coords[0]) for x in (curve.a1, curve.a2, curve.a3, curve.a4, curve.a6)]
    a1, a2, a3, a4, a6 = a

    def tr(arr):
        return arr[:length] if len(arr) > length else arr

    def mul(x, y):
        return tr(fqpoly.mul(x, y, p))

    z1 = fqpoly.from_list([0, 1], p)
    z2 = fqpoly.from_list([0, 0, 1], p)
    z3 = fqpoly.from_list([0, 0, 0, 1], p)
    w = z3.copy()
    for _ in range(length):
        w2 = mul(w, w)
        w3 = mul(w2, w)
        new = z3
        new = fqpoly.add(new, fqpoly.scalar_mul(a1, mul(z1, w), p), p)
        new = fqpoly.add(new, fqpoly.scalar_mul(a2, mul(z2, w), p), p)
        new = fqpoly.add(new, fqpoly.scalar_mul(a3, w2, p), p)
        new = fqpoly.add(new, fqpoly.scalar_mul(a4, mul(z1, w2), p), p)
        new = fqpoly.add(new, fqpoly.scalar_mul(a6, w3, p), p)
        new = tr(new)
        if fqpoly.eq(new, w):
            break
        w = new
    return w


class FormalGroup:
    """Formal group of the curve at infinity, to a total-degree cutoff."""

    def __init__(self, curve: Curve, cutoff: int):
        if cutoff < 4:
            raise ValueError("cutoff must be at least 4")
        self.curve = curve
        self.cutoff = cutoff
        self.p = curve.ctx.p
        self.w_arr = _wseries(curve, cutoff + 3)
        # unit part U with w = z^3 * U, U(0) = 1
        self.U_arr = self.w_arr[3:].copy()
        self.inv = self._inversion()
        self.F = self._addition_law()

    # -- construction -------------------------------------------------
    def _addition_law(self) -> MultiSeries:
        p, N = self.p, self.cutoff
        a = [int(x.coords[0]) for x in (
            self.curve.a1, self.curve.a2, self.curve.a3, self.curve.a4, self.curve.a6
        )]
        a1, a2, a3, a4, a6 = a
        # slope as a divided difference: lam[i, j] = w_{i+j+1}
        lam = MultiSeries.zero(p, 2, N)
        for i in range(N):
            for j in range(N - i):
                k = i + j + 1
                if k < len(self.w_arr):
                    lam.coeffs[i, j] = self.w_arr[k] % p
        # w at the first argument, and nu = w1 - lam * z1
        w1 = MultiSeries.zero(p, 2, N)
        for k in range(min(len(self.w_arr), N)):
            w1.coeffs[k, 0] = self.w_arr[k] % p
        z1 = MultiSeries.from_terms(p, 2, N, {(1, 0): 1})
        z2 = MultiSeries.from_terms(p, 2, N, {(0, 1): 1})
        nu = w1 - lam * z1
        one = MultiSeries.from_terms(p, 2, N, {(0, 0): 1})
        lam2 = lam * lam
        den = (
            one
            + lam.scale(a2)
            + lam2.scale(a4)
            + (lam2 * lam).scale(a6)
        )
        num = (
            lam.scale(a1)
            + lam2.scale(a3)
            - nu.scale(a2)
            - (lam * nu).scale(2 * a4)
            - (lam2 * nu).scale(3 * a6)
        )
        z3 = (-z1) - z2 + num * _ms_inv_unit(den)
        # group element is the inverse of the third intersection
        return self.inv.compose([z3], lambda c: _ms_const(p, 2, N, c))

    def _inversion(self) -> MultiSeries:
        p, N = self.p, self.cutoff
        a1 = int(self.curve.a1.coords[0])
        a3 = int(self.curve.a3.coords[0])
        z = MultiSeries.from_terms(p, 1, N, {(1,): 1})
        w = MultiSeries.zero(p, 1, N)
        for k in range(min(len(self.w_arr), N)):
            w.coeffs[k] = self.w_arr[k] % p
        one = MultiSeries.from_terms(p, 1, N, {(0,): 1})
        den = one - z.scale(a1) - w.scale(a3)
        return (-z) * _ms_inv_unit(den)

    # -- series evaluation --------------------------------------------
    def w_at(self, z: LaurentElem) -> LaurentElem:
        ctx = z.ctx
        acc = LaurentElem.zero(ctx, z.prec + 3 * max(z.val, 0) + 3)
        for c in reversed(self.w_arr):
            acc = acc * z
            if c:
                acc = acc + _lconst(ctx, int(c), acc.prec)
        return acc

    def t_at(self, z: LaurentElem) -> LaurentElem:
        return z / self.w_at(z)

    def y_at(self, z: LaurentElem) -> LaurentElem:
        return -self.w_at(z).inv()

    def add_z(self, z1: LaurentElem, z2: LaurentElem) -> LaurentElem:
        ctx = z1.ctx
        prec = min(z1.prec, z2.prec, self.cutoff)
        return self.F.compose([z1, z2], lambda c: _lconst(ctx, c, prec))

    def neg_z(self, z: LaurentElem) -> LaurentElem:
        ctx = z.ctx
        prec = min(z.prec, self.cutoff)
        return self.inv.compose([z], lambda c: _lconst(ctx, c, prec))

    def sub_z(self, z1: LaurentElem, z2: LaurentElem) -> LaurentElem:
        return self.add_z(z1, self.neg_z(z2))


def _ms_const(p, nvars, cutoff, c) -> MultiSeries:
    return MultiSeries.from_terms(p, nvars, cutoff, {(0,) * nvars: c})


def _ms_inv_unit(x: MultiSeries) -> MultiSeries:
    """Inverse of a series with constant term 1, by Newton iteration."""
    p, nv, N = x.p, x.nvars, x.cutoff
    one = _ms_const(p, nv, N, 1)
    acc = one
    for _ in range(N.bit_length() + 1):
        err = one - x * acc
        if err.is_zero():
            break
        acc = acc + acc * err
    return acc


def _lconst(ctx: LaurentCtx, c: int, prec: int) -> LaurentElem:
    return LaurentElem.constant(ctx.field.elem(c), ctx, prec)


_fg_cache: dict = {}


def formal_group_build(curve: Curve, cutoff: int) -> FormalGroup:
    key = (
        curve.ctx.p,
        tuple(int(x.coords[0]) for x in (curve.a1, curve.a2, curve.a3, curve.a4, curve.a6)),
        cutoff,
    )
    if key not in _fg_cache:
        _fg_cache[key] = FormalGroup(curve, cutoff)
    return _fg_cache[key]


def laurent_deg_sgn(x: LaurentElem):
    """(degree, sign) of a Laurent element; degree is minus the valuation."""
    d, s = x.deg_sgn()
    if d is None:
        raise ZeroToPrecision("element is zero to its working precision")
    return d, s


class Embedding:
    """Laurent images of theta, eta (and u when a tower is given)."""

    def __init__(self, curve: Curve, N: int, tower: Tower | None = None):
        if N < 6:
            raise ValueError("precision must be at least 6")
        self.curve = curve
        self.N = N
        self.tower = tower
        self.field = FieldCtx(curve.ctx.p)
        self.ctx = LaurentCtx(self.field, curve.ctx.q)
        self.fg = formal_group_build(curve, N + 6)
        p = curve.ctx.p

        # U(-pi) and its inverse; theta = pi^-2 / U(-pi), eta = pi^-3 / U(-pi)
        U = self.fg.U_arr
        coeffs = [(int(U[k]) * ((-1) ** (k % 2))) % p for k in range(min(len(U), N + 6))]
        u_at = LaurentElem.from_coeffs(self.ctx, 0, coeffs, N + 6)
        uinv = u_at.inv()
        self.theta = uinv.shift(-2).truncate(N)
        self.eta = uinv.shift(-3).truncate(N)
        self.pi = LaurentElem.pi_power(self.ctx, 1, N)
        self._u_img: LaurentElem | None = None
        self._u_pows: list[LaurentElem] | None = None
        self._zv: LaurentElem | None = None

    # -- K level ------------------------------------------------------
    def embed_fppoly(self, arr: np.ndarray) -> LaurentElem:
        """Image of a polynomial in theta."""
        acc = LaurentElem.zero(self.ctx, self.N)
        for c in reversed(list(arr)):
            acc = acc * self.theta
            if int(c):
                acc = acc + _lconst(self.ctx, int(c), self.N)
        return acc

    def embed_k(self, x: KElem) -> LaurentElem:
        num = self.embed_fppoly(x.a)
        if not fqpoly.is_zero(x.b):
            num = num + self.embed_fppoly(x.b) * self.eta
        if fqpoly.deg(x.d) == 0:
            return num
        return num / self.embed_fppoly(x.d)

    # -- H level ------------------------------------------------------
    def u_image(self) -> LaurentElem:
        if self._u_img is not None:
            return self._u_img
        if self.tower is None:
            raise RootBranchMismatch("no tower configured for the H level")
        H = self.tower.H
        if H.h == 1:
            u_as_k = -H.minpoly[0]
            self._u_img = self.embed_k(u_as_k)
        else:
            hint = self.tower.spec.root_hints.get("u")
            if hint is None:
                raise RootBranchMismatch("no root hint configured for u")
            base_fn, n, lead = hint
            base = self.embed_k(base_fn(self.tower.K))
            self._u_img = base.nth_root(n, lead_hint=self.field.elem(lead))
        return self._u_img

    def embed_h(self, x: HElem) -> LaurentElem:
        u = self.u_image()
        if self._u_pows is None:
            pows = [LaurentElem.one(self.ctx, self.N)]
            for _ in range(self.tower.H.h - 1):
                pows.append(pows[-1] * u)
            self._u_pows = pows
        acc = LaurentElem.zero(self.ctx, self.N)
        for c, up in zip(x.vec, self._u_pows):
            if not c.is_zero():
                acc = acc + self.embed_k(c) * up
        return acc

    # -- V ------------------------------------------------------------
    def solve_v(self) -> tuple[LaurentElem, LaurentElem, LaurentElem]:
        """(z_V, alpha image, beta image) from the fixed-point iteration."""
        if self._zv is None:
            fg = self.fg
            q = self.curve.ctx.q
            z_xi = -LaurentElem.pi_power(self.ctx, 1, fg.cutoff)
            s = z_xi
            max_iter = 4
            n = self.N
            while q ** max_iter < n + 2:
                max_iter += 1
            max_iter += 2
            stable = False
            for _ in range(max_iter):
                s_new = fg.add_z(z_xi, s.frob(1).truncate(fg.cutoff))
                if (s_new - s).is_zero_to_prec():
                    s = s_new
                    stable = True
                    break
                s = s_new
            if not stable:
                raise VSolveDiverged("fixed-point iteration did not stabilize")
            self._zv = s
        zv = self._zv
        return zv, self.fg.t_at(zv).truncate(self.N), self.fg.y_at(zv).truncate(self.N)

    def validate_v(self) -> None:
        """Cross-check the configured V against the analytic solution."""
        if self.tower is None:
            raise RootBranchMismatch("no tower configured")
        zv, ah, bh = self.solve_v()
        ae = self.embed_h(self.tower.V.x)
        be = self.embed_h(self.tower.V.y)
        if not (ae - ah).is_zero_to_prec() or not (be - bh).is_zero_to_prec():
            raise RootBranchMismatch(
                "configured V does not embed onto the analytic V; "
                "check the root branch hints"
            )


def build_embedding(curve: Curve, N: int, tower: Tower | None = None) -> Embedding:
    emb = Embedding(curve, N, tower)
    if tower is not None:
        emb.validate_v()
    return emb
