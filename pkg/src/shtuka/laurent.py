"""Truncated Laurent series over F_{p^e} with absolute precision tracking.

An element is known modulo pi^prec: it stores its valuation, the
coefficient window from pi^val up to (at most) pi^prec, and prec itself.
Multiplication propagates precision by the rule
prec(ab) = min(prec(a) + val(b), prec(b) + val(a)); valuations are always
recomputed from the stored window, never assumed.

The q-power Frobenius (coefficients to the q, exponents times q, with q
the size of the constant field of the coordinate ring, not of the
coefficient field) is exact in characteristic p and multiplies absolute
precision by q.
"""

from __future__ import annotations

import numpy as np

from . import fqpoly
from .finitefield import FieldCtx, FqElem


class PrecisionLoss(Exception):
    """Raised when a result cannot be produced at the precision asked for."""


class RootBranchMismatch(Exception):
    """Raised when a configured root branch does not match the series."""


class InexactRoot(Exception):
    """Raised when an n-th root does not exist in the series ring."""


class LaurentCtx:
    """Laurent series context: coefficient field and twisting modulus q."""

    def __init__(self, field: FieldCtx, qbase: int):
        self.field = field
        self.qbase = qbase  # size of the constant field F_q acted on by tau
        self._frob_mats: dict[int, np.ndarray] = {}

    def frob_matrix(self, m: int) -> np.ndarray:
        """Matrix of x -> x^m on the coefficient field, m a power of p."""
        if m not in self._frob_mats:
            e = self.field.e
            cols = []
            for i in range(e):
                b = self.field.elem([0] * i + [1]) ** m
                cols.append(b.coords)
            self._frob_mats[m] = np.array(cols, dtype=np.int64).T % self.field.p
        return self._frob_mats[m]

    def __eq__(self, other):
        return (
            isinstance(other, LaurentCtx)
            and self.field == other.field
            and self.qbase == other.qbase
        )

    def __repr__(self):
        return f"LaurentCtx(F_{self.field.q}, q={self.qbase})"


def _conv(A: np.ndarray, B: np.ndarray, field: FieldCtx) -> np.ndarray:
    """Convolution of coefficient windows, entries in F_{p^e}."""
    e, p = field.e, field.p
    na, nb = len(A), len(B)
    if e == 1:
        return (np.convolve(A[:, 0], B[:, 0]) % p).reshape(-1, 1)
    full = np.zeros((na + nb - 1, 2 * e - 1), dtype=np.int64)
    for i in range(e):
        if not A[:, i].any():
            continue
        for j in range(e):
            if not B[:, j].any():
                continue
            full[:, i + j] += np.convolve(A[:, i], B[:, j])
    full %= p
    out = full[:, :e].copy()
    for k in range(e - 1):
        c = full[:, e + k]
        if c.any():
            red = field._red[k]
            out[:, : len(red)] = (out[:, : len(red)] + c[:, None] * red[None, :]) % p
    return out % p


class LaurentElem:
    """Laurent series element known modulo pi^prec."""

    __slots__ = ("ctx", "val", "coeffs", "prec")

    def __init__(self, ctx: LaurentCtx, val: int, coeffs: np.ndarray, prec: int):
        # Normalize: strip leading zero rows, cap the window at prec.
        coeffs = np.asarray(coeffs, dtype=np.int64) % ctx.field.p
        if coeffs.ndim == 1:
            coeffs = coeffs.reshape(-1, 1)
        k = 0
        while k < len(coeffs) and not coeffs[k].any():
            k += 1
        val += k
        coeffs = coeffs[k:]
        if val + len(coeffs) > prec:
            coeffs = coeffs[: max(prec - val, 0)]
        # strip trailing zero rows (they are implied up to prec)
        n = len(coeffs)
        while n > 0 and not coeffs[n - 1].any():
            n -= 1
        coeffs = coeffs[:n]
        if len(coeffs) == 0:
            val = prec
        self.ctx = ctx
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(ctx: LaurentCtx, prec: int) -> "LaurentElem":
        return LaurentElem(ctx, prec, np.zeros((0, ctx.field.e)), prec)

    @staticmethod
    def one(ctx: LaurentCtx, prec: int) -> "LaurentElem":
        return LaurentElem.constant(ctx.field.one(), ctx, prec)

    @staticmethod
    def constant(c: FqElem, ctx: LaurentCtx, prec: int) -> "LaurentElem":
        return LaurentElem(ctx, 0, c.coords.reshape(1, -1), prec)

    @staticmethod
    def pi_power(ctx: LaurentCtx, k: int, prec: int) -> "LaurentElem":
        arr = np.zeros((1, ctx.field.e), dtype=np.int64)
        arr[0, 0] = 1
        return LaurentElem(ctx, k, arr, prec)

    @staticmethod
    def from_coeffs(ctx: LaurentCtx, val: int, rows, prec: int) -> "LaurentElem":
        e = ctx.field.e
        arr = np.zeros((len(rows), e), dtype=np.int64)
        for i, r in enumerate(rows):
            if isinstance(r, FqElem):
                arr[i] = r.coords
            elif isinstance(r, int):
                arr[i, 0] = r % ctx.field.p
            else:
                arr[i, : len(r)] = np.asarray(r) % ctx.field.p
        return LaurentElem(ctx, val, arr, prec)

    # -- predicates ---------------------------------------------------

    def is_zero_to_prec(self) -> bool:
        return len(self.coeffs) == 0

    def rel_prec(self) -> int:
        return self.prec - self.val

    def coeff(self, k: int) -> FqElem:
        """Coefficient of pi^k (must lie below prec)."""
        if k >= self.prec:
            raise PrecisionLoss(f"coefficient of pi^{k} beyond precision {self.prec}")
        i = k - self.val
        if i < 0 or i >= len(self.coeffs):
            return self.ctx.field.zero()
        return FqElem(self.ctx.field, self.coeffs[i].copy())

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "LaurentElem") -> "LaurentElem":
        prec = min(self.prec, other.prec)
        if self.is_zero_to_prec():
            return other.truncate(prec)
        if other.is_zero_to_prec():
            return self.truncate(prec)
        v = min(self.val, other.val)
        n = max(self.val + len(self.coeffs), other.val + len(other.coeffs)) - v
        out = np.zeros((n, self.ctx.field.e), dtype=np.int64)
        out[self.val - v : self.val - v + len(self.coeffs)] += self.coeffs
        out[other.val - v : other.val - v + len(other.coeffs)] += other.coeffs
        return LaurentElem(self.ctx, v, out, prec)

    def __neg__(self) -> "LaurentElem":
        return LaurentElem(self.ctx, self.val, -self.coeffs, self.prec)

    def __sub__(self, other: "LaurentElem") -> "LaurentElem":
        return self + (-other)

    def __mul__(self, other: "LaurentElem") -> "LaurentElem":
        prec = min(self.prec + other.val, other.prec + self.val)
        if self.is_zero_to_prec() or other.is_zero_to_prec():
            return LaurentElem.zero(self.ctx, prec)
        out = _conv(self.coeffs, other.coeffs, self.ctx.field)
        return LaurentElem(self.ctx, self.val + other.val, out, prec)

    def scale(self, c) -> "LaurentElem":
        """Multiply by a scalar (FqElem of the coefficient field, or int)."""
        if isinstance(c, int):
            return LaurentElem(
                self.ctx, self.val, (self.coeffs * (c % self.ctx.field.p)), self.prec
            )
        out = _conv(self.coeffs, c.coords.reshape(1, -1), self.ctx.field)
        return LaurentElem(self.ctx, self.val, out, self.prec)

    def shift(self, k: int) -> "LaurentElem":
        """Multiply by pi^k."""
        return LaurentElem(self.ctx, self.val + k, self.coeffs, self.prec + k)

    def inv(self) -> "LaurentElem":
        if self.is_zero_to_prec():
            raise ZeroDivisionError("inverse of a series that is zero to precision")
        field = self.ctx.field
        r = self.rel_prec()
        u = np.zeros((r, field.e), dtype=np.int64)
        u[: len(self.coeffs)] = self.coeffs
        # Newton iteration y <- y(2 - uy) on the unit part.
        lead = FqElem(field, u[0]).inv()
        y = lead.coords.reshape(1, -1).copy()
        length = 1
        while length < r:
            length = min(2 * length, r)
            t = _conv(u[:length], y, field)[:length]
            t = (-t) % field.p
            t[0] = (t[0] + 2 * field.one().coords) % field.p
            y = _conv(y, t, field)[:length]
        return LaurentElem(self.ctx, -self.val, y, self.prec - 2 * self.val)

    def __truediv__(self, other: "LaurentElem") -> "LaurentElem":
        return self * other.inv()

    def __pow__(self, n: int) -> "LaurentElem":
        if n < 0:
            return self.inv() ** (-n)
        if n == 0:
            return LaurentElem.one(self.ctx, max(self.rel_prec(), 1))
        out = None
        base = self
        while True:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if not n:
                break
            base = base * base
        return out

    def frob(self, j: int = 1) -> "LaurentElem":
        """q-power Frobenius applied j times; multiplies precision by q^j."""
        if j == 0:
            return self
        q = self.ctx.qbase**j
        if self.is_zero_to_prec():
            return LaurentElem.zero(self.ctx, q * self.prec)
        M = self.ctx.frob_matrix(q)
        mapped = (self.coeffs @ M.T) % self.ctx.field.p
        n = (len(self.coeffs) - 1) * q + 1
        out = np.zeros((n, self.ctx.field.e), dtype=np.int64)
        out[::q] = mapped
        return LaurentElem(self.ctx, q * self.val, out, q * self.prec)

    def truncate(self, prec: int) -> "LaurentElem":
        if prec > self.prec:
            raise PrecisionLoss(
                f"cannot raise precision from {self.prec} to {prec}"
            )
        return LaurentElem(self.ctx, self.val, self.coeffs, prec)

    def promote(self, ctx2: LaurentCtx) -> "LaurentElem":
        """Embed into a series ring over an extension coefficient field."""
        if self.ctx.field.e != 1:
            raise ValueError("promote expects prime-field coefficients")
        out = np.zeros((len(self.coeffs), ctx2.field.e), dtype=np.int64)
        out[:, 0] = self.coeffs[:, 0]
        return LaurentElem(ctx2, self.val, out, self.prec)

    # -- roots --------------------------------------------------------

    def nth_root(self, n: int, lead_hint: FqElem | None = None) -> "LaurentElem":
        """n-th root; the branch is fixed by the leading coefficient hint."""
        p = self.ctx.field.p
        if self.is_zero_to_prec():
            raise InexactRoot("root of a series that is zero to precision")
        # split off the p-part of n
        j = 0
        m = n
        while m % p == 0:
            m //= p
            j += 1
        x = self
        if j:
            x = x.frob_from_ppower(j)
        return x._coprime_root(m, lead_hint)

    def frob_from_ppower(self, j: int) -> "LaurentElem":
        """Exact p^j-th root (inverse Frobenius of the coefficient field)."""
        p = self.ctx.field.p
        pj = p**j
        if self.val % pj:
            raise InexactRoot("valuation not divisible by p^j")
        keep = self.coeffs[::pj]
        rest = self.coeffs.copy()
        rest[::pj] = 0
        if rest.any():
            raise InexactRoot("series is not a p^j-th power")
        M = self.ctx.frob_matrix(pj)
        Minv = _mat_inv_mod(M, p)
        mapped = (keep @ Minv.T) % p
        return LaurentElem(self.ctx, self.val // pj, mapped, -(-self.prec // pj))

    def _coprime_root(self, n: int, lead_hint: FqElem | None) -> "LaurentElem":
        if n == 1:
            if lead_hint is not None and self.lead() != lead_hint:
                raise RootBranchMismatch("leading coefficient differs from hint")
            return self
        if self.val % n:
            raise InexactRoot(f"valuation {self.val} not divisible by {n}")
        field = self.ctx.field
        c0 = self.lead()
        roots = [x for x in field.elements() if x**n == c0]
        if not roots:
            raise InexactRoot("leading coefficient has no n-th root in the field")
        if lead_hint is not None:
            if lead_hint not in roots:
                raise RootBranchMismatch(
                    f"hinted leading coefficient {lead_hint} is not an {n}-th root"
                )
            r0 = lead_hint
        else:
            r0 = roots[0]
        # Newton iteration r <- r - (r^n - s)/(n r^(n-1)), n invertible mod p.
        prec_rel = self.rel_prec()
        r = LaurentElem.constant(r0, self.ctx, prec_rel).shift(self.val // n)
        ninv = pow(n % field.p, field.p - 2, field.p)
        for _ in range(max(1, prec_rel.bit_length() + 2)):
            err = r**n - self
            if err.is_zero_to_prec():
                break
            step = err / (r ** (n - 1))
            r = r - step.scale(ninv)
        if not (r**n - self).is_zero_to_prec():
            raise InexactRoot("Newton iteration for n-th root did not converge")
        return r.truncate(min(r.prec, self.prec - (n - 1) * (self.val // n)))

    # -- inspection ---------------------------------------------------

    def lead(self) -> FqElem:
        if self.is_zero_to_prec():
            raise ValueError("zero series has no leading coefficient")
        return FqElem(self.ctx.field, self.coeffs[0].copy())

    def deg_sgn(self):
        """(degree, sign) at the infinite place: deg = -val, sgn = lead."""
        if self.is_zero_to_prec():
            return None, None
        return -self.val, self.lead()

    def __eq__(self, other):
        if not isinstance(other, LaurentElem):
            return NotImplemented
        return (self - other).is_zero_to_prec()

    def __repr__(self):
        return self.pretty(max_terms=8)

    def pretty(self, max_terms: int = 10**9) -> str:
        if self.is_zero_to_prec():
            return f"O(pi^{self.prec})"
        parts = []
        shown = 0
        for k in range(len(self.coeffs)):
            row = self.coeffs[k]
            if not row.any():
                continue
            if shown >= max_terms:
                parts.append("...")
                break
            c = FqElem(self.ctx.field, row)
            exp = self.val + k
            cs = repr(c)
            if exp == 0:
                parts.append(cs)
            elif exp == 1:
                parts.append(f"{cs}*pi")
            else:
                parts.append(f"{cs}*pi^{exp}")
            shown += 1
        return " + ".join(parts) + f" + O(pi^{self.prec})"


def _mat_inv_mod(M: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a small integer matrix mod p by Gauss-Jordan."""
    n = len(M)
    A = M.copy() % p
    I = np.eye(n, dtype=np.int64)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if A[r, col] % p:
                piv = r
                break
        if piv is None:
            raise ValueError("matrix not invertible mod p")
        if piv != col:
            A[[col, piv]] = A[[piv, col]]
            I[[col, piv]] = I[[piv, col]]
        inv = pow(int(A[col, col]), p - 2, p)
        A[col] = (A[col] * inv) % p
        I[col] = (I[col] * inv) % p
        for r in range(n):
            if r != col and A[r, col]:
                c = A[r, col]
                A[r] = (A[r] - c * A[col]) % p
                I[r] = (I[r] - c * I[col]) % p
    return I % p
