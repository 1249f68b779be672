"""Finite fields F_q with q = p^e, as polynomial quotients over F_p.

A FieldCtx fixes p and a monic irreducible modulus of degree e; elements
hold their coordinate vector in the power basis of the generator.  The
degree-1 case (modulus x - 0, i.e. e = 1) is the base field itself.
"""

from __future__ import annotations

import numpy as np

from . import fqpoly


class FieldCtx:
    """Context for F_{p^e}: prime p, extension degree e, modulus."""

    def __init__(self, p: int, modulus=None):
        if p < 2 or any(p % d == 0 for d in range(2, min(p, 100))):
            raise ValueError(f"p = {p} is not prime")
        self.p = p
        if modulus is None:
            modulus = [0, 1]  # x, so e = 1
        self.modulus = fqpoly.from_list(modulus, p)
        if fqpoly.lead(self.modulus) != 1:
            raise ValueError("modulus must be monic")
        self.e = fqpoly.deg(self.modulus)
        if self.e < 1:
            raise ValueError("modulus must have degree >= 1")
        self.q = p**self.e
        if self.e > 1 and not self._is_irreducible():
            raise ValueError("modulus is reducible")
        # x^(e+k) mod modulus for k = 0..e-2, used in multiplication.
        self._red = []
        t = self.modulus[:-1].copy()
        t = (-t) % p  # x^e mod modulus
        for _ in range(max(self.e - 1, 0)):
            self._red.append(t.copy())
            t = np.concatenate([[0], t])  # multiply by x
            if len(t) > self.e:
                c = int(t[self.e])
                t = t[: self.e]
                t = (t + c * self._red[0]) % p
            t = t % p

    def _is_irreducible(self) -> bool:
        # Brute factor search by root/low-degree divisor; e <= 3 in practice.
        p, e = self.p, self.e
        if e in (2, 3):
            return all(
                fqpoly.evaluate(self.modulus, x, p) != 0 for x in range(p)
            )
        # Fallback: try all monic divisors of degree <= e//2.
        for d in range(1, e // 2 + 1):
            for idx in range(p**d):
                coeffs, k = [], idx
                for _ in range(d):
                    coeffs.append(k % p)
                    k //= p
                coeffs.append(1)
                cand = fqpoly.from_list(coeffs, p)
                if fqpoly.is_zero(fqpoly.divmod_(self.modulus, cand, p)[1]):
                    return False
        return True

    def elem(self, coords) -> "FqElem":
        if isinstance(coords, int):
            coords = [coords]
        arr = np.zeros(self.e, dtype=np.int64)
        cs = np.asarray(coords, dtype=np.int64) % self.p
        arr[: len(cs)] = cs
        return FqElem(self, arr)

    def zero(self) -> "FqElem":
        return self.elem(0)

    def one(self) -> "FqElem":
        return self.elem(1)

    def gen(self) -> "FqElem":
        if self.e < 2:
            raise ValueError("base field has no extension generator")
        return self.elem([0, 1])

    def elements(self):
        """Iterate over the whole field, coordinate-lexicographic."""
        for idx in range(self.q):
            coords, k = [], idx
            for _ in range(self.e):
                coords.append(k % self.p)
                k //= self.p
            yield self.elem(coords)

    def embed_scalar(self, x: "FqElem") -> "FqElem":
        """Embed an element of the prime field F_p into this field."""
        if x.ctx.e != 1:
            raise ValueError("embed_scalar expects a prime-field element")
        if x.ctx.p != self.p:
            raise ValueError("characteristic mismatch")
        return self.elem(int(x.coords[0]))

    def reduce_coords(self, arr: np.ndarray) -> np.ndarray:
        """Reduce a coordinate vector of length up to 2e-1 mod the modulus."""
        arr = arr % self.p
        if len(arr) <= self.e:
            out = np.zeros(self.e, dtype=np.int64)
            out[: len(arr)] = arr
            return out
        out = arr[: self.e].copy()
        for k in range(len(arr) - self.e):
            c = int(arr[self.e + k])
            if c:
                red = self._red[k]
                out[: len(red)] = (out[: len(red)] + c * red) % self.p
        return out % self.p

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and fqpoly.eq(self.modulus, other.modulus)
        )

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e})"


class FqElem:
    """Element of F_{p^e}, stored as a length-e coordinate vector."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: FieldCtx, coords: np.ndarray):
        self.ctx = ctx
        self.coords = coords

    def is_zero(self) -> bool:
        return not self.coords.any()

    def __add__(self, other: "FqElem") -> "FqElem":
        return FqElem(self.ctx, (self.coords + other.coords) % self.ctx.p)

    def __sub__(self, other: "FqElem") -> "FqElem":
        return FqElem(self.ctx, (self.coords - other.coords) % self.ctx.p)

    def __neg__(self) -> "FqElem":
        return FqElem(self.ctx, (-self.coords) % self.ctx.p)

    def __mul__(self, other: "FqElem") -> "FqElem":
        full = np.convolve(self.coords, other.coords)
        return FqElem(self.ctx, self.ctx.reduce_coords(full))

    def inv(self) -> "FqElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_q")
        return self ** (self.ctx.q - 2)

    def __truediv__(self, other: "FqElem") -> "FqElem":
        return self * other.inv()

    def __pow__(self, n: int) -> "FqElem":
        if n < 0:
            return self.inv() ** (-n)
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def frob(self, j: int = 1) -> "FqElem":
        """Apply the q-power Frobenius of the prime field j times (x -> x^(p^j))."""
        return self ** (self.ctx.p**j)

    def __eq__(self, other):
        return isinstance(other, FqElem) and bool(
            np.array_equal(self.coords, other.coords)
        )

    def __hash__(self):
        return hash((self.ctx.p, tuple(int(c) for c in self.coords)))

    def __repr__(self):
        if self.ctx.e == 1:
            return str(int(self.coords[0]))
        return "[" + ",".join(str(int(c)) for c in self.coords) + "]"
