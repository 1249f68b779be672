"""The class field H = K[u]/(minpoly), with Galois action over K.

H is a field extension of K of degree h (the class number of the
coordinate ring).  Elements are coordinate vectors over K in the basis
1, u, ..., u^(h-1).  The Galois group of H/K fixes K pointwise and is
described by the images of u, which the tower loader installs after
validating them against the minimal polynomial.

The q-power Frobenius (q = p) again costs O(size): coefficientwise
K-Frobenius followed by a Horner evaluation at a cached u^p.
"""

from __future__ import annotations

from . import fqpoly
from .kfield import KElem, KField


class HField:
    def __init__(self, kfield: KField, minpoly: list[KElem]):
        if not minpoly or not (minpoly[-1] == kfield.one()):
            raise ValueError("minimal polynomial of u must be monic")
        self.K = kfield
        self.minpoly = minpoly
        self.h = len(minpoly) - 1
        if self.h < 1:
            raise ValueError("degree of H over K must be at least 1")
        # u^(h+k) reduced to the basis, for k = 0 .. h-2
        self._red: list[list[KElem]] = []
        if self.h >= 2:
            row = [-minpoly[i] for i in range(self.h)]
            self._red.append(row)
            for _ in range(self.h - 2):
                top = row[-1]
                row = [kfield.zero()] + row[:-1]
                row = [row[i] + top * self._red[0][i] for i in range(self.h)]
                self._red.append(row)
        self._u_p: "HElem | None" = None
        self.galois: list["HElem"] = []  # images of u; [0] is the identity

    def zero(self) -> "HElem":
        return HElem(self, [self.K.zero()] * self.h)

    def one(self) -> "HElem":
        return HElem(self, [self.K.one()] + [self.K.zero()] * (self.h - 1))

    def from_k(self, x: KElem) -> "HElem":
        return HElem(self, [x] + [self.K.zero()] * (self.h - 1))

    def u(self) -> "HElem":
        if self.h == 1:
            return self.from_k(-self.minpoly[0])
        vec = [self.K.zero()] * self.h
        vec[1] = self.K.one()
        return HElem(self, vec)

    def theta(self) -> "HElem":
        return self.from_k(self.K.theta())

    def eta(self) -> "HElem":
        return self.from_k(self.K.eta())

    def scalar(self, c: int) -> "HElem":
        return self.from_k(self.K.scalar(c))

    def u_p(self) -> "HElem":
        if self._u_p is None:
            self._u_p = self.u() ** self.K.p
        return self._u_p

    def set_galois(self, images: list["HElem"]) -> None:
        """Install the Galois orbit of u; images[0] must be u itself."""
        if len(images) != self.h:
            raise ValueError("need exactly h Galois images of u")
        if not (images[0] == self.u()):
            raise ValueError("first Galois image must be u itself")
        for g in images:
            acc = self.zero()
            for c in reversed(self.minpoly):
                acc = acc * g + self.from_k(c)
            if not acc.is_zero():
                raise ValueError("claimed Galois image does not satisfy minpoly")
        self.galois = images

    def galois_apply(self, x: "HElem", k: int) -> "HElem":
        """Apply the k-th Galois automorphism (K is fixed pointwise)."""
        if not self.galois:
            raise ValueError("Galois images not installed")
        img = self.galois[k % self.h]
        acc = self.zero()
        for c in reversed(x.vec):
            acc = acc * img + self.from_k(c)
        return acc

    def __eq__(self, other):
        return self is other


class HElem:
    __slots__ = ("field", "vec")

    def __init__(self, field: HField, vec: list[KElem]):
        if len(vec) != field.h:
            raise ValueError("coordinate vector has wrong length")
        self.field = field
        self.vec = vec

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.vec)

    def reduce(self) -> "HElem":
        """gcd-reduce every coordinate and share one common denominator.

        The common denominator matters for speed: products of elements
        whose coordinates agree on their denominators keep all interior
        fraction additions on the equal-denominator fast path.
        """
        out = [c.reduce() for c in self.vec]
        if self.field.h >= 2:
            K = self.field.K
            p = K.p
            lcm = out[0].d
            for c in out[1:]:
                if not fqpoly.eq(lcm, c.d):
                    g = fqpoly.gcd(lcm, c.d, p)
                    lcm = fqpoly.mul(lcm, fqpoly.divmod_(c.d, g, p)[0], p)
            unified = []
            for c in out:
                if fqpoly.eq(c.d, lcm):
                    unified.append(c)
                else:
                    s = fqpoly.divmod_(lcm, c.d, p)[0]
                    unified.append(
                        KElem(K, fqpoly.mul(c.a, s, p), fqpoly.mul(c.b, s, p), lcm)
                    )
            out = unified
        return HElem(self.field, out)

    def __add__(self, other: "HElem") -> "HElem":
        return HElem(
            self.field, [a + b for a, b in zip(self.vec, other.vec)]
        )

    def __neg__(self) -> "HElem":
        return HElem(self.field, [-a for a in self.vec])

    def __sub__(self, other: "HElem") -> "HElem":
        return HElem(
            self.field, [a - b for a, b in zip(self.vec, other.vec)]
        )

    def __mul__(self, other: "HElem") -> "HElem":
        F = self.field
        h = F.h
        K = F.K
        if h == 1:
            return HElem(F, [self.vec[0] * other.vec[0]])
        if h == 2:
            x0, x1 = self.vec
            y0, y1 = other.vec
            z0 = x0 * y0
            x1z = x1.is_zero()
            y1z = y1.is_zero()
            if x1z and y1z:
                return HElem(F, [z0, K.zero()])
            if x1z:
                return HElem(F, [z0, x0 * y1])
            if y1z:
                return HElem(F, [z0, x1 * y0])
            z2 = x1 * y1
            # one-multiplication cross term when the coordinate
            # denominators line up; otherwise the pre-adds would
            # cross-multiply them and cost more than they save
            if fqpoly.eq(x0.d, x1.d) and fqpoly.eq(y0.d, y1.d):
                z1 = (x0 + x1) * (y0 + y1) - z0 - z2
            else:
                z1 = x0 * y1 + x1 * y0
            row = F._red[0]
            out0 = z0 + z2 * row[0]
            if not row[1].is_zero():
                z1 = z1 + z2 * row[1]
            return HElem(F, [out0, z1])
        conv = [K.zero()] * (2 * h - 1)
        for i, a in enumerate(self.vec):
            if a.is_zero():
                continue
            for j, b in enumerate(other.vec):
                if b.is_zero():
                    continue
                conv[i + j] = conv[i + j] + a * b
        out = conv[:h]
        for k in range(h, 2 * h - 1):
            if conv[k].is_zero():
                continue
            row = F._red[k - h]
            out = [out[i] + conv[k] * row[i] for i in range(h)]
        return HElem(F, out)

    def scale_k(self, c: KElem) -> "HElem":
        return HElem(self.field, [a * c for a in self.vec])

    def inv(self) -> "HElem":
        F = self.field
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in H")
        if F.h == 1:
            return HElem(F, [self.vec[0].inv()])
        if F.h == 2:
            m0, m1 = F.minpoly[0], F.minpoly[1]
            c0, c1 = self.vec
            # conjugate c0 + c1*(-m1 - u); norm is in K
            n = c0 * c0 - c0 * c1 * m1 + c1 * c1 * m0
            ninv = n.inv()
            return HElem(F, [(c0 - c1 * m1) * ninv, -c1 * ninv])
        return self._inv_xgcd()

    def _inv_xgcd(self) -> "HElem":
        F = self.field
        K = F.K

        def trim(v):
            while v and v[-1].is_zero():
                v = v[:-1]
            return v

        def padd(a, b):
            n = max(len(a), len(b))
            a = a + [K.zero()] * (n - len(a))
            b = b + [K.zero()] * (n - len(b))
            return trim([x + y for x, y in zip(a, b)])

        def pmulc(a, c):
            return trim([x * c for x in a])

        def pmul(a, b):
            if not a or not b:
                return []
            out = [K.zero()] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
            return trim(out)

        def pdivmod(a, b):
            q = [K.zero()] * max(0, len(a) - len(b) + 1)
            r = list(a)
            linv = b[-1].inv()
            while len(r) >= len(b):
                c = r[-1] * linv
                k = len(r) - len(b)
                q[k] = q[k] + c
                for i in range(len(b)):
                    r[k + i] = r[k + i] - c * b[i]
                r = trim(r)
            return trim(q), r

        r0 = [c for c in F.minpoly]
        r1 = trim(list(self.vec))
        s0, s1 = [], [K.one()]
        while len(r1) > 1:
            q, r = pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, padd(s0, [-x for x in pmul(q, s1)])
        if not r1:
            raise ZeroDivisionError("element not invertible")
        s = pmulc(s1, r1[0].inv())
        s = s + [K.zero()] * (F.h - len(s))
        return HElem(F, s[: F.h])

    def __truediv__(self, other: "HElem") -> "HElem":
        return self * other.inv()

    def __pow__(self, n: int) -> "HElem":
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

    def frob(self, j: int = 1) -> "HElem":
        """q-power Frobenius applied j times."""
        x = self
        F = self.field
        for _ in range(j):
            up = F.u_p()
            acc = F.zero()
            for c in reversed(x.vec):
                acc = acc * up + F.from_k(c.frob(1))
            x = acc
        return x

    def __eq__(self, other):
        if not isinstance(other, HElem):
            return NotImplemented
        return all(a == b for a, b in zip(self.vec, other.vec))

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.vec):
            if c.is_zero():
                continue
            if i == 0:
                parts.append(repr(c))
            else:
                parts.append(f"({c!r})*u" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts) if parts else "0"
