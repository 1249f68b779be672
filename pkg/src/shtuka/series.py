"""Multivariate truncated power series over F_p (total-degree cutoff).

Used for the formal-group construction at the infinite place: the
Weierstrass parameter expansions and the two-variable addition law.
Coefficients live in the prime field; products go through Kronecker
flattening to one variable so the fqpoly fast path applies.
"""

from __future__ import annotations

import numpy as np

from . import fqpoly


class MultiSeries:
    """Power series in 1..3 variables, truncated at total degree < cutoff."""

    __slots__ = ("p", "nvars", "cutoff", "coeffs")

    def __init__(self, p: int, nvars: int, cutoff: int, coeffs: np.ndarray | None = None):
        self.p = p
        self.nvars = nvars
        self.cutoff = cutoff
        if coeffs is None:
            coeffs = np.zeros((cutoff,) * nvars, dtype=np.int64)
        self.coeffs = coeffs

    @staticmethod
    def zero(p: int, nvars: int, cutoff: int) -> "MultiSeries":
        return MultiSeries(p, nvars, cutoff)

    @staticmethod
    def from_terms(p: int, nvars: int, cutoff: int, terms: dict) -> "MultiSeries":
        s = MultiSeries(p, nvars, cutoff)
        for idx, c in terms.items():
            if isinstance(idx, int):
                idx = (idx,)
            if sum(idx) < cutoff:
                s.coeffs[idx] = c % p
        return s

    def _mask(self) -> np.ndarray:
        grids = np.indices(self.coeffs.shape).sum(axis=0)
        return grids < self.cutoff

    def coefficient(self, idx) -> int:
        if isinstance(idx, int):
            idx = (idx,)
        return int(self.coeffs[idx])

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def _like(self, coeffs: np.ndarray) -> "MultiSeries":
        return MultiSeries(self.p, self.nvars, self.cutoff, coeffs % self.p)

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        return self._like(self.coeffs + other.coeffs)

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self._like(self.coeffs - other.coeffs)

    def __neg__(self) -> "MultiSeries":
        return self._like(-self.coeffs)

    def scale(self, c: int) -> "MultiSeries":
        return self._like(self.coeffs * (c % self.p))

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        stride = 2 * self.cutoff - 1
        a = _flatten(self.coeffs, stride)
        b = _flatten(other.coeffs, stride)
        c = fqpoly.mul(a, b, self.p)
        out = _unflatten(c, self.nvars, self.cutoff, stride)
        out[~self._mask()] = 0
        return self._like(out)

    def compose(self, args: list, const):
        """Evaluate at ring elements args (Horner); const maps int -> ring."""
        if len(args) != self.nvars:
            raise ValueError("wrong number of composition arguments")

        def rec(arr: np.ndarray, rest: list):
            if arr.ndim == 0:
                return const(int(arr))
            acc = None
            for k in range(arr.shape[0] - 1, -1, -1):
                sub = rec(arr[k], rest[1:])
                acc = sub if acc is None else acc * rest[0] + sub
            return acc

        return rec(self.coeffs, list(args))

    def __eq__(self, other):
        return (
            isinstance(other, MultiSeries)
            and self.cutoff == other.cutoff
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __repr__(self):
        terms = []
        it = np.ndindex(*self.coeffs.shape)
        shown = 0
        for idx in it:
            c = int(self.coeffs[idx])
            if c:
                mono = "*".join(
                    f"z{k+1}^{i}" for k, i in enumerate(idx) if i
                ) or "1"
                terms.append(f"{c}*{mono}")
                shown += 1
                if shown >= 12:
                    terms.append("...")
                    break
        return " + ".join(terms) if terms else "0"


def _flatten(arr: np.ndarray, stride: int) -> np.ndarray:
    if arr.ndim == 1:
        return fqpoly.trim(arr.copy())
    n = arr.ndim
    size = stride ** (n - 1) * (arr.shape[0] - 1) + 1 + (stride - 1)
    out = np.zeros(stride**n, dtype=np.int64)
    it = np.ndindex(*arr.shape)
    # vectorized: compute flat positions for all entries
    idx = np.argwhere(arr != 0)
    if len(idx) == 0:
        return fqpoly.ZERO
    pos = np.zeros(len(idx), dtype=np.int64)
    for k in range(n):
        pos = pos * stride + idx[:, k]
    out[pos] = arr[tuple(idx.T)]
    return fqpoly.trim(out)


def _unflatten(flat: np.ndarray, nvars: int, cutoff: int, stride: int) -> np.ndarray:
    out = np.zeros((cutoff,) * nvars, dtype=np.int64)
    if len(flat) == 0:
        return out
    pos = np.nonzero(flat)[0]
    vals = flat[pos]
    digits = []
    rem = pos.copy()
    for _ in range(nvars):
        digits.append(rem % stride)
        rem //= stride
    digits = digits[::-1]  # most significant first, matching _flatten
    keep = np.ones(len(pos), dtype=bool)
    for d in digits:
        keep &= d < cutoff
    sel = tuple(d[keep] for d in digits)
    out[sel] = vals[keep]
    return out
