"""Dense polynomial arithmetic over prime fields F_p, numpy-backed.

A polynomial is a 1-D numpy int64 array of coefficients, lowest degree
first, reduced mod p, with no trailing zero; the zero polynomial is the
empty array.  Large products are routed through Kronecker substitution
into GMP integers, which is far faster than coefficient convolution at
the sizes the identity suites reach (degree ~30000).
"""

from __future__ import annotations

import gmpy2
import numpy as np

ZERO = np.zeros(0, dtype=np.int64)

# Products whose output is shorter than this go through np.convolve.
_KRONECKER_CUTOFF = 512
_FFT_CUTOFF = 4096
_FFT_MIN_LEN = 1024
_FFT_BOUND = 1 << 44


def _fft_len(n):
    """Smallest transform length >= n of the form m * 2^k, m in {2, 3, 5}."""
    best = 1 << (n - 1).bit_length()
    for m in (3, 5):
        L = m
        while L < n:
            L <<= 1
        if L < best:
            best = L
    return best


def trim(a: np.ndarray) -> np.ndarray:
    """Strip trailing zero coefficients."""
    n = len(a)
    if n == 0 or a[n - 1] != 0:
        return a
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return a[:0]
    return a[: int(nz[-1]) + 1]


def from_list(coeffs, p: int) -> np.ndarray:
    return trim(np.asarray(coeffs, dtype=np.int64) % p)


def const(c: int, p: int) -> np.ndarray:
    c %= p
    return ZERO if c == 0 else np.array([c], dtype=np.int64)


def is_zero(a: np.ndarray) -> bool:
    return len(a) == 0


def deg(a: np.ndarray) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(a) - 1


def lead(a: np.ndarray) -> int:
    return int(a[-1]) if len(a) else 0


def add(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] = (out[: len(b)] + b) % p
    return trim(out)


def neg(a: np.ndarray, p: int) -> np.ndarray:
    return (-a) % p


def sub(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return add(a, neg(b, p), p)


def scalar_mul(c: int, a: np.ndarray, p: int) -> np.ndarray:
    c %= p
    if c == 0 or len(a) == 0:
        return ZERO
    if c == 1:
        return a
    return (a * c) % p


def _pack(a: np.ndarray, cell_bytes: int) -> gmpy2.mpz:
    buf = np.zeros((len(a), cell_bytes), dtype=np.uint8)
    v = a.astype(np.uint64)
    for k in range(cell_bytes):
        buf[:, k] = (v >> np.uint64(8 * k)) & np.uint64(0xFF)
    return gmpy2.mpz(int.from_bytes(buf.tobytes(), "little"))


def _unpack(z: gmpy2.mpz, n: int, cell_bytes: int) -> np.ndarray:
    raw = int(z).to_bytes(n * cell_bytes + 8, "little")[: n * cell_bytes]
    m = np.frombuffer(raw, dtype=np.uint8).reshape(n, cell_bytes).astype(np.int64)
    out = np.zeros(n, dtype=np.int64)
    for k in range(cell_bytes):
        out += m[:, k] << (8 * k)
    return out


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return ZERO
    if len(a) == 1:
        return scalar_mul(int(a[0]), b, p)
    if len(b) == 1:
        return scalar_mul(int(b[0]), a, p)
    n = len(a) + len(b) - 1
    if n <= _KRONECKER_CUTOFF:
        return np.convolve(a, b) % p
    # a monomial operand only shifts and scales the other one; powers of
    # the base variable show up constantly as denominators
    for x, y in ((a, b), (b, a)):
        if np.count_nonzero(x) == 1:
            k = int(np.nonzero(x)[0][-1])
            c = int(x[k])
            out = np.zeros(n, dtype=np.int64)
            out[k : k + len(y)] = y if c == 1 else (y * c) % p
            return out
    if (n > _FFT_CUTOFF and min(len(a), len(b)) > _FFT_MIN_LEN
            and min(len(a), len(b)) * (p - 1) * (p - 1) < _FFT_BOUND):
        # Real-FFT convolution; every convolution coefficient is a
        # nonnegative integer far below 2^53, so rounding recovers the
        # exact value.  The residual check guards the assumption.
        L = _fft_len(n)
        out = np.fft.irfft(np.fft.rfft(a, L) * np.fft.rfft(b, L), L)[:n]
        r = np.rint(out)
        if np.abs(out - r).max() < 0.25:
            return r.astype(np.int64) % p
    # Cell width must hold min(len) * (p-1)^2 without carry overflow;
    # two-byte cells halve the integer sizes and fit almost every call.
    need = (min(len(a), len(b)) * (p - 1) * (p - 1)).bit_length()
    if need <= 16:
        za = gmpy2.mpz(int.from_bytes(np.ascontiguousarray(a).astype("<u2").tobytes(), "little"))
        zb = gmpy2.mpz(int.from_bytes(np.ascontiguousarray(b).astype("<u2").tobytes(), "little"))
        raw = int(za * zb).to_bytes(n * 2 + 4, "little")[: n * 2]
        out = np.frombuffer(raw, dtype="<u2").astype(np.int64)
        return out % p
    if need <= 32:
        za = gmpy2.mpz(int.from_bytes(np.ascontiguousarray(a).astype("<u4").tobytes(), "little"))
        zb = gmpy2.mpz(int.from_bytes(np.ascontiguousarray(b).astype("<u4").tobytes(), "little"))
        raw = int(za * zb).to_bytes(n * 4 + 8, "little")[: n * 4]
        out = np.frombuffer(raw, dtype="<u4").astype(np.int64)
        return out % p
    cell_bytes = (need + 7) // 8
    z = _pack(a, cell_bytes) * _pack(b, cell_bytes)
    return _unpack(z, n, cell_bytes) % p


def mul_xk(a: np.ndarray, k: int) -> np.ndarray:
    """Multiply by x^k (k >= 0)."""
    if len(a) == 0 or k == 0:
        return a
    return np.concatenate([np.zeros(k, dtype=np.int64), a])


def spread(a: np.ndarray, m: int) -> np.ndarray:
    """Substitute x -> x^m; used for Frobenius twists over F_p."""
    if len(a) == 0 or m == 1:
        return a
    out = np.zeros((len(a) - 1) * m + 1, dtype=np.int64)
    out[::m] = a
    return out


def divmod_(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Quotient and remainder; b must be nonzero."""
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return ZERO, a
    inv_lead = pow(int(b[-1]), p - 2, p)
    r = a.copy()
    qlen = len(a) - len(b) + 1
    q = np.zeros(qlen, dtype=np.int64)
    for i in range(qlen - 1, -1, -1):
        c = (r[i + len(b) - 1] * inv_lead) % p
        if c:
            q[i] = c
            r[i : i + len(b)] = (r[i : i + len(b)] - c * b) % p
    return trim(q), trim(r)


def gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic greatest common divisor."""
    while len(b):
        a, b = b, divmod_(a, b, p)[1]
    if len(a):
        a = scalar_mul(pow(int(a[-1]), p - 2, p), a, p)
    return a


def evaluate(a: np.ndarray, x: int, p: int) -> int:
    """Horner evaluation at a scalar in F_p."""
    acc = 0
    for c in a[::-1]:
        acc = (acc * x + int(c)) % p
    return acc


def eq(a: np.ndarray, b: np.ndarray) -> bool:
    return len(a) == len(b) and bool(np.array_equal(a, b))
