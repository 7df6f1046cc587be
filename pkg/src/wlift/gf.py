"""Arithmetic in GF(p^e).

Elements are plain ints in ``[0, q-1]``: the index of an element is the
integer whose base-p digits are the coefficients (low degree first) of its
polynomial-basis representative.  Every operation takes the field
explicitly; elements carry no back-reference.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

MAX_FIELD_SIZE = 1 << 20
LOG_TABLE_LIMIT = 1 << 16
DENSE_TABLE_LIMIT = 1 << 10


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def to_digits(value: int, base: int, width: int | None = None) -> list[int]:
    """Base-``base`` expansion of ``value``, least significant digit first."""
    if value < 0:
        raise ValueError("negative value")
    out = []
    while value:
        value, r = divmod(value, base)
        out.append(r)
    if width is not None:
        if len(out) > width:
            raise ValueError(f"{value} does not fit in {width} digits")
        out.extend([0] * (width - len(out)))
    return out


def from_digits(digits, base: int) -> int:
    value = 0
    for d in reversed(list(digits)):
        value = value * base + d
    return value


def leq_p(a: int, b: int, p: int) -> bool:
    """Digit-wise order: every base-p digit of ``a`` is at most that of ``b``.

    By Lucas' theorem this holds iff ``binom(b, a) % p != 0``.
    """
    if a < 0 or b < 0:
        raise ValueError("leq_p is defined on non-negative integers")
    while a:
        if a % p > b % p:
            return False
        a //= p
        b //= p
    return True


def red_q(a: int, q: int) -> int:
    """Canonical exponent r in [0, q-1] with T^a = T^r mod (T^q - T)."""
    if a < 0:
        raise ValueError("exponent must be non-negative")
    if a == 0:
        return 0
    return (a - 1) % (q - 1) + 1


# --- polynomials over GF(p) as coefficient lists, low degree first ---------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m over GF(p)."""
    a = _trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for k in range(dm + 1):
            a[shift + k] = (a[shift + k] - c * m[k]) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _pmod(prod, m, p)


def _is_irreducible(m: list[int], p: int) -> bool:
    e = len(m) - 1
    for deg in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _pmod(m, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e over GF(p).

    Candidates are ordered by their coefficient tuple (c_0, ..., c_{e-1})
    compared from the constant term upward.  Returned with the leading 1.
    """
    if e == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=e):
        if low[0] == 0:
            continue
        m = list(low) + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class Field:
    """The finite field GF(p^e) with a deterministic polynomial basis."""

    def __init__(self, p: int, e: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if p**e > MAX_FIELD_SIZE:
            raise ValueError(f"field size {p}^{e} exceeds {MAX_FIELD_SIZE}")
        self.p = p
        self.e = e
        self.q = p**e
        if modulus is None:
            modulus = smallest_irreducible(p, e)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1 or not _is_irreducible(list(modulus), p):
                raise ValueError("modulus must be monic irreducible of degree e")
        self.modulus = modulus
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self.generator = self._find_generator()
        if self.q <= LOG_TABLE_LIMIT:
            self._build_log_tables()

    def __repr__(self) -> str:
        return f"Field(p={self.p}, e={self.e})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.e, self.modulus) == (
            other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    # -- construction helpers

    def _slow_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        pa = to_digits(a, self.p)
        pb = to_digits(b, self.p)
        return from_digits(_pmulmod(pa, pb, list(self.modulus), self.p), self.p)

    def _slow_pow(self, a: int, n: int) -> int:
        result = 1
        while n:
            if n & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return result

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        order = self.q - 1
        factors = prime_factors(order)
        for g in range(2, self.q):
            if all(self._slow_pow(g, order // r) != 1 for r in factors):
                return g
        raise AssertionError("no primitive element")  # unreachable

    def _build_log_tables(self) -> None:
        n = self.q - 1
        exp = [0] * (2 * n)
        log = [0] * self.q
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, self.generator)
        if x != 1 or len(set(exp[:n])) != n:
            raise AssertionError("generator does not have order q-1")
        exp[n:] = exp[:n]
        self._exp, self._log = exp, log

    # -- element ops

    def elements(self) -> range:
        return range(self.q)

    def digits(self, a: int) -> list[int]:
        return to_digits(a, self.p, self.e)

    def _check(self, a: int) -> None:
        assert 0 <= a < self.q, f"{a} is not an element of GF({self.q})"

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        if self.q <= DENSE_TABLE_LIMIT:
            return int(self.add_table[a, b])
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return -a % self.p
        return from_digits([-d % self.p for d in to_digits(a, self.p)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._log is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._slow_pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] * n % (self.q - 1)]
        return self._slow_pow(a, n)

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        if self._log is None:
            raise ValueError("log tables are only kept for q <= 2^16")
        return self._log[a]

    def embed(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    # -- dense numpy tables for vectorised code (small fields only)

    def _require_dense(self) -> None:
        if self.q > DENSE_TABLE_LIMIT:
            raise ValueError(f"dense tables need q <= {DENSE_TABLE_LIMIT}")

    @cached_property
    def add_table(self) -> np.ndarray:
        self._require_dense()
        if self.p == 2:
            a = np.arange(self.q)
            return a[:, None] ^ a[None, :]
        dig = self.digit_array
        summed = (dig[:, None, :] + dig[None, :, :]) % self.p
        return summed @ (self.p ** np.arange(self.e))

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_dense()
        t = np.zeros((self.q, self.q), dtype=np.int64)
        exp = np.array(self._exp, dtype=np.int64)
        log = np.array(self._log, dtype=np.int64)
        nz = np.arange(1, self.q)
        t[1:, 1:] = exp[log[nz][:, None] + log[nz][None, :]]
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)

    @cached_property
    def inv_table(self) -> np.ndarray:
        return np.array([0] + [self.inv(a) for a in range(1, self.q)], dtype=np.int64)

    @cached_property
    def digit_array(self) -> np.ndarray:
        """q x e array of base-p digits of every element."""
        a = np.arange(self.q)
        return (a[:, None] // self.p ** np.arange(self.e)[None, :]) % self.p

    @cached_property
    def power_table(self) -> np.ndarray:
        """power_table[x, k] = x^k for k in [0, q-1] (with 0^0 = 1)."""
        self._require_dense()
        t = np.zeros((self.q, self.q), dtype=np.int64)
        for x in range(self.q):
            for k in range(self.q):
                t[x, k] = self.pow(x, k)
        return t

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.e == 1:
            return (a + b) % self.p
        return self.add_table[a, b]

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.neg_table[b])

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.mul_table[a, b]

    def vsum(self, a: np.ndarray, axis: int = 0) -> np.ndarray:
        """Field sum along an axis."""
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.e == 1:
            return a.sum(axis=axis) % self.p
        dig = self.digit_array[a]  # extra trailing axis of digits
        s = dig.sum(axis=axis) % self.p
        return s @ (self.p ** np.arange(self.e))

    def vecmat(self, v, m: np.ndarray) -> np.ndarray:
        """Row vector times matrix over the field."""
        v = np.asarray(v, dtype=np.int64)
        if m.shape[0] == 0:
            return np.zeros(m.shape[1], dtype=np.int64)
        return self.vsum(self.mul_table[v[:, None], m], axis=0)

    # -- serialisation

    def to_dict(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, data: dict) -> Field:
        return cls(data["p"], data["e"], tuple(data["modulus"]))


def field_new(p: int, e: int = 1) -> Field:
    return Field(p, e)
