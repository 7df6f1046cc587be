"""Monomial codes over F_q^2: degree sets, weighted Reed-Muller codes,
plain and systematic encoding.

A monomial code is the span of ``ev(X^i Y^j)`` for ``(i, j)`` in its degree
set.  The basis order (and hence message order) is lexicographic in
``(i, j)``; the systematic information set is the list of pivot columns
found by row-reducing the monomial evaluation matrix left to right.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .gf import Field
from .poly import monomial_eval

WRM = "WRM"
LIFT = "LIFT"


class DegreeSet:
    """A subset of [0, q-1]^2 stored as a q x q boolean matrix, bits[i, j]."""

    __slots__ = ("q", "bits")

    def __init__(self, q: int, bits: np.ndarray | None = None):
        self.q = q
        if bits is None:
            bits = np.zeros((q, q), dtype=bool)
        bits = np.asarray(bits, dtype=bool)
        if bits.shape != (q, q):
            raise ValueError(f"degree set bitmap must be {q}x{q}")
        self.bits = bits

    @classmethod
    def from_pairs(cls, q: int, pairs: Iterable[tuple[int, int]]) -> DegreeSet:
        ds = cls(q)
        for i, j in pairs:
            ds.bits[i, j] = True
        return ds

    def __len__(self) -> int:
        return int(self.bits.sum())

    def __contains__(self, pair) -> bool:
        i, j = pair
        return 0 <= i < self.q and 0 <= j < self.q and bool(self.bits[i, j])

    def __iter__(self):
        return iter(self.pairs())

    def __eq__(self, other) -> bool:
        return isinstance(other, DegreeSet) and self.q == other.q and bool(
            np.array_equal(self.bits, other.bits))

    def __le__(self, other: DegreeSet) -> bool:
        return self.issubset(other)

    def __repr__(self) -> str:
        return f"DegreeSet(q={self.q}, size={len(self)})"

    def pairs(self) -> list[tuple[int, int]]:
        """Members in lexicographic (i, j) order."""
        ii, jj = np.nonzero(self.bits)
        return [(int(i), int(j)) for i, j in zip(ii, jj)]

    def issubset(self, other: DegreeSet) -> bool:
        return self.q == other.q and not np.any(self.bits & ~other.bits)


def wrm_degree_set(field: Field | int, eta: int, d: int) -> DegreeSet:
    """{(i, j) in [0, q-1]^2 : i + eta*j <= d}."""
    q = field if isinstance(field, int) else field.q
    if eta < 1:
        raise ValueError("eta must be >= 1")
    if d > q - 1:
        raise ValueError(f"degree {d} outside [0, {q - 1}]")
    i = np.arange(q)
    return DegreeSet(q, (i[:, None] + eta * i[None, :]) <= d)


def wrm_dimension(q: int, eta: int, d: int) -> int:
    """Closed-form lattice count of the WRM degree set (d <= q - 1)."""
    if d < 0:
        return 0
    return sum(d - eta * j + 1 for j in range(d // eta + 1))


class MonomialCode:
    """Span of monomial evaluations over F_q^2 (a WRM or a lifted RS code)."""

    def __init__(self, field: Field, eta: int, d: int, kind: str, degset: DegreeSet):
        if degset.q != field.q:
            raise ValueError("degree set and field disagree on q")
        self.field = field
        self.eta = eta
        self.d = d
        self.kind = kind
        self.degset = degset
        self.basis = degset.pairs()

    def __repr__(self) -> str:
        return (f"MonomialCode({self.kind}, q={self.field.q}, eta={self.eta}, "
                f"d={self.d}, dim={self.dim})")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def length(self) -> int:
        return self.field.q ** 2

    @property
    def rate(self) -> float:
        return self.dim / self.length

    @cached_property
    def generator(self) -> np.ndarray:
        """dim x q^2 matrix; row k is ev(X^i Y^j) for the k-th basis pair."""
        F = self.field
        if not self.basis:
            return np.zeros((0, F.q * F.q), dtype=np.int64)
        return np.stack([monomial_eval(F, i, j) for i, j in self.basis])

    @cached_property
    def _systematic(self) -> tuple[np.ndarray, list[int], np.ndarray]:
        return row_reduce(self.field, self.generator)

    @property
    def info_set_indices(self) -> list[int]:
        return self._systematic[1]

    @property
    def systematic_generator(self) -> np.ndarray:
        return self._systematic[0]


def row_reduce(F: Field, G: np.ndarray) -> tuple[np.ndarray, list[int], np.ndarray]:
    """Reduced row echelon form R = A @ G over GF(q) for a full-rank G.

    Returns (R, pivot_columns, A).  R restricted to the pivot columns is the
    identity.
    """
    rows, cols = G.shape
    aug = np.concatenate([G.astype(np.int64), np.eye(rows, dtype=np.int64)], axis=1)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(aug[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            aug[[r, piv]] = aug[[piv, r]]
        aug[r] = F.mul_table[F.inv(int(aug[r, c])), aug[r]]
        factors = aug[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            aug[hit] = F.vsub(aug[hit], F.mul_table[factors[hit, None], aug[r][None, :]])
        pivots.append(c)
        r += 1
    if r < rows:
        raise ValueError("generator matrix is not of full rank")
    return aug[:, :cols], pivots, aug[:, cols:]


def wrm_code(field: Field, eta: int, d: int) -> MonomialCode:
    if d < 0:
        return MonomialCode(field, eta, d, WRM, DegreeSet(field.q))
    return MonomialCode(field, eta, d, WRM, wrm_degree_set(field, eta, d))


def _as_vector(F: Field, values, n: int, what: str) -> np.ndarray:
    v = np.asarray(values, dtype=np.int64).reshape(-1)
    if v.size != n:
        raise ValueError(f"{what} must have length {n}, got {v.size}")
    if v.size and (v.min() < 0 or v.max() >= F.q):
        raise ValueError(f"{what} has entries outside GF({F.q})")
    return v


def encode(code: MonomialCode, message) -> np.ndarray:
    """sum_k m_k ev(X^{i_k} Y^{j_k}) in basis order."""
    m = _as_vector(code.field, message, code.dim, "message")
    return code.field.vecmat(m, code.generator)


def unencode(code: MonomialCode, word) -> np.ndarray:
    """Coefficients (in basis order) of a codeword; inverse of :func:`encode`."""
    F = code.field
    c = _as_vector(F, word, code.length, "codeword")
    _, pivots, A = code._systematic
    return F.vecmat(c[pivots], A)


def systematic_info_set(code: MonomialCode) -> list[tuple[int, int]]:
    q = code.field.q
    return [divmod(c, q) for c in code.info_set_indices]


def systematic_encode(code: MonomialCode, database) -> np.ndarray:
    m = _as_vector(code.field, database, code.dim, "database")
    return code.field.vecmat(m, code.systematic_generator)


def membership(code: MonomialCode, word) -> bool:
    c = _as_vector(code.field, word, code.length, "word")
    rebuilt = code.field.vecmat(c[code.info_set_indices], code.systematic_generator)
    return bool(np.array_equal(rebuilt, c))
