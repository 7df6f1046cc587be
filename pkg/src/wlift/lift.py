"""Degree sets of eta-lifted Reed-Solomon codes.

A monomial X^i Y^j lies in Lift^eta(RS_q(d)) iff red_q(i + a) <= d for every
a in Delta(j, eta), the set of exponents that can occur in phi(T)^j with
deg phi <= eta.  Delta(j, eta) only depends on the base-p digits of j: it is
the sumset  { sum_r c_r p^r : 0 <= c_r <= eta * j_r }.

Two routes compute the degree set:

* :func:`lift_degree_set` uses that sumset structure.  Testing "every shift
  by a member of Delta stays good" is an erosion of the good-exponent bitmap
  by Delta, and erosion by a Minkowski sum is the composition of erosions by
  its summands, here one arithmetic progression per digit.
* :func:`lift_oracle_degrees` composes every monomial with every eta-line
  and records the largest reduced degree.  It never looks at digits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .codes import LIFT, DegreeSet, MonomialCode
from .gf import Field, leq_p, red_q, to_digits

ORACLE_LINE_LIMIT = 10**6

__all__ = [
    "red_q", "DeltaSet", "delta_set", "delta_set_bruteforce", "lift_degree_set",
    "lift_dimension", "lift_membership_oracle", "lift_oracle_degrees", "lift_code",
]


@dataclass(frozen=True)
class DeltaSet:
    j: int
    eta: int
    members: frozenset[int]

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)


def _digit_progressions(j: int, eta: int, p: int) -> list[tuple[int, int]]:
    """(step, count) pairs: Delta(j) is the sum of {0, step, ..., count*step}."""
    return [(p**r, eta * dig) for r, dig in enumerate(to_digits(j, p)) if dig]


def delta_set(j: int, eta: int, p: int) -> DeltaSet:
    """Delta(j, eta) via a reachable-sum bitset DP over the digits of j."""
    if j < 0:
        raise ValueError("j must be non-negative")
    bits = 1
    for step, count in _digit_progressions(j, eta, p):
        acc = 0
        for c in range(count + 1):
            acc |= bits << (c * step)
        bits = acc
    members = frozenset(k for k in range(bits.bit_length()) if bits >> k & 1)
    return DeltaSet(j, eta, members)


def delta_set_bruteforce(j: int, eta: int, p: int) -> DeltaSet:
    """Delta(j, eta) straight from the multinomial/Lucas condition.

    Enumerates k in N^eta with k_m <=_p j - (k_1 + ... + k_{m-1}) and
    collects <(1..eta), k>.
    """
    members = set()

    def walk(m: int, rest: int, acc: int) -> None:
        if m > eta:
            members.add(acc)
            return
        for k in range(rest + 1):
            if leq_p(k, rest, p):
                walk(m + 1, rest - k, acc + m * k)

    walk(1, j, 0)
    return DeltaSet(j, eta, frozenset(members))


def _good_mask(q: int, d: int, width: int) -> int:
    """Bit x set iff red_q(x) <= d, for x < width."""
    if d >= q - 1:
        return (1 << width) - 1
    block = ((1 << d) - 1) << 1          # residues 1..d in a period of q - 1
    period = q - 1
    reps = width // period + 2
    pattern = 0
    for k in range(reps):
        pattern |= block << (k * period)
    pattern |= 1                          # x = 0
    # x = k(q-1) for k >= 1 has red_q = q - 1 > d, already clear
    return pattern & ((1 << width) - 1)


def _row(q: int, p: int, eta: int, d: int, j: int, good: int) -> int:
    """Bitmask of the i in [0, d] with (i, j) in the degree set."""
    eroded = good
    for step, count in _digit_progressions(j, eta, p):
        acc = eroded
        for c in range(1, count + 1):
            acc &= eroded >> (c * step)
        eroded = acc
    return eroded & ((1 << (d + 1)) - 1)


def _check_params(q: int, eta: int, d: int) -> None:
    if eta < 1:
        raise ValueError("eta must be >= 1")
    if not 0 <= d <= q - 1:
        raise ValueError(f"degree {d} outside [0, {q - 1}]")


def lift_rows(q: int, p: int, eta: int, d: int) -> list[int]:
    """Row bitmasks of D(q, d, eta): entry j has bit i set iff (i, j) in D."""
    _check_params(q, eta, d)
    if d == q - 1:
        return [(1 << q) - 1] * q
    good = _good_mask(q, d, d + eta * (q - 1) + 1)
    return [_row(q, p, eta, d, j, good) if j <= d else 0 for j in range(q)]


def lift_dimension(p: int, e: int, eta: int, d: int) -> int:
    """|D(p^e, d, eta)| without materialising the bitmap."""
    return sum(r.bit_count() for r in lift_rows(p**e, p, eta, d))


def lift_degree_set(field: Field, eta: int, d: int) -> DegreeSet:
    q, p = field.q, field.p
    rows = lift_rows(q, p, eta, d)
    bits = np.zeros((q, q), dtype=bool)
    for j, row in enumerate(rows):
        if row:
            bits[:, j] = [(row >> i) & 1 for i in range(q)]
    return DegreeSet(q, bits)


def lift_code(field: Field, eta: int, d: int) -> MonomialCode:
    return MonomialCode(field, eta, d, LIFT, lift_degree_set(field, eta, d))


# --- brute-force oracle ---------------------------------------------------

def _all_lines(F: Field, eta: int) -> np.ndarray:
    n = F.q ** (eta + 1)
    if n > ORACLE_LINE_LIMIT:
        raise ValueError(f"{n} lines exceed the enumeration bound {ORACLE_LINE_LIMIT}")
    return np.array(list(itertools.product(range(F.q), repeat=eta + 1)), dtype=np.int64)


def _fold(F: Field, coeffs: np.ndarray, exponents: list[int]) -> np.ndarray:
    """Accumulate columns into exponent red_q(exponents[k]) (mod T^q - T)."""
    out = np.zeros((coeffs.shape[0], F.q), dtype=np.int64)
    for k, a in enumerate(exponents):
        r = red_q(a, F.q)
        out[:, r] = F.vadd(out[:, r], coeffs[:, k])
    return out


def _top_degree(coeffs: np.ndarray) -> np.ndarray:
    """Highest nonzero column per row (-1 for the zero polynomial)."""
    nz = coeffs != 0
    last = coeffs.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1)
    return np.where(nz.any(axis=1), last, -1)


def lift_oracle_degrees(field: Field, eta: int) -> np.ndarray:
    """q x q array: entry (i, j) is max over all eta-lines L of the degree of
    (X^i Y^j o L) reduced mod T^q - T.

    (i, j) is in D(q, d, eta) exactly when the entry is <= d.
    """
    F = field
    q = F.q
    lines = _all_lines(F, eta)
    nlines = lines.shape[0]
    out = np.zeros((q, q), dtype=np.int64)
    # psi = phi^j mod (T^q - T), all lines at once
    psi = np.zeros((nlines, q), dtype=np.int64)
    psi[:, 0] = 1
    for j in range(q):
        for i in range(q):
            shifted = _fold(F, psi, [i + k for k in range(q)])
            out[i, j] = _top_degree(shifted).max()
        prod = np.zeros((nlines, q + eta), dtype=np.int64)
        for m in range(eta + 1):
            term = F.mul_table[psi, lines[:, m][:, None]]
            prod[:, m:m + q] = F.vadd(prod[:, m:m + q], term)
        psi = _fold(F, prod, list(range(q + eta)))
    return out


def lift_membership_oracle(field: Field, eta: int, d: int, i: int, j: int) -> bool:
    """Definitional test: every eta-line restriction of X^i Y^j has reduced
    degree <= d."""
    F = field
    q = F.q
    _check_params(q, eta, d)
    lines = _all_lines(F, eta)
    psi = np.zeros((lines.shape[0], q), dtype=np.int64)
    psi[:, 0] = 1
    for _ in range(j):
        prod = np.zeros((lines.shape[0], q + eta), dtype=np.int64)
        for m in range(eta + 1):
            prod[:, m:m + q] = F.vadd(prod[:, m:m + q], F.mul_table[psi, lines[:, m][:, None]])
        psi = _fold(F, prod, list(range(q + eta)))
    shifted = _fold(F, psi, [i + k for k in range(q)])
    return bool(_top_degree(shifted).max() <= d)
