"""Counting sequences behind the dimension lower bounds for lifted codes.

* T_m  - pairs (u, v) >= 0 with u + eta*v <= p^m - 1
* W_m  - size of the WRM degree set over F_{p^m} at degree p^m - alpha - eta
* N_m  - N_0 = 1, N_m = p^(2m) - sum_{nu<m} N_nu T_(m-nu)

All values are exact Python ints; only the final rates are floats.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lift import lift_dimension


def ilog(alpha: int, p: int) -> int:
    """floor(log_p alpha) for alpha >= 1, computed exactly."""
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    e = 0
    while p ** (e + 1) <= alpha:
        e += 1
    return e


def lattice_count(bound: int, eta: int) -> int:
    """#{(u, v) in N^2 : u + eta*v <= bound}."""
    if bound < 0:
        return 0
    V = bound // eta
    # sum_{v=0}^{V} (bound - eta*v + 1)
    return (V + 1) * (bound + 1) - eta * V * (V + 1) // 2


def t_seq(m: int, p: int, eta: int) -> int:
    """Closed form of T_m."""
    P = p**m
    M = (P - 1) // eta
    twice = (M + 1) * (2 * P - eta * M)
    assert twice % 2 == 0
    return twice // 2


def w_seq(m: int, p: int, eta: int, alpha: int) -> int:
    """W_m(alpha) as an exact lattice count (0 when the code is zero)."""
    return lattice_count(p**m - alpha - eta, eta)


def w_closed_form(m: int, p: int, eta: int, alpha: int) -> Fraction:
    """The product formula for W_m(alpha), evaluated literally."""
    P = p**m
    M = (P - alpha) // eta
    return M * (P - alpha + 1 - Fraction(eta, 2) * ((P - alpha) // eta + 1))


@lru_cache(maxsize=None)
def _n_list(p: int, eta: int, m: int) -> tuple[int, ...]:
    ns = [1]
    for k in range(1, m + 1):
        ns.append(p ** (2 * k) - sum(ns[nu] * t_seq(k - nu, p, eta) for nu in range(k)))
    return tuple(ns)


def n_seq(m: int, p: int, eta: int) -> int:
    if m < 0:
        raise ValueError("m must be >= 0")
    return _n_list(p, eta, m)[m]


def n_terms(m: int, p: int, eta: int) -> list[int]:
    """N_0, ..., N_m."""
    return list(_n_list(p, eta, m))


@dataclass
class SeqTable:
    p: int
    eta: int
    alpha: int
    T: list[int]
    W: list[int]
    N: list[int]

    def identity_holds(self) -> bool:
        """p^(2m) == sum_nu N_nu T_(m-nu) for every tabulated m."""
        return all(
            sum(self.N[nu] * self.T[m - nu] for nu in range(m + 1)) == self.p ** (2 * m)
            for m in range(len(self.N)))


def seq_table(p: int, eta: int, alpha: int, m_max: int) -> SeqTable:
    return SeqTable(
        p, eta, alpha,
        T=[t_seq(m, p, eta) for m in range(m_max + 1)],
        W=[w_seq(m, p, eta, alpha) for m in range(m_max + 1)],
        N=n_terms(m_max, p, eta))


def dim_lower_bound(e: int, p: int, eta: int, alpha: int) -> int:
    """sum_{eps=0}^{e - e_alpha - 1} W_{e-eps}(alpha) N_eps."""
    ea = ilog(alpha, p)
    if e <= ea:
        raise ValueError(f"need e > floor(log_p alpha) = {ea}")
    ns = n_terms(e - ea - 1, p, eta)
    return sum(w_seq(e - eps, p, eta, alpha) * ns[eps] for eps in range(e - ea))


def asymptotic_rate_lb(p: int, eta: int, c: int) -> Fraction:
    """(1 / 2 eta) sum_{eps<c} (p^-eps - p^-c)^2 N_eps, exactly."""
    if c < 1:
        raise ValueError("c must be >= 1")
    ns = n_terms(c - 1, p, eta)
    total = sum((Fraction(1, p**eps) - Fraction(1, p**c)) ** 2 * ns[eps] for eps in range(c))
    return total / (2 * eta)


# --- translated WRM blocks W(eps, a, b) --------------------------------------

def in_block(i: int, j: int, eps: int, p: int, eta: int, alpha: int) -> bool:
    """Is (i, j) in some W(eps, a, b) (block offsets unrestricted)?"""
    P = p**eps
    return (i % P) + eta * (j % P) <= P - alpha - eta


def block_points(eps: int, a: int, b: int, p: int, eta: int, alpha: int) -> set[tuple[int, int]]:
    P = p**eps
    bound = P - alpha - eta
    if bound < 0:
        return set()
    return {(i + a * P, j + b * P)
            for j in range(bound // eta + 1) for i in range(bound - eta * j + 1)}


def lemma_nbwrm_count(eps1: int, eps2: int, p: int, eta: int, alpha: int) -> int:
    """Number of (a1, b1) with W(eps1, a1, b1) inside W(eps2, 0, 0), by set
    inclusion.  Translating both blocks by the same multiple of p^eps2 does
    not change the count, so W(eps2, 0, 0) stands for any W(eps2, a2, b2).
    """
    if not ilog(alpha, p) + 1 <= eps1 <= eps2:
        raise ValueError("need floor(log_p alpha) + 1 <= eps1 <= eps2")
    if p**eps1 - alpha - eta < 0:
        raise ValueError("W(eps1, ., .) is empty for these parameters")
    big = block_points(eps2, 0, 0, p, eta, alpha)
    span = p ** (eps2 - eps1)
    return sum(1 for a in range(span) for b in range(span)
               if block_points(eps1, a, b, p, eta, alpha) <= big)


# --- dimension tables -----------------------------------------------------------

TABLE_FIELDS = ("p", "eta", "alpha", "c", "e", "n", "k", "R", "lower_bound", "wrm_k")


def dim_row(p: int, eta: int, e: int, alpha: int | None = None, c: int | None = None) -> dict:
    """One table row for Lift^eta RS_{p^e}(p^e - alpha), or alpha = p^(e-c)."""
    if (alpha is None) == (c is None):
        raise ValueError("give exactly one of alpha and c")
    if alpha is None:
        if e < c:
            raise ValueError("need e >= c")
        alpha = p ** (e - c)
    q = p**e
    d = q - alpha
    if not 0 <= d <= q - 1:
        raise ValueError(f"alpha={alpha} gives degree {d} outside [0, {q - 1}]")
    k = lift_dimension(p, e, eta, d)
    n = q * q
    lb = dim_lower_bound(e, p, eta, alpha) if e > ilog(alpha, p) else 0
    return {"p": p, "eta": eta, "alpha": alpha, "c": c if c is not None else "",
            "e": e, "n": n, "k": k, "R": f"{k / n:.4f}", "lower_bound": lb,
            "wrm_k": lattice_count(d, eta)}


def rows_to_csv(rows: list[dict], fields=TABLE_FIELDS) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: r.get(k, "") for k in fields})
    return buf.getvalue()
