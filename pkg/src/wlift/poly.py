"""Univariate and bivariate polynomials over GF(q).

Univariate polynomials are coefficient lists (index = degree); bivariate
ones are sparse ``{(i, j): coeff}`` maps since the codes we care about are
spanned by monomials.  Codewords over F_q^2 are numpy vectors in the
lexicographic order of points: coordinate ``x * q + y`` holds the value at
``(x, y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping

import numpy as np

from .gf import Field, red_q

NEG_INF = float("-inf")


# --- coefficient-list helpers (used by the decoders) -----------------------

def trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(c: list[int]) -> int | float:
    for k in range(len(c) - 1, -1, -1):
        if c[k]:
            return k
    return NEG_INF


def padd(F: Field, a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] = F.add(out[k], c)
    return trim(out)


def psub(F: Field, a: list[int], b: list[int]) -> list[int]:
    return padd(F, a, [F.neg(c) for c in b])


def pscale(F: Field, a: list[int], s: int) -> list[int]:
    if s == 0:
        return []
    return [F.mul(c, s) for c in a]


def pmul(F: Field, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    mul, add = F.mul, F.add
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return trim(out)


def pdivmod(F: Field, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    b = trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(list(a))
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv_lead = F.inv(b[-1])
    quot = [0] * (len(r) - db)
    mul, sub = F.mul, F.sub
    while len(r) - 1 >= db and r:
        c = mul(r[-1], inv_lead)
        shift = len(r) - 1 - db
        quot[shift] = c
        for k in range(db + 1):
            if b[k]:
                r[shift + k] = sub(r[shift + k], mul(c, b[k]))
        trim(r)
    return trim(quot), r


def peval(F: Field, c: list[int], x: int) -> int:
    acc = 0
    mul, add = F.mul, F.add
    for coef in reversed(c):
        acc = add(mul(acc, x), coef)
    return acc


def ppow(F: Field, a: list[int], n: int) -> list[int]:
    result = [1]
    base = list(a)
    while n:
        if n & 1:
            result = pmul(F, result, base)
        base = pmul(F, base, base)
        n >>= 1
    return result


def fold_q(F: Field, c: list[int]) -> list[int]:
    """Reduce modulo T^q - T by mapping exponents through red_q."""
    q = F.q
    out = [0] * min(len(c), q)
    for k, coef in enumerate(c):
        if coef:
            r = red_q(k, q)
            out[r] = F.add(out[r], coef)
    return trim(out)


# --- public value types -----------------------------------------------------

@dataclass(frozen=True)
class UniPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(trim(list(self.coeffs))))

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __call__(self, F: Field, x: int) -> int:
        return peval(F, list(self.coeffs), x)

    def is_zero(self) -> bool:
        return not self.coeffs


@dataclass(frozen=True)
class BiPoly:
    terms: Mapping[tuple[int, int], int] = dc_field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: v for k, v in dict(self.terms).items() if v})

    @classmethod
    def monomial(cls, i: int, j: int, coeff: int = 1) -> BiPoly:
        return cls({(i, j): coeff})

    @classmethod
    def from_terms(cls, F: Field, items: Iterable[tuple[tuple[int, int], int]]) -> BiPoly:
        acc: dict[tuple[int, int], int] = {}
        for key, c in items:
            acc[key] = F.add(acc.get(key, 0), c)
        return cls(acc)

    def is_zero(self) -> bool:
        return not self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms


@dataclass(frozen=True)
class EtaLine:
    """The eta-line t -> (t, phi(t)) with phi = sum a_m T^m, deg phi <= eta."""
    eta: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.eta < 1:
            raise ValueError("eta must be >= 1")
        if len(self.coeffs) != self.eta + 1:
            raise ValueError(f"an eta-line needs eta+1 = {self.eta + 1} coefficients")

    def phi(self, F: Field, t: int) -> int:
        return peval(F, list(self.coeffs), t)

    def __call__(self, F: Field, t: int) -> tuple[int, int]:
        return t, self.phi(F, t)

    def points(self, F: Field) -> list[tuple[int, int]]:
        return [(t, self.phi(F, t)) for t in F.elements()]


# --- operations ---------------------------------------------------------------

def wdeg(f: BiPoly, eta: int) -> int | float:
    """Weighted degree for the weight (1, eta); -inf for the zero polynomial."""
    if f.is_zero():
        return NEG_INF
    return max(i + eta * j for (i, j) in f.terms)


def reduce_q(f, F: Field):
    """Reduce modulo <X^q - X, Y^q - Y> (or T^q - T for univariate input)."""
    if isinstance(f, UniPoly):
        return UniPoly(tuple(fold_q(F, list(f.coeffs))))
    if isinstance(f, BiPoly):
        return BiPoly.from_terms(
            F, (((red_q(i, F.q), red_q(j, F.q)), c) for (i, j), c in f.terms.items()))
    raise TypeError(f"cannot reduce {type(f).__name__}")


def monomial_eval(F: Field, i: int, j: int) -> np.ndarray:
    """ev over F_q^2 of X^i Y^j as a length-q^2 vector."""
    pw = F.power_table
    cx = pw[:, red_q(i, F.q)]
    cy = pw[:, red_q(j, F.q)]
    return F.mul_table[cx[:, None], cy[None, :]].reshape(-1)


def ev_full(f: BiPoly, F: Field) -> np.ndarray:
    out = np.zeros(F.q * F.q, dtype=np.int64)
    for (i, j), c in f.terms.items():
        out = F.vadd(out, F.mul_table[c, monomial_eval(F, i, j)])
    return out


def ev_uni(f: UniPoly | list[int], F: Field) -> list[int]:
    c = list(f.coeffs) if isinstance(f, UniPoly) else list(f)
    return [peval(F, c, t) for t in F.elements()]


def compose_line(f: BiPoly, L: EtaLine, F: Field) -> list[int]:
    """Coefficients of f(T, phi(T)) without reduction."""
    phi = trim(list(L.coeffs))
    out: list[int] = []
    cache: dict[int, list[int]] = {}
    for (i, j), c in f.terms.items():
        if j not in cache:
            cache[j] = ppow(F, phi, j)
        term = [0] * i + pscale(F, cache[j], c)
        out = padd(F, out, term)
    return out


def restrict_to_line(f: BiPoly, L: EtaLine, F: Field, reduce: bool = True) -> UniPoly:
    c = compose_line(f, L, F)
    if reduce:
        c = fold_q(F, c)
    return UniPoly(tuple(c))
