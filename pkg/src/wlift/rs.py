"""Full-length Reed-Solomon codes RS_q(d) with error-and-erasure decoding.

The decoder punctures the erased positions and runs Gao's
extended-Euclid decoder on the remaining ``n' = q - s`` points.  It is a
bounded-distance decoder: it either returns the unique polynomial of degree
<= d within distance ``(n' - d - 1) // 2`` of the unerased symbols, or
raises :class:`DecodingFailure`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .gf import Field
from .poly import UniPoly, degree, pdivmod, peval, pmul, pscale, psub, trim


class DecodingFailure(Exception):
    """No codeword within the decoding radius."""


@dataclass(frozen=True)
class RsCode:
    field: Field
    d: int

    def __post_init__(self):
        if not 0 <= self.d <= self.field.q - 1:
            raise ValueError(f"degree bound {self.d} outside [0, {self.field.q - 1}]")

    @property
    def n(self) -> int:
        return self.field.q

    @property
    def k(self) -> int:
        return self.d + 1

    @property
    def distance(self) -> int:
        return self.n - self.d

    def can_correct(self, errors: int, erasures: int) -> bool:
        return 2 * errors + erasures <= self.n - self.d - 1


@dataclass(frozen=True)
class ReceivedWord:
    symbols: tuple[int, ...]
    erasures: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "erasures", frozenset(self.erasures))
        if any(not 0 <= t < len(self.symbols) for t in self.erasures):
            raise ValueError("erasure position out of range")


def rs_encode(code: RsCode, poly: UniPoly | Sequence[int]) -> list[int]:
    c = list(poly.coeffs) if isinstance(poly, UniPoly) else trim(list(poly))
    if len(c) - 1 > code.d:
        raise ValueError(f"degree {len(c) - 1} exceeds {code.d}")
    F = code.field
    return [peval(F, c, t) for t in F.elements()]


@lru_cache(maxsize=4096)
def _lagrange_basis(F: Field, xs: tuple[int, ...]) -> tuple[list[int], list[list[int]]]:
    """Vanishing polynomial of xs and the Lagrange basis polynomials."""
    g0 = [1]
    for a in xs:
        g0 = pmul(F, g0, [F.neg(a), 1])
    basis = []
    for a in xs:
        b, _ = pdivmod(F, g0, [F.neg(a), 1])
        basis.append(pscale(F, b, F.inv(peval(F, b, a))))
    return g0, basis


def _interpolate(F: Field, basis: list[list[int]], ys: list[int]) -> list[int]:
    out = [0] * len(ys)
    mul, add = F.mul, F.add
    for b, y in zip(basis, ys):
        if y:
            for k, c in enumerate(b):
                if c:
                    out[k] = add(out[k], mul(c, y))
    return trim(out)


def decode_points(F: Field, d: int, xs: list[int], ys: list[int]) -> list[int]:
    """Gao decoding of values ys at distinct points xs into degree <= d."""
    n = len(xs)
    if n < d + 1:
        raise DecodingFailure("fewer unerased positions than the dimension")
    g0, basis = _lagrange_basis(F, tuple(xs))
    g1 = _interpolate(F, basis, ys)
    if degree(g1) <= d:
        return g1
    # partial extended Euclid: stop once deg r < (n + d + 1) / 2
    r_prev, r_cur = g0, g1
    v_prev, v_cur = [], [1]
    while r_cur and 2 * (len(r_cur) - 1) >= n + d + 1:
        qt, rem = pdivmod(F, r_prev, r_cur)
        r_prev, r_cur = r_cur, rem
        v_prev, v_cur = v_cur, psub(F, v_prev, pmul(F, qt, v_cur))
    f, rem = pdivmod(F, r_cur, v_cur)
    if rem or degree(f) > d:
        raise DecodingFailure("no codeword within the decoding radius")
    radius = (n - d - 1) // 2
    wrong = sum(1 for a, y in zip(xs, ys) if peval(F, f, a) != y)
    if wrong > radius:
        raise DecodingFailure("candidate codeword outside the decoding radius")
    return f


def rs_decode_ee(code: RsCode, word: ReceivedWord | Sequence[int],
                 erasures: Iterable[int] = ()) -> UniPoly:
    """Error-and-erasure decoding; raises DecodingFailure beyond capacity."""
    if not isinstance(word, ReceivedWord):
        word = ReceivedWord(tuple(word), frozenset(erasures))
    F = code.field
    if len(word.symbols) != F.q:
        raise ValueError(f"received word must have length {F.q}")
    xs = [t for t in F.elements() if t not in word.erasures]
    ys = [word.symbols[t] for t in xs]
    return UniPoly(tuple(decode_points(F, code.d, xs, ys)))
