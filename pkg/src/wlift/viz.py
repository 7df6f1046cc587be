"""Degree-set pictures as PGM images or ASCII art.

Cell (i, j) is drawn at column i, row q-1-j so the origin sits at the
bottom-left.  Filled cells are black (0), empty cells white (255).
"""

from __future__ import annotations

import numpy as np

from .bounds import ilog
from .codes import DegreeSet

WHITE = 255
BLACK = 0


def degree_image(ds: DegreeSet) -> np.ndarray:
    """q x q uint8 image of a degree set."""
    img = np.where(ds.bits.T[::-1, :], BLACK, WHITE)
    return img.astype(np.uint8)


def shade_levels(ds: DegreeSet, p: int, eta: int, alpha: int) -> np.ndarray:
    """Per cell, the smallest eps such that the cell lies in a translated
    block W(eps, a, b); -1 when no block covers it.  Indexed [i, j]."""
    q = ds.q
    e = ilog(q, p)
    levels = np.full((q, q), -1, dtype=np.int64)
    idx = np.arange(q)
    for eps in range(e, ilog(alpha, p), -1):  # largest first, smaller overwrite
        P = p**eps
        inside = (idx[:, None] % P) + eta * (idx[None, :] % P) <= P - alpha - eta
        levels[inside] = eps
    return levels


def shaded_image(ds: DegreeSet, p: int, eta: int, alpha: int) -> np.ndarray:
    """Grey level per block depth; degree-set cells outside every block stay
    black.  Returns an image in display orientation."""
    levels = shade_levels(ds, p, eta, alpha)
    used = sorted({int(v) for v in np.unique(levels[ds.bits]) if v >= 0})
    grey = {eps: int(64 + 128 * k / max(1, len(used) - 1)) for k, eps in enumerate(used)}
    out = np.full(ds.bits.shape, WHITE, dtype=np.int64)
    out[ds.bits] = BLACK
    for eps, g in grey.items():
        out[ds.bits & (levels == eps)] = g
    return out.T[::-1, :].astype(np.uint8)


def to_pgm(img: np.ndarray, binary: bool = False) -> bytes:
    h, w = img.shape
    if binary:
        return f"P5\n{w} {h}\n255\n".encode() + img.astype(np.uint8).tobytes()
    lines = [f"P2\n{w} {h}\n255"]
    lines += [" ".join(str(int(v)) for v in row) for row in img]
    return ("\n".join(lines) + "\n").encode()


def read_pgm(data: bytes) -> np.ndarray:
    """Parse a P2/P5 image written by :func:`to_pgm`."""
    magic = data[:2]
    if magic == b"P5":
        _, dims, _, rest = data.split(b"\n", 3)
        w, h = map(int, dims.split())
        return np.frombuffer(rest, dtype=np.uint8)[: w * h].reshape(h, w)
    if magic == b"P2":
        tokens = data.split()
        w, h = int(tokens[1]), int(tokens[2])
        vals = np.array([int(t) for t in tokens[4:4 + w * h]], dtype=np.uint8)
        return vals.reshape(h, w)
    raise ValueError("not a PGM image")


def to_ascii(ds: DegreeSet, filled: str = "#", empty: str = ".") -> str:
    img = degree_image(ds)
    return "\n".join("".join(filled if v == BLACK else empty for v in row) for row in img) + "\n"
