"""Local correction along random eta-lines, and a Monte-Carlo harness.

To correct coordinate x = (x1, x2) the decoder draws an eta-line through x,
reads the q - 1 other points of the line, treats position t0 = x1 as an
erasure and decodes in RS_q(d).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field as dc_field
from typing import Callable

import numpy as np

from .codes import MonomialCode, encode
from .gf import Field
from .poly import EtaLine, peval
from .rs import DecodingFailure, RsCode, decode_points

Point = tuple[int, int]

ERROR_MODELS = ("uniform", "column", "line")


def sample_line_through(x: Point, eta: int, field: Field,
                        rng: np.random.Generator) -> tuple[EtaLine, int]:
    """Uniform eta-line L with L(x1) = x; returns (L, t0 = x1)."""
    F = field
    x1, x2 = x
    upper = [int(a) for a in rng.integers(0, F.q, size=eta)]
    acc = 0
    for m, a in enumerate(upper, start=1):
        acc = F.add(acc, F.mul(a, F.pow(x1, m)))
    a0 = F.sub(x2, acc)
    return EtaLine(eta, (a0, *upper)), x1


class CorruptedWord:
    """Oracle access to y = c + e that logs every queried point."""

    def __init__(self, field: Field, codeword: np.ndarray, errors: np.ndarray | None = None):
        self.field = field
        self.codeword = np.asarray(codeword, dtype=np.int64)
        if errors is None:
            errors = np.zeros_like(self.codeword)
        self.errors = np.asarray(errors, dtype=np.int64)
        self.word = field.vadd(self.codeword, self.errors)
        self.queries: list[Point] = []

    @property
    def support(self) -> set[Point]:
        q = self.field.q
        return {divmod(int(k), q) for k in np.flatnonzero(self.errors)}

    def __call__(self, point: Point) -> int:
        self.queries.append(point)
        x, y = point
        return int(self.word[x * self.field.q + y])


@dataclass
class LocalDecoder:
    code: MonomialCode
    seed: int = 0
    rs: RsCode = dc_field(init=False)

    def __post_init__(self):
        self.rs = RsCode(self.code.field, self.code.d)
        self.rng = np.random.default_rng(self.seed)


def correct_on_line(dec: LocalDecoder, line: EtaLine, t0: int,
                    y: Callable[[Point], int]) -> int:
    """Query the q - 1 points of ``line`` other than t0 and decode."""
    F = dec.code.field
    ts = [t for t in F.elements() if t != t0]
    values = [y(line(F, t)) for t in ts]
    f = decode_points(F, dec.rs.d, ts, values)
    return peval(F, f, t0)


def local_correct(dec: LocalDecoder, x: Point, y: Callable[[Point], int],
                  rng: np.random.Generator | None = None) -> int:
    """Corrected symbol at x; raises DecodingFailure beyond RS capacity."""
    line, t0 = sample_line_through(x, dec.code.eta, dec.code.field, rng or dec.rng)
    return correct_on_line(dec, line, t0, y)


# --- error models -------------------------------------------------------------

def _random_nonzero(F: Field, rng, n: int) -> np.ndarray:
    return rng.integers(1, F.q, size=n)


def make_errors(code: MonomialCode, n_errors: int, model: str, target: Point,
                rng: np.random.Generator) -> np.ndarray:
    """Error vector of weight n_errors under one of ERROR_MODELS."""
    F = code.field
    q = F.q
    e = np.zeros(q * q, dtype=np.int64)
    if n_errors == 0:
        return e
    if model == "uniform":
        pos = rng.choice(q * q, size=n_errors, replace=False)
    elif model == "column":
        # whole columns {t} x F_q away from the target column, filled in order
        cols = [t for t in rng.permutation(q) if t != target[0]]
        pos = np.concatenate([np.arange(t * q, (t + 1) * q) for t in cols])[:n_errors]
    elif model == "line":
        # saturate random eta-lines through the target
        chosen: list[int] = []
        seen = {target[0] * q + target[1]}
        while len(chosen) < n_errors:
            line, _ = sample_line_through(target, code.eta, F, rng)
            for pt in line.points(F):
                k = pt[0] * q + pt[1]
                if k not in seen:
                    seen.add(k)
                    chosen.append(k)
                    if len(chosen) == n_errors:
                        break
        pos = np.array(chosen)
    else:
        raise ValueError(f"unknown error model {model!r}; expected one of {ERROR_MODELS}")
    e[pos] = _random_nonzero(F, rng, len(pos))
    return e


# --- Monte-Carlo harness ------------------------------------------------------

def wilson_interval(k: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    ph = k / n
    denom = 1 + z * z / n
    centre = (ph + z * z / (2 * n)) / denom
    half = z * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass
class ExperimentResult:
    q: int
    p: int
    e: int
    eta: int
    d: int
    delta: float
    trials: int
    failures: int
    rate: float
    ci_lo: float
    ci_hi: float
    bound: float
    model: str = "uniform"
    wrong: int = 0              # decoder returned a symbol != c_x
    threshold_violations: int = 0  # failed although hits <= w
    mean_hits: float = 0.0
    chebyshev: float = float("nan")

    CSV_FIELDS = ("q", "p", "e", "eta", "d", "delta", "trials", "failures", "rate",
                  "ci_lo", "ci_hi", "bound")

    def csv_row(self) -> dict:
        row = asdict(self)
        return {k: row[k] for k in self.CSV_FIELDS}


def failure_bound(q: int, d: int, delta: float) -> float:
    """2 delta / (1 - gamma) with gamma = d / q."""
    return 2 * delta / (1 - d / q)


def hit_threshold(q: int, d: int) -> int:
    """Largest number w of corrupted queries the decoder always survives."""
    return (q - d) // 2 - 1


def success_rate_experiment(code: MonomialCode, delta: float, trials: int,
                            error_model: str = "uniform", seed: int = 0) -> ExperimentResult:
    F = code.field
    q = F.q
    n_errors = math.floor(delta * q * q)
    dec = LocalDecoder(code, seed)
    w = hit_threshold(q, code.d)
    failures = wrong = violations = 0
    hits_all = np.zeros(trials)
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        msg = rng.integers(0, q, size=code.dim)
        target = (int(rng.integers(q)), int(rng.integers(q)))
        errs = make_errors(code, n_errors, error_model, target, rng)
        y = CorruptedWord(F, encode(code, msg), errs)
        line, t0 = sample_line_through(target, code.eta, F, rng)
        try:
            value = correct_on_line(dec, line, t0, y)
            ok = value == int(y.codeword[target[0] * q + target[1]])
            wrong += not ok
        except DecodingFailure:
            ok = False
        support = y.support
        hits = sum(1 for pt in y.queries if pt in support)
        hits_all[trial] = hits
        if not ok:
            failures += 1
            if hits <= w:
                violations += 1
    lo, hi = wilson_interval(failures, trials)
    mean = float(hits_all.mean()) if trials else 0.0
    var = float(hits_all.var()) if trials else 0.0
    gap = w + 1 - mean
    cheb = min(1.0, var / gap**2) if gap > 0 else 1.0
    return ExperimentResult(
        q=q, p=F.p, e=F.e, eta=code.eta, d=code.d, delta=delta, trials=trials,
        failures=failures, rate=failures / trials if trials else 0.0, ci_lo=lo, ci_hi=hi,
        bound=failure_bound(q, code.d, delta), model=error_model, wrong=wrong,
        threshold_violations=violations, mean_hits=mean, chebyshev=cheb)


def results_to_csv(results: list[ExperimentResult]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=ExperimentResult.CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in results:
        writer.writerow(r.csv_row())
    return buf.getvalue()
