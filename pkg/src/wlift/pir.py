"""q-server PIR over a monomial code split into columns.

Server t stores the column c|{t} x F_q.  To fetch database entry i (sitting
at systematic coordinate x = info_set[i]) the user draws an eta-line L
through x with L(t0) = x, sends phi(t) to every server t != t0 and a fresh
uniform symbol to server t0.  Each server answers with one table read; the
user decodes the answers in RS_q(d) treating t0 and silent servers as
erasures.

Database indices are 0-based and follow the order of the information set.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .codes import MonomialCode, systematic_encode, systematic_info_set
from .gf import Field
from .local import sample_line_through
from .poly import EtaLine, peval
from .rs import DecodingFailure, decode_points

STRATEGIES = ("offset", "random", "worst")


@dataclass(frozen=True)
class Adversary:
    byzantine: tuple[int, ...] = ()
    unresponsive: tuple[int, ...] = ()
    strategy: str = "offset"
    offset: int = 1

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown byzantine strategy {self.strategy!r}")
        if self.offset < 1:
            raise ValueError("offset must be a nonzero field element")
        if set(self.byzantine) & set(self.unresponsive):
            raise ValueError("a server cannot be both byzantine and unresponsive")


class Server:
    """Holds one column; counts reads and field operations per answer."""

    def __init__(self, t: int, column: np.ndarray):
        self.t = t
        self.column = column
        self.reads = 0
        self.field_ops = 0

    def answer(self, y: int) -> int:
        self.reads += 1
        return int(self.column[y])


@dataclass
class PirSystem:
    code: MonomialCode
    info_set: list[tuple[int, int]]
    servers: list[Server]
    adversary: Adversary = Adversary()

    @property
    def field(self) -> Field:
        return self.code.field

    @property
    def k(self) -> int:
        return self.code.dim

    @property
    def storage_rate(self) -> float:
        return self.k / self.field.q ** 2

    def reset_counters(self) -> None:
        for s in self.servers:
            s.reads = s.field_ops = 0


@dataclass
class QueryVector:
    index: int
    target: tuple[int, int]
    line: EtaLine
    t0: int
    queries: list[int]


@dataclass
class Transcript:
    seed: int | None
    q: int
    p: int
    e: int
    eta: int
    d: int
    kind: str
    index: int
    t0: int
    line_coeffs: list[int]
    queries: list[int]
    answers: list[int | None]
    byzantine: list[int]
    unresponsive: list[int]
    recovered: int | None
    ok: bool
    bits_up: int
    bits_down: int
    expected: int | None = dc_field(default=None, repr=False)

    def to_json(self) -> str:
        data = {k: getattr(self, k) for k in TRANSCRIPT_FIELDS}
        return json.dumps(data, sort_keys=False)


TRANSCRIPT_FIELDS = ("seed", "q", "p", "e", "eta", "d", "kind", "index", "t0", "line_coeffs",
                     "queries", "answers", "byzantine", "unresponsive", "recovered", "ok",
                     "bits_up", "bits_down")


def symbol_bits(q: int) -> int:
    return math.ceil(math.log2(q))


def communication_bits(q: int) -> tuple[int, int]:
    """(upload, download) bits for one retrieval: one symbol each way per server."""
    b = symbol_bits(q)
    return q * b, q * b


def pir_init(database, code: MonomialCode, adversary: Adversary = Adversary()) -> PirSystem:
    F = code.field
    db = np.asarray(database, dtype=np.int64).reshape(-1)
    if db.size != code.dim:
        raise ValueError(f"database has {db.size} entries, code dimension is {code.dim}")
    for t in (*adversary.byzantine, *adversary.unresponsive):
        if not 0 <= t < F.q:
            raise ValueError(f"server id {t} outside [0, {F.q - 1}]")
    if adversary.offset >= F.q:
        raise ValueError(f"offset {adversary.offset} is not an element of GF({F.q})")
    c = systematic_encode(code, db)
    q = F.q
    servers = [Server(t, c[t * q:(t + 1) * q].copy()) for t in range(q)]
    return PirSystem(code, systematic_info_set(code), servers, adversary)


def pir_query(sys: PirSystem, i: int, rng: np.random.Generator) -> QueryVector:
    if not 0 <= i < sys.k:
        raise IndexError(f"database index {i} outside [0, {sys.k - 1}]")
    F = sys.field
    x = sys.info_set[i]
    line, t0 = sample_line_through(x, sys.code.eta, F, rng)
    queries = [line.phi(F, t) for t in F.elements()]
    queries[t0] = int(rng.integers(F.q))
    return QueryVector(i, x, line, t0, queries)


def pir_answer(sys: PirSystem, t: int, y: int,
               rng: np.random.Generator | None = None) -> int | None:
    """Answer of server t to query y; None when the server stays silent.

    Byzantine servers read the honest value and then substitute their own.
    """
    server = sys.servers[t]
    value = server.answer(y)
    adv = sys.adversary
    if t in adv.unresponsive:
        return None
    if t in adv.byzantine:
        F = sys.field
        if adv.strategy == "offset":
            return F.add(value, adv.offset)
        if adv.strategy == "random":
            if rng is None:
                raise ValueError("random byzantine strategy needs an rng")
            return int(rng.integers(F.q))
        return value  # "worst" is resolved by pir_retrieve
    return value


def pir_recover(sys: PirSystem, qv: QueryVector, answers: list[int | None]) -> int:
    """Decode answers in RS_q(d); t0 and missing answers are erasures."""
    F = sys.field
    ts = [t for t in F.elements() if t != qv.t0 and answers[t] is not None]
    values = [answers[t] for t in ts]
    f = decode_points(F, sys.code.d, ts, values)
    return peval(F, f, qv.t0)


def _try_recover(sys, qv, answers) -> int | None:
    try:
        return pir_recover(sys, qv, answers)
    except DecodingFailure:
        return None


def pir_retrieve(sys: PirSystem, i: int, seed: int | None = None,
                 rng: np.random.Generator | None = None) -> Transcript:
    """One full retrieval under the system's adversary, as a transcript."""
    if rng is None:
        rng = np.random.default_rng(seed)
    F = sys.field
    q = F.q
    qv = pir_query(sys, i, rng)
    answers = [pir_answer(sys, t, qv.queries[t], rng) for t in F.elements()]
    adv = sys.adversary
    expected = int(sys.servers[qv.target[0]].column[qv.target[1]])
    if adv.strategy == "worst" and adv.byzantine:
        answers = _worst_case(sys, qv, answers, expected)
    recovered = _try_recover(sys, qv, answers)
    up, down = communication_bits(q)
    return Transcript(
        seed=seed, q=q, p=F.p, e=F.e, eta=sys.code.eta, d=sys.code.d, kind=sys.code.kind,
        index=i, t0=qv.t0, line_coeffs=list(qv.line.coeffs), queries=list(qv.queries),
        answers=answers, byzantine=sorted(adv.byzantine), unresponsive=sorted(adv.unresponsive),
        recovered=recovered, ok=recovered == expected, bits_up=up, bits_down=down,
        expected=expected)


def _worst_case(sys: PirSystem, qv: QueryVector, answers: list, expected: int) -> list:
    """Exhaustively pick byzantine symbols that break recovery, if any do."""
    F = sys.field
    byz = [t for t in sys.adversary.byzantine if answers[t] is not None]
    if F.q ** len(byz) > 10**5:
        raise ValueError("worst-case search space too large")
    for choice in itertools.product(range(F.q), repeat=len(byz)):
        trial = list(answers)
        for t, v in zip(byz, choice):
            trial[t] = v
        if _try_recover(sys, qv, trial) != expected:
            return trial
    return answers


# --- privacy audit ------------------------------------------------------------

@dataclass
class PrivacyReport:
    tau: int
    exact: bool
    max_tv: Fraction | float
    worst_set: tuple[int, ...] | None
    worst_pair: tuple[int, int] | None
    uniform: bool
    n_sets: int
    n_indices: int

    @property
    def certified_private(self) -> bool:
        return self.exact and self.max_tv == 0


def _query_table(sys: PirSystem, x: tuple[int, int]) -> np.ndarray:
    """All q^(eta+1) query vectors for target x, one row per randomness state."""
    F = sys.field
    q, eta = F.q, sys.code.eta
    x1, x2 = x
    rows = []
    for upper in itertools.product(range(q), repeat=eta):
        acc = 0
        for m, a in enumerate(upper, start=1):
            acc = F.add(acc, F.mul(a, F.pow(x1, m)))
        coeffs = [F.sub(x2, acc), *upper]
        base = [peval(F, coeffs, t) for t in range(q)]
        for y0 in range(q):
            v = list(base)
            v[x1] = y0
            rows.append(v)
    return np.array(rows, dtype=np.int64)


def _tv(a: Counter, b: Counter, total: int) -> Fraction:
    keys = set(a) | set(b)
    return Fraction(sum(abs(a[k] - b[k]) for k in keys), 2 * total)


EXACT_AUDIT_BUDGET = 5 * 10**7


def privacy_audit(sys: PirSystem, tau: int, samples: int = 2000,
                  seed: int = 0, force_sampled: bool = False) -> PrivacyReport:
    """Compare the joint law of the queries seen by every tau-subset of
    servers across all database indices.

    Exact mode enumerates the protocol's randomness and reports the maximal
    total-variation distance as a Fraction.  When the enumeration exceeds
    the budget, a sampled estimate is returned instead (not a certificate).
    """
    F = sys.field
    q, eta = F.q, sys.code.eta
    if not 1 <= tau <= q:
        raise ValueError(f"collusion size must be in [1, {q}]")
    sets = list(itertools.combinations(range(q), tau))
    states = q ** (eta + 1)
    targets = sorted(set(sys.info_set))
    work = states * len(targets) * len(sets)
    exact = not force_sampled and work <= EXACT_AUDIT_BUDGET
    rng = np.random.default_rng(seed)
    tables = {}
    for x in targets:
        if exact:
            tables[x] = _query_table(sys, x)
        else:
            i = sys.info_set.index(x)
            tables[x] = np.array([pir_query(sys, i, rng).queries for _ in range(samples)])
    total = states if exact else samples
    weights = q ** np.arange(tau)
    max_tv: Fraction | float = Fraction(0) if exact else 0.0
    worst_set = worst_pair = None
    uniform = True
    for T in sets:
        cols = list(T)
        hists = {x: Counter((tables[x][:, cols] @ weights).tolist()) for x in targets}
        if exact:
            ref = hists[targets[0]]
            flat = total // q**tau if total % q**tau == 0 else None
            if flat is None or len(ref) != q**tau or any(v != flat for v in ref.values()):
                uniform = False
        for a, b in itertools.combinations(targets, 2):
            tv = _tv(hists[a], hists[b], total)
            if not exact:
                tv = float(tv)
            if tv > max_tv:
                max_tv, worst_set = tv, T
                worst_pair = (sys.info_set.index(a), sys.info_set.index(b))
    if max_tv != 0:
        uniform = False
    return PrivacyReport(tau=tau, exact=exact, max_tv=max_tv, worst_set=worst_set,
                         worst_pair=worst_pair, uniform=uniform and exact, n_sets=len(sets),
                         n_indices=sys.k)
