import itertools
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from wlift.codes import encode, wrm_code
from wlift.lift import lift_code
from wlift.local import (CorruptedWord, ExperimentResult, LocalDecoder, correct_on_line,
                         failure_bound, hit_threshold, local_correct, make_errors,
                         results_to_csv, sample_line_through, success_rate_experiment,
                         wilson_interval)
from wlift.poly import EtaLine
from wlift.rs import DecodingFailure


def test_line_through_origin_eta1(fields):
    F = fields[8]
    rng = np.random.default_rng(0)
    seen = set()
    for _ in range(200):
        L, t0 = sample_line_through((0, 0), 1, F, rng)
        assert t0 == 0 and L.coeffs[0] == 0
        seen.add(L.coeffs[1])
    assert seen == set(range(8))


@pytest.mark.parametrize("q,eta", [(4, 1), (4, 2), (8, 2), (9, 2)])
def test_line_passes_through_target(fields, q, eta):
    F = fields[q]
    rng = np.random.default_rng(q + eta)
    for x in itertools.product(range(q), repeat=2):
        L, t0 = sample_line_through(x, eta, F, rng)
        assert t0 == x[0] and L(F, t0) == x


def test_line_distribution_uniform(fields):
    F = fields[4]
    rng = np.random.default_rng(11)
    x = (2, 3)
    n = 32000
    counts = Counter(sample_line_through(x, 2, F, rng)[0].coeffs for _ in range(n))
    # all q^eta lines through x occur, each with frequency ~ 1/16
    assert len(counts) == 16
    expected = n / 16
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    assert chi2 < 37.7  # 99.9% quantile of chi-square with 15 dof


def _query_marginal(F, eta, x):
    """Exact P(a queried) for every point a, over all q^eta lines through x."""
    q = F.q
    hits = Counter()
    lines = 0
    for upper in itertools.product(range(q), repeat=eta):
        acc = 0
        for m, a in enumerate(upper, start=1):
            acc = F.add(acc, F.mul(a, F.pow(x[0], m)))
        L = EtaLine(eta, (F.sub(x[1], acc), *upper))
        lines += 1
        for t in F.elements():
            if t != x[0]:
                hits[L(F, t)] += 1
    return {a: Fraction(c, lines) for a, c in hits.items()}


@pytest.mark.parametrize("q,eta", [(4, 1), (4, 2), (8, 1), (8, 2)])
def test_query_marginal_exact(fields, q, eta):
    F = fields[q]
    for x in [(0, 0), (1, 2), (q - 1, q - 1)]:
        marg = _query_marginal(F, eta, x)
        assert all(a[0] != x[0] for a in marg)
        # every off-column point is hit with probability exactly 1/q
        assert set(marg.values()) == {Fraction(1, q)} and len(marg) == q * (q - 1)
        # hence E|A cap E| <= delta q^2 / q = delta q for any error support
        assert sum(marg.values()) == q - 1


def test_clean_word_always_corrected(fields):
    F = fields[8]
    for C in (wrm_code(F, 2, 5), lift_code(F, 2, 5)):
        dec = LocalDecoder(C, seed=1)
        c = encode(C, np.random.default_rng(2).integers(0, 8, size=C.dim))
        y = CorruptedWord(F, c)
        for x in itertools.product(range(8), repeat=2):
            assert local_correct(dec, x, y) == c[x[0] * 8 + x[1]]


def test_query_budget(fields):
    F = fields[16]
    C = lift_code(F, 2, 8)
    dec = LocalDecoder(C, seed=3)
    y = CorruptedWord(F, encode(C, np.zeros(C.dim, dtype=int)))
    for x in [(0, 0), (5, 7), (15, 1)]:
        y.queries.clear()
        local_correct(dec, x, y)
        assert len(y.queries) == 15 == len(set(y.queries))
        assert x not in y.queries
        assert all(pt[0] != x[0] for pt in y.queries)


def test_column_burst_off_target_always_succeeds(fields):
    F = fields[16]
    C = lift_code(F, 2, 8)
    dec = LocalDecoder(C, seed=0)
    rng = np.random.default_rng(4)
    c = encode(C, rng.integers(0, 16, size=C.dim))
    for trial in range(100):
        x = (int(rng.integers(16)), int(rng.integers(16)))
        col = int((x[0] + 1 + rng.integers(15)) % 16)
        errs = np.zeros(256, dtype=int)
        errs[col * 16:(col + 1) * 16] = rng.integers(1, 16, size=16)
        assert local_correct(dec, x, CorruptedWord(F, c, errs)) == c[x[0] * 16 + x[1]]


def test_corrected_when_at_most_w_hits(fields):
    F = fields[16]
    C = lift_code(F, 2, 8)
    w = hit_threshold(16, 8)
    assert w == 3
    dec = LocalDecoder(C)
    rng = np.random.default_rng(8)
    for _ in range(100):
        c = encode(C, rng.integers(0, 16, size=C.dim))
        x = (int(rng.integers(16)), int(rng.integers(16)))
        L, t0 = sample_line_through(x, 2, F, rng)
        errs = np.zeros(256, dtype=int)
        pts = [p for p in L.points(F) if p[0] != t0]
        for k in rng.choice(len(pts), size=w, replace=False):
            a = pts[k]
            errs[a[0] * 16 + a[1]] = rng.integers(1, 16)
        # plus arbitrary errors off the line and at the target itself
        errs[x[0] * 16 + x[1]] = 5
        assert correct_on_line(dec, L, t0, CorruptedWord(F, c, errs)) == c[x[0] * 16 + x[1]]


def test_decoder_reports_failure_beyond_capacity(fields):
    F = fields[16]
    C = lift_code(F, 2, 8)
    dec = LocalDecoder(C)
    rng = np.random.default_rng(1)
    outcomes = Counter()
    for _ in range(200):
        c = encode(C, rng.integers(0, 16, size=C.dim))
        L, t0 = sample_line_through((3, 3), 2, F, rng)
        errs = np.zeros(256, dtype=int)
        for a in L.points(F)[:10]:
            errs[a[0] * 16 + a[1]] = rng.integers(1, 16)
        try:
            got = correct_on_line(dec, L, t0, CorruptedWord(F, c, errs))
            outcomes["wrong" if got != c[3 * 16 + 3] else "right"] += 1
        except DecodingFailure:
            outcomes["fail"] += 1
    assert outcomes["fail"] > 0


@pytest.mark.parametrize("model", ["uniform", "column", "line"])
def test_error_models_have_requested_weight(fields, model):
    F = fields[16]
    C = lift_code(F, 2, 8)
    rng = np.random.default_rng(0)
    for n in (0, 1, 12, 25, 40):
        e = make_errors(C, n, model, (3, 4), rng)
        assert int((e != 0).sum()) == n
        if model == "column":
            assert not e[3 * 16:4 * 16].any()
    with pytest.raises(ValueError):
        make_errors(C, 3, "bogus", (0, 0), rng)


def test_experiment_zero_noise(fields):
    C = lift_code(fields[16], 2, 8)
    for model in ("uniform", "column", "line"):
        r = success_rate_experiment(C, 0.0, 200, model, seed=1)
        assert r.failures == 0 and r.rate == 0.0 and r.threshold_violations == 0


def test_experiment_under_bound_and_reproducible(fields):
    C = lift_code(fields[16], 2, 8)
    r = success_rate_experiment(C, 0.05, 400, "uniform", seed=7)
    assert r.bound == pytest.approx(0.2)
    assert r.rate <= r.bound and r.threshold_violations == 0
    assert r.ci_lo <= r.rate <= r.ci_hi
    again = success_rate_experiment(C, 0.05, 400, "uniform", seed=7)
    assert again == r


def test_wrm_experiment(fields):
    C = wrm_code(fields[16], 2, 8)
    r = success_rate_experiment(C, 0.1, 300, "line", seed=2)
    assert r.rate <= failure_bound(16, 8, 0.1) and r.threshold_violations == 0


def test_wilson_interval_reference_values():
    lo, hi = wilson_interval(5, 10)
    assert lo == pytest.approx(0.2366, abs=1e-4) and hi == pytest.approx(0.7634, abs=1e-4)
    lo, hi = wilson_interval(0, 10)
    assert lo == pytest.approx(0.0, abs=1e-12) and hi == pytest.approx(0.2775, abs=1e-4)


def test_thresholds():
    assert failure_bound(16, 8, 0.05) == pytest.approx(0.2)
    assert failure_bound(16, 8, 0.1) == pytest.approx(0.4)
    assert hit_threshold(16, 8) == 3
    assert hit_threshold(16, 9) == 2  # odd q - d rounds down


def test_csv_header(fields):
    C = lift_code(fields[8], 2, 4)
    text = results_to_csv([success_rate_experiment(C, 0.0, 5, seed=0)])
    assert text.splitlines()[0] == "q,p,e,eta,d,delta,trials,failures,rate,ci_lo,ci_hi,bound"
    assert set(ExperimentResult.CSV_FIELDS) <= set(vars(ExperimentResult(
        1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0)))
