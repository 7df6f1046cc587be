import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wlift.bounds import (asymptotic_rate_lb, block_points, dim_lower_bound, dim_row, ilog,
                          lattice_count, lemma_nbwrm_count, n_seq, n_terms, rows_to_csv,
                          seq_table, t_seq, w_closed_form, w_seq)
from wlift.lift import lift_dimension


def brute_pairs(bound, eta):
    return sum(1 for u in range(bound + 1) for v in range(bound + 1) if u + eta * v <= bound)


def test_ilog():
    assert [ilog(a, 2) for a in (1, 2, 3, 4, 15, 16)] == [0, 1, 1, 2, 3, 4]
    assert ilog(26, 5) == 2 and ilog(125, 5) == 3
    with pytest.raises(ValueError):
        ilog(0, 2)


def test_t_examples():
    assert t_seq(0, 2, 2) == 1 and t_seq(0, 5, 3) == 1
    assert t_seq(1, 2, 2) == 2
    # u + 2v <= 2: (0,0), (1,0), (2,0), (0,1)
    assert t_seq(1, 3, 2) == brute_pairs(2, 2) == 4


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 5), st.integers(0, 3))
def test_t_closed_form_is_lattice_count(p, eta, m):
    assert t_seq(m, p, eta) == lattice_count(p**m - 1, eta) == brute_pairs(p**m - 1, eta)


def test_w_examples():
    assert w_seq(3, 2, 2, 2) == 9
    assert w_seq(2, 2, 2, 2) == 1
    assert w_seq(1, 2, 2, 2) == 0
    assert w_seq(2, 3, 2, 9) == 0


def test_w_closed_form_matches_count():
    for p, eta, m in itertools.product((2, 3, 5), (1, 2, 3, 4), range(1, 6)):
        P = p**m
        if P > 700:
            continue
        for alpha in range(1, P + 1):
            if P - alpha - eta < 0:
                continue
            assert w_closed_form(m, p, eta, alpha) == w_seq(m, p, eta, alpha)


def test_n_examples():
    assert n_terms(3, 3, 2) == [1, 5, 36, 264]
    assert all(n_seq(0, p, eta) == 1 for p in (2, 3, 5) for eta in (1, 2, 3))
    assert n_seq(1, 2, 2) == 4 - t_seq(1, 2, 2) == 2
    with pytest.raises(ValueError):
        n_seq(-1, 2, 2)


def test_partition_identity():
    for p in (2, 3, 5):
        for eta in (1, 2, 3, 4):
            tab = seq_table(p, eta, 2, 12)
            assert tab.identity_holds()
            assert all(n >= 0 for n in tab.N)


def test_dim_lower_bound_examples():
    assert dim_lower_bound(3, 2, 2, 2) == 11 == 9 * 1 + 1 * 2
    assert dim_lower_bound(2, 2, 2, 2) == w_seq(2, 2, 2, 2)
    assert dim_lower_bound(5, 3, 2, 9) == w_seq(5, 3, 2, 9) * 1 + w_seq(4, 3, 2, 9) * 5 \
        + w_seq(3, 3, 2, 9) * 36
    with pytest.raises(ValueError):
        dim_lower_bound(1, 2, 2, 2)


def test_dim_lower_bound_below_dimension():
    for p, e_max in ((2, 9), (3, 5), (5, 3)):
        for eta in (1, 2, 3, 4):
            for e in range(1, e_max + 1):
                q = p**e
                for alpha in {2, 3, 4, p, p * p, q // 2 or 1}:
                    if alpha < 1 or alpha > q or e <= ilog(alpha, p):
                        continue
                    assert dim_lower_bound(e, p, eta, alpha) <= lift_dimension(p, e, eta, q - alpha)


@pytest.mark.parametrize("p,eta,c,value", [(2, 2, 4, 0.3877), (2, 2, 6, 0.5533),
                                           (2, 4, 3, 0.1465), (5, 2, 2, 0.3328)])
def test_rate_bounds(p, eta, c, value):
    r = asymptotic_rate_lb(p, eta, c)
    assert isinstance(r, Fraction)
    assert abs(float(r) - value) <= 5e-4


def test_block_containment_lemma():
    for p, eta, alpha in itertools.product((2, 3), (1, 2, 3), (2, 3, 4)):
        ea = ilog(alpha, p)
        for e1 in range(ea + 1, ea + 4):
            if p**e1 - alpha - eta < 0:
                continue
            for e2 in range(e1, e1 + 3 if p == 2 else e1 + 2):
                n = lemma_nbwrm_count(e1, e2, p, eta, alpha)
                assert n == t_seq(e2 - e1, p, eta)
                # closed criterion (u + eta v) p^e1 <= p^e2 - p^e1
                span = p ** (e2 - e1)
                crit = sum(1 for u in range(span) for v in range(span)
                           if (u + eta * v) * p**e1 <= p**e2 - p**e1)
                assert crit == n
    assert lemma_nbwrm_count(2, 2, 3, 2, 3) == 1
    assert lemma_nbwrm_count(2, 3, 3, 2, 3) == 4


def test_block_points_shape():
    pts = block_points(3, 1, 0, 2, 2, 2)
    assert len(pts) == w_seq(3, 2, 2, 2)
    assert min(pts) == (8, 0)
    assert block_points(1, 0, 0, 2, 2, 2) == set()


def test_asymptotics():
    for p in (2, 3, 5):
        for eta in (1, 2, 3, 4):
            m = next(k for k in range(1, 20) if p**k >= 1000)
            T = t_seq(m, p, eta)
            assert abs(T / p ** (2 * m) - 1 / (2 * eta)) <= 0.01 / (2 * eta)
            for alpha in (2, 3, 5):
                assert abs(w_seq(m, p, eta, alpha) / T - 1) <= 0.02


def test_normalised_n_sums_decrease():
    for p in (2, 3, 5):
        for eta in (1, 2, 3, 4):
            ns = n_terms(12, p, eta)
            vals = [Fraction(sum(ns[:m + 1]), p ** (2 * m)) for m in range(13)]
            assert all(b < a for a, b in zip(vals[1:], vals[2:]))


def test_rates_increase_with_e():
    rates = [lift_dimension(2, e, 2, 2**e - 2) / 4**e for e in range(3, 11)]
    assert rates == sorted(rates) and len(set(rates)) == len(rates)


def test_table_rows():
    row = dim_row(2, 2, 8, c=4)
    assert (row["alpha"], row["k"], row["R"], row["n"]) == (16, 26335, "0.4018", 65536)
    assert row["lower_bound"] <= row["k"] and row["wrm_k"] < row["k"]
    assert dim_row(2, 2, 3, alpha=2)["R"] == "0.3906"
    assert dim_row(2, 4, 3, alpha=2)["R"] == "0.2500"
    text = rows_to_csv([row])
    assert text.splitlines()[0] == "p,eta,alpha,c,e,n,k,R,lower_bound,wrm_k"
    with pytest.raises(ValueError):
        dim_row(2, 2, 3, alpha=2, c=1)
    with pytest.raises(ValueError):
        dim_row(2, 2, 3, c=4)
