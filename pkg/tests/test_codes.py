import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wlift.bounds import w_seq
from wlift.codes import (DegreeSet, MonomialCode, WRM, encode, membership, systematic_encode,
                         systematic_info_set, unencode, wrm_code, wrm_degree_set, wrm_dimension)
from wlift.gf import Field
from wlift.poly import BiPoly, EtaLine, ev_full, restrict_to_line


def test_wrm_degree_set_examples(fields):
    assert wrm_degree_set(fields[4], 2, 2).pairs() == [(0, 0), (0, 1), (1, 0), (2, 0)]
    assert wrm_degree_set(fields[8], 1, 0).pairs() == [(0, 0)]
    ds = wrm_degree_set(fields[8], 2, 4)
    assert len(ds) == 9
    assert [int(ds.bits[:, j].sum()) for j in range(3)] == [5, 3, 1]
    with pytest.raises(ValueError):
        wrm_degree_set(fields[8], 2, 8)


def test_dimension_formula_matches_w_sequence():
    for p in (2, 3, 5, 7):
        for m in range(1, 5):
            q = p**m
            if q > 81:
                continue
            for eta in range(1, 5):
                for d in range(q):
                    n = len(wrm_degree_set(q, eta, d))
                    assert n == wrm_dimension(q, eta, d)
                for alpha in range(1, q + 1):
                    d = q - alpha - eta
                    expect = len(wrm_degree_set(q, eta, d)) if d >= 0 else 0
                    assert w_seq(m, p, eta, alpha) == expect


def test_encode_examples(fields):
    F = fields[8]
    C = wrm_code(F, 2, 4)
    assert not encode(C, np.zeros(C.dim, dtype=int)).any()
    unit = np.zeros(C.dim, dtype=int)
    unit[C.basis.index((0, 0))] = 1
    assert encode(C, unit).tolist() == [1] * 64
    with pytest.raises(ValueError):
        encode(C, [1, 2])


@pytest.mark.parametrize("q,eta,d", [(8, 2, 4), (8, 1, 6), (9, 2, 7), (16, 3, 14)])
def test_unencode_round_trip(fields, q, eta, d):
    F = fields[q]
    C = wrm_code(F, eta, d)
    rng = np.random.default_rng(0)
    for _ in range(10):
        m = rng.integers(0, q, size=C.dim)
        assert np.array_equal(unencode(C, encode(C, m)), m)


def test_encode_is_sum_of_monomial_evaluations(fields):
    F = fields[9]
    C = wrm_code(F, 2, 6)
    rng = np.random.default_rng(3)
    m = rng.integers(0, 9, size=C.dim)
    f = BiPoly({ij: int(c) for ij, c in zip(C.basis, m)})
    assert np.array_equal(encode(C, m), ev_full(f, F))


def test_systematic_q4_exhaustive(fields):
    F = fields[4]
    C = wrm_code(F, 2, 2)
    info = systematic_info_set(C)
    assert len(info) == C.dim == 4
    for db in itertools.product(range(4), repeat=4):
        c = systematic_encode(C, db)
        assert [int(c[x * 4 + y]) for x, y in info] == list(db)
        assert membership(C, c)


def test_systematic_full_space(fields):
    F = fields[4]
    C = MonomialCode(F, 1, 3, WRM, DegreeSet(4, np.ones((4, 4), dtype=bool)))
    assert sorted(systematic_info_set(C)) == [(x, y) for x in range(4) for y in range(4)]


@pytest.mark.parametrize("q,eta,d", [(8, 2, 5), (9, 1, 5), (16, 2, 11)])
def test_systematic_generator_rows(fields, q, eta, d):
    F = fields[q]
    C = wrm_code(F, eta, d)
    assert len(systematic_info_set(C)) == C.dim
    for k in range(C.dim):
        unit = np.zeros(C.dim, dtype=int)
        unit[k] = 1
        c = systematic_encode(C, unit)
        assert np.array_equal(c, C.systematic_generator[k])
        assert membership(C, c)
        assert c[C.info_set_indices].tolist() == unit.tolist()
    assert not systematic_encode(C, np.zeros(C.dim, dtype=int)).any()


def test_membership_examples(fields):
    F4 = fields[4]
    C4 = wrm_code(F4, 2, 2)
    assert not membership(C4, ev_full(BiPoly.monomial(0, 2), F4))
    F8 = fields[8]
    C8 = wrm_code(F8, 2, 5)
    rng = np.random.default_rng(9)
    for _ in range(20):
        c = encode(C8, rng.integers(0, 8, size=C8.dim))
        assert membership(C8, c)
        c[int(rng.integers(64))] ^= 1
        assert not membership(C8, c)


def test_zero_code_for_negative_degree(fields):
    C = wrm_code(fields[8], 2, -1)
    assert C.dim == 0
    assert not encode(C, []).any()


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
@pytest.mark.parametrize("eta", [1, 2])
def test_restriction_property_exhaustive(fields, q, eta):
    F = fields[q]
    lines = [EtaLine(eta, c) for c in itertools.product(range(q), repeat=eta + 1)]
    for d in range(q):
        for i, j in wrm_degree_set(F, eta, d):
            f = BiPoly.monomial(i, j)
            assert all(restrict_to_line(f, L, F).degree <= d for L in lines)


def test_rate_bounded_by_one_over_two_eta():
    for eta in (1, 2, 3):
        rates = [wrm_dimension(q, eta, q - 2) / q**2 for q in (64, 256, 1024, 4096)]
        assert all(r <= 1 / (2 * eta) + 2 / q for r, q in zip(rates, (64, 256, 1024, 4096)))
        assert abs(rates[-1] - 1 / (2 * eta)) < 1e-3


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([4, 8, 9]), st.integers(1, 3), st.data())
def test_codes_are_linear(fields, q, eta, data):
    F = fields[q]
    d = data.draw(st.integers(0, q - 1))
    C = wrm_code(F, eta, d)
    vec = st.lists(st.integers(0, q - 1), min_size=C.dim, max_size=C.dim)
    a, b = np.array(data.draw(vec), dtype=int), np.array(data.draw(vec), dtype=int)
    assert np.array_equal(encode(C, F.vadd(a, b)), F.vadd(encode(C, a), encode(C, b)))
    assert membership(C, F.vadd(encode(C, a), systematic_encode(C, b)))


def test_degree_set_container():
    ds = DegreeSet.from_pairs(4, [(1, 2), (0, 0)])
    assert list(ds) == [(0, 0), (1, 2)]
    assert (1, 2) in ds and (2, 1) not in ds and (5, 0) not in ds
    assert ds <= wrm_degree_set(Field(2, 2), 1, 3)
    with pytest.raises(ValueError):
        DegreeSet(4, np.zeros((3, 3)))
