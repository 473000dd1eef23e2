from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqlrc import codes
from seqlrc.codes import (
    all_vectors,
    bch_design,
    column_subsets_independent,
    cyclotomic_cosets,
    dual_distance,
    make_BCH,
    make_D,
    make_P,
    make_R,
)
from seqlrc.errors import DistanceUnknown, ParameterViolation, RankDrop
from seqlrc.field import gf
from seqlrc.matrix import Matrix


def brute_distance(c) -> int:
    """Minimum nonzero weight, straight from all q^k messages."""
    msgs = all_vectors(c.q, c.k)[1:]
    words = c.field.matmul(msgs, c.generator.data)
    return int(np.count_nonzero(words, axis=1).min())


@pytest.mark.parametrize(
    "code,params",
    [
        (make_P(3), (4, 2, 3)),
        (make_P(5), (6, 2, 5)),
        (make_P(4), (5, 2, 4)),
        (make_D(3, 3), (3, 2, 2)),
        (make_D(5, 6), (6, 5, 2)),
        (make_R(5, 5, 2), (5, 2, 4)),
        (make_R(5, 5, 3), (5, 3, 3)),
        (make_R(5, 4, 2), (4, 2, 3)),
        (make_R(7, 7, 3), (7, 3, 5)),
        (make_BCH(3, 8, 4), (8, 4, 4)),
        (make_BCH(5, 8, 3), (8, 5, 3)),
    ],
)
def test_component_parameters(code, params):
    assert (code.n, code.k, code.min_distance().d) == params
    assert code.min_distance().d == brute_distance(code)
    assert code.min_distance().tag == "exact"


def test_printed_small_generators():
    assert make_P(3).generator.tolist() == [[1, 0, 1, 2], [0, 1, 1, 1]]
    assert make_D(3, 3).generator.tolist() == [[1, 0, 1], [0, 1, 1]]


def test_parity_check_annihilates_generator():
    for c in (make_P(5), make_BCH(3, 8, 4), make_R(7, 6, 4)):
        h = c.parity_check
        assert h.shape == (c.n - c.k, c.n)
        assert np.all(c.field.matmul(c.generator.data, h.data.T) == 0)


def test_dual_is_involution():
    for c in (make_P(3), make_D(5, 4), make_BCH(5, 8, 3)):
        assert c.dual().dual().same_code(c)
        assert c.dual().k == c.n - c.k


def test_dual_of_p3():
    d = make_P(3).dual()
    assert (d.n, d.k, d.min_distance().d) == (4, 2, 3)


def test_encode_and_contains():
    c = make_R(5, 5, 2)
    x = c.encode([3, 1])
    assert c.contains(x)
    y = x.copy()
    y[0] = (y[0] + 1) % 5
    assert not c.contains(y)
    assert sum(1 for _ in c.codewords()) == 25


def test_puncture_is_one_based():
    c = make_BCH(5, 8, 3)
    p = c.puncture([1])
    assert (p.n, p.k, p.min_distance().d) == (7, 5, 2)
    assert p.generator.tolist() == [row[1:] for row in c.generator.tolist()]
    last = c.puncture([8])
    assert last.generator.tolist() == [row[:-1] for row in c.generator.tolist()]
    with pytest.raises(ParameterViolation):
        c.puncture([0])
    with pytest.raises(ParameterViolation):
        c.puncture([9])
    with pytest.raises(RankDrop):
        make_R(5, 5, 2).puncture([1, 2, 3, 4])


def test_is_mds():
    assert make_P(3).is_mds()
    assert make_R(5, 5, 3).is_mds()
    assert not make_BCH(3, 8, 4).is_mds()
    with pytest.raises(DistanceUnknown):
        make_R(7, 7, 6).is_mds(budget=10)


def test_distance_budget_gives_lower_bound(monkeypatch):
    c = make_BCH(3, 8, 4)
    d = c.min_distance(budget=10)
    assert not d.exact and d.tag == "lower-bound" and d.d == 4
    monkeypatch.setenv("SLRC_BUDGET_OPS", "5")
    assert codes.distance_budget() == 5


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_reed_solomon_is_mds(q):
    for n in range(2, q + 1):
        for k in range(1, n + 1):
            c = make_R(q, n, k)
            assert c.min_distance().d == n - k + 1, (q, n, k)


def test_singleton_bound_on_random_codes():
    rng = np.random.default_rng(3)
    for q in (3, 5):
        for _ in range(30):
            k = int(rng.integers(1, 4))
            n = int(rng.integers(k + 1, 8))
            g = rng.integers(0, q, (k, n))
            try:
                c = codes.LinearCode(Matrix(gf(q), g))
            except ParameterViolation:
                continue
            if c.k == 0:
                continue
            assert c.min_distance().d <= c.n - c.k + 1


@pytest.mark.parametrize("code", [make_P(5), make_BCH(3, 8, 4), make_BCH(5, 8, 3), make_D(3, 5)])
def test_dual_distance_columns_independent(code):
    """Any d(dual) - 1 generator columns are independent; some d(dual) are not."""
    dd = dual_distance(code).d
    rng = np.random.default_rng(0)
    assert column_subsets_independent(code, dd - 1, 500, rng)
    g = code.generator
    assert any(g.columns(list(s)).rank() < dd for s in itertools.combinations(range(code.n), dd))


def test_bch_cosets_and_dimension():
    assert cyclotomic_cosets(3, 8, range(1, 4)) == [(1, 3), (2, 6)]
    assert cyclotomic_cosets(5, 8, range(1, 3)) == [(1, 5), (2,)]
    assert bch_design(3, 8, 4).k == 4
    assert bch_design(5, 8, 3).k == 5
    assert bch_design(3, 8, 4).extension_degree == 2


@pytest.mark.parametrize("q,n,d", [(3, 8, 2), (3, 8, 3), (3, 8, 4), (3, 8, 5), (5, 8, 3), (5, 6, 3),
                                   (5, 12, 4), (3, 13, 3), (3, 4, 3)])
def test_bch_distance_at_least_designed(q, n, d):
    c = make_BCH(q, n, d)
    assert c.min_distance().d >= d
    # cyclic: every shift of a codeword stays in the code
    x = c.encode(np.arange(1, c.k + 1) % q)
    assert c.contains(np.roll(x, 1))


def test_bch_rejects_bad_parameters():
    with pytest.raises(ParameterViolation):
        make_BCH(4, 5, 3)
    with pytest.raises(ParameterViolation):
        make_BCH(3, 9, 3)
    with pytest.raises(ParameterViolation):
        make_BCH(3, 8, 9)


def test_constructor_errors():
    with pytest.raises(ParameterViolation):
        make_R(5, 6, 2)
    with pytest.raises(ParameterViolation):
        make_D(3, 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.data())
def test_rs_puncture_keeps_mds(q, data):
    n = data.draw(st.integers(3, q))
    k = data.draw(st.integers(1, n - 2))
    pos = data.draw(st.integers(1, n))
    c = make_R(q, n, k).puncture([pos])
    assert c.min_distance().d == n - k
