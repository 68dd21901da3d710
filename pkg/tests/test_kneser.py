import logging

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from kneser_lab.codes import (
    LinearCode,
    full_space,
    membership,
    ones_code,
    power,
    restrict_code,
    schur_product,
    zero_code,
)
from kneser_lab.errors import PreconditionError
from kneser_lab.field import PrimeField, star
from kneser_lab.kneser import (
    decompose,
    growth_check,
    kneser_chain_bound,
    kneser_check,
    reassemble,
    stab_chain_monotone,
    stabilizer,
    stabilizer_dim_on_support,
)

from oracles import codewords, stabilizer_words
from strategies import code_pairs, codes

F2, F3 = PrimeField(2), PrimeField(3)


def code(field, *rows):
    return LinearCode.from_rows(field, len(rows[0]), [[int(ch) for ch in r] for r in rows])


def test_stabilizer_examples():
    assert stabilizer(code(F2, "110", "011")) == ones_code(F2, 3)
    assert stabilizer(full_space(F3, 4)) == full_space(F3, 4)
    c = code(F2, "1100", "0011")
    assert stabilizer(c) == c


def test_decompose_examples():
    dec = decompose(code(F2, "1100", "0011"))
    assert dec.parts == ((0, 1), (2, 3))
    assert [comp.basis for comp in dec.components] == [((1, 1, 0, 0),), ((0, 0, 1, 1),)]
    assert dec.to_dict() == {"m": 2, "parts": [[0, 1], [2, 3]], "component_dims": [1, 1], "stab_dim": 2}
    c = code(F2, "110", "011")
    dec = decompose(c)
    assert dec.m == 1 and dec.parts == ((0, 1, 2),) and dec.components[0] == c
    dec = decompose(full_space(F3, 3))
    assert dec.m == 3 and dec.parts == ((0,), (1,), (2,)) and dec.component_dims == [1, 1, 1]


def test_decompose_errors():
    with pytest.raises(PreconditionError):
        decompose(zero_code(F2, 3))
    with pytest.raises(PreconditionError, match="restrict"):
        decompose(code(F2, "110"))


def test_kneser_examples():
    one = ones_code(F2, 4)
    rep = kneser_check(one, one)
    assert rep.passed and rep.details["dim_CD"] == 1 and rep.details["dim_St_CD"] == 1
    c = code(F2, "110", "011")
    rep = kneser_check(c, c)
    assert rep.passed and rep.details["dim_CD"] == 3 and rep.details["dim_St_CD"] == 3
    with pytest.raises(PreconditionError):
        kneser_check(zero_code(F2, 3), c)


def test_chain_bound_examples():
    c = code(F3, "1201", "0112")
    assert kneser_chain_bound(c, 1).passed
    rep = kneser_chain_bound(code(F2, "110", "011"), 2)
    assert rep.passed and not rep.hypothesis_met and rep.details["dim_St_Ck"] == 3


def test_growth_examples():
    rep = growth_check(ones_code(F3, 5), 4)
    assert rep.passed and rep.details["dim_W"] == 0 and rep.details["S"] == []
    atomic = code(F2, "110000", "001100", "000011")
    rep = growth_check(atomic, 3)
    assert rep.passed and rep.details["dims"] == [3, 3, 3] and rep.details["dim_W"] == 0
    with pytest.raises(PreconditionError):
        growth_check(code(F2, "110"), 2)


def test_violation_is_logged_not_raised(caplog, monkeypatch):
    import kneser_lab.kneser as mod

    monkeypatch.setattr(mod, "stabilizer", lambda c: zero_code(c.field, c.n))
    c = ones_code(F2, 3)
    with caplog.at_level(logging.CRITICAL):
        rep = mod.kneser_check(c, code(F2, "110", "011"))
    assert not rep.passed and rep.witness is not None
    assert any(r.levelno == logging.CRITICAL for r in caplog.records)


@given(codes(max_n=5))
def test_stabilizer_matches_oracle(c):
    assume(c.p ** c.n <= 3 ** 5)
    got = codewords(stabilizer(c).basis, c.n, c.p)
    assert got == stabilizer_words(c.basis, c.n, c.p)


@given(codes(max_n=9))
def test_stabilizer_is_subalgebra(c):
    st_ = stabilizer(c)
    rows = st_.rows()
    for x in rows:
        for y in rows:
            assert membership(st_, star(x, y))


@given(codes(max_n=9, nonzero=True, full_support=True))
def test_decompose_invariants(c):
    st_ = stabilizer(c)
    assert membership(st_, c.field.ones(c.n))
    dec = decompose(c)
    assert len(dec.parts) == st_.dim == dec.m
    assert sorted(j for part in dec.parts for j in part) == list(range(c.n))
    assert reassemble(dec) == c
    assert sum(dec.component_dims) == c.dim
    for part, comp in zip(dec.parts, dec.components):
        assert comp.support() == part
        assert membership(st_, c.field.indicator(c.n, part))
        assert all(membership(c, v) for v in comp.rows())


@given(code_pairs(max_n=10))
def test_kneser_property(pair):
    assert kneser_check(*pair).passed


@given(codes(p=3, max_n=10, nonzero=True), st.integers(1, 4))
def test_chain_bound_property(c, k):
    assert kneser_chain_bound(c, k).passed


@given(codes(max_n=10, nonzero=True, full_support=True), st.integers(1, 4))
def test_growth_property(v, t):
    assert growth_check(v, t).passed


@given(codes(max_n=8, nonzero=True), st.integers(1, 5))
def test_stabilizer_chain_monotone(c, t):
    assert stab_chain_monotone(c, t)


@given(st.sampled_from((2, 3, 5)), st.integers(2, 10), st.integers(1, 3), st.data())
def test_binary_generators_force_large_dimension(p, n, t, data):
    # >= 2 distinct nonzero binary generators and a trivial stabilizer of V^<t+1>
    # force dim V > t+1 and dim V^<t+1> > (t+1)^2
    rows = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=2, max_size=6))
    assume(len({tuple(r) for r in rows if any(r)}) >= 2)
    v = LinearCode.from_rows(PrimeField(p), n, rows)
    v = restrict_code(v, v.support())
    vt = power(v, t + 1)
    if stabilizer_dim_on_support(vt) == 1:
        assert v.dim > t + 1
        assert vt.dim > (t + 1) ** 2


def test_trivial_stabilizer_code_exists_for_chain_bound():
    # a concrete hypothesis-met instance: a generic 2-dim code of length 4 over F_5
    c = LinearCode.from_rows(PrimeField(5), 4, [[1, 1, 1, 1], [0, 1, 2, 3]])
    rep = kneser_chain_bound(c, 2)
    assert rep.hypothesis_met and rep.passed
    assert schur_product(c, c).dim == 3 == rep.details["bound"]


def test_binary_generator_lemma_on_hypothesis_met_instances():
    import random

    rng = random.Random(5)
    met = 0
    for _ in range(2000):
        p, n, t = rng.choice((2, 3, 5)), rng.randint(8, 12), rng.randint(1, 2)
        rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(rng.randint(3, 6))]
        if len({tuple(r) for r in rows if any(r)}) < 2:
            continue
        v = LinearCode.from_rows(PrimeField(p), n, rows)
        v = restrict_code(v, v.support())
        vt = power(v, t + 1)
        if stabilizer_dim_on_support(vt) == 1:
            met += 1
            assert v.dim > t + 1 and vt.dim > (t + 1) ** 2
    assert met >= 10
