import io
import itertools
import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from kneser_lab.errors import FormatError, PreconditionError
from kneser_lab.families import (
    SetFamily,
    atom_in_power_check,
    atomic_structure_check,
    atoms,
    family_product_atoms_check,
    format_family,
    intersection_closure,
    is_kwise_divisible,
    parse_family,
    product_family,
    read_family,
    restrict,
    write_family,
)

from oracles import atoms_of, closure_products, kwise_ok
from strategies import families


def fam(*bits):
    return SetFamily.from_bitstrings(bits)


def as_sets(f):
    return [frozenset(s) for s in f.sets()]


def test_canonical_order_and_dedup():
    f = fam("0011", "1100", "0011", "0000")
    assert f.bitstrings() == ["0000", "0011", "1100"]
    assert SetFamily.from_sets([{0, 1}, {2, 3}], 4) == fam("1100", "0011")
    with pytest.raises(PreconditionError):
        SetFamily(3, (8,))


def test_atoms_examples():
    assert atoms(fam("1100", "0011", "1111")).atoms == ((0, 1), (2, 3))
    assert atoms(fam("1110", "0111")).atoms == ((0,), (1, 2), (3,))
    assert atoms(fam("0000")).atoms == ()
    assert atoms(fam("111000", "000111", "111111", "000000")).sizes == [3, 3]


def test_product_family_examples():
    f = fam("1100", "0110")
    assert product_family(f, 1) == f
    assert product_family(f, 2).bitstrings() == ["0100", "0110", "1100"]
    atomic = fam("0000", "1100", "0011", "1111")
    assert all(product_family(atomic, k) == atomic for k in range(1, 6))
    with pytest.raises(PreconditionError):
        product_family(f, 0)


def test_divisibility_examples():
    atomic = fam("000000", "111000", "000111", "111111")
    assert all(is_kwise_divisible(atomic, k, 3).passed for k in (1, 2, 5, 36))
    rep = is_kwise_divisible(fam("1100", "0110"), 2, 2)
    assert not rep.passed
    assert rep.witness["members"] == ["0110", "1100"] and rep.witness["cardinality"] == 1
    one = is_kwise_divisible(fam("1110"), 3, 2)
    assert not one.passed and len(one.witness["members"]) == 3


def test_restrict_examples():
    f = fam("1100", "0011", "1010")
    assert restrict(f, range(4)) == f
    assert restrict(f, []) == SetFamily(0, (0,))
    assert restrict(fam("1100", "0011"), [0, 1]).bitstrings() == ["00", "11"]


def test_atomic_structure_examples():
    assert atomic_structure_check(fam("000000", "111000", "000111", "111111"), 3).passed
    rep = atomic_structure_check(fam("1100", "0011"), 3)
    assert not rep.passed and rep.details["atom_sizes"] == [2, 2]


def test_product_atoms_examples():
    f = fam("1110", "0111")
    assert product_family(f, 2).bitstrings() == ["0110", "0111", "1110"]
    assert family_product_atoms_check(f, 2).passed
    rep = atom_in_power_check(f)
    assert rep.passed and [1, 2] in rep.details["atoms_found"]


def test_family_text_round_trip():
    f = fam("0101", "1100")
    text = format_family(f)
    assert text == "4\n0101\n1100\n"
    assert parse_family(text) == f
    assert parse_family('{"n": 4, "members": ["1100", "0101"]}') == f
    buf = io.StringIO()
    write_family(f, buf)
    assert read_family(io.StringIO(buf.getvalue())) == f


@pytest.mark.parametrize("text", ["", "x\n01", "3\n0101", "2\n02", '{"n": 2}', "2 3\n01"])
def test_family_format_errors(text):
    with pytest.raises(FormatError):
        parse_family(text)


@given(families())
def test_atoms_match_oracle_and_partition(f):
    sets = as_sets(f)
    part = atoms(f)
    assert list(part.atoms) == atoms_of(sets, f.n)
    assert sorted(j for a in part.atoms for j in a) == list(f.support())
    assert len(f) <= 2 ** len(part)


@given(families(), st.randoms(use_true_random=False))
def test_atoms_invariant_under_extension_and_order(f, rng):
    members = list(f.members)
    rng.shuffle(members)
    g = SetFamily(f.n, tuple(members) + (0, f.support_mask()))
    assert atoms(g) == atoms(f)


@given(families(max_n=6, max_size=5), st.integers(1, 4))
def test_product_family_matches_oracle(f, k):
    got = set(as_sets(product_family(f, k)))
    assert got == closure_products(as_sets(f), k, f.n)


@given(families(max_n=6, max_size=5), st.integers(1, 4), st.integers(1, 4))
def test_divisibility_matches_oracle_and_is_monotone(f, k, ell):
    rep = is_kwise_divisible(f, k, ell)
    assert rep.passed == kwise_ok(as_sets(f), k, ell, f.n)
    if rep.passed:
        assert all(is_kwise_divisible(f, j, ell).passed for j in range(1, k))
    else:
        w = rep.witness
        inter = (1 << f.n) - 1
        for m in w["members"]:
            inter &= int(m, 2)
        assert len(w["members"]) == k and inter.bit_count() == w["cardinality"]
        assert w["cardinality"] % ell


@given(families(), st.data())
def test_restrict_shrinks(f, data):
    subset = data.draw(st.sets(st.integers(0, f.n - 1)))
    assert len(restrict(f, subset)) <= len(f)


@given(families(max_n=6), st.integers(1, 5))
def test_same_atoms_and_atom_in_power(f, r):
    assume(f.support_mask())
    assert family_product_atoms_check(f, r).passed
    assert atom_in_power_check(f).passed


def _planted(rng, ell):
    """A family with a planted atom of size ell next to random noise."""
    n_rest = rng.randint(1, 5)
    n = ell + n_rest
    atom = ((1 << ell) - 1) << n_rest
    members = []
    for _ in range(rng.randint(1, 6)):
        m = rng.getrandbits(n_rest)
        if rng.random() < 0.5:
            m |= atom
        members.append(m)
    return SetFamily(n, tuple(members)), tuple(range(ell))


def test_divisibility_survives_removing_a_divisible_atom():
    rng = random.Random(11)
    checked = 0
    for _ in range(3000):
        ell, k = rng.randint(2, 3), rng.randint(1, 3)
        f, atom = _planted(rng, ell)
        if atom not in atoms(f).atoms or not is_kwise_divisible(f, k, ell).passed:
            continue
        rest = [j for j in range(f.n) if j not in atom]
        assert is_kwise_divisible(restrict(f, rest), k, ell).passed
        checked += 1
    assert checked > 50


def _all_full_support_families(n):
    subsets = range(1 << n)
    full = (1 << n) - 1
    for size in range(1, 1 << n):
        for members in itertools.combinations(subsets, size):
            support = 0
            for m in members:
                support |= m
            if support == full:
                yield SetFamily(n, members)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_large_k_forces_a_divisible_atom_exhaustive(n):
    for f in _all_full_support_families(n):
        for ell in (2, 3):
            if is_kwise_divisible(f, n, ell).passed:
                assert any(len(a) % ell == 0 for a in atoms(f).atoms)


@pytest.mark.parametrize("n,ell", [(4, 2), (6, 2), (6, 3)])
def test_large_k_forces_a_divisible_atom_closed_families(n, ell):
    # every intersection-closed l-divisible family on [n] comes out of the
    # closure of a family, so sampling closures covers the lemma's families
    rng = random.Random(n * 10 + ell)
    cands = [m for m in range(1 << n) if m.bit_count() % ell == 0]
    hits = 0
    for _ in range(400):
        f = SetFamily(n, tuple(rng.sample(cands, rng.randint(1, min(6, len(cands))))))
        if not f.is_full_support() or not is_kwise_divisible(f, n, ell).passed:
            continue
        hits += 1
        assert any(len(a) % ell == 0 for a in atoms(f).atoms)
        assert intersection_closure(f) == product_family(f, n)
    assert hits > 5
