"""The compiled and pure-Python kernels must agree exactly."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kneser_lab import kernels

py = kernels.python_backend
cy = kernels.compiled_backend
needs_compiled = pytest.mark.skipif(cy is None, reason="compiled extension not built")

matrices = st.sampled_from((2, 3, 5, 7)).flatmap(
    lambda p: st.integers(1, 10).flatmap(
        lambda n: st.tuples(
            st.just(p), st.just(n),
            st.lists(st.lists(st.integers(-p, 2 * p), min_size=n, max_size=n), max_size=8))))


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    if cy is not None:
        assert kernels.BACKEND == "cython"


@needs_compiled
@given(matrices)
def test_rref_agrees(m):
    p, n, rows = m
    assert cy.rref(rows, n, p) == py.rref(rows, n, p)


@needs_compiled
@given(matrices, st.integers(1, 5))
def test_products_and_powers_agree(m, k):
    p, n, rows = m
    basis, _ = py.rref(rows, n, p)
    assert cy.schur_span(basis, basis, n, p, True) == py.schur_span(basis, basis, n, p, True)
    assert cy.schur_span(basis, basis[::-1], n, p) == py.schur_span(basis, basis[::-1], n, p)
    assert cy.power_chain(basis, n, p, k) == py.power_chain(basis, n, p, k)


@needs_compiled
@given(matrices)
def test_binary_points_agree(m):
    p, n, rows = m
    basis, _ = py.rref(rows, n, p)
    assert cy.binary_points(basis, n, p) == py.binary_points(basis, n, p)
    assert cy.count_binary_points(basis, n, p) == py.count_binary_points(basis, n, p)


@needs_compiled
@pytest.mark.parametrize("p,n,k", [(2, 5, 2), (2, 6, 3), (3, 4, 3), (3, 4, 4), (5, 3, 5)])
def test_scan_block_agrees(p, n, k):
    from itertools import combinations

    for r in range(n + 1):
        for piv in combinations(range(n), r):
            assert cy.scan_block(p, n, piv, k, 1) == py.scan_block(p, n, piv, k, 1)


@needs_compiled
@pytest.mark.parametrize("n,ell", [(5, 2), (6, 3), (6, 2), (8, 4)])
def test_closure_dfs_agrees(n, ell):
    cands = tuple(m for m in range(1 << n) if m.bit_count() % ell == 0)
    for first in range(len(cands)):
        args = (n, ell, cands, first, 2, 10 ** 6, 4)
        assert cy.closure_dfs(*args) == py.closure_dfs(*args)


@needs_compiled
def test_closure_dfs_budget_agrees():
    n, ell = 6, 2
    cands = tuple(m for m in range(1 << n) if m.bit_count() % ell == 0)
    a = cy.closure_dfs(n, ell, cands, 0, 4, 50, 3)
    b = py.closure_dfs(n, ell, cands, 0, 4, 50, 3)
    assert a == b and not a["exhausted"]


@needs_compiled
def test_atom_sizes_agree():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 20)
        members = [rng.getrandbits(n) for _ in range(rng.randint(0, 6))]
        assert cy.atom_sizes(members, n) == py.atom_sizes(members, n)


def test_free_positions():
    assert py.free_positions(4, (0, 2)) == [(0, 1), (0, 3), (1, 3)]
    if cy is not None:
        assert cy.free_positions(4, (0, 2)) == py.free_positions(4, (0, 2))
