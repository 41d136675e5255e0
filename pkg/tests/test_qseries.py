import random

import pytest
from hypothesis import given, settings, strategies as st

from dnchain.errors import InvalidMultiindex, InvalidParams
from dnchain.qpoly import QPolynomial
from dnchain.qseries import (
    Composition,
    binom,
    chain_partition,
    chain_partition_poly,
    chain_partition_rational,
    compositions,
    degeneracy_count,
    dyn_partition_series,
    enumerate_degeneracy,
    enumerate_scalar_series,
    enumerate_spectrum_series,
    freezing_consistency,
    k_exponents,
    m_epsilon,
    q_l,
    scalar_partition_series,
    scalar_product_series,
    total_degeneracy,
)

q = QPolynomial.monomial(1)


def test_compositions():
    assert [c.parts for c in compositions(3)] == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert [c.parts for c in compositions(1)] == [(1,)]
    assert len(compositions(5)) == 16
    assert [c.parts for c in compositions(0)] == [()]
    with pytest.raises(InvalidParams):
        Composition((2, 0))


def test_k_exponents():
    assert k_exponents(Composition((1, 1, 1)), 3) == ((4, 6, 6), ())
    assert k_exponents(Composition((3,)), 3) == ((6,), (4, 6))
    assert k_exponents(Composition((1, 1)), 3) == ((4, 6), ())


def test_binom_and_m_epsilon():
    assert binom(2, 3) == 0 and binom(5, 2) == 10 and binom(3, -1) == 0
    assert (m_epsilon(2, 1), m_epsilon(2, -1)) == (1, 1)
    assert (m_epsilon(3, 1), m_epsilon(3, -1)) == (2, 1)


def test_q_l_values():
    assert q_l(0, 5, 3) == QPolynomial.one()
    for N in (3, 5):
        for m in (1, 2, 4):
            assert q_l(1, N, m) == QPolynomial({0: m})
    assert q_l(2, 3, 2) == 1 + 3 * q ** 4


def test_chain_partition_values():
    assert chain_partition(3, 1) == q ** 10
    assert chain_partition(3, 2)(1) == 8
    # frozen from exact diagonalization of the N = 4, m = 2 chain
    assert chain_partition(4, 2) == 2 * q ** 16 + 4 * q ** 18 + 8 * q ** 22 + 2 * q ** 28


@pytest.mark.parametrize("N", range(3, 9))
@pytest.mark.parametrize("m", range(1, 6))
def test_closed_forms(N, m):
    poly = chain_partition_poly(N, m)
    assert poly == chain_partition_rational(N, m)
    assert poly(1) == m ** N
    assert all(c > 0 for _, c in poly.items())


def test_big_m_coefficients_are_exact():
    z = chain_partition(4, 25)
    assert z(1) == 25 ** 4
    z = chain_partition(5, 300)
    assert z(1) == 300 ** 5


def test_degeneracy_examples():
    assert degeneracy_count((0, 0, 0), 0, 1, 2) == 0
    assert degeneracy_count((0, 0, 0), 0, -1, 2) == 0
    assert degeneracy_count((1, 1, 0), 0, 1, 2) == 1
    assert degeneracy_count((1, 1, 0), 0, -1, 2) == 1
    assert total_degeneracy((1, 1, 0), 0, 2) == 2
    assert degeneracy_count((1, 0, 0), 1, 1, 2) == 2
    with pytest.raises(InvalidMultiindex):
        degeneracy_count((0, 1, 0), 0, 1, 2)


def test_degeneracy_random_cases():
    rng = random.Random(7)
    for _ in range(200):
        N = rng.randint(3, 6)
        m = rng.randint(1, 5)
        n = sorted((rng.randint(0, 3) for _ in range(N)), reverse=True)
        d, e = rng.randint(0, 1), rng.choice((1, -1))
        assert degeneracy_count(n, d, e, m) == enumerate_degeneracy(n, d, e, m)


@pytest.mark.parametrize("N", [3, 4])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_dyn_series_matches_enumeration(N, m):
    assert dyn_partition_series(N, m, 40) == enumerate_spectrum_series(N, m, 40)


def test_dyn_series_examples():
    assert dyn_partition_series(3, 2, 10).coeffs[0] == 0
    # with one spin state the chain is a single level, so the dynamical series
    # is the scalar one shifted by that level
    for N in (3, 4, 5):
        z = chain_partition(N, 1)
        assert len(z.items()) == 1
        assert dyn_partition_series(N, 1, 60) == z.to_series(60) * scalar_product_series(N, 60)


@pytest.mark.parametrize("N", [3, 4, 5])
def test_scalar_series(N):
    s = scalar_partition_series(N, 40)
    assert s == enumerate_scalar_series(N, 40)
    assert s.coeffs[0] == 1
    assert s.coeffs[N * (N - 1) // 2] >= 2


@pytest.mark.parametrize("N", [3, 4, 5, 6])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_freezing(N, m):
    rep = freezing_consistency(N, m)
    assert rep.ok
    assert rep.cutoff == chain_partition(N, m).degree() + 5


def test_freezing_longer_cutoff():
    assert freezing_consistency(3, 2, cutoff=40).ok


@settings(max_examples=50, deadline=None)
@given(N=st.integers(3, 6), m=st.integers(1, 5), data=st.data())
def test_degeneracy_property(N, m, data):
    n = sorted(data.draw(st.lists(st.integers(0, 3), min_size=N, max_size=N)), reverse=True)
    d = data.draw(st.integers(0, 1))
    e = data.draw(st.sampled_from((1, -1)))
    assert degeneracy_count(n, d, e, m) == enumerate_degeneracy(n, d, e, m)
    assert total_degeneracy(n, d, m) == enumerate_degeneracy(n, d, 1, m) + enumerate_degeneracy(n, d, -1, m)


@settings(max_examples=20, deadline=None)
@given(N=st.integers(3, 7), m=st.integers(1, 6))
def test_partition_invariants(N, m):
    z = chain_partition(N, m)
    assert sum(c for _, c in z.items()) == m ** N
    assert min(c for _, c in z.items()) > 0
