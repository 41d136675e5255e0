from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dnchain.dunkl import (
    APoly,
    Multiindex,
    Order,
    collocation_check,
    collocation_suite,
    commutes,
    dunkl_apply,
    ende,
    expansion_value,
    gauge_action,
    hprime_matrix,
    lambda_nu_k,
    order_compare,
    partial_sum_check,
    random_domain_point,
    truncation_set,
    verify_triangular,
)
from dnchain.errors import (
    DiagonalMismatch,
    NotSorted,
    ParityViolation,
    ToleranceExceeded,
    TriangularityViolation,
)


def terms(k, nu):
    return {mi.nu: c for mi, c in dunkl_apply(k, nu).items()}


def test_apoly_arithmetic():
    p = APoly.linear(1, 2)
    assert p * p == APoly((1, 4, 4))
    assert (p - p).is_zero()
    assert p(Fraction(1, 2)) == 2
    assert APoly((0, 0)) == APoly()


def test_multiindex():
    mi = Multiindex((2, -4, 0))
    assert mi.delta == 0 and mi.sorted_key == (4, 2, 0)
    assert Multiindex((1, -3, 5)).delta == 1
    with pytest.raises(ParityViolation):
        Multiindex((1, 0, 0))


def test_order_examples():
    assert order_compare((3, 1, 0), (2, -3, -1)) is Order.LESS
    assert order_compare((2, -3, -1), (1, 3, -2)) is Order.EQUAL_KEY
    assert order_compare((0, 0, 0), (2, 0, 0)) is Order.LESS
    assert order_compare((2, 0, 0), (0, 0, 0)) is Order.GREATER


def test_apply_examples():
    assert terms(1, (0, 0, 0)) == {(0, 0, 0): APoly.linear(0, 4)}
    assert terms(1, (2, 0, 0)) == {(2, 0, 0): APoly.linear(-2, -4)}
    t = terms(2, (4, 0, 0))
    assert t[(2, -2, 0)] == APoly.linear(0, -2)
    assert all(order_compare(nu, (4, 0, 0)) is not Order.GREATER for nu in t)


def test_lambda_examples():
    assert lambda_nu_k((0, 0, 0, 0), 2) == APoly.linear(0, 4)
    assert lambda_nu_k((8, 6, 6, 2, 2, 2), 4) == APoly.const(-2)
    assert lambda_nu_k((2, 0, 0), 1) == APoly.linear(-2, -4)
    with pytest.raises(NotSorted):
        lambda_nu_k((0, 2, 0), 1)


def test_parity_enforced():
    with pytest.raises(ParityViolation):
        dunkl_apply(1, (1, 2, 0))


def test_hprime_diagonals():
    m = hprime_matrix(4, 0, 3)
    assert m.entry((0, 0, 0), (0, 0, 0)) == APoly((0, 0, 20))
    assert m.entry((2, 0, 0), (2, 0, 0)) == APoly((4, 16, 20))
    m1 = hprime_matrix(4, 1, 3)
    assert m1.entry((1, 1, 1), (1, 1, 1)) == (APoly.linear(1, 4) * APoly.linear(1, 4)
                                             + APoly.linear(1, 2) * APoly.linear(1, 2) + 1)


def test_ground_energy_formula():
    # (2/3) a^2 N (N-1) (2N-1)
    for N in (3, 4, 5):
        assert ende((0,) * N, N) == APoly((0, 0, Fraction(2, 3) * N * (N - 1) * (2 * N - 1)))


@pytest.mark.parametrize("N", [3, 4])
@pytest.mark.parametrize("delta", [0, 1])
def test_hprime_triangular(N, delta):
    m = hprime_matrix(4, delta, N)
    assert len(m.basis) == (5 if delta == 0 else 4) ** N
    assert all(v.degree() <= 2 for v in m.entries.values())


def test_triangularity_checker_catches_violations():
    m = hprime_matrix(2, 0, 3, check=False)
    bad = dict(m.entries)
    bad[((0, 0, 0), (2, 0, 0))] = APoly.const(1)
    m.entries = bad
    with pytest.raises(TriangularityViolation) as info:
        verify_triangular(m)
    assert info.value.row == (0, 0, 0)

    m = hprime_matrix(2, 0, 3, check=False)
    m.entries[((2, 0, 0), (0, 2, 0))] = APoly.const(1)
    with pytest.raises(TriangularityViolation):
        verify_triangular(m)

    m = hprime_matrix(2, 0, 3, check=False)
    m.entries[((2, 0, 0), (2, 0, 0))] = APoly.const(1)
    with pytest.raises(DiagonalMismatch):
        verify_triangular(m)


def test_truncation_order_refines_key_order():
    basis = truncation_set(3, 0, 4)
    keys = [tuple(sorted(map(abs, b), reverse=True)) for b in basis]
    assert keys == sorted(keys)


@pytest.mark.parametrize("nu", [(2, 0, 0), (0, 2, 0), (-2, 0, 0), (3, 1, -1), (4, -2, 2, 0)])
def test_collocation(nu):
    for k in range(1, len(nu) + 1):
        assert collocation_check(k, nu, trials=20, seed=k) < 1e-9


def test_collocation_detects_a_wrong_coefficient():
    rng = np.random.default_rng(0)
    a = Fraction(3, 2)
    t = dunkl_apply(1, (2, 0, 0))
    wrong = {mi: c + APoly.linear(0, 1) for mi, c in t.items()}
    x = random_domain_point(3, rng)
    assert abs(gauge_action(1, (2, 0, 0), x, 1.5) - expansion_value(wrong, x, a)) > 0.1


def test_collocation_raises_above_tolerance():
    with pytest.raises(ToleranceExceeded):
        collocation_check(1, (2, 0, 0), trials=3, tol=0.0)


@pytest.mark.parametrize("N", [3, 4])
def test_collocation_suite(N):
    err, records = collocation_suite(N, 50, seed=N)
    assert err < 1e-8
    assert any(list(r[1]) != sorted(r[1], reverse=True) for r in records)
    assert any(min(r[1]) < 0 for r in records)
    assert all(Fraction(1, 2) <= r[2] <= 5 for r in records)


def test_partial_sums():
    assert partial_sum_check((8, 6, 6, 2, 2, 2))
    assert partial_sum_check((4, 4, 4, 0))


def test_commutativity_is_informational():
    assert isinstance(commutes(1, 2, (2, 0, 0)), bool)


nonneg_sorted = st.lists(st.integers(0, 4), min_size=3, max_size=5).map(
    lambda v: tuple(sorted((2 * x for x in v), reverse=True)))


@settings(max_examples=60, deadline=None)
@given(nu=nonneg_sorted, data=st.data())
def test_diagonal_matches_closed_form_on_sorted_cone(nu, data):
    k = data.draw(st.integers(1, len(nu)))
    t = terms(k, nu)
    assert t.get(nu, APoly()) == lambda_nu_k(nu, k)
    for other in t:
        if other != nu:
            assert order_compare(other, nu) is Order.LESS
            assert all((a - b) % 2 == 0 for a, b in zip(other, nu))
    assert partial_sum_check(nu)


@settings(max_examples=60, deadline=None)
@given(nu=st.lists(st.integers(-3, 3), min_size=3, max_size=4), delta=st.integers(0, 1),
       data=st.data())
def test_support_never_raises_the_key(nu, delta, data):
    nu = tuple(2 * v + delta for v in nu)
    k = data.draw(st.integers(1, len(nu)))
    for other in terms(k, nu):
        assert order_compare(other, nu) is not Order.GREATER
        assert max(map(abs, other)) <= max(map(abs, nu))
