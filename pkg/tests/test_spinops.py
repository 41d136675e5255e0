import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dnchain.errors import DimensionTooLarge, IndexOutOfRange, InvalidParams, SingularCoefficient
from dnchain.lattice import bc_sites, dn_sites
from dnchain.spinops import (
    Exchange,
    Reversal,
    SpinConfig,
    TwistedExchange,
    _pair_coefficient,
    apply_spin_op,
    build_bc_chain,
    build_dn_chain,
    global_reversal,
    impurity_defect,
    operator_matrix,
    permutation,
)


def test_packing_puts_last_site_fastest():
    cfg = SpinConfig(3, 3)
    assert tuple(cfg.digits[5]) == (0, 1, 2)
    assert cfg.pack([0, 1, 2]) == 5
    assert cfg.spins(5) == (-1.0, 0.0, 1.0)


def test_half_integer_spins():
    assert SpinConfig(2, 2).spins(1) == (-0.5, 0.5)


def test_dimension_guard():
    with pytest.raises(DimensionTooLarge):
        SpinConfig(2, 21)
    with pytest.raises(InvalidParams):
        SpinConfig(0, 3)


def test_site_checks():
    cfg = SpinConfig(2, 3)
    with pytest.raises(IndexOutOfRange):
        apply_spin_op(Exchange(1, 4), 0, cfg)
    with pytest.raises(IndexOutOfRange):
        apply_spin_op(Exchange(2, 1), 0, cfg)
    with pytest.raises(IndexOutOfRange):
        apply_spin_op(Reversal(1), 8, cfg)


def test_elementary_actions():
    cfg = SpinConfig(3, 3)
    s = cfg.pack([0, 1, 2])
    assert apply_spin_op(Exchange(1, 3), s, cfg) == cfg.pack([2, 1, 0])
    assert apply_spin_op(Reversal(1), s, cfg) == cfg.pack([2, 1, 2])
    assert apply_spin_op(TwistedExchange(1, 2), s, cfg) == cfg.pack([1, 2, 2])


def _all_ops(N):
    for i, j in itertools.combinations(range(1, N + 1), 2):
        yield Exchange(i, j)
        yield TwistedExchange(i, j)
    for i in range(1, N + 1):
        yield Reversal(i)


@pytest.mark.parametrize("m,N", [(2, 3), (3, 3), (2, 4), (4, 2)])
def test_operators_are_involutive_permutations(m, N):
    cfg = SpinConfig(m, N)
    for op in _all_ops(N):
        p = permutation(op, cfg)
        assert sorted(p) == list(range(cfg.dim))
        np.testing.assert_array_equal(p[p], np.arange(cfg.dim))


def test_twisted_exchange_is_reversed_exchange():
    cfg = SpinConfig(3, 4)
    S = operator_matrix
    lhs = S(TwistedExchange(2, 4), cfg)
    rhs = S(Reversal(2), cfg) @ S(Reversal(4), cfg) @ S(Exchange(2, 4), cfg)
    np.testing.assert_array_equal(lhs, rhs)


def test_global_reversal():
    cfg = SpinConfig(3, 3)
    g = np.eye(cfg.dim)
    for i in range(1, 4):
        g = operator_matrix(Reversal(i), cfg) @ g
    p = global_reversal(cfg)
    np.testing.assert_array_equal(g[:, 0].nonzero()[0], [p[0]])


def test_singular_coefficient_guard():
    with pytest.raises(SingularCoefficient):
        _pair_coefficient(0.0)


def test_one_state_chain_energy():
    H = build_dn_chain(dn_sites(3), SpinConfig(1, 3))
    np.testing.assert_allclose(H, [[10.0]], atol=1e-12)


def test_trace_for_three_spin_halves():
    # each pair contributes (c- + c+)/2 per state; total trace 60
    H = build_dn_chain(dn_sites(3), SpinConfig(2, 3))
    assert np.trace(H) == pytest.approx(60.0, abs=1e-10)


def test_hamiltonian_symmetric_and_commutes_with_global_reversal():
    cfg = SpinConfig(3, 4)
    H = build_dn_chain(dn_sites(4), cfg)
    np.testing.assert_array_equal(H, H.T)
    p = global_reversal(cfg)
    np.testing.assert_allclose(H[np.ix_(p, p)], H, atol=1e-12)


def test_sites_mismatch_rejected():
    with pytest.raises(InvalidParams):
        build_dn_chain(dn_sites(4), SpinConfig(2, 3))
    with pytest.raises(InvalidParams):
        build_bc_chain(bc_sites(3, 1, 1), SpinConfig(2, 3), 0)


def test_bc_chain_is_symmetric():
    H = build_bc_chain(bc_sites(4, 0.5, 1.5), SpinConfig(2, 4), -1)
    np.testing.assert_array_equal(H, H.T)


@pytest.mark.parametrize("N", [3, 4])
@pytest.mark.parametrize("eps", [1, -1])
def test_impurity_term_is_the_limit(N, eps):
    cfg = SpinConfig(2, N)
    defects = [impurity_defect(N, cfg, eps, t) for t in (1e-4, 1e-6, 1e-8)]
    assert defects[0] > defects[1] > defects[2]
    assert defects[2] < 1e-3
    # the uncorrected difference keeps the O(1) end-site term
    assert impurity_defect(N, cfg, eps, 1e-6, corrected=False) > 1


def test_impurity_defect_scales_like_square_root():
    cfg = SpinConfig(2, 3)
    d = [impurity_defect(3, cfg, 1, t) for t in (1e-5, 1e-7)]
    assert d[0] / d[1] == pytest.approx(10.0, rel=0.05)


@settings(max_examples=25, deadline=None)
@given(m=st.integers(1, 4), N=st.integers(2, 4), data=st.data())
def test_apply_matches_permutation(m, N, data):
    cfg = SpinConfig(m, N)
    op = data.draw(st.sampled_from(list(_all_ops(N))))
    state = data.draw(st.integers(0, cfg.dim - 1))
    assert apply_spin_op(op, state, cfg) == permutation(op, cfg)[state]
