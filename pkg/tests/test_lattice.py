import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dnchain.errors import InvalidParams, SingularConfiguration
from dnchain.lattice import (
    bc_sites,
    dn_sites,
    equilibrium_residual,
    interior_xi_residual,
    xi_system_residual,
)


def test_three_sites():
    s = dn_sites(3)
    np.testing.assert_allclose(s.theta, [0, np.pi / 4, np.pi / 2], atol=1e-15)
    np.testing.assert_allclose(s.xi, [1, 0, -1], atol=1e-15)


def test_four_sites_from_p2_11():
    s = dn_sites(4)
    x = 1 / np.sqrt(5)
    np.testing.assert_allclose(s.xi, [1, x, -x, -1], atol=1e-15)
    np.testing.assert_allclose(s.theta[1:3], 0.5 * np.arccos([x, -x]), atol=1e-15)


def test_small_n_rejected():
    with pytest.raises(InvalidParams):
        dn_sites(2)


@pytest.mark.parametrize("N", range(3, 31))
def test_equilibrium_and_reflection(N):
    s = dn_sites(N)
    assert s.residual < 1e-12
    np.testing.assert_allclose(s.theta + s.theta[::-1], np.pi / 2, atol=1e-12)
    assert np.all(np.diff(s.theta) > 0)
    assert xi_system_residual(s.xi) < 1e-11
    assert interior_xi_residual(s.xi) < 1e-11


def test_residual_matches_cotangent_form_in_the_interior():
    s = dn_sites(6)
    th = s.theta
    i = 2
    direct = sum(1 / np.tan(th[i] - th[j]) + 1 / np.tan(th[i] + th[j]) for j in range(6) if j != i)
    assert abs(direct) < 1e-12


def test_perturbed_sites_have_large_residual():
    th = dn_sites(5).theta.copy()
    th[2] += 1e-3
    assert equilibrium_residual(th) > 1e-4


def test_coinciding_sites_are_singular():
    with pytest.raises(SingularConfiguration):
        equilibrium_residual(np.array([0.0, 0.3, 0.3, np.pi / 2]))


def test_bc_sites_rejects_nonpositive_parameters():
    with pytest.raises(InvalidParams):
        bc_sites(4, 0.0, 1.0)


@pytest.mark.parametrize("N", range(3, 9))
def test_endpoint_limit_ratio(N):
    beta = 1e-3
    z = bc_sites(N, beta, beta).zeta
    assert abs(2 * beta / (1 - z[0]) / (N * (N - 1)) - 1) < 0.06
    assert abs(2 * beta / (1 + z[-1]) / (N * (N - 1)) - 1) < 0.06


def test_bc_zeta_converges_linearly():
    # zeta -> xi with an error of order t
    N = 5
    xi = dn_sites(N).xi
    errs = [np.max(np.abs(bc_sites(N, t, t).zeta - xi)) for t in (1e-3, 1e-4)]
    assert errs[0] < 5e-3
    assert 8 < errs[0] / errs[1] < 12


def test_bc_theta_endpoint_follows_square_root_law():
    # so theta moves by O(sqrt t), not O(t), near the pinned end sites
    # 1 - zeta_1 ~ 2t / (N(N-1)) and 1 - cos 2 theta ~ 2 theta^2
    N = 3
    for t in (1e-3, 1e-4, 1e-5):
        th = bc_sites(N, t, t).theta[0]
        assert th == pytest.approx(np.sqrt(t / (N * (N - 1))), rel=0.05)


@settings(max_examples=30, deadline=None)
@given(N=st.integers(1, 10), b=st.floats(0.05, 5), bp=st.floats(0.05, 5))
def test_bc_sites_solve_their_system(N, b, bp):
    s = bc_sites(N, b, bp)
    assert s.residual < 1e-12
    assert np.all(np.diff(s.theta) > 0)
    assert np.all((s.theta > 0) & (s.theta < np.pi / 2))
