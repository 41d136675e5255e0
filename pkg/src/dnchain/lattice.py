"""Lattice sites of the D_N and BC_N Haldane-Shastry chains.

Sites are stored in ascending angle order, so the companion variables
``xi = cos(2 theta)`` come out descending.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, SingularConfiguration
from .orthopoly import JacobiParams, jacobi_roots, jacobi_system_residual


@dataclass(frozen=True)
class DnSites:
    N: int
    theta: np.ndarray
    xi: np.ndarray
    residual: float


@dataclass(frozen=True)
class BcSites:
    N: int
    beta: float
    beta_prime: float
    theta: np.ndarray
    zeta: np.ndarray
    residual: float


def dn_sites(N: int) -> DnSites:
    """Equilibrium sites of the D_N chain.

    The two end sites are pinned at 0 and pi/2; the interior ones are
    ``arccos(xi)/2`` with ``xi`` the zeros of P_{N-2}^{(1,1)}.
    """
    if N < 3:
        raise InvalidParams(f"the D_N chain needs N >= 3, got {N}")
    interior = jacobi_roots(JacobiParams(1.0, 1.0, N - 2)).roots[::-1]
    xi = np.concatenate(([1.0], interior, [-1.0]))
    theta = 0.5 * np.arccos(interior)
    theta = np.concatenate(([0.0], theta, [0.5 * np.pi]))
    return DnSites(N=N, theta=theta, xi=xi, residual=equilibrium_residual(theta))


def bc_sites(N: int, beta: float, beta_prime: float) -> BcSites:
    if N < 1:
        raise InvalidParams(f"N must be positive, got {N}")
    if not (beta > 0 and beta_prime > 0):
        raise InvalidParams(f"beta and beta' must be positive, got {beta}, {beta_prime}")
    roots = jacobi_roots(JacobiParams(beta - 1.0, beta_prime - 1.0, N))
    zeta = roots.roots[::-1].copy()
    theta = 0.5 * np.arccos(zeta)
    return BcSites(
        N=N,
        beta=float(beta),
        beta_prime=float(beta_prime),
        theta=theta,
        zeta=zeta,
        residual=jacobi_system_residual(zeta, beta, beta_prime),
    )


def equilibrium_residual(theta) -> float:
    """Max over i of |sum_{j != i} cot(t_i - t_j) + cot(t_i + t_j)|.

    Each pair is evaluated through the combined form
    ``2 sin(2 t_i) / (cos 2t_j - cos 2t_i)``, which stays finite at the end
    sites t = 0 and t = pi/2 where the individual cotangents do not.
    """
    theta = np.asarray(theta, dtype=float)
    c = np.cos(2.0 * theta)
    s = np.sin(2.0 * theta)
    # sin(pi) is not exactly zero in floating point
    s[np.isclose(theta, 0.5 * np.pi, rtol=0, atol=1e-300)] = 0.0
    den = c[None, :] - c[:, None]
    np.fill_diagonal(den, np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = 2.0 * s[:, None] / den
    if not np.all(np.isfinite(terms)):
        raise SingularConfiguration("two sites share the same cos(2 theta)")
    return float(np.max(np.abs(terms.sum(axis=1)))) if theta.size else 0.0


def xi_system_residual(xi) -> float:
    """Residual of (1 - x_i^2) sum_{j != i} 1/(x_i - x_j) = 0 over all sites."""
    xi = np.asarray(xi, dtype=float)
    den = xi[:, None] - xi[None, :]
    np.fill_diagonal(den, np.inf)
    return float(np.max(np.abs((1.0 - xi * xi) * np.sum(1.0 / den, axis=1))))


def interior_xi_residual(xi) -> float:
    """Residual of (1 - x_i^2) sum 1/(x_i - x_j) = 2 x_i over the interior sites only."""
    inner = np.asarray(xi, dtype=float)[1:-1]
    if inner.size == 0:
        return 0.0
    den = inner[:, None] - inner[None, :]
    np.fill_diagonal(den, np.inf)
    lhs = (1.0 - inner * inner) * np.sum(1.0 / den, axis=1)
    return float(np.max(np.abs(lhs - 2.0 * inner)))
