"""su(m) spin permutation operators and the D_N / BC_N chain Hamiltonians.

Basis convention (frozen, golden files depend on it): a product state
``|s_1, ..., s_N>`` with ``s_i = d_i - (m - 1)/2`` is stored at packed index
``sum_i d_i * m**(N - i)``, i.e. the digit of site N varies fastest.
Sites are 1-based in the public API.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionTooLarge, IndexOutOfRange, InvalidParams, SingularCoefficient
from .lattice import BcSites, DnSites, bc_sites, dn_sites

MAX_DIM = 1 << 20
MAX_DENSE_DIM = 1 << 13
COEFF_GUARD = 1e-12


@dataclass(frozen=True)
class SpinConfig:
    m: int
    N: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidParams(f"local dimension m must be >= 1, got {self.m}")
        if self.N < 1:
            raise InvalidParams(f"number of sites must be >= 1, got {self.N}")
        if self.m ** self.N > MAX_DIM:
            raise DimensionTooLarge(f"m^N = {self.m ** self.N} exceeds {MAX_DIM}")

    @property
    def dim(self) -> int:
        return self.m ** self.N

    @cached_property
    def digits(self) -> np.ndarray:
        """(dim, N) array of basis digits, row ``k`` decoding packed index ``k``."""
        idx = np.arange(self.dim)
        out = np.empty((self.dim, self.N), dtype=np.int64)
        for col in range(self.N - 1, -1, -1):
            out[:, col] = idx % self.m
            idx = idx // self.m
        return out

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.m ** np.arange(self.N - 1, -1, -1, dtype=np.int64)

    def pack(self, digits) -> np.ndarray:
        return np.asarray(digits, dtype=np.int64) @ self._weights

    def spins(self, packed: int) -> tuple:
        """Spin values ``s_i`` (possibly half-integers) of a packed basis state."""
        M = (self.m - 1) / 2
        return tuple(float(d) - M for d in self.digits[packed])


@dataclass(frozen=True)
class Exchange:
    i: int
    j: int


@dataclass(frozen=True)
class Reversal:
    i: int


@dataclass(frozen=True)
class TwistedExchange:
    i: int
    j: int


def _check_sites(op, N):
    sites = (op.i,) if isinstance(op, Reversal) else (op.i, op.j)
    if any(not 1 <= s <= N for s in sites):
        raise IndexOutOfRange(f"{op} acts outside sites 1..{N}")
    if not isinstance(op, Reversal) and not op.i < op.j:
        raise IndexOutOfRange(f"{op} needs i < j")


def _act(op, digits, m):
    d = digits.copy()
    if isinstance(op, Reversal):
        d[..., op.i - 1] = m - 1 - d[..., op.i - 1]
        return d
    a, b = op.i - 1, op.j - 1
    d[..., [a, b]] = d[..., [b, a]]
    if isinstance(op, TwistedExchange):
        d[..., [a, b]] = m - 1 - d[..., [a, b]]
    return d


def apply_spin_op(op, state: int, config: SpinConfig) -> int:
    """Image of basis state ``state`` under an exchange, reversal or twisted exchange."""
    _check_sites(op, config.N)
    if not 0 <= state < config.dim:
        raise IndexOutOfRange(f"basis index {state} outside [0, {config.dim})")
    return int(config.pack(_act(op, config.digits[state], config.m)))


def permutation(op, config: SpinConfig) -> np.ndarray:
    """Vector ``p`` with ``op |k> = |p[k]>`` for every packed basis index."""
    _check_sites(op, config.N)
    return config.pack(_act(op, config.digits, config.m))


def operator_matrix(op, config: SpinConfig) -> np.ndarray:
    p = permutation(op, config)
    out = np.zeros((config.dim, config.dim))
    out[p, np.arange(config.dim)] = 1.0
    return out


def _pair_coefficient(angle):
    # 1/sin^2(x) written as 2/(1 - cos 2x)
    if abs(np.sin(angle)) < COEFF_GUARD:
        raise SingularCoefficient(f"sin({angle}) vanishes")
    return 2.0 / (1.0 - np.cos(2.0 * angle))


def _pair_part(theta, config):
    N, dim = config.N, config.dim
    if dim > MAX_DENSE_DIM:
        raise DimensionTooLarge(f"dense assembly limited to dim <= {MAX_DENSE_DIM}, got {dim}")
    H = np.zeros((dim, dim))
    diag = np.arange(dim)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            cm = _pair_coefficient(theta[i - 1] - theta[j - 1])
            cp = _pair_coefficient(theta[i - 1] + theta[j - 1])
            H[diag, diag] += 0.5 * (cm + cp)
            # each involution touches (k, p[k]) and (p[k], k) with the same value
            H[permutation(Exchange(i, j), config), diag] += 0.5 * cm
            H[permutation(TwistedExchange(i, j), config), diag] += 0.5 * cp
    return H


def build_dn_chain(sites: DnSites, config: SpinConfig) -> np.ndarray:
    """Dense Hamiltonian of the su(m) Haldane-Shastry chain of D_N type."""
    if sites.N != config.N:
        raise InvalidParams(f"sites for N={sites.N} but config has N={config.N}")
    return _pair_part(sites.theta, config)


def build_bc_chain(sites: BcSites, config: SpinConfig, epsilon: int) -> np.ndarray:
    """Dense Hamiltonian of the BC_N chain with chirality ``epsilon``."""
    if epsilon not in (1, -1):
        raise InvalidParams(f"epsilon must be +1 or -1, got {epsilon}")
    if sites.N != config.N:
        raise InvalidParams(f"sites for N={sites.N} but config has N={config.N}")
    H = _pair_part(sites.theta, config)
    diag = np.arange(config.dim)
    for i in range(1, config.N + 1):
        th = sites.theta[i - 1]
        if abs(np.sin(th)) < COEFF_GUARD or abs(np.cos(th)) < COEFF_GUARD:
            raise SingularCoefficient(f"boundary coefficient singular at theta={th}")
        c = 0.25 * (sites.beta / np.sin(th) ** 2 + sites.beta_prime / np.cos(th) ** 2)
        H[diag, diag] += c
        H[permutation(Reversal(i), config), diag] -= epsilon * c
    return H


def impurity_correction(config: SpinConfig, epsilon: int) -> np.ndarray:
    """The end-site term N(N-1)/2 * (1 - epsilon/2 (S_1 + S_N))."""
    N = config.N
    ends = operator_matrix(Reversal(1), config) + operator_matrix(Reversal(N), config)
    return 0.5 * N * (N - 1) * (np.eye(config.dim) - 0.5 * epsilon * ends)


def impurity_defect(N: int, config: SpinConfig, epsilon: int, t: float,
                    corrected: bool = True) -> float:
    """Max-abs entry of H_BC(beta = beta' = t) - H_D - impurity term.

    With ``corrected=False`` the impurity term is left out, which exposes the
    O(1) end-site contribution.
    """
    if not t > 0:
        raise InvalidParams(f"t must be positive, got {t}")
    if config.N != N:
        raise InvalidParams(f"config has N={config.N}, expected {N}")
    diff = build_bc_chain(bc_sites(N, t, t), config, epsilon) - build_dn_chain(dn_sites(N), config)
    if corrected:
        diff -= impurity_correction(config, epsilon)
    return float(np.max(np.abs(diff)))


def global_reversal(config: SpinConfig) -> np.ndarray:
    """Permutation vector of S_1 S_2 ... S_N."""
    return config.pack(config.m - 1 - config.digits)
