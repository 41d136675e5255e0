"""Jacobi polynomials: evaluation, derivatives and guaranteed root isolation.

Roots are isolated by sign scanning on a Chebyshev grid (refined until all
``n`` sign changes are seen), then polished with Newton steps that fall back
to bisection whenever a step would leave the current bracket. A last few
Newton steps on the electrostatic equilibrium system satisfied by the zeros
remove the digits the recurrence loses next to the endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DuplicateRoots, InvalidParams, NonConvergence

RESIDUAL_TOL = 1e-12
NEWTON_STEP_TOL = 1e-15
DUPLICATE_TOL = 1e-14
MAX_SCAN_POINTS = 1 << 20


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float
    degree: int

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise InvalidParams(f"need alpha, beta > -1, got {self.alpha}, {self.beta}")
        if int(self.degree) != self.degree or self.degree < 0:
            raise InvalidParams(f"degree must be a nonnegative integer, got {self.degree}")


@dataclass(frozen=True)
class RootSet:
    """Zeros of a Jacobi polynomial, ascending, with the electrostatic residual."""

    roots: np.ndarray
    residual: float

    def __len__(self):
        return len(self.roots)


def jacobi_eval(params: JacobiParams, t):
    """Return ``(P_n(t), P_n'(t))`` by the three-term recurrence.

    ``t`` may be a scalar or an array; the derivative is carried through the
    differentiated recurrence so both values come out of the same sweep.
    """
    a, b, n = float(params.alpha), float(params.beta), int(params.degree)
    t = np.asarray(t, dtype=float)
    p_prev = np.ones_like(t)
    d_prev = np.zeros_like(t)
    if n == 0:
        return _scalar(p_prev), _scalar(d_prev)
    p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * t
    d = np.full_like(t, 0.5 * (a + b + 2.0))
    for k in range(2, n + 1):
        s = 2.0 * k + a + b
        c0 = 2.0 * k * (k + a + b) * (s - 2.0)
        c1 = (s - 1.0) * (s * (s - 2.0))
        c1c = (s - 1.0) * (a * a - b * b)
        c2 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
        lin = c1 * t + c1c
        p_next = (lin * p - c2 * p_prev) / c0
        d_next = (lin * d + c1 * p - c2 * d_prev) / c0
        p_prev, p = p, p_next
        d_prev, d = d, d_next
    return _scalar(p), _scalar(d)


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def jacobi_roots(params: JacobiParams, residual_tol: float = RESIDUAL_TOL) -> RootSet:
    n = int(params.degree)
    if n < 1:
        raise InvalidParams("degree must be at least 1 to have roots")

    brackets = _isolate(params)
    roots = np.array([_polish(params, lo, hi) for lo, hi in brackets])
    roots, residual = _refine_on_system(roots, params.alpha, params.beta)
    if params.alpha == params.beta:
        # the root set of a symmetric Jacobi polynomial is exactly odd
        roots = 0.5 * (roots - roots[::-1])
        residual = _electrostatic_residual(roots, params.alpha, params.beta)

    if not residual <= residual_tol:
        raise NonConvergence(
            f"electrostatic residual {residual:.3e} exceeds {residual_tol:.1e} "
            f"for P_{n}^({params.alpha},{params.beta})"
        )
    return RootSet(roots=roots, residual=residual)


def _isolate(params):
    n = int(params.degree)
    m = max(64, 8 * n)
    while m <= MAX_SCAN_POINTS:
        # Chebyshev-Lobatto interior points cluster where the roots do
        grid = -np.cos(np.pi * (np.arange(1, m) / m))
        vals, _ = jacobi_eval(params, grid)
        sign = np.sign(vals)
        exact = np.flatnonzero(sign == 0)
        if exact.size:
            # nudge exact zeros so they sit strictly inside a bracket
            grid = np.delete(grid, exact)
            vals = np.delete(vals, exact)
            sign = np.sign(vals)
        change = np.flatnonzero(sign[:-1] != sign[1:])
        if change.size == n:
            return [(grid[i], grid[i + 1]) for i in change]
        m *= 2
    raise NonConvergence(f"could not bracket all {n} roots of P_{n}^({params.alpha},{params.beta})")


def _polish(params, lo, hi, max_iter=200):
    f_lo, _ = jacobi_eval(params, lo)
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        f, df = jacobi_eval(params, x)
        if f == 0.0:
            return x
        if np.sign(f) == np.sign(f_lo):
            lo, f_lo = x, f
        else:
            hi = x
        step = f / df if df != 0.0 else np.inf
        x_new = x - step
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
            step = x - x_new
        if abs(step) < NEWTON_STEP_TOL or x_new == x:
            return x_new
        x = x_new
        if hi - lo <= 4 * np.finfo(float).eps * max(1.0, abs(x)):
            return x
    raise NonConvergence(f"Newton/bisection did not converge in [{lo}, {hi}]")


def _refine_on_system(z, alpha, beta, max_iter=8):
    # The recurrence loses digits next to t = +-1 when alpha or beta is close
    # to -1; the equilibrium system stays well conditioned there, so a few
    # full Newton steps on it recover the last digits.
    best = _electrostatic_residual(z, alpha, beta)
    if z.size < 1:
        return z, best
    c = alpha + beta + 2.0
    for _ in range(max_iter):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        inv = 1.0 / diff
        inv2 = inv * inv
        s = inv.sum(axis=1)
        w = 2.0 * (1.0 - z * z)
        f = w * s - (alpha - beta) - c * z
        jac = w[:, None] * inv2
        np.fill_diagonal(jac, -4.0 * z * s - w * inv2.sum(axis=1) - c)
        try:
            step = np.linalg.solve(jac, f)
        except np.linalg.LinAlgError:
            break
        trial = z - step
        if np.any(np.abs(trial) >= 1.0) or np.any(np.diff(trial) <= 0):
            break
        res = _electrostatic_residual(trial, alpha, beta)
        if not res < best:
            break
        z, best = trial, res
    return z, best


def _electrostatic_residual(roots, alpha, beta):
    # zeros of P^(alpha,beta) satisfy
    # 2 (1 - z_i^2) sum_j 1/(z_i - z_j) = (alpha - beta) + (alpha + beta + 2) z_i
    z = np.asarray(roots, dtype=float)
    if z.size == 0:
        return 0.0
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, np.inf)
    if np.any(np.abs(diff) < DUPLICATE_TOL):
        raise DuplicateRoots("two roots are closer than 1e-14")
    lhs = 2.0 * (1.0 - z * z) * np.sum(1.0 / diff, axis=1)
    rhs = (alpha - beta) + (alpha + beta + 2.0) * z
    return float(np.max(np.abs(lhs - rhs)))


def jacobi_system_residual(roots, beta: float, beta_prime: float) -> float:
    """Max violation of the equilibrium system for the zeros of P^(beta-1, beta'-1).

    ``roots`` may be a :class:`RootSet` or any sequence of distinct reals.
    """
    z = roots.roots if isinstance(roots, RootSet) else roots
    return _electrostatic_residual(z, beta - 1.0, beta_prime - 1.0)
