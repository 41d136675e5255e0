"""Dense symmetric eigenvalues and integer spectra as q-polynomials."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, IterationLimit, NegativeEnergy, NonIntegerSpectrum
from .qpoly import QPolynomial

MAX_SWEEPS = 50
INT_TOL = 1e-6


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray
    dim: int
    vectors: np.ndarray | None = None

    def __len__(self):
        return self.dim


def tridiagonalize(a, want_q=False):
    """Householder reduction of a symmetric matrix.

    Returns ``(d, e, q)`` with ``d`` the diagonal, ``e`` the sub-diagonal and
    ``q`` (or None) the orthogonal matrix with ``q.T @ a @ q`` tridiagonal.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    q = np.eye(n) if want_q else None
    e = np.zeros(max(n - 1, 0))
    for k in range(n - 2):
        x = a[k + 1:, k]
        norm = np.linalg.norm(x)
        if norm == 0.0:
            e[k] = 0.0
            continue
        alpha = -math.copysign(norm, x[0])
        v = x.copy()
        v[0] -= alpha
        vn = np.linalg.norm(v)
        if vn == 0.0:
            e[k] = x[0]
            continue
        v /= vn
        sub = a[k + 1:, k + 1:]
        p = sub @ v
        w = p - (v @ p) * v
        sub -= 2.0 * (np.outer(v, w) + np.outer(w, v))
        e[k] = alpha
        if want_q:
            qs = q[:, k + 1:]
            qs -= 2.0 * np.outer(qs @ v, v)
    if n >= 2:
        e[n - 2] = a[n - 1, n - 2]
    return np.diag(a).copy(), e, q


def tridiagonal_ql(d, e, z=None, max_sweeps=MAX_SWEEPS):
    """Implicit-shift QL on a symmetric tridiagonal matrix, in place.

    ``d`` holds the diagonal, ``e`` the sub-diagonal (length n-1). If ``z`` is
    given, its columns are rotated along to accumulate eigenvectors.
    """
    d = np.asarray(d, dtype=float)
    n = d.size
    ee = np.zeros(n)
    ee[: n - 1] = e
    eps = np.finfo(float).eps
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(ee[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise IterationLimit(f"eigenvalue {l} not converged after {max_sweeps} sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * ee[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + ee[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * ee[i]
                b = c * ee[i]
                r = math.hypot(f, g)
                ee[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    ee[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if z is not None:
                    zi, zi1 = z[:, i].copy(), z[:, i + 1].copy()
                    z[:, i + 1] = s * zi + c * zi1
                    z[:, i] = c * zi - s * zi1
                i -= 1
            if underflow:
                continue
            d[l] -= p
            ee[l] = g
            ee[m] = 0.0
    return d


def sym_eigenvalues(matrix, tol: float = 1e-9, vectors: bool = False) -> Spectrum:
    """All eigenvalues of a symmetric matrix, ascending.

    Householder tridiagonalization followed by implicit QL. With
    ``vectors=True`` the eigenvectors are accumulated as well and the backward
    error ``|A v - lambda v| <= tol * |A|`` is checked for every pair.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidParams(f"expected a square matrix, got shape {a.shape}")
    if not tol > 0:
        raise InvalidParams("tol must be positive")
    n = a.shape[0]
    if n == 0:
        return Spectrum(values=np.zeros(0), dim=0)
    d, e, q = tridiagonalize(a, want_q=vectors)
    d = tridiagonal_ql(d, e, q)
    order = np.argsort(d, kind="stable")
    values = d[order]
    if not vectors:
        return Spectrum(values=values, dim=n)
    vecs = q[:, order]
    err = backward_error(a, values, vecs)
    scale = max(np.linalg.norm(a, 2), np.finfo(float).tiny)
    if err > tol * scale:
        raise IterationLimit(f"backward error {err:.3e} exceeds {tol:.1e} * |A|")
    return Spectrum(values=values, dim=n, vectors=vecs)


def backward_error(a, values, vectors) -> float:
    """max_j |A v_j - lambda_j v_j| over the given eigenpairs."""
    res = np.asarray(a) @ vectors - vectors * values[None, :]
    return float(np.max(np.linalg.norm(res, axis=0))) if values.size else 0.0


def spectral_qpoly(spec: Spectrum, int_tol: float = INT_TOL) -> QPolynomial:
    """sum_j q**E_j for an integer spectrum."""
    if not 0 < int_tol < 0.5:
        raise InvalidParams("int_tol must lie in (0, 0.5)")
    values = np.asarray(spec.values, dtype=float)
    rounded = np.rint(values)
    dist = np.abs(values - rounded)
    if dist.size and dist.max() > int_tol:
        worst = int(np.argmax(dist))
        raise NonIntegerSpectrum(float(values[worst]), worst, float(dist[worst]))
    if rounded.size and rounded.min() < 0:
        raise NegativeEnergy(f"rounded energy {int(rounded.min())} is negative")
    exps, counts = np.unique(rounded.astype(np.int64), return_counts=True)
    return QPolynomial({int(k): int(c) for k, c in zip(exps, counts)})
