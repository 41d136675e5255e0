"""Weyl alcove A, the extended domain C and coroot-lattice folding for the D_N root system.

C is the set 0 < |x_i +- x_j| < pi; A is its subset |x_1| < x_2 < ... < x_N < pi - x_{N-1}.
Lattice vectors are integer vectors t with even sum and stand for translation by pi*t.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidParams, IterationLimit, SingularInput

SINGULAR_TOL = 1e-12
ROUND_TRIP_TOL = 1e-13


class Region(enum.Enum):
    IN_ALCOVE = "InAlcove"
    IN_DOMAIN_C = "InDomainC"
    ON_SINGULAR_SET = "OnSingularSet"
    OUTSIDE = "Outside"


def _pairs(N):
    return np.triu_indices(N, 1)


def pair_sums(x) -> np.ndarray:
    """All x_i - x_j and x_i + x_j for i < j, along the last axis."""
    x = np.asarray(x, dtype=float)
    i, j = _pairs(x.shape[-1])
    return np.concatenate((x[..., i] - x[..., j], x[..., i] + x[..., j]), axis=-1)


def _dist_to_pi_z(s):
    return np.abs(s - np.pi * np.rint(s / np.pi))


def classify(x, tol: float = SINGULAR_TOL) -> Region:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 3:
        raise InvalidParams("classify needs a point with N >= 3 coordinates")
    if not np.all(np.isfinite(x)):
        raise InvalidParams("point has non-finite coordinates")
    s = pair_sums(x)
    if np.any(_dist_to_pi_z(s) < tol):
        return Region.ON_SINGULAR_SET
    if np.any(np.abs(s) > np.pi):
        return Region.OUTSIDE
    if abs(x[0]) < x[1] and np.all(np.diff(x[1:]) > 0) and x[-1] < np.pi - x[-2]:
        return Region.IN_ALCOVE
    return Region.IN_DOMAIN_C


def in_closure(x, tol: float = SINGULAR_TOL) -> bool:
    """Membership in the closed domain |x_i +- x_j| <= pi."""
    return bool(np.all(np.abs(pair_sums(x)) <= np.pi + tol))


def in_bc_domain(x) -> bool:
    """The BC_N domain (-pi/2, pi/2)^N off the hyperplanes x_i +- x_j = 0; it sits inside C."""
    x = np.asarray(x, dtype=float)
    return bool(np.all(np.abs(x) < np.pi / 2) and np.all(np.abs(pair_sums(x)) > 0))


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation acting as (w.y)_i = signs[i] * y[perm[i]] (0-based perm)."""

    perm: tuple
    signs: tuple

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        signs = tuple(int(s) for s in self.signs)
        if sorted(perm) != list(range(len(perm))) or len(signs) != len(perm):
            raise InvalidParams(f"invalid signed permutation {perm}, {signs}")
        if any(s not in (1, -1) for s in signs) or signs.count(-1) % 2:
            raise InvalidParams("a D_N Weyl element flips an even number of signs")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def identity(cls, N):
        return cls(tuple(range(N)), (1,) * N)

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return np.asarray(self.signs) * y[..., list(self.perm)]

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        """(self @ other).y == self(other(y))."""
        p1, s1 = np.asarray(self.perm), np.asarray(self.signs)
        p2, s2 = np.asarray(other.perm), np.asarray(other.signs)
        return WeylElement(tuple(p2[p1]), tuple(s1 * s2[p1]))

    def inverse(self) -> "WeylElement":
        q = np.argsort(self.perm)
        return WeylElement(tuple(q), tuple(np.asarray(self.signs)[q]))


def weyl_group(N: int):
    """All 2^(N-1) N! elements of the D_N Weyl group."""
    for perm in itertools.permutations(range(N)):
        for signs in itertools.product((1, -1), repeat=N):
            if signs.count(-1) % 2 == 0:
                yield WeylElement(perm, signs)


def _sorter(y):
    return WeylElement(tuple(int(i) for i in np.argsort(y, kind="stable")), (1,) * len(y))


def reduce_to_alcove(x):
    """Return (w, a) with a in A and w(a) == x.

    Negative coordinates are flipped in pairs and the result sorted; a single
    leftover negative y_1 with y_1 + y_2 < 0 is cured by z_1 = -y_2,
    z_2 = -y_1, followed by a final sort.
    """
    x = np.asarray(x, dtype=float)
    region = classify(x)
    if region is Region.ON_SINGULAR_SET:
        raise SingularInput(f"{x} lies on a singular hyperplane")
    if region is Region.OUTSIDE:
        raise InvalidParams(f"{x} is outside the domain C")
    N = x.size
    signs = np.ones(N, dtype=int)
    neg = [i for i in range(N) if x[i] < 0]
    for i in neg[: len(neg) - len(neg) % 2]:
        signs[i] = -1
    g = WeylElement(tuple(range(N)), tuple(signs))
    y = g(x)
    s = _sorter(y)
    g, y = s @ g, s(y)
    if y[0] + y[1] < 0:
        perm = (1, 0) + tuple(range(2, N))
        f = WeylElement(perm, (-1, -1) + (1,) * (N - 2))
        g, y = f @ g, f(y)
        s = _sorter(y)
        g, y = s @ g, s(y)
    w = g.inverse()
    if np.max(np.abs(w(y) - x)) > ROUND_TRIP_TOL * max(1.0, np.max(np.abs(x))):
        raise ArithmeticError("Weyl round trip failed")
    return w, y


@lru_cache(maxsize=None)
def _group_arrays(N):
    els = list(weyl_group(N))
    return els, np.array([e.perm for e in els]), np.array([e.signs for e in els], dtype=float)


def _alcove_mask(Y, tol=SINGULAR_TOL):
    s = pair_sums(Y)
    inside = np.all(_dist_to_pi_z(s) >= tol, axis=-1) & np.all(np.abs(s) <= np.pi, axis=-1)
    ordered = (np.abs(Y[..., 0]) < Y[..., 1]) & np.all(np.diff(Y[..., 1:], axis=-1) > 0, axis=-1)
    return inside & ordered & (Y[..., -1] < np.pi - Y[..., -2])


def reduce_exhaustive(x):
    """Oracle: scan the whole Weyl group for images of x in A; returns all hits as (w, a)."""
    x = np.asarray(x, dtype=float)
    els, perms, signs = _group_arrays(x.size)
    Y = signs * x[perms]
    return [(els[k].inverse(), Y[k]) for k in np.nonzero(_alcove_mask(Y))[0]]


@dataclass(frozen=True)
class FoldResult:
    t: np.ndarray
    rep: np.ndarray
    boundary: bool
    steps: int


def _fold_budget(x):
    N = x.shape[-1]
    return int(10 * N * (1 + np.max(np.linalg.norm(x, axis=-1)) / np.pi) ** 2) + 1


def fold_many(X):
    """Vectorized folding of the rows of X into the closed domain; returns (t, rep, steps)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if not np.all(np.isfinite(X)):
        raise InvalidParams("points must be finite")
    S, N = X.shape
    k = np.floor((X + np.pi) / (2 * np.pi))
    rep = X - 2 * np.pi * k
    t = 2 * k.astype(np.int64)
    i, j = _pairs(N)
    budget = _fold_budget(X)
    steps = 0
    while True:
        s = np.concatenate((rep[:, i] + rep[:, j], rep[:, i] - rep[:, j]), axis=1)
        excess = np.abs(s) - np.pi
        worst = np.argmax(excess, axis=1)
        rows = np.nonzero(excess[np.arange(S), worst] > 0)[0]
        if rows.size == 0:
            return t, rep, steps
        steps += 1
        if steps > budget:
            raise IterationLimit(f"folding exceeded {budget} pair translations")
        col = worst[rows]
        npair = i.size
        eps = np.where(col < npair, 1, -1)
        pi_, pj = i[col % npair], j[col % npair]
        sign = np.sign(s[rows, col]).astype(np.int64)
        # translate by -sign * pi * (e_i + eps e_j)
        rep[rows, pi_] -= sign * np.pi
        rep[rows, pj] -= sign * eps * np.pi
        t[rows, pi_] += sign
        t[rows, pj] += sign * eps


def _on_boundary(rep, tol=SINGULAR_TOL):
    a = np.abs(pair_sums(rep))
    return np.any((a < tol) | (np.abs(a - np.pi) < tol), axis=-1)


def fold_to_domain(x) -> FoldResult:
    """Lattice vector t and representative rep = x - pi t in the closed domain."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise InvalidParams("fold_to_domain needs a point with N >= 2 coordinates")
    t, rep, steps = fold_many(x[None, :])
    return FoldResult(t=t[0], rep=rep[0], boundary=bool(_on_boundary(rep[0])), steps=steps)


def translation(i: int, j: int, eps: int, eps_p: int, N: int) -> np.ndarray:
    """Integer vector of T_ij^{eps eps'}: translation by eps' pi (e_i + eps e_j), 1-based sites."""
    if not 1 <= i < j <= N or eps not in (1, -1) or eps_p not in (1, -1):
        raise InvalidParams("invalid translation label")
    t = np.zeros(N, dtype=np.int64)
    t[i - 1] = eps_p
    t[j - 1] = eps_p * eps
    return t


def generators(N: int):
    """All (label, integer vector) pairs T_ij^{eps eps'}."""
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            for eps in (1, -1):
                for eps_p in (1, -1):
                    yield (i, j, eps, eps_p), translation(i, j, eps, eps_p, N)


@dataclass(frozen=True)
class PeriodicityResult:
    periodic: bool
    witness: tuple | None
    max_error: float


def periodic_exponent(nu, trials: int = 200, seed: int = 42) -> PeriodicityResult:
    """Whether exp(i nu.x) is invariant under the coroot lattice.

    This holds exactly when all components of nu share a parity. The claim is
    also checked numerically at random points and generators; in the
    non-periodic case the first generator with a nontrivial phase is returned.
    """
    nu = np.asarray(nu, dtype=np.int64)
    N = nu.size
    if N < 2:
        raise InvalidParams("need at least two components")
    periodic = len({int(v) % 2 for v in nu}) == 1
    gens = list(generators(N))
    witness = None
    for label, t in gens:
        if int(nu @ t) % 2:
            witness = label
            break
    if periodic != (witness is None):
        raise ArithmeticError("parity rule and generator phases disagree")
    rng = np.random.default_rng(seed)
    err = 0.0
    nf = nu.astype(float)
    for _ in range(trials):
        x = rng.uniform(-2 * np.pi, 2 * np.pi, N)
        _, t = gens[int(rng.integers(len(gens)))]
        err = max(err, abs(np.exp(1j * nf @ (x + np.pi * t)) - np.exp(1j * nf @ x)))
    if periodic and err > 1e-12:
        raise ArithmeticError(f"phase error {err:.2e} for a periodic exponent")
    return PeriodicityResult(periodic=periodic, witness=witness, max_error=float(err))


@dataclass(frozen=True)
class TilingReport:
    N: int
    samples: int
    interior: int
    boundary: int
    failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0


def tiling_check(N: int, samples: int, seed: int = 42, chunk: int = 20000) -> TilingReport:
    """Monte Carlo check that coroot-lattice translates of the closed domain tile space.

    Each uniform point of [-2pi, 2pi]^N is folded; a failure is a bad lattice
    vector, a representative outside the closed domain, or (for interior
    representatives) a neighbouring translate rep + pi(+-e_i +- e_j) that is
    still in the closed domain.
    """
    if samples < 1:
        raise InvalidParams("samples must be >= 1")
    if N < 2:
        raise InvalidParams("N must be >= 2")
    rng = np.random.default_rng(seed)
    shifts = np.array([t for _, t in generators(N)], dtype=float) * np.pi
    interior = boundary = failures = 0
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        done += n
        X = rng.uniform(-2 * np.pi, 2 * np.pi, (n, N))
        t, rep, _ = fold_many(X)
        bad = (t.sum(axis=1) % 2 != 0)
        bad |= np.max(np.abs(rep + np.pi * t - X), axis=1) > 1e-12 * (1 + np.abs(X).max())
        bad |= np.any(np.abs(pair_sums(rep)) > np.pi + SINGULAR_TOL, axis=1)
        on_face = _on_boundary(rep)
        moved = rep[:, None, :] + shifts[None, :, :]
        stays = np.all(np.abs(pair_sums(moved)) <= np.pi + SINGULAR_TOL, axis=2)
        bad |= ~on_face & np.any(stays, axis=1)
        failures += int(bad.sum())
        boundary += int((on_face & ~bad).sum())
        interior += int((~on_face & ~bad).sum())
    return TilingReport(N=N, samples=samples, interior=interior, boundary=boundary,
                        failures=failures)


def random_point_in_c(N: int, rng, size: int) -> np.ndarray:
    """Uniform samples of C by rejection from [-pi, pi]^N."""
    out = []
    have = 0
    while have < size:
        X = rng.uniform(-np.pi, np.pi, (max(2 * (size - have), 1024), N))
        X = X[np.all(np.abs(pair_sums(X)) < np.pi, axis=1)]
        out.append(X)
        have += len(X)
    return np.concatenate(out)[:size]


def fourier_orthogonality(nu, nu_prime, samples: int = 10**6, seed: int = 42):
    """Sample mean of exp(i (nu - nu').x) over C and its standard error."""
    d = np.asarray(nu, dtype=float) - np.asarray(nu_prime, dtype=float)
    rng = np.random.default_rng(seed)
    X = random_point_in_c(d.size, rng, samples)
    vals = np.exp(1j * (X @ d))
    mean = vals.mean()
    stderr = math.sqrt(np.var(vals.real) / samples + np.var(vals.imag) / samples)
    return complex(mean), stderr


@dataclass(frozen=True)
class Polyhedron:
    vertices: np.ndarray
    faces: list

    def edges(self):
        out = set()
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                out.add((min(a, b), max(a, b)))
        return sorted(out)


def rhombic_dodecahedron() -> Polyhedron:
    """The closed domain for N = 3 as 14 vertices and 12 rhombic faces (vertex cycles)."""
    h = np.pi / 2
    verts = []
    for axis in range(3):
        for s in (1, -1):
            v = np.zeros(3)
            v[axis] = s * np.pi
            verts.append(v)
    verts.extend(np.array(c) * h for c in itertools.product((1, -1), repeat=3))
    verts = np.array(verts)
    faces = []
    for (i, j, eps, eps_p), _ in generators(3):
        normal = np.zeros(3)
        normal[i - 1], normal[j - 1] = 1.0, eps
        on = [k for k, v in enumerate(verts) if abs(v @ normal - eps_p * np.pi) < 1e-12]
        centre = verts[on].mean(axis=0)
        u = verts[on[0]] - centre
        w = np.cross(normal, u)
        ang = [math.atan2(float((verts[k] - centre) @ w), float((verts[k] - centre) @ u)) for k in on]
        faces.append([on[k] for k in np.argsort(ang)])
    return Polyhedron(vertices=verts, faces=faces)
