"""Exact action of the D_N Dunkl operators on plane waves, with the coupling a symbolic.

A basis function is labelled by an integer multiindex ``nu`` whose components
share a parity; it stands for ``rho(x) * exp(i nu . x)``. Coefficients are
polynomials in ``a`` with exact rational coefficients.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    DiagonalMismatch,
    InvalidParams,
    NotSorted,
    ParityViolation,
    ToleranceExceeded,
    TriangularityViolation,
)

COLLOCATION_TOL = 1e-8
MARGIN = 0.1


@dataclass(frozen=True)
class APoly:
    """c[0] + c[1] a + c[2] a^2 + ... with Fraction coefficients, trailing zeros stripped."""

    c: tuple = ()

    def __post_init__(self):
        c = [Fraction(x) for x in self.c]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "c", tuple(c))

    @classmethod
    def const(cls, v):
        return cls((v,))

    @classmethod
    def linear(cls, c0, c1):
        return cls((c0, c1))

    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def coeff(self, k: int) -> Fraction:
        return self.c[k] if k < len(self.c) else Fraction(0)

    def _lift(self, other):
        if isinstance(other, APoly):
            return other
        if isinstance(other, (int, Fraction)):
            return APoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.c), len(other.c))
        return APoly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return APoly(tuple(-x for x in self.c))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return APoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            for j, y in enumerate(other.c):
                out[i + j] += x * y
        return APoly(tuple(out))

    __rmul__ = __mul__

    def __call__(self, a):
        acc = 0
        for x in reversed(self.c):
            acc = acc * a + (x if isinstance(a, Fraction) else float(x))
        return acc

    def __repr__(self):
        if not self.c:
            return "APoly(0)"
        terms = []
        for k, x in enumerate(self.c):
            if x:
                terms.append(str(x) + ("" if k == 0 else "*a" if k == 1 else f"*a^{k}"))
        return "APoly(" + " + ".join(terms) + ")"


@dataclass(frozen=True)
class Multiindex:
    nu: tuple
    delta: int = field(init=False)
    sorted_key: tuple = field(init=False)

    def __post_init__(self):
        nu = tuple(int(v) for v in self.nu)
        if not nu:
            raise InvalidParams("empty multiindex")
        parities = {v % 2 for v in nu}
        if len(parities) != 1:
            raise ParityViolation(f"components of {nu} do not share a parity")
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "delta", parities.pop())
        object.__setattr__(self, "sorted_key", sorted_key(nu))

    @property
    def N(self) -> int:
        return len(self.nu)


class Order(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    EQUAL_KEY = "EqualKey"


def sorted_key(nu) -> tuple:
    return tuple(sorted((abs(int(v)) for v in nu), reverse=True))


def order_compare(p, q) -> Order:
    """Compare two multiindices by their sorted keys [p], [q]."""
    kp = p.sorted_key if isinstance(p, Multiindex) else sorted_key(p)
    kq = q.sorted_key if isinstance(q, Multiindex) else sorted_key(q)
    if len(kp) != len(kq):
        raise InvalidParams("multiindices of different length")
    if kp < kq:
        return Order.LESS
    if kp > kq:
        return Order.GREATER
    return Order.EQUAL_KEY


def _kernel(d):
    """Exponent/sign pairs of G(x; d) = (x^d - 1)/(x^2 - 1) for even d."""
    if d > 0:
        return [(2 * r, 1) for r in range(d // 2)]
    if d < 0:
        return [(-2 * r, -1) for r in range(1, -d // 2 + 1)]
    return []


@lru_cache(maxsize=None)
def _dunkl_terms(k: int, nu: tuple) -> dict:
    """{nu': (c0, c1)} for J_k phi_nu, integer coefficients of 1 and a (k is 0-based)."""
    N = len(nu)
    out = {}

    def add(target, c0, c1):
        old = out.get(target, (0, 0))
        out[target] = (old[0] + c0, old[1] + c1)

    add(nu, -nu[k], -2 * (N - 1))
    for j in range(N):
        if j == k:
            continue
        # alpha_{jk} = z_j^{-1} z_k, beta_{jk} = z_j z_k
        d = nu[j] - nu[k] + (0 if j < k else 2)
        for e, sign in _kernel(d):
            t = list(nu)
            t[j] -= e
            t[k] += e
            add(tuple(t), 0, 2 * sign)
        for e, sign in _kernel(2 - nu[j] - nu[k]):
            t = list(nu)
            t[j] += e
            t[k] += e
            add(tuple(t), 0, 2 * sign)
    return {t: c for t, c in out.items() if c != (0, 0)}


def _check_site(k, N):
    if not 1 <= k <= N:
        raise InvalidParams(f"site index {k} outside 1..{N}")


def dunkl_apply(k: int, nu) -> dict:
    """J_k phi_nu as a map {Multiindex: APoly}; ``k`` is 1-based."""
    mi = nu if isinstance(nu, Multiindex) else Multiindex(tuple(nu))
    _check_site(k, mi.N)
    return {Multiindex(t): APoly.linear(c0, c1)
            for t, (c0, c1) in _dunkl_terms(k - 1, mi.nu).items()}


def lambda_nu_k(nu, k: int) -> APoly:
    """Closed-form diagonal coefficient of J_k on a sorted nonnegative multiindex."""
    nu = tuple(int(v) for v in (nu.nu if isinstance(nu, Multiindex) else nu))
    N = len(nu)
    _check_site(k, N)
    if any(v < 0 for v in nu) or any(x < y for x, y in zip(nu, nu[1:])):
        raise NotSorted(f"{nu} is not nonnegative and nonincreasing")
    v = nu[k - 1]
    if v == 0:
        return APoly.linear(0, 2 * (N - k))
    ell = nu.index(v) + 1
    count = nu.count(v)
    return APoly.linear(-v, 2 * (2 * ell + count - k - N - 1))


def ende(key, N: int) -> APoly:
    """sum_k ([nu]_k + 2a(N-k))^2 for a sorted key."""
    total = APoly()
    for k, p in enumerate(key, start=1):
        t = APoly.linear(p, 2 * (N - k))
        total = total + t * t
    return total


def truncation_set(N: int, delta: int, bound: int) -> list:
    """All parity-delta multiindices with max |nu_i| <= bound, ordered by (key, nu)."""
    if delta not in (0, 1):
        raise InvalidParams(f"delta must be 0 or 1, got {delta}")
    if N < 1 or bound < 0:
        raise InvalidParams("need N >= 1 and bound >= 0")
    values = [v for v in range(-bound, bound + 1) if v % 2 == delta]
    return sorted(itertools.product(values, repeat=N), key=lambda t: (sorted_key(t), t))


@dataclass
class OperatorMatrix:
    """entries[(nu, nu')] is the coefficient of phi_nu' in the image of phi_nu."""

    N: int
    delta: int
    bound: int
    basis: list
    entries: dict

    def entry(self, row, col) -> APoly:
        return self.entries.get((tuple(row), tuple(col)), APoly())


def _square_row(k, nu, members):
    acc = {}
    for mid, (c0, c1) in _dunkl_terms(k, nu).items():
        for tgt, (d0, d1) in _dunkl_terms(k, mid).items():
            if tgt not in members:
                raise InvalidParams(f"image {tgt} escapes the truncation set")
            old = acc.get(tgt, (0, 0, 0))
            acc[tgt] = (old[0] + c0 * d0, old[1] + c0 * d1 + c1 * d0, old[2] + c1 * d1)
    return acc


def hprime_matrix(bound: int, delta: int, N: int, check: bool = True) -> OperatorMatrix:
    """Assemble H' = sum_k J_k^2 on the truncation set and verify its triangular structure.

    Raises TriangularityViolation when a nonzero off-diagonal entry does not
    lower the sorted key, and DiagonalMismatch when a diagonal differs from
    sum_k([nu]_k + 2a(N-k))^2 as a polynomial in a.
    """
    basis = truncation_set(N, delta, bound)
    members = set(basis)
    entries = {}
    for nu in basis:
        row = {}
        for k in range(N):
            for tgt, c in _square_row(k, nu, members).items():
                old = row.get(tgt, (0, 0, 0))
                row[tgt] = tuple(x + y for x, y in zip(old, c))
        for tgt, c in row.items():
            if any(c):
                entries[(nu, tgt)] = APoly(c)
    mat = OperatorMatrix(N=N, delta=delta, bound=bound, basis=basis, entries=entries)
    if check:
        verify_triangular(mat)
    return mat


def verify_triangular(mat: OperatorMatrix) -> int:
    """Check structure and diagonals; returns the number of nonzero entries inspected."""
    for (row, col), val in mat.entries.items():
        if row == col or val.is_zero():
            continue
        order = order_compare(col, row)
        if order is Order.EQUAL_KEY:
            raise TriangularityViolation(
                f"nonzero entry {val} between equal-key indices", row, col)
        if order is Order.GREATER:
            raise TriangularityViolation(f"entry {val} raises the sorted key", row, col)
    for nu in mat.basis:
        want = ende(sorted_key(nu), mat.N)
        got = mat.entry(nu, nu)
        if got != want:
            raise DiagonalMismatch(f"diagonal {got} != {want}", nu)
    return len(mat.entries)


def partial_sum_check(p) -> bool:
    """Sum of lambda^2 over each run of equal entries of a sorted key equals sum (p_j + 2a(N-j))^2."""
    p = tuple(int(v) for v in p)
    N = len(p)
    lam = [lambda_nu_k(p, k) for k in range(1, N + 1)]
    for _, grp in itertools.groupby(range(N), key=lambda i: p[i]):
        idx = list(grp)
        lhs = sum((lam[i] * lam[i] for i in idx), APoly())
        terms = [APoly.linear(p[i], 2 * (N - 1 - i)) for i in idx]
        rhs = sum((t * t for t in terms), APoly())
        if lhs != rhs:
            return False
    return True


def commutes(k: int, l: int, nu) -> bool:
    """Whether J_k J_l phi_nu == J_l J_k phi_nu (informational only)."""
    nu = tuple(nu.nu if isinstance(nu, Multiindex) else nu)
    _check_site(k, len(nu))
    _check_site(l, len(nu))

    def twice(first, second):
        acc = {}
        for mid, (c0, c1) in _dunkl_terms(first, nu).items():
            for tgt, (d0, d1) in _dunkl_terms(second, mid).items():
                old = acc.get(tgt, (0, 0, 0))
                acc[tgt] = (old[0] + c0 * d0, old[1] + c0 * d1 + c1 * d0, old[2] + c1 * d1)
        return {t: c for t, c in acc.items() if any(c)}

    return twice(l - 1, k - 1) == twice(k - 1, l - 1)


def random_domain_point(N: int, rng, margin: float = MARGIN) -> np.ndarray:
    """Uniform point of C keeping distance ``margin`` from every x_i +- x_j in pi Z."""
    while True:
        x = rng.uniform(-np.pi, np.pi, N)
        i, j = np.triu_indices(N, 1)
        s = np.concatenate((x[i] - x[j], x[i] + x[j]))
        if np.all(np.abs(s) > margin) and np.all(np.abs(s) < np.pi - margin):
            return x


def gauge_action(k: int, nu, x, a: float) -> complex:
    """rho^{-1} J_k rho applied to exp(i nu.x), evaluated at the point x."""
    nu = np.asarray(nu, dtype=float)
    x = np.asarray(x, dtype=float)
    N = x.size
    k0 = k - 1

    def wave(y):
        return np.exp(1j * float(nu @ y))

    f = wave(x)
    out = -nu[k0] * f
    for l in range(N):
        if l == k0:
            continue
        cm = 1.0 / np.tan(x[k0] - x[l])
        cp = 1.0 / np.tan(x[k0] + x[l])
        out += 1j * a * (cm + cp) * f
        swapped = x.copy()
        swapped[k0], swapped[l] = x[l], x[k0]
        flipped = x.copy()
        flipped[k0], flipped[l] = -x[l], -x[k0]
        out += a * ((1 - 1j * cm) * wave(swapped) + (1 - 1j * cp) * wave(flipped))
        if l < k0:
            out -= 2 * a * wave(swapped)
    return complex(out)


def expansion_value(terms: dict, x, a) -> complex:
    x = np.asarray(x, dtype=float)
    return complex(sum(c(a) * np.exp(1j * float(np.asarray(mi.nu) @ x)) for mi, c in terms.items()))


def random_coupling(rng) -> Fraction:
    """Random rational in [1/2, 5] with a small denominator."""
    den = int(rng.integers(1, 13))
    num = int(rng.integers(-(-den // 2), 5 * den + 1))
    return Fraction(num, den)


def collocation_check(k: int, nu, trials: int, seed: int = 42, a=None,
                      tol: float = COLLOCATION_TOL) -> float:
    """Max relative error between the gauge operator and the dunkl_apply expansion.

    The error at each point is normalized by the l1 norm of the expansion
    coefficients, which bounds the modulus of the expansion.
    """
    if trials < 1:
        raise InvalidParams("trials must be >= 1")
    mi = nu if isinstance(nu, Multiindex) else Multiindex(tuple(nu))
    rng = np.random.default_rng(seed)
    a = random_coupling(rng) if a is None else Fraction(a)
    terms = dunkl_apply(k, mi)
    scale = max(sum(abs(float(c(a))) for c in terms.values()), 1.0)
    worst = 0.0
    for _ in range(trials):
        x = random_domain_point(mi.N, rng)
        lhs = gauge_action(k, mi.nu, x, float(a))
        rhs = expansion_value(terms, x, a)
        worst = max(worst, abs(lhs - rhs) / scale)
    if worst > tol:
        raise ToleranceExceeded(f"collocation error {worst:.3e} > {tol:.1e} for k={k}, nu={mi.nu}, a={a}")
    return worst


def random_multiindex(N: int, rng, span: int = 6) -> tuple:
    """Uniform-parity multiindex with entries in [-span, span], usually unsorted and signed."""
    delta = int(rng.integers(2))
    half = span // 2
    return tuple(int(2 * v + delta) for v in rng.integers(-half - delta, half + 1, N))


def collocation_suite(N: int, triples: int, seed: int = 42):
    """Max relative collocation error over random (k, nu, x) triples, each with its own a.

    Returns (max_error, records) where each record is (k, nu, a, error).
    """
    rng = np.random.default_rng(seed)
    records = []
    for _ in range(triples):
        k = int(rng.integers(1, N + 1))
        nu = random_multiindex(N, rng)
        a = random_coupling(rng)
        x = random_domain_point(N, rng)
        terms = dunkl_apply(k, nu)
        scale = max(sum(abs(float(c(a))) for c in terms.values()), 1.0)
        err = abs(gauge_action(k, nu, x, float(a)) - expansion_value(terms, x, a)) / scale
        records.append((k, nu, a, err))
    return max(r[3] for r in records), records
