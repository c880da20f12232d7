"""Exact geometry in finite windows of the infinite torus.

Points have rational coordinates mod 1.  A closed connected subgroup of the
n-torus is stored through its annihilator: the saturated lattice of integer
characters vanishing on it.  The infinite torus carries the weighted metric
sum_i 2^-i d(x_i, y_i); only finitely many coordinates are ever materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, lcm
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree
from sympy import isprime

from .exactalg import IntMatrix, hnf_basis, is_saturated, kernel_basis, saturate, vector_gcd

HALF = Fraction(1, 2)


class DimensionMismatch(ValueError):
    pass


class ZeroPoint(ValueError):
    pass


class NonPrimeInput(ValueError):
    pass


def frac1(x) -> Fraction:
    """Canonical representative of x mod 1 in [0, 1)."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class TorusPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(frac1(c) for c in self.coords))

    @classmethod
    def of(cls, *coords) -> TorusPoint:
        return cls(tuple(Fraction(c) for c in coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __add__(self, other: TorusPoint) -> TorusPoint:
        _same_dim(self.dim, other.dim)
        return TorusPoint(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, m: int) -> TorusPoint:
        return TorusPoint(tuple(m * c for c in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


def _same_dim(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatch(f"dimensions {a} and {b} differ")


def d_circle(a, b) -> Fraction:
    t = frac1(Fraction(a) - Fraction(b))
    return min(t, 1 - t)


def d_T(x: TorusPoint, y: TorusPoint) -> Fraction:
    """sum_i 2^-i d_circle(x_i, y_i) over the materialized coordinates."""
    _same_dim(x.dim, y.dim)
    return sum((Fraction(1, 2 ** i) * d_circle(a, b) for i, (a, b) in enumerate(zip(x.coords, y.coords))),
               Fraction(0))


def d_euclid_sq(x: Sequence, y: Sequence) -> Fraction:
    return sum((d_circle(a, b) ** 2 for a, b in zip(x, y)), Fraction(0))


# --- subgroups -----------------------------------------------------------------------------------

@dataclass(frozen=True)
class ConnectedTorusSubgroup:
    """{x in T^n : chi . x in Z for every annihilator row chi}."""

    n: int
    annihilator: IntMatrix

    def __post_init__(self):
        A = self.annihilator
        if A.cols != self.n:
            raise DimensionMismatch("annihilator width differs from n")
        if not is_saturated(A):
            raise ValueError("annihilator is not saturated; the subgroup would be disconnected")
        object.__setattr__(self, "annihilator", hnf_basis(A))

    @classmethod
    def from_characters(cls, n: int, rows: Sequence[Sequence[int]]) -> ConnectedTorusSubgroup:
        """The identity component of the subgroup annihilated by `rows`."""
        return cls(n, saturate(IntMatrix.from_rows(rows, n)))

    @classmethod
    def full(cls, n: int) -> ConnectedTorusSubgroup:
        return cls(n, IntMatrix.zero(0, n))

    @classmethod
    def trivial(cls, n: int) -> ConnectedTorusSubgroup:
        return cls(n, IntMatrix.identity(n))

    def parametrization(self) -> IntMatrix:
        """Rows w_i with t -> sum t_i w_i (mod 1) an isomorphism T^dim -> H."""
        return kernel_basis(self.annihilator.transpose()) if self.annihilator.rows else IntMatrix.identity(self.n)

    def to_json(self) -> dict:
        return {"n": self.n, "annihilator": self.annihilator.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> ConnectedTorusSubgroup:
        return cls(int(obj["n"]), IntMatrix.from_json(obj["annihilator"]))


def membership(x: TorusPoint, H: ConnectedTorusSubgroup) -> bool:
    _same_dim(x.dim, H.n)
    return all(sum((c * a for c, a in zip(chi, x.coords)), Fraction(0)).denominator == 1
               for chi in H.annihilator.entries)


def dimension(H: ConnectedTorusSubgroup) -> int:
    return H.n - H.annihilator.rows


def project_and_pad(H: ConnectedTorusSubgroup, m: int) -> ConnectedTorusSubgroup:
    """H x {0}^(m-n) inside T^m."""
    if m < H.n:
        raise ValueError("cannot pad into a smaller torus")
    rows = [tuple(r) + (0,) * (m - H.n) for r in H.annihilator.entries]
    rows += [tuple(int(j == i) for j in range(m)) for i in range(H.n, m)]
    return ConnectedTorusSubgroup(m, hnf_basis(IntMatrix.from_rows(rows, m)))


# --- winding circles --------------------------------------------------------------------------------

@dataclass(frozen=True)
class WindingCircle:
    """{t*w mod 1 : t in [0, 1)} for a primitive integer vector w."""

    w: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        if vector_gcd(self.w) != 1:
            raise ValueError("winding vector must be primitive")

    @property
    def n(self) -> int:
        return len(self.w)

    def at(self, t) -> TorusPoint:
        return TorusPoint(tuple(Fraction(t) * x for x in self.w))

    def subgroup(self) -> ConnectedTorusSubgroup:
        return ConnectedTorusSubgroup(self.n, kernel_basis(IntMatrix.from_rows([[x] for x in self.w], 1)))


def circle_through(x: TorusPoint) -> tuple[WindingCircle, Fraction]:
    """(circle, t) with t*w == x mod 1."""
    if x.is_zero():
        raise ZeroPoint("the zero point lies on every circle")
    D = lcm(*(c.denominator for c in x.coords))
    u = [int(c * D) for c in x.coords]
    g = vector_gcd(u)
    return WindingCircle(tuple(a // g for a in u)), Fraction(g, D)


# --- nets ------------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class CircleNet:
    N: int
    x: TorusPoint
    circle: WindingCircle
    t: Fraction


def circle_net(k: int, delta) -> CircleNet:
    """Smallest N with N > sqrt(k)/delta; x = (1/N, ..., 1/N^k) on the circle w = (N^(k-1), ..., 1)."""
    delta = Fraction(delta)
    if k < 1 or delta <= 0:
        raise ValueError("need k >= 1 and delta > 0")
    N = 1
    while N * N * delta * delta <= k:
        N += 1
    x = TorusPoint(tuple(Fraction(1, N ** i) for i in range(1, k + 1)))
    w = WindingCircle(tuple(N ** (k - i) for i in range(1, k + 1)))
    return CircleNet(N, x, w, Fraction(1, N ** k))


def grid_cube_witness(k: int, N: int, j: Sequence[int]) -> tuple[int, TorusPoint]:
    """m = j_1 + j_2 N + ... + j_k N^(k-1); m*x lands in the cube prod [j_i/N, (j_i+1)/N]."""
    if len(j) != k or any(not 0 <= a < N for a in j):
        raise IndexError(f"cube index {tuple(j)} out of range for k={k}, N={N}")
    m = sum(a * N ** i for i, a in enumerate(j))
    x = TorusPoint(tuple(Fraction(1, N ** i) for i in range(1, k + 1)))
    return m, m * x


def in_cube(point: TorusPoint, N: int, j: Sequence[int]) -> bool:
    return all(Fraction(a, N) <= c <= Fraction(a + 1, N) for c, a in zip(point.coords, j))


@dataclass(frozen=True)
class NetReport:
    k: int
    delta: Fraction
    N: int
    grid_points: int
    covered: int
    worst_sq: Fraction  # largest squared distance from a grid point to the net

    @property
    def ok(self) -> bool:
        return self.covered == self.grid_points


def verify_net(k: int, delta, grid_factor: int = 4) -> NetReport:
    """Brute-force the cyclic group of circle_net(k, delta) against a 1/(grid_factor*N) grid.

    Euclidean distances on the k-torus are compared squared, in integers
    scaled by a common denominator.
    """
    delta = Fraction(delta)
    net = circle_net(k, delta)
    N = net.N
    D = grid_factor * N ** k  # common denominator of grid and net coordinates
    i = np.arange(N ** k, dtype=object)
    net_pts = np.stack([(i * (D // N ** (c + 1))) % D for c in range(k)], axis=1).astype(np.int64)
    g = np.arange(grid_factor * N, dtype=np.int64) * (D // (grid_factor * N))
    grid = np.array(list(product(g, repeat=k)), dtype=np.int64)
    worst = 0
    covered = 0
    limit_num, limit_den = delta.numerator ** 2 * D * D, delta.denominator ** 2
    for chunk in np.array_split(grid, max(1, len(grid) // 512)):
        diff = np.abs(chunk[:, None, :] - net_pts[None, :, :]) % D
        dc = np.minimum(diff, D - diff)
        sq = (dc * dc).sum(axis=2).min(axis=1)
        covered += int((sq * limit_den < limit_num).sum())
        worst = max(worst, int(sq.max()))
    return NetReport(k, delta, N, len(grid), covered, Fraction(worst, D * D))


# --- Hausdorff distance ------------------------------------------------------------------------------------

def cell_bound(W: IntMatrix, M: int) -> Fraction:
    """d_T radius of one parameter cell of side 1/M, measured from its corner."""
    out = Fraction(0)
    for j in range(W.cols):
        spread = Fraction(sum(abs(W[i, j]) for i in range(W.rows)), M)
        out += Fraction(1, 2 ** j) * min(HALF, spread)
    return out


def _samples(W: IntMatrix, M: int) -> np.ndarray:
    # integer coordinates in units of 1/M
    if W.rows == 0:
        return np.zeros((1, W.cols), dtype=np.int64)
    t = np.array(list(product(range(M), repeat=W.rows)), dtype=np.int64)
    w = np.array(W.entries, dtype=np.int64) % M
    return (t @ w) % M


def _directed(a: np.ndarray, b: np.ndarray, M: int, weights: np.ndarray) -> int:
    """max over a of the weighted-L1 torus distance to b, in units 1/(M * 2^(n-1)).

    Scaled coordinates are integers below 2^53, so float distances are exact.
    """
    box = (M * weights).astype(np.float64)
    tree = cKDTree((b * weights).astype(np.float64), boxsize=box)
    d, _ = tree.query((a * weights).astype(np.float64), k=1, p=1)
    return int(round(float(d.max())))


def hausdorff_distance(H1: ConnectedTorusSubgroup, H2: ConnectedTorusSubgroup, mesh) -> tuple[Fraction, Fraction]:
    """(estimate, error_bound) with |d_H(H1, H2) - estimate| <= error_bound.

    Each subgroup is sampled on its parameter torus with step 1/M <= mesh;
    the error bound is the larger of the two cell radii.
    """
    _same_dim(H1.n, H2.n)
    mesh = Fraction(mesh)
    M = ceil(1 / mesh)
    W1, W2 = H1.parametrization(), H2.parametrization()
    err = max(cell_bound(W1, M), cell_bound(W2, M))
    if H1 == H2:
        return Fraction(0), err
    n = H1.n
    weights = np.array([2 ** (n - 1 - j) for j in range(n)], dtype=np.int64)
    s1, s2 = _samples(W1, M), _samples(W2, M)
    est = max(_directed(s1, s2, M, weights), _directed(s2, s1, M, weights))
    return Fraction(est, M * 2 ** (n - 1)), err


def mesh_for(H: ConnectedTorusSubgroup, target) -> Fraction:
    """A mesh whose cell radius for H is at most `target`."""
    W = H.parametrization()
    total = sum((Fraction(sum(abs(W[i, j]) for i in range(W.rows)), 2 ** j) for j in range(W.cols)), Fraction(0))
    return Fraction(1, max(1, ceil(total / Fraction(target))))


# --- circle approximations and solenoids ---------------------------------------------------------------------

def padded_circle(w: Sequence[int], m: int) -> ConnectedTorusSubgroup:
    return project_and_pad(WindingCircle(tuple(w)).subgroup(), m)


def trivial_case_circle(n: int, m: int | None = None) -> ConnectedTorusSubgroup:
    """The member of F_n that is a circle on coordinate n-1 and trivial elsewhere."""
    m = n if m is None else m
    return padded_circle(tuple(int(i == n - 1) for i in range(n)), m)


def approximating_circle(H: ConnectedTorusSubgroup, delta) -> WindingCircle:
    """A circle inside H built from a delta-net of the parameter torus of H.

    For dim H = 0 this is the coordinate circle on the last axis instead.
    """
    k = dimension(H)
    if k == 0:
        return WindingCircle(tuple(int(i == H.n - 1) for i in range(H.n)))
    W = H.parametrization()
    net = circle_net(k, delta)
    v = [sum(net.circle.w[i] * W[i, j] for i in range(k)) for j in range(H.n)]
    return WindingCircle(tuple(v))


def solenoid_winding(S0: WindingCircle, primes: Sequence[int]) -> WindingCircle:
    """v = (P*w, P/p1, P/(p1 p2), ..., 1) with P = p1 ... pm."""
    for p in primes:
        if not isprime(p):
            raise NonPrimeInput(f"{p} is not prime")
    P = 1
    for p in primes:
        P *= p
    tail, acc = [], P
    for p in primes:
        acc //= p
        tail.append(acc)
    return WindingCircle(tuple(P * x for x in S0.w) + tuple(tail))


def solenoid_approximant(S0: WindingCircle, primes: Sequence[int]) -> ConnectedTorusSubgroup:
    """The level-m circle of a solenoid over S0 in T^(n+m); bonding maps are x -> p_i x."""
    return solenoid_winding(S0, primes).subgroup()
