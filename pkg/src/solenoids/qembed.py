"""Embedding torsion-free table fragments into Q.

A `Certificate` realizes a finite table by rational vectors.  From it,
`realize_patch` builds a total operation isomorphic to (Q, +) that agrees
with the table on its window: scale to integer vectors, collapse Q^d to Q
with a base-K homomorphism that stays injective on the finitely many
relevant points, then move indices into place with a finite permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactalg import IntMatrix, smith_normal_form
from .tablespace import (
    CANONICAL_Q,
    FinitePermutation,
    GroupOracle,
    PartialTable,
    apply_permutation,
    is_total,
    multiple,
    supp,
)

Vector = tuple[Fraction, ...]


class TorsionQuotient(ValueError):
    def __init__(self, factor: int):
        super().__init__(f"quotient has torsion: invariant factor {factor}")
        self.factor = factor


class InvalidCertificate(ValueError):
    pass


def _vec(v) -> Vector:
    return tuple(Fraction(x) for x in v)


def _fmt(x: Fraction) -> list[str]:
    return [str(x.numerator), str(x.denominator)]


@dataclass(frozen=True)
class Certificate:
    """Rational vectors realizing `table`: points[i] + points[j] == points[m_ij].

    `points` maps every index in {0..k} and in supp(table) to a vector of Q^d.
    It may also pin further indices (anchors); injectivity covers those too.
    """

    d: int
    points: Mapping[int, Vector]
    table: PartialTable

    def __post_init__(self):
        object.__setattr__(self, "points", {int(i): _vec(v) for i, v in sorted(self.points.items())})

    def __hash__(self):
        return hash((self.d, tuple(self.points.items()), self.table))

    def problems(self) -> list[str]:
        T, P = self.table, self.points
        out = []
        need = set(range(T.k + 1)) | supp(T)
        if not need <= set(P):
            out.append(f"points must cover {{0..k}} and supp; missing {sorted(need - set(P))[:5]}")
            return out
        if any(len(v) != self.d for v in P.values()):
            return ["vector of the wrong dimension"]
        if any(P[0]):
            out.append("points[0] is not the zero vector")
        for i, j, m in T.entries():
            if tuple(a + b for a, b in zip(P[i], P[j])) != P[m]:
                out.append(f"points[{i}] + points[{j}] != points[{m}]")
                break
        if len(set(P.values())) != len(P):
            out.append("index -> vector assignment is not injective")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def validate(self) -> None:
        bad = self.problems()
        if bad:
            raise InvalidCertificate("; ".join(bad))

    def to_json(self) -> dict:
        k = self.table.k
        return {
            "d": self.d,
            "points": [[_fmt(x) for x in self.points[i]] for i in range(k + 1)],
            "extra": [[i, [_fmt(x) for x in v]] for i, v in self.points.items() if i > k],
            "table": self.table.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> Certificate:
        def vec(raw):
            return tuple(Fraction(int(n), int(d)) for n, d in raw)

        pts = {i: vec(v) for i, v in enumerate(obj["points"])}
        pts.update({int(i): vec(v) for i, v in obj.get("extra", [])})
        return cls(int(obj["d"]), pts, PartialTable.from_json(obj["table"]))


def close_certificate(points: Mapping[int, Sequence], k: int, keep_all: bool = False) -> Certificate:
    """Build the table on {0..k}^2 induced by vectors assigned to 0..k (and maybe more).

    Sums with no index yet get the smallest unused index, scanning (i, j) in
    lexicographic order.  Points outside {0..k} u supp are dropped unless
    `keep_all`.
    """
    pts = {int(i): _vec(v) for i, v in points.items()}
    missing = [i for i in range(k + 1) if i not in pts]
    if missing:
        raise ValueError(f"no vector for indices {missing}")
    d = len(pts[0])
    where = {v: i for i, v in pts.items()}
    if len(where) != len(pts):
        raise ValueError("vectors are not distinct")
    nxt = 0
    grid = []
    for i in range(k + 1):
        row = []
        for j in range(k + 1):
            s = tuple(a + b for a, b in zip(pts[i], pts[j]))
            m = where.get(s)
            if m is None:
                while nxt in pts:
                    nxt += 1
                m = nxt
                pts[m] = s
                where[s] = m
            row.append(m)
        grid.append(tuple(row))
    table = PartialTable(k, tuple(grid))
    if keep_all:
        return Certificate(d, pts, table)
    keep = set(range(k + 1)) | supp(table)
    return Certificate(d, {i: v for i, v in pts.items() if i in keep}, table)


def trivial_certificate(d: int = 1) -> Certificate:
    return Certificate(d, {0: (Fraction(0),) * d}, PartialTable.trivial())


# --- finitely generated groups ------------------------------------------------------------

@dataclass(frozen=True)
class FGGroupPresentation:
    generators: int
    relations: IntMatrix


def embed_fg_group(P: FGGroupPresentation) -> tuple[int, list[Vector]]:
    """Embed Z^g / rowspan(relations) into Q^r, r = g - rank(relations).

    With U R V = D, x -> x V kills exactly the first rank(R) coordinates when
    every invariant factor is 1; the remaining coordinates embed the quotient.
    """
    g = P.generators
    R = P.relations if P.relations.rows else IntMatrix.zero(0, g)
    if R.cols != g:
        raise ValueError("relations must have one column per generator")
    _, D, V = smith_normal_form(R)
    factors = [D[i, i] for i in range(min(D.shape)) if D[i, i]]
    for f in factors:
        if f > 1:
            raise TorsionQuotient(f)
    s = len(factors)
    return g - s, [tuple(Fraction(x) for x in V.row(i)[s:]) for i in range(g)]


# --- base-K collapse ---------------------------------------------------------------------------

def clear_denominators(vs: Sequence[Sequence]) -> tuple[int, list[tuple[int, ...]]]:
    """N = product of the distinct reduced denominators; return (N, N*vs)."""
    dens = sorted({Fraction(x).denominator for v in vs for x in v} - {1})
    N = 1
    for b in dens:
        N *= b
    scaled = []
    for v in vs:
        w = [Fraction(x) * N for x in v]
        assert all(x.denominator == 1 for x in w)
        scaled.append(tuple(int(x) for x in w))
    return N, scaled


def choose_K(vs: Sequence[Sequence[int]]) -> int:
    """Smallest K > 2*max|a_i|, at least 2."""
    top = max((abs(x) for v in vs for x in v), default=0)
    return max(2, 2 * top + 1)


def base_K_hom(K: int, v: Sequence[int]) -> int:
    acc = 0
    for x in reversed(v):
        acc = acc * K + x
    return acc


def injective_on(vs: Sequence[Sequence[int]], K: int) -> tuple[bool, tuple | None]:
    """(True, None), or (False, (v, w)) for distinct v, w with equal images."""
    seen = {}
    for v in vs:
        v = tuple(v)
        img = base_K_hom(K, v)
        if img in seen and seen[img] != v:
            return False, (seen[img], v)
        seen[img] = v
    return True, None


def match_permutation(pairs: Mapping[int, int]) -> FinitePermutation:
    """Least finite permutation extending the injection src -> dst in `pairs`.

    Leftover targets (in dst but not src) are sent, in increasing order, to the
    leftover sources in increasing order.
    """
    fwd = {a: b for a, b in pairs.items()}
    srcs, dsts = set(fwd), set(fwd.values())
    for a, b in zip(sorted(dsts - srcs), sorted(srcs - dsts)):
        fwd[a] = b
    return FinitePermutation(tuple(fwd.items()))


@dataclass(frozen=True)
class Realization:
    nu: FinitePermutation
    oracle: GroupOracle
    N: int
    K: int
    images: dict  # index -> phi(point) in Q

    def __iter__(self):
        return iter((self.nu, self.oracle))


def realize_patch(C: Certificate) -> Realization:
    """Transport the canonical Q table so it agrees with C.table on {0..k}^2.

    Unpacks as (nu, oracle); the full record also carries N, K and phi.
    """
    C.validate()
    idx = sorted(C.points)
    N, ints = clear_denominators([C.points[i] for i in idx])
    K = choose_K(ints)
    phi = {i: base_K_hom(K, v) for i, v in zip(idx, ints)}
    ok, bad = injective_on(ints, K)
    if not ok:  # excluded by K > 2 max|a|
        raise AssertionError(f"base-K map not injective: {bad}")
    nu = match_permutation({CANONICAL_Q.index_of(Fraction(y)): i for i, y in phi.items()})
    return Realization(nu, apply_permutation(CANONICAL_Q, nu), N, K,
                       {i: Fraction(y) for i, y in phi.items()})


# --- witness searches -----------------------------------------------------------------------------

def _value_vector(oracle, i):
    v = oracle.value(i)
    return (Fraction(v),) if not isinstance(v, tuple) else tuple(Fraction(x) for x in v)


def _has_values(oracle) -> bool:
    return is_total(oracle) and type(oracle).value is not GroupOracle.value


def divisibility_witness(oracle, n: int, k: int, bound: int | None) -> int | None:
    """Some m <= bound with k*m == n under the oracle.

    When the oracle exposes its model group the candidate is read off the
    values and then checked by table arithmetic; otherwise 0..bound is scanned.
    `bound=None` means no bound and needs such an oracle.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if _has_values(oracle):
        raw = oracle.value(n)
        if isinstance(raw, tuple):
            if any(x % k for x in raw):
                return None
            target = tuple(x // k for x in raw)
        else:
            target = Fraction(raw) / k
        m = oracle.index_of(target)
        if (bound is None or m <= bound) and multiple(oracle, k, m) == n:
            return m
        return None
    if bound is None:
        raise ValueError("an explicit bound is needed for a bare table")
    for m in range(bound + 1):
        if multiple(oracle, k, m) == n:
            return m
    return None


def common_multiple_witness(oracle, k: int, l: int, bound: int | None) -> tuple[int, int] | None:
    """(m, n) with m > 0, n != 0, |n| <= bound, m <= bound and m*k == n*l.

    n may be negative: for k = 1 and l = -1 in Q no positive pair exists.
    Smallest m wins, then smallest |n|, positive before negative.
    """
    if k == 0 or l == 0:
        raise ValueError("k and l must be nonzero indices")
    if _has_values(oracle):
        vk, vl = _value_vector(oracle, k), _value_vector(oracle, l)
        ratio = None
        for a, b in zip(vk, vl):
            if b == 0 and a == 0:
                continue
            if b == 0 or a == 0:
                return None
            r = a / b
            if ratio is None:
                ratio = r
            elif r != ratio:
                return None
        # m*vk == n*vl  <=>  n/m == vk/vl
        m, n = ratio.denominator, ratio.numerator
        if bound is not None and max(m, abs(n)) > bound:
            return None
        if multiple(oracle, m, k) == multiple(oracle, n, l):
            return m, n
        return None
    if bound is None:
        raise ValueError("an explicit bound is needed for a bare table")
    multiples_l = {}
    for n in range(1, bound + 1):
        for s in (n, -n):
            v = multiple(oracle, s, l)
            if v is not None and v not in multiples_l:
                multiples_l[v] = s
    for m in range(1, bound + 1):
        v = multiple(oracle, m, k)
        if v is not None and v in multiples_l:
            return m, multiples_l[v]
    return None
