"""Random generators shared by the property tests and the acceptance run."""

import random
from fractions import Fraction
from itertools import product

from hypothesis import strategies as st

from solenoids import duality as du
from solenoids.qembed import Certificate, close_certificate
from solenoids.torus import TorusPoint, d_T
from solenoids.supernat import INF, PrimeSeqSpec, Supernatural

PRIMES = (2, 3, 5, 7, 11)


def random_supernatural(rng: random.Random) -> Supernatural:
    if rng.random() < 0.15:
        return Supernatural.universal()
    exps = {p: rng.choice([0, 0, 1, 2, 3, INF, INF]) for p in rng.sample(PRIMES, rng.randint(0, 4))}
    return Supernatural.of(exps, rng.random() < 0.2)


def random_prime_spec(rng: random.Random) -> PrimeSeqSpec:
    prefix = tuple(rng.choice(PRIMES) for _ in range(rng.randint(0, 6)))
    if rng.random() < 0.2:
        return PrimeSeqSpec(prefix, (), True)
    return PrimeSeqSpec(prefix, tuple(rng.choice(PRIMES) for _ in range(rng.randint(1, 4))))


def random_expr(rng: random.Random, depth: int = 4) -> du.GroupExpr:
    leaves = [
        lambda: du.Z(), lambda: du.T(), lambda: du.Q(),
        lambda: du.Cyclic(rng.randint(1, 12)),
        lambda: du.Prufer(rng.choice(PRIMES)), lambda: du.PadicInt(rng.choice(PRIMES)),
        lambda: du.Solenoid(random_supernatural(rng)),
        lambda: du.QWithDenominators(random_supernatural(rng)),
    ]
    if depth <= 1 or rng.random() < 0.45:
        return rng.choice(leaves)()
    if rng.random() < 0.6:
        return du.DirectSum(tuple(random_expr(rng, depth - 1) for _ in range(rng.randint(1, 3))))
    return du.Power(random_expr(rng, depth - 1), rng.choice(["sum", "product"]))


def expr_corpus(n: int, seed: int = 0, depth: int = 4) -> list[du.GroupExpr]:
    rng = random.Random(seed)
    return [random_expr(rng, depth) for _ in range(n)]


exprs = st.integers(0, 2**32).map(lambda s: random_expr(random.Random(s)))
supernaturals = st.integers(0, 2**32).map(lambda s: random_supernatural(random.Random(s)))
prime_specs = st.integers(0, 2**32).map(lambda s: random_prime_spec(random.Random(s)))


def grid_hausdorff(H1, H2, M):
    """Exact Fraction d_T over both parameter grids of step 1/M, by brute force."""
    def pts(H):
        W = H.parametrization()
        out = set()
        for t in product(range(M), repeat=W.rows):
            out.add(TorusPoint(tuple(sum((Fraction(t[i], M) * W[i, j] for i in range(W.rows)), Fraction(0))
                                     for j in range(H.n))))
        return out or {TorusPoint((Fraction(0),) * H.n)}

    A, B = pts(H1), pts(H2)
    one = max(min(d_T(a, b) for b in B) for a in A)
    two = max(min(d_T(a, b) for a in A) for b in B)
    return max(one, two)


def random_certificate(rng: random.Random, d_max=3, k_max=6) -> Certificate:
    d = rng.randint(1, d_max)
    k = rng.randint(0, k_max)
    pts = {0: (Fraction(0),) * d}
    seen = set(pts.values())
    while len(pts) <= k:
        v = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(d))
        if v not in seen:
            seen.add(v)
            pts[len(pts)] = v
    return close_certificate(pts, k)
