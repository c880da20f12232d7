import random

import pytest
from helpers import PRIMES, prime_specs, random_supernatural, supernaturals
from hypothesis import given, strategies as st

from solenoids.supernat import (
    INF,
    PrimeSeqSpec,
    Supernatural,
    drop_prefix_invariance,
    equivalent,
    is_universal,
    steinitz,
)

U = Supernatural.universal()


def test_steinitz_examples():
    assert steinitz(PrimeSeqSpec((2, 2, 3), (5,))) == Supernatural.of({2: 2, 3: 1, 5: INF})
    assert steinitz(PrimeSeqSpec((), (), True)) == U
    assert steinitz(PrimeSeqSpec((7,), (7,))) == Supernatural.of({7: INF})


def test_equivalence_examples():
    alt23 = steinitz(PrimeSeqSpec((), (2, 3)))
    alt32 = steinitz(PrimeSeqSpec((), (3, 2)))
    assert equivalent(alt23, alt32)
    assert not equivalent(Supernatural.of({2: INF}), Supernatural.of({3: INF}))
    S = Supernatural.of({2: INF, 3: 1})
    assert equivalent(S, S * 5)


def test_universal_examples():
    assert is_universal(U)
    assert not is_universal(Supernatural.of({2: INF}))
    assert not is_universal(Supernatural.of({2: 3}, default_infinite=True))


def test_drop_prefix_examples():
    assert drop_prefix_invariance(PrimeSeqSpec((3, 5), (2,)), 0)
    assert drop_prefix_invariance(PrimeSeqSpec((), (2, 3)), 1)
    assert drop_prefix_invariance(PrimeSeqSpec((), (), True), 5)


def test_normal_form_drops_defaults():
    assert Supernatural.of({2: 0, 3: INF}) == Supernatural.of({3: INF})
    assert Supernatural.of({2: INF}, True) == U
    with pytest.raises(ValueError):
        Supernatural.of({4: 1})
    with pytest.raises(ValueError):
        PrimeSeqSpec((2,), ())


@given(prime_specs, st.integers(0, 10))
def test_drop_prefix_always_equivalent(s, t):
    assert drop_prefix_invariance(s, t)


@given(prime_specs, st.integers(0, 12))
def test_drop_matches_terms(s, t):
    head = s.terms(t + 6)
    if head is not None:
        assert s.drop(t).terms(6) == head[t:]


def test_equivalence_relation_on_corpus():
    rng = random.Random(5)
    vals = [random_supernatural(rng) for _ in range(500)]
    for a in vals:
        assert equivalent(a, a)
    for a, b in zip(vals, vals[1:] + vals[:1]):
        assert equivalent(a, b) == equivalent(b, a)
    classes = {}
    for v in vals:
        key = (v.default_infinite, frozenset(p for p in PRIMES if v.exponent(p) == INF))
        classes.setdefault(key, []).append(v)
    reps = [c[0] for c in classes.values()]
    for c in classes.values():
        assert all(equivalent(c[0], v) for v in c)
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert not equivalent(a, b)


@given(supernaturals, supernaturals, supernaturals)
def test_transitivity(a, b, c):
    if equivalent(a, b) and equivalent(b, c):
        assert equivalent(a, c)


@given(supernaturals, st.integers(1, 10**6), st.integers(1, 10**6))
def test_invariant_under_finite_factors(S, x, y):
    assert equivalent(S * x, S * y)
    T = Supernatural.of({13: INF})
    assert equivalent(S * x, T) == equivalent(S, T)


@given(supernaturals)
def test_universal_iff_equivalent_to_universal(S):
    if is_universal(S):
        assert equivalent(S, U)


@given(supernaturals)
def test_supernatural_json(S):
    assert Supernatural.from_json(S.to_json()) == S


@given(prime_specs)
def test_prime_spec_json(s):
    assert PrimeSeqSpec.from_json(s.to_json()) == s
    assert Supernatural.from_json(s.to_json()) == steinitz(s)
