import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import factorint

from solenoids.tablespace import (
    CANONICAL_Q,
    INTEGERS,
    FinitePermutation,
    IntegerLatticeTable,
    LinearConstraintSet,
    PartialTable,
    apply_permutation,
    canonical_rational_table,
    check_axioms,
    eval_constraints,
    inverse,
    multiple,
    rational_index,
    rational_value,
    supp,
    torsion_witness_search,
    window,
)

Z2 = PartialTable.from_entries(1, {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0})


def oracle_value(i: int) -> Fraction:
    # independent decoder: full factorization, even exponents -> numerator, odd -> denominator
    if i == 0:
        return Fraction(0)
    num = den = 1
    for p, e in factorint((i + 1) // 2).items():
        if e % 2:
            den *= p ** ((e + 1) // 2)
        else:
            num *= p ** (e // 2)
    x = Fraction(num, den)
    return x if i % 2 else -x


rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**4)


def test_first_values():
    assert [rational_value(i) for i in range(7)] == [0, 1, -1, Fraction(1, 2), Fraction(-1, 2),
                                                    Fraction(1, 3), Fraction(-1, 3)]


def test_bijection_on_prefix():
    vals = [rational_value(i) for i in range(5000)]
    assert len(set(vals)) == len(vals)
    assert all(rational_index(v) == i for i, v in enumerate(vals))
    for a in range(-6, 7):
        for b in range(1, 7):
            assert rational_index(Fraction(a, b)) < 5000


@given(rationals)
def test_index_round_trip(x):
    assert rational_value(rational_index(x)) == x
    assert oracle_value(rational_index(x)) == x


def test_canonical_addition_against_independent_decoder():
    rng = random.Random(11)
    for _ in range(100):
        i, j = rng.randrange(10**6), rng.randrange(10**6)
        assert oracle_value(canonical_rational_table(i, j)) == oracle_value(i) + oracle_value(j)


@given(st.integers(0, 10**6))
def test_canonical_identity_and_inverse(j):
    assert canonical_rational_table(0, j) == j
    assert canonical_rational_table(j, CANONICAL_Q.neg(j)) == 0


def test_axioms_examples():
    rep = check_axioms(PartialTable.trivial())
    assert rep.consistent and rep.inverses.status == "holds"
    rep = check_axioms(Z2)
    assert rep.commutativity.status == "holds" and rep.inverse_of[1] == 1
    bad = PartialTable.from_entries(1, {(0, 0): 0, (0, 1): 2, (1, 0): 1, (1, 1): 0})
    rep = check_axioms(bad)
    assert rep.commutativity.status == "violated" and rep.commutativity.witness == (0, 1)


def test_missing_inverse_is_undecided():
    T = window(CANONICAL_Q, 1)  # -1 has index 2, outside the window
    rep = check_axioms(T)
    assert rep.inverses.status == "undecided" and rep.consistent


def test_violated_witness_is_checkable():
    T = PartialTable.from_entries(2, {(0, 0): 0, (0, 1): 1, (0, 2): 2, (1, 0): 1, (2, 0): 2,
                                      (1, 1): 2, (1, 2): 0, (2, 1): 0, (2, 2): 2})
    rep = check_axioms(T)
    assert rep.associativity.status == "violated"
    n, m, l = rep.associativity.witness
    assert T(T(n, m), l) != T(n, T(m, l))


def test_supp_examples():
    T = PartialTable.from_entries(1, {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 2})
    assert supp(T) == {0, 1, 2}
    assert supp(PartialTable.trivial()) == {0}
    T = PartialTable.from_entries(2, {(i, j): (7 if (i, j) == (2, 2) else i + j) for i in range(3) for j in range(3)})
    assert 7 in supp(T)


@given(st.integers(0, 6), st.integers(0, 4))
def test_supp_monotone(k, extra):
    assert supp(window(CANONICAL_Q, k)) <= supp(window(CANONICAL_Q, k + extra))


def test_constraint_examples():
    C = LinearConstraintSet(args=(1,), equalities=(((2,), INTEGERS.index_of(2)),))
    assert eval_constraints(INTEGERS, C).status == "satisfied"
    assert eval_constraints(INTEGERS, LinearConstraintSet()).status == "satisfied"
    T = window(INTEGERS, 2)
    C = LinearConstraintSet(args=(7,), equalities=(((1,), 7),))
    assert eval_constraints(T, C).status == "undetermined"
    C = LinearConstraintSet(args=(1,), disequalities=(((2,), INTEGERS.index_of(2)),))
    assert eval_constraints(INTEGERS, C).status == "violated"


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.lists(st.integers(0, 30), min_size=2, max_size=2),
       st.integers(0, 40))
def test_constraints_on_total_oracle_never_undetermined(coeffs, args, target):
    C = LinearConstraintSet(tuple(args), ((tuple(coeffs), target),), ((tuple(coeffs), target + 1),))
    assert eval_constraints(CANONICAL_Q, C).status != "undetermined"


def test_permutation_examples():
    assert apply_permutation(INTEGERS, FinitePermutation()) is INTEGERS
    assert INTEGERS(1, 1) == 3
    O = apply_permutation(INTEGERS, FinitePermutation.swap(1, 2))
    assert O(2, 2) == 3


perms = st.lists(st.integers(1, 12), unique=True, min_size=0, max_size=6).flatmap(
    lambda xs: st.permutations(xs).map(lambda ys: FinitePermutation(tuple(zip(xs, ys)))))


@given(perms, perms)
def test_group_action(nu, mu):
    k = 8
    lhs = window(apply_permutation(apply_permutation(CANONICAL_Q, nu), mu), k)
    rhs = window(apply_permutation(CANONICAL_Q, mu.compose(nu)), k)
    assert lhs == rhs
    O = apply_permutation(INTEGERS, nu)
    for i in range(k):
        for j in range(k):
            assert O(i, j) == nu(INTEGERS(nu.apply_inverse(i), nu.apply_inverse(j)))


def test_permutation_must_fix_zero():
    with pytest.raises(ValueError):
        FinitePermutation(((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        FinitePermutation(((1, 2),))


@given(perms)
def test_permutation_json(nu):
    assert FinitePermutation.from_json(nu.to_json()) == nu
    assert nu.compose(nu.inverse()).is_identity()


def test_torsion_examples():
    assert torsion_witness_search(INTEGERS, 10) is None
    assert torsion_witness_search(Z2, 2) == (1, 2)
    assert torsion_witness_search(PartialTable.trivial(), 5) is None


@given(st.integers(0, 8))
def test_oracle_windows_pass_checks(k):
    for O in (CANONICAL_Q, INTEGERS, IntegerLatticeTable(2)):
        T = window(O, k)
        assert check_axioms(T).consistent
        assert torsion_witness_search(O, 12) is None


@given(st.integers(-20, 20), st.integers(0, 200))
def test_multiple_matches_values(c, i):
    assert rational_value(multiple(CANONICAL_Q, c, i)) == c * rational_value(i)
    assert inverse(CANONICAL_Q, i) == CANONICAL_Q.neg(i)


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=3))
def test_lattice_enumeration_round_trip(v):
    L = IntegerLatticeTable(len(v))
    assert L.value(L.index_of(tuple(v))) == tuple(v)


def test_partial_table_json_and_restrict():
    T = window(CANONICAL_Q, 4)
    assert PartialTable.from_json(T.to_json()) == T
    assert T.extends(T.restrict(2)) and not T.restrict(2).extends(T)
    with pytest.raises(ValueError):
        PartialTable.from_entries(1, {(0, 0): 0})
