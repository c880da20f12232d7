import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from solenoids import game
from solenoids.game import (
    IllegalMove,
    InvalidState,
    Move,
    Requirement,
    Transcript,
    audit,
    builder_strategy,
    collapse,
    legal,
    play,
    random_adversary,
    schedule,
)
from solenoids.qembed import Certificate, close_certificate, divisibility_witness, trivial_certificate
from solenoids.tablespace import PartialTable, multiple


def trivial_move() -> Move:
    C = trivial_certificate()
    return Move(C.table, C)


def test_schedule_alternates_and_is_fair():
    assert schedule(0) == Requirement("divisibility", 1, 2)
    assert schedule(1) == Requirement("common_multiple", 1, 1)
    divs = {(schedule(r).a, schedule(r).b) for r in range(0, 400, 2)}
    assert {(n, k) for n in range(1, 6) for k in range(2, 7) if n + k <= 7} <= divs
    assert all(schedule(r).kind == ("divisibility" if r % 2 == 0 else "common_multiple") for r in range(50))


def test_legal_examples():
    t = Transcript()
    assert legal(trivial_move(), t) == (True, "ok")
    big = close_certificate({0: (0,), 1: (1,), 2: (2,)}, 2)
    t.moves.append(game.PlayedMove("a", "x", 0, Move(big.table, big)))
    small = close_certificate({0: (0,), 1: (1,)}, 1)
    ok, why = legal(Move(small.table, small), t)
    assert not ok and why == "not an extension"
    broken = Certificate(1, {**big.points, 0: (Fraction(9),)}, big.table)
    ok, why = legal(Move(big.table, broken), Transcript())
    assert not ok and "points[0]" in why


def test_legal_rejects_axiom_violation():
    bad = PartialTable.from_entries(1, {(0, 0): 0, (0, 1): 2, (1, 0): 1, (1, 1): 0})
    C = Certificate(1, {0: (0,), 1: (1,), 2: (2,)}, bad)
    ok, _ = legal(Move(bad, C), Transcript())
    assert not ok


def test_builder_round_zero_divides():
    mv = builder_strategy(Transcript(), 0)
    assert legal(mv, Transcript())[0]
    m = mv.claim.witness
    assert m <= mv.clopen.k
    assert multiple(mv.clopen, 2, m) == 1
    t = Transcript([game.PlayedMove("a", "builder", 0, mv)])
    real = game.realize_patch(mv.certificate)
    assert divisibility_witness(real.oracle, 1, 2, None) == m


def test_builder_equal_pair():
    t = Transcript()
    t.moves.append(game.PlayedMove("a", "builder", 0, builder_strategy(t, 0)))
    before = t.clopen()
    mv = builder_strategy(t, 1)
    assert mv.claim == game.Claim(Requirement("common_multiple", 1, 1), (1, 1))
    assert mv.clopen == before


def test_builder_rejects_broken_state():
    C = close_certificate({0: (0,), 1: (1,)}, 1)
    broken = Certificate(1, {**C.points, 1: (Fraction(0),)}, C.table)
    t = Transcript([game.PlayedMove("a", "adv", 0, Move(C.table, broken))])
    with pytest.raises(InvalidState):
        builder_strategy(t, 0)


def test_collapse_is_idempotent():
    t = play(builder_strategy, random_adversary(3), 4)
    C = t.moves[-1].move.certificate
    once = collapse(C)
    twice = collapse(Certificate(1, once, C.table))
    assert once == twice


def test_builder_vs_builder():
    t = play(builder_strategy, builder_strategy, 2)
    assert audit(t).passed


def test_zero_budget_adversary_passes():
    t = Transcript()
    t.moves.append(game.PlayedMove("a", "builder", 0, builder_strategy(t, 0)))
    mv = random_adversary(1, budget=0)(t, 0)
    assert mv.clopen == t.clopen() and legal(mv, t)[0]


def test_rounds_must_be_positive():
    with pytest.raises(ValueError):
        play(builder_strategy, random_adversary(0), 0)


def test_illegal_move_aborts():
    def shrinker(state, r, seed=0):
        return trivial_move()

    with pytest.raises(IllegalMove) as exc:
        play(builder_strategy, shrinker, 3)
    assert exc.value.reason == "not an extension" and exc.value.round == 0


@pytest.mark.parametrize("seed", [7, 19])
def test_builder_vs_adversary_audits(seed):
    t = play(builder_strategy, random_adversary(seed), 30, seed)
    rep = audit(t)
    assert rep.passed, rep.failures
    assert rep.forced >= 1
    for r, req, w in t.processed_requirements:
        if req.kind == "divisibility":
            assert multiple(t.final_oracle.oracle, req.b, w) == req.a


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(1, 12))
def test_adversary_always_legal(seed, rounds):
    adv = random_adversary(seed)
    t = Transcript()
    for r in range(rounds):
        mv = adv(t, r, 0)
        assert legal(mv, t)[0]
        t.moves.append(game.PlayedMove("a", adv.name, r, mv))


def test_determinism_and_round_trip():
    a = play(builder_strategy, random_adversary(5), 10, 5).dumps()
    b = play(builder_strategy, random_adversary(5), 10, 5).dumps()
    assert a == b
    t = Transcript.from_json(json.loads(a))
    assert t.dumps() == a and audit(t).passed


def test_forged_witness_is_flagged():
    t = play(builder_strategy, random_adversary(2), 6, 2)
    r, req, w = t.processed_requirements[0]
    t.processed_requirements[0] = (r, req, w + 1)
    rep = audit(t)
    assert not rep.passed
    assert any(c.startswith("witness[") for c, _, _ in rep.failures)


def test_missing_claim_is_flagged():
    t = play(builder_strategy, random_adversary(2), 4, 2)
    t.processed_requirements = t.processed_requirements[1:]
    assert not audit(t).passed


def test_empty_transcript_passes():
    assert audit(Transcript()).passed


def test_adversary_first():
    t = play(random_adversary(4), builder_strategy, 8, 1)
    assert audit(t).passed
