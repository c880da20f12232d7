"""A finite-horizon game on the space of group tables.

Two strategies alternately shrink a basic clopen set (a finite table on
{0..k}^2), each move carrying a certificate that the set is nonempty.  The
builder works through a fixed schedule of requirements (divisibility and
common multiples); after each builder move the requirement's witness is
pinned in the certificate, and forced by the table itself whenever the
window can absorb it without exceeding `WINDOW_CAP`.  `audit` checks the
outcome against the realization of the last builder move.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import count
from math import gcd, isqrt
from typing import Callable, Union

from .qembed import Certificate, Realization, close_certificate, realize_patch, trivial_certificate
from .tablespace import PartialTable, check_axioms, multiple, torsion_witness_search

WINDOW_CAP = 16
AUDIT_TORSION_BOUND = 30


class IllegalMove(ValueError):
    def __init__(self, player: str, round: int, reason: str):
        super().__init__(f"{player} made an illegal move in round {round}: {reason}")
        self.player, self.round, self.reason = player, round, reason


class InvalidState(ValueError):
    pass


# --- requirements -------------------------------------------------------------------------

def _unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


@dataclass(frozen=True)
class Requirement:
    """("divisibility", n, k): some m with k*m == n.  ("common_multiple", k, l): m*k == n*l."""

    kind: str
    a: int
    b: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "args": [self.a, self.b]}

    @classmethod
    def from_json(cls, obj: dict) -> Requirement:
        a, b = obj["args"]
        return cls(obj["kind"], int(a), int(b))


def schedule(r: int) -> Requirement:
    """Even rounds take divisibility pairs, odd rounds common-multiple pairs, each along the diagonal."""
    x, y = _unpair(r // 2)
    if r % 2 == 0:
        return Requirement("divisibility", x + 1, y + 2)
    return Requirement("common_multiple", x + 1, y + 1)


Witness = Union[int, tuple[int, int]]


def verify_witness(T, req: Requirement, w: Witness) -> bool:
    """Check a witness by arithmetic through T (an oracle or a partial table)."""
    if req.kind == "divisibility":
        return isinstance(w, int) and multiple(T, req.b, w) == req.a
    if not isinstance(w, tuple) or len(w) != 2:
        return False
    m, n = w
    if m <= 0 or n == 0:
        return False
    lhs = multiple(T, m, req.a)
    return lhs is not None and lhs == multiple(T, n, req.b)


# --- moves and transcripts ----------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    requirement: Requirement
    witness: Witness

    def to_json(self) -> dict:
        w = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        return {"requirement": self.requirement.to_json(), "witness": w}

    @classmethod
    def from_json(cls, obj: dict) -> Claim:
        w = obj["witness"]
        return cls(Requirement.from_json(obj["requirement"]), tuple(w) if isinstance(w, list) else int(w))


@dataclass(frozen=True)
class Move:
    clopen: PartialTable
    certificate: Certificate
    claim: Claim | None = None

    def to_json(self) -> dict:
        return {
            "clopen": self.clopen.to_json(),
            "certificate": self.certificate.to_json(),
            "claim": self.claim.to_json() if self.claim else None,
        }

    @classmethod
    def from_json(cls, obj: dict) -> Move:
        claim = Claim.from_json(obj["claim"]) if obj.get("claim") else None
        return cls(PartialTable.from_json(obj["clopen"]), Certificate.from_json(obj["certificate"]), claim)


@dataclass(frozen=True)
class PlayedMove:
    seat: str  # "a" or "b"
    strategy: str
    round: int
    move: Move

    def to_json(self) -> dict:
        return {"seat": self.seat, "strategy": self.strategy, "round": self.round, **self.move.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> PlayedMove:
        return cls(obj["seat"], obj["strategy"], int(obj["round"]), Move.from_json(obj))


@dataclass
class Transcript:
    moves: list[PlayedMove] = field(default_factory=list)
    processed_requirements: list[tuple[int, Requirement, Witness]] = field(default_factory=list)
    final_oracle: Realization | None = None

    def certificate(self) -> Certificate:
        return self.moves[-1].move.certificate if self.moves else trivial_certificate()

    def clopen(self) -> PartialTable:
        return self.moves[-1].move.clopen if self.moves else PartialTable.trivial()

    def final_move(self) -> PlayedMove | None:
        builders = [pm for pm in self.moves if pm.strategy == BUILDER_NAME]
        return (builders or self.moves or [None])[-1]

    def to_json(self) -> dict:
        return {
            "moves": [pm.to_json() for pm in self.moves],
            "requirements": [
                {"round": r, **Claim(req, w).to_json()} for r, req, w in self.processed_requirements
            ],
            "final_permutation": self.final_oracle.nu.to_json() if self.final_oracle else None,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: dict) -> Transcript:
        t = cls([PlayedMove.from_json(m) for m in obj["moves"]])
        for r in obj["requirements"]:
            c = Claim.from_json(r)
            t.processed_requirements.append((int(r["round"]), c.requirement, c.witness))
        last = t.final_move()
        t.final_oracle = realize_patch(last.move.certificate) if last else None
        return t


# --- legality -----------------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _axiom_problems(T: PartialTable) -> tuple[str, ...]:
    return tuple(check_axioms(T).violated)


def legal(m: Move, state: Transcript) -> tuple[bool, str]:
    if not m.clopen.extends(state.clopen()):
        return False, "not an extension"
    bad = m.certificate.problems()
    if bad:
        return False, "invalid certificate: " + "; ".join(bad)
    if m.certificate.table != m.clopen:
        return False, "certificate does not realize the clopen set"
    violated = _axiom_problems(m.clopen)
    if violated:
        return False, "axioms violated: " + ", ".join(violated)
    return True, "ok"


# --- strategies ---------------------------------------------------------------------------------

Strategy = Callable[[Transcript, int, int], Move]
BUILDER_NAME = "builder"


def _strategy_name(s) -> str:
    return getattr(s, "name", getattr(s, "__name__", "strategy"))


def _place(pts: dict, where: dict, v: tuple) -> int:
    """Index of v, assigning the smallest free index when v is new."""
    i = where.get(v)
    if i is None:
        i = next(j for j in count() if j not in pts)
        pts[i] = v
        where[v] = i
    return i


def _collapse(C: Certificate) -> tuple[Realization, int, dict]:
    real = realize_patch(C)
    g = reduce(gcd, (y.numerator for y in real.images.values()), 0) or 1
    return real, g, {i: (y / g,) for i, y in real.images.items()}


def collapse(C: Certificate) -> dict[int, tuple[Fraction]]:
    """The certificate's points pushed through realize_patch, as primitive integers in Q^1."""
    return _collapse(C)[2]


def builder_strategy(state: Transcript, round: int, seed: int = 0) -> Move:
    C = state.certificate()
    bad = C.problems()
    if bad:
        raise InvalidState("; ".join(bad))
    real, g, pts = _collapse(C)
    where = {v: i for i, v in pts.items()}

    def ensure(i):
        # unpinned indices take their values from the realized table
        for j in range(i + 1):
            if j not in pts:
                _place(pts, where, (Fraction(real.oracle.value(j)) / g,))

    req = schedule(round)
    needed = []
    if req.kind == "divisibility":
        n, k = req.a, req.b
        ensure(n)
        w = (pts[n][0] / k,)
        m = _place(pts, where, w)
        chain = [_place(pts, where, (j * w[0],)) for j in range(2, k)]
        needed = [n, m, *chain]
        witness: Witness = m
    else:
        k, l = req.a, req.b
        ensure(max(k, l))
        ratio = pts[k][0] / pts[l][0]
        witness = (ratio.denominator, ratio.numerator)
    kk = C.table.k
    if needed and max(needed) <= WINDOW_CAP:
        kk = max(kk, max(needed))
    out = close_certificate(pts, kk, keep_all=True)
    return Move(out.table, out, Claim(req, witness))


builder_strategy.name = BUILDER_NAME


@dataclass(frozen=True)
class RandomAdversary:
    """Adds up to `budget` random rational points per move and grows the window to hold them."""

    seed: int
    budget: int = 2
    name: str = "random"

    def __call__(self, state: Transcript, round: int, seed: int = 0) -> Move:
        rng = random.Random(f"{self.seed}/{seed}/{round}/{len(state.moves)}")
        C = state.certificate() if state.moves else trivial_certificate(rng.randint(1, 3))
        pts = dict(C.points)
        where = {v: i for i, v in pts.items()}
        new = []
        for _ in range(rng.randint(0, self.budget)):
            v = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(C.d))
            new.append(_place(pts, where, v))
        kk = C.table.k
        if new and max(new) <= WINDOW_CAP:
            kk = max(kk, max(new))
        out = close_certificate(pts, kk, keep_all=True)
        return Move(out.table, out)


def random_adversary(seed: int, budget: int = 2) -> RandomAdversary:
    return RandomAdversary(seed, budget)


# --- play ---------------------------------------------------------------------------------------

def play(a: Strategy, b: Strategy, rounds: int, seed: int = 0) -> Transcript:
    """Each round a moves, then b.  Every move is checked with `legal`."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    t = Transcript()
    for r in range(rounds):
        for seat, strat in (("a", a), ("b", b)):
            name = _strategy_name(strat)
            mv = strat(t, r, seed)
            ok, why = legal(mv, t)
            if not ok:
                raise IllegalMove(f"{seat}:{name}", r, why)
            t.moves.append(PlayedMove(seat, name, r, mv))
            if mv.claim is not None:
                t.processed_requirements.append((r, mv.claim.requirement, mv.claim.witness))
    last = t.final_move()
    t.final_oracle = realize_patch(last.move.certificate)
    return t


# --- audit --------------------------------------------------------------------------------------

@dataclass
class AuditReport:
    entries: list[tuple[str, bool, str]] = field(default_factory=list)
    forced: int = 0  # requirements already decided by the final clopen set

    def add(self, check: str, ok: bool, detail: str = "") -> None:
        self.entries.append((check, ok, detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    @property
    def failures(self) -> list[tuple[str, bool, str]]:
        return [e for e in self.entries if not e[1]]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "forced": self.forced,
            "checks": len(self.entries),
            "failures": [{"check": c, "detail": d} for c, _, d in self.failures],
        }


def audit(t: Transcript) -> AuditReport:
    rep = AuditReport()
    prev = PartialTable.trivial()
    for i, pm in enumerate(t.moves):
        mv = pm.move
        rep.add(f"nesting[{i}]", mv.clopen.extends(prev), "" if mv.clopen.extends(prev) else "not an extension")
        bad = mv.certificate.problems()
        if not bad and mv.certificate.table != mv.clopen:
            bad = ["certificate does not realize the clopen set"]
        rep.add(f"certificate[{i}]", not bad, "; ".join(bad))
        prev = mv.clopen
    if not t.moves:
        return rep

    claimed = {}
    for r, req, w in t.processed_requirements:
        claimed.setdefault(r, []).append((req, w))
    last_builder = max((pm.round for pm in t.moves if pm.strategy == BUILDER_NAME), default=-1)
    for pm in t.moves:
        if pm.strategy == BUILDER_NAME:
            due = schedule(pm.round)
            ok = any(req == due for req, _ in claimed.get(pm.round, []))
            rep.add(f"scheduled[{pm.round}]", ok, "" if ok else f"no witness recorded for {due}")

    final = t.final_oracle
    if final is None:
        rep.add("final_oracle", False, "transcript has moves but no final oracle")
        return rep
    clopen = t.final_move().move.clopen
    for r, req, w in t.processed_requirements:
        if r > last_builder:
            continue
        ok = verify_witness(final.oracle, req, w)
        rep.add(f"witness[{r}]", ok, "" if ok else f"{req} fails with {w}")
        if ok and verify_witness(clopen, req, w):
            rep.forced += 1
    tw = torsion_witness_search(final.oracle, AUDIT_TORSION_BOUND)
    rep.add("torsion_free", tw is None, "" if tw is None else f"torsion witness {tw}")
    return rep
