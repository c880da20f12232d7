"""Pontryagin duality over a small grammar of locally compact abelian groups.

Expressions are immutable trees.  `dual` applies the structural duality
rules, `predicates` evaluates seven topological/algebraic properties from a
fixed rule table, and `check_duality_laws` cross-checks the two against the
compact/discrete, connected/torsion-free and torsion-free/divisible
correspondences.
"""

from __future__ import annotations

import json
from dataclasses import astuple, dataclass, fields

from sympy import isprime

from .supernat import Supernatural, is_universal


class DualityError(ValueError):
    pass


class NonCompactProduct(DualityError):
    pass


class NonDiscreteSum(DualityError):
    pass


class NotAContinuum(ValueError):
    pass


class GroupExpr:
    """Base class of the expression grammar."""

    def to_json(self):
        raise NotImplementedError

    def key(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __str__(self):
        return self.key()


@dataclass(frozen=True)
class _Atom(GroupExpr):
    def to_json(self):
        return type(self).__name__


@dataclass(frozen=True)
class Z(_Atom):
    pass


@dataclass(frozen=True)
class T(_Atom):
    pass


@dataclass(frozen=True)
class Q(_Atom):
    pass


@dataclass(frozen=True)
class Cyclic(GroupExpr):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cyclic order must be >= 1")

    def to_json(self):
        return {"cyclic": self.n}


@dataclass(frozen=True)
class Prufer(GroupExpr):
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def to_json(self):
        return {"prufer": self.p}


@dataclass(frozen=True)
class PadicInt(GroupExpr):
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def to_json(self):
        return {"padic": self.p}


@dataclass(frozen=True)
class Solenoid(GroupExpr):
    S: Supernatural

    def to_json(self):
        return {"solenoid": self.S.to_json()}


@dataclass(frozen=True)
class QWithDenominators(GroupExpr):
    """The subgroup of Q of fractions whose denominators divide S."""

    S: Supernatural

    def to_json(self):
        return {"q_denominators": self.S.to_json()}


@dataclass(frozen=True)
class DirectSum(GroupExpr):
    items: tuple[GroupExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise ValueError("a direct sum needs at least one summand")

    def to_json(self):
        return {"sum": [e.to_json() for e in self.items]}


@dataclass(frozen=True)
class Power(GroupExpr):
    """Countably infinite direct sum (kind="sum") or product (kind="product")."""

    base: GroupExpr
    kind: str

    def __post_init__(self):
        if self.kind not in ("sum", "product"):
            raise ValueError("kind must be 'sum' or 'product'")

    def to_json(self):
        return {"power": {"base": self.base.to_json(), "kind": self.kind}}


TRIVIAL = Cyclic(1)
UNIVERSAL_SOLENOID = Solenoid(Supernatural.universal())


def from_json(obj) -> GroupExpr:
    if isinstance(obj, str):
        atoms = {"Z": Z, "T": T, "Q": Q}
        if obj not in atoms:
            raise ValueError(f"unknown group {obj!r}")
        return atoms[obj]()
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"cannot parse group expression {obj!r}")
    (tag, body), = obj.items()
    if tag == "cyclic":
        return Cyclic(int(body))
    if tag == "prufer":
        return Prufer(int(body))
    if tag == "padic":
        return PadicInt(int(body))
    if tag == "solenoid":
        return Solenoid(Supernatural.from_json(body))
    if tag == "q_denominators":
        return QWithDenominators(Supernatural.from_json(body))
    if tag == "sum":
        return DirectSum(tuple(from_json(e) for e in body))
    if tag == "power":
        return Power(from_json(body["base"]), body["kind"])
    raise ValueError(f"unknown constructor {tag!r}")


# --- normalization ------------------------------------------------------------------------

def is_trivial(e: GroupExpr) -> bool:
    return normalize(e) == TRIVIAL


def normalize(e: GroupExpr) -> GroupExpr:
    """Flatten sums, drop trivial summands, sort summands, collapse degenerate cases."""
    if isinstance(e, DirectSum):
        flat = []
        for x in e.items:
            x = normalize(x)
            if isinstance(x, DirectSum):
                flat.extend(x.items)
            elif x != TRIVIAL:
                flat.append(x)
        if not flat:
            return TRIVIAL
        if len(flat) == 1:
            return flat[0]
        return DirectSum(tuple(sorted(flat, key=GroupExpr.key)))
    if isinstance(e, Power):
        b = normalize(e.base)
        return TRIVIAL if b == TRIVIAL else Power(b, e.kind)
    if isinstance(e, QWithDenominators) and is_universal(e.S):
        return Q()
    return e


# --- predicates -----------------------------------------------------------------------------

@dataclass(frozen=True)
class PredicateVector:
    compact: bool
    discrete: bool
    connected: bool
    torsion_free: bool
    divisible: bool
    metrizable: bool
    countable: bool

    def as_dict(self) -> dict[str, bool]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _pv(compact, discrete, connected, torsion_free, divisible, metrizable, countable):
    return PredicateVector(compact, discrete, connected, torsion_free, divisible, metrizable, countable)


def predicates(e: GroupExpr) -> PredicateVector:
    if isinstance(e, Z):
        return _pv(False, True, False, True, False, True, True)
    if isinstance(e, Q):
        return _pv(False, True, False, True, True, True, True)
    if isinstance(e, T):
        return _pv(True, False, True, False, True, True, False)
    if isinstance(e, Cyclic):
        one = e.n == 1
        return _pv(True, True, one, one, one, True, True)
    if isinstance(e, Prufer):
        return _pv(False, True, False, False, True, True, True)
    if isinstance(e, PadicInt):
        return _pv(True, False, False, True, False, True, False)
    if isinstance(e, Solenoid):
        return _pv(True, False, True, is_universal(e.S), True, True, False)
    if isinstance(e, QWithDenominators):
        return _pv(False, True, False, True, is_universal(e.S), True, True)
    if isinstance(e, DirectSum):
        ps = [predicates(x) for x in e.items]
        return PredicateVector(*(all(col) for col in zip(*map(astuple, ps))))
    if isinstance(e, Power):
        b = predicates(e.base)
        triv = is_trivial(e.base)
        if e.kind == "product":
            return _pv(b.compact, triv, b.connected, b.torsion_free, b.divisible, b.metrizable, triv)
        return _pv(triv, b.discrete, triv, b.torsion_free, b.divisible, b.metrizable, b.countable)
    raise TypeError(f"not a group expression: {e!r}")


# --- duality ----------------------------------------------------------------------------------

def dual(e: GroupExpr) -> GroupExpr:
    if isinstance(e, Z):
        return T()
    if isinstance(e, T):
        return Z()
    if isinstance(e, Q):
        return UNIVERSAL_SOLENOID
    if isinstance(e, Cyclic):
        return e
    if isinstance(e, Prufer):
        return PadicInt(e.p)
    if isinstance(e, PadicInt):
        return Prufer(e.p)
    if isinstance(e, Solenoid):
        # the universal solenoid is dual to Q itself
        return Q() if is_universal(e.S) else QWithDenominators(e.S)
    if isinstance(e, QWithDenominators):
        return UNIVERSAL_SOLENOID if is_universal(e.S) else Solenoid(e.S)
    if isinstance(e, DirectSum):
        return DirectSum(tuple(dual(x) for x in e.items))
    if isinstance(e, Power):
        if e.kind == "product":
            if not predicates(e.base).compact:
                raise NonCompactProduct(f"countable product of non-compact {e.base}")
            return Power(dual(e.base), "sum")
        if not predicates(e.base).discrete:
            raise NonDiscreteSum(f"countable direct sum of non-discrete {e.base}")
        return Power(dual(e.base), "product")
    raise TypeError(f"not a group expression: {e!r}")


def dual_defined(e: GroupExpr) -> bool:
    try:
        dual(dual(e))
    except DualityError:
        return False
    return True


def double_dual_is_identity(e: GroupExpr) -> bool:
    return normalize(dual(dual(e))) == normalize(e)


@dataclass(frozen=True)
class LawReport:
    compact_metrizable: bool | None  # None: hypothesis not met
    connected_torsion_free: bool | None
    torsion_free_divisible: bool | None

    @property
    def passed(self) -> bool:
        return all(v is not False for v in astuple(self))


def check_duality_laws(e: GroupExpr) -> LawReport:
    p, q = predicates(e), predicates(dual(e))
    law1 = (p.compact and p.metrizable) == (q.discrete and q.countable)
    if not p.compact:
        return LawReport(law1, None, None)
    return LawReport(law1, p.connected == q.torsion_free, p.torsion_free == q.divisible)


# --- continua ---------------------------------------------------------------------------------

def is_indecomposable(e: GroupExpr) -> bool:
    """Grammar-level indecomposability of a compact connected group.

    A product of two nondegenerate continua is decomposable; solenoids with an
    infinite supernatural are indecomposable, finite ones are circles.
    """
    p = predicates(e)
    if not (p.compact and p.connected):
        raise NotAContinuum(f"{e} is not a compact connected group")
    e = normalize(e)
    if isinstance(e, Solenoid):
        return not e.S.is_finite()
    if isinstance(e, DirectSum):
        nondegenerate = [x for x in e.items if not is_trivial(x)]
        if len(nondegenerate) == 1:
            return is_indecomposable(nondegenerate[0])
        return False
    # T, the trivial group, and infinite powers of a nontrivial factor
    return False


UNIVERSAL_PROPERTIES = ("compact", "metrizable", "connected", "torsion_free", "indecomposable")


def characterize_universal_solenoid(e: GroupExpr) -> tuple[bool, dict[str, bool]]:
    p = predicates(e)
    breakdown = {name: getattr(p, name) for name in UNIVERSAL_PROPERTIES[:4]}
    breakdown["indecomposable"] = p.compact and p.connected and is_indecomposable(e)
    return all(breakdown.values()), breakdown
