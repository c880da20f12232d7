"""Supernatural (Steinitz) numbers and the classification of solenoids.

The solenoid of a prime sequence depends, up to homeomorphism, only on the
supernatural number prod p^(number of occurrences of p), modulo finite
factors on either side.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf
from typing import Mapping

from sympy import factorint, isprime

INF = inf


def _check_prime(p: int) -> int:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    return int(p)


@dataclass(frozen=True)
class Supernatural:
    """prod p^e_p with e_p in N u {inf}.

    Primes missing from `exponents` have exponent inf when `default_infinite`
    and 0 otherwise; entries equal to the default are dropped.
    """

    exponents: tuple[tuple[int, float], ...] = ()
    default_infinite: bool = False

    def __post_init__(self):
        default = INF if self.default_infinite else 0
        exps = {}
        for p, e in dict(self.exponents).items():
            _check_prime(p)
            if e != INF and (e < 0 or int(e) != e):
                raise ValueError(f"bad exponent {e!r} for {p}")
            e = INF if e == INF else int(e)
            if e != default:
                exps[int(p)] = e
        object.__setattr__(self, "exponents", tuple(sorted(exps.items())))

    @classmethod
    def of(cls, exps: Mapping[int, float] | None = None, default_infinite: bool = False) -> Supernatural:
        return cls(tuple((exps or {}).items()), default_infinite)

    @classmethod
    def universal(cls) -> Supernatural:
        return cls((), True)

    @classmethod
    def from_int(cls, n: int) -> Supernatural:
        if n < 1:
            raise ValueError("only positive integers are supernatural")
        return cls.of(factorint(n))

    def exponent(self, p: int) -> float:
        return dict(self.exponents).get(p, INF if self.default_infinite else 0)

    def infinite_primes(self) -> frozenset[int]:
        """Explicitly listed primes with exponent inf (cofinite when default_infinite)."""
        return frozenset(p for p, e in self.exponents if e == INF)

    def is_finite(self) -> bool:
        """An ordinary positive integer."""
        return not self.default_infinite and not self.infinite_primes()

    def __mul__(self, other: Supernatural | int) -> Supernatural:
        if isinstance(other, int):
            other = Supernatural.from_int(other)
        primes = {p for p, _ in self.exponents} | {p for p, _ in other.exponents}
        default = self.default_infinite or other.default_infinite
        return Supernatural.of({p: self.exponent(p) + other.exponent(p) for p in primes}, default)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {
            "exponents": {str(p): ("inf" if e == INF else e) for p, e in self.exponents},
            "default": "inf" if self.default_infinite else 0,
        }

    @classmethod
    def from_json(cls, obj: dict) -> Supernatural:
        if "all_primes" in obj or "prefix" in obj or "tail" in obj:
            return steinitz(PrimeSeqSpec.from_json(obj))
        exps = {int(p): (INF if e == "inf" else int(e)) for p, e in obj.get("exponents", {}).items()}
        return cls.of(exps, obj.get("default", 0) == "inf")

    def __str__(self):
        if not self.exponents:
            return "prod p^inf" if self.default_infinite else "1"
        body = " * ".join(f"{p}^{'inf' if e == INF else e}" for p, e in self.exponents)
        return body + (" * (others)^inf" if self.default_infinite else "")


@dataclass(frozen=True)
class PrimeSeqSpec:
    """A finite prefix followed by a repeating cycle, or by every prime infinitely often."""

    prefix: tuple[int, ...] = ()
    cycle: tuple[int, ...] = ()
    all_primes: bool = False

    def __post_init__(self):
        for p in self.prefix + self.cycle:
            _check_prime(p)
        if self.all_primes == bool(self.cycle):
            raise ValueError("need exactly one tail: a nonempty cycle or the all-primes marker")

    def terms(self, n: int) -> list[int] | None:
        """First n terms, or None when the all-primes tail makes them unspecified."""
        out = list(self.prefix[:n])
        while len(out) < n:
            if self.all_primes:
                return None
            out.extend(self.cycle)
        return out[:n]

    def drop(self, t: int) -> PrimeSeqSpec:
        """Delete the first t terms."""
        if t <= len(self.prefix):
            return PrimeSeqSpec(self.prefix[t:], self.cycle, self.all_primes)
        if self.all_primes:
            return PrimeSeqSpec((), (), True)
        r = (t - len(self.prefix)) % len(self.cycle)
        return PrimeSeqSpec((), self.cycle[r:] + self.cycle[:r])

    def to_json(self) -> dict:
        tail = {"all_primes": True} if self.all_primes else {"cycle": list(self.cycle)}
        return {"prefix": list(self.prefix), "tail": tail}

    @classmethod
    def from_json(cls, obj: dict) -> PrimeSeqSpec:
        if obj.get("all_primes") and "tail" not in obj:
            return cls(tuple(obj.get("prefix", ())), (), True)
        tail = obj["tail"]
        if tail.get("all_primes"):
            return cls(tuple(obj.get("prefix", ())), (), True)
        return cls(tuple(obj.get("prefix", ())), tuple(tail["cycle"]))


def steinitz(s: PrimeSeqSpec) -> Supernatural:
    if s.all_primes:
        return Supernatural.universal()  # the tail already makes every exponent infinite
    exps: dict[int, float] = {}
    for p in s.prefix:
        exps[p] = exps.get(p, 0) + 1
    for p in s.cycle:
        exps[p] = INF
    return Supernatural.of(exps)


def equivalent(a: Supernatural, b: Supernatural) -> bool:
    """True iff x*a == y*b for some positive integers x, y.

    Finite exponents can always be evened out by finite factors, so only the
    sets of infinite primes must agree.
    """
    if a.default_infinite != b.default_infinite:
        return False
    primes = {p for p, _ in a.exponents} | {p for p, _ in b.exponents}
    return all((a.exponent(p) == INF) == (b.exponent(p) == INF) for p in primes)


def is_universal(s: Supernatural) -> bool:
    return s.default_infinite and not s.exponents


def drop_prefix_invariance(s: PrimeSeqSpec, t: int) -> bool:
    return equivalent(steinitz(s), steinitz(s.drop(t)))
