"""Group operations on the naturals: finite table fragments and total oracles.

A point of the space of abelian group operations on N is an infinite table.
Here it is either a `PartialTable` (the values on {0..k}^2, which cut out a
basic clopen set) or a `GroupOracle`, a deterministic function computing any
entry on demand.  Everything space-level is exercised through finite windows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Callable, Iterator, Sequence

from sympy import factorint, primerange

Table = Callable[[int, int], "int | None"]

_SMALL_PRIMES = tuple(primerange(2, 1000))


# --- the fixed bijection N -> Q ------------------------------------------------

def _positive_index(x: Fraction) -> int:
    # a/b  ->  a^2 * prod p^(2e-1) over p^e || b   (bijection Q+ -> N+)
    n = x.numerator ** 2
    for p, e in factorint(x.denominator).items():
        n *= p ** (2 * e - 1)
    return n


def _positive_value(n: int) -> Fraction:
    num, den = 1, 1
    for p in _SMALL_PRIMES:
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            den *= p ** ((e + 1) // 2)
        else:
            num *= p ** (e // 2)
    if n > 1:
        r = isqrt(n)
        if r * r == n:
            num *= r
        else:
            for p, e in factorint(n).items():
                if e % 2:
                    den *= p ** ((e + 1) // 2)
                else:
                    num *= p ** (e // 2)
    return Fraction(num, den)


@lru_cache(maxsize=1 << 16)
def rational_value(i: int) -> Fraction:
    """q(i): q(0) = 0, q(2n-1) = r_n, q(2n) = -r_n."""
    if i < 0:
        raise ValueError("indices are natural numbers")
    if i == 0:
        return Fraction(0)
    r = _positive_value((i + 1) // 2)
    return r if i % 2 else -r


@lru_cache(maxsize=1 << 16)
def rational_index(x: Fraction) -> int:
    """Inverse of `rational_value`."""
    x = Fraction(x)
    if x == 0:
        return 0
    n = _positive_index(abs(x))
    return 2 * n - 1 if x > 0 else 2 * n


# --- permutations ---------------------------------------------------------------

@dataclass(frozen=True)
class FinitePermutation:
    """A permutation of N fixing 0 and moving finitely many points."""

    mapping: tuple[tuple[int, int], ...] = ()
    _fwd: dict = field(init=False, repr=False, compare=False, hash=False)
    _inv: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        fwd = {a: b for a, b in self.mapping if a != b}
        if len(fwd) != len([p for p in self.mapping if p[0] != p[1]]):
            raise ValueError("duplicate source in permutation")
        if set(fwd) != set(fwd.values()):
            raise ValueError("mapping is not a bijection on its support")
        if 0 in fwd:
            raise ValueError("permutation must fix 0")
        object.__setattr__(self, "mapping", tuple(sorted(fwd.items())))
        object.__setattr__(self, "_fwd", fwd)
        object.__setattr__(self, "_inv", {b: a for a, b in fwd.items()})

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> FinitePermutation:
        return cls(tuple(d.items()))

    @classmethod
    def swap(cls, a: int, b: int) -> FinitePermutation:
        return cls(((a, b), (b, a)))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._fwd)

    def __call__(self, i: int) -> int:
        return self._fwd.get(i, i)

    def inverse(self) -> FinitePermutation:
        return FinitePermutation(tuple(self._inv.items()))

    def apply_inverse(self, i: int) -> int:
        return self._inv.get(i, i)

    def compose(self, other: FinitePermutation) -> FinitePermutation:
        """self o other."""
        pts = self.support | other.support
        return FinitePermutation(tuple((a, self(other(a))) for a in pts))

    def is_identity(self) -> bool:
        return not self._fwd

    def to_json(self) -> dict:
        return {"mapping": [[a, b] for a, b in self.mapping]}

    @classmethod
    def from_json(cls, obj: dict) -> FinitePermutation:
        return cls(tuple((int(a), int(b)) for a, b in obj["mapping"]))


# --- total oracles ----------------------------------------------------------------

class GroupOracle:
    """A total abelian group operation on N with identity 0.

    Subclasses implement `op` and `neg`; `value`/`index_of` expose the concrete
    group element behind an index when the model group is known.
    """

    def __call__(self, i: int, j: int) -> int:
        return self.op(i, j)

    def op(self, i: int, j: int) -> int:
        raise NotImplementedError

    def neg(self, i: int) -> int:
        raise NotImplementedError

    def value(self, i: int):
        raise NotImplementedError

    def index_of(self, x) -> int:
        raise NotImplementedError


class RationalTable(GroupOracle):
    """(Q, +) transported to N along `rational_value`."""

    def op(self, i, j):
        return rational_index(rational_value(i) + rational_value(j))

    def neg(self, i):
        return rational_index(-rational_value(i))

    def value(self, i):
        return rational_value(i)

    def index_of(self, x):
        return rational_index(Fraction(x))

    def __repr__(self):
        return "RationalTable()"


CANONICAL_Q = RationalTable()


def canonical_rational_table(i: int, j: int) -> int:
    return CANONICAL_Q.op(i, j)


def _zigzag(n: int) -> int:
    # 0, 1, -1, 2, -2, ...
    return (n + 1) // 2 if n % 2 else -(n // 2)


def _unzigzag(z: int) -> int:
    return 2 * z - 1 if z > 0 else -2 * z


def _unpair(n: int) -> tuple[int, int]:
    w = (isqrt(8 * n + 1) - 1) // 2
    y = n - w * (w + 1) // 2
    return w - y, y


def _pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


class IntegerLatticeTable(GroupOracle):
    """(Z^d, +) on N.  For d == 1 this is the enumeration 0, 1, -1, 2, -2, ..."""

    def __init__(self, d: int = 1):
        if d < 1:
            raise ValueError("d must be positive")
        self.d = d

    def value(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.d - 1):
            a, i = _unpair(i)
            out.append(_zigzag(a))
        out.append(_zigzag(i))
        return tuple(out)

    def index_of(self, v) -> int:
        v = (v,) if isinstance(v, int) else tuple(v)
        n = _unzigzag(v[-1])
        for z in reversed(v[:-1]):
            n = _pair(_unzigzag(z), n)
        return n

    def op(self, i, j):
        return self.index_of(tuple(a + b for a, b in zip(self.value(i), self.value(j))))

    def neg(self, i):
        return self.index_of(tuple(-a for a in self.value(i)))

    def __repr__(self):
        return f"IntegerLatticeTable({self.d})"


INTEGERS = IntegerLatticeTable(1)


class PermutedOracle(GroupOracle):
    """h_nu(G): (i, j) -> nu(G(nu^-1 i, nu^-1 j))."""

    def __init__(self, base: GroupOracle, perm: FinitePermutation):
        self.base = base
        self.perm = perm

    def op(self, i, j):
        p = self.perm
        return p(self.base.op(p.apply_inverse(i), p.apply_inverse(j)))

    def neg(self, i):
        return self.perm(self.base.neg(self.perm.apply_inverse(i)))

    def value(self, i):
        return self.base.value(self.perm.apply_inverse(i))

    def index_of(self, x):
        return self.perm(self.base.index_of(x))

    def __repr__(self):
        return f"PermutedOracle({self.base!r}, {self.perm.mapping!r})"


def apply_permutation(T: GroupOracle, nu: FinitePermutation) -> GroupOracle:
    if nu.is_identity():
        return T
    if isinstance(T, PermutedOracle):
        return PermutedOracle(T.base, nu.compose(T.perm))
    return PermutedOracle(T, nu)


# --- partial tables ------------------------------------------------------------------

@dataclass(frozen=True)
class PartialTable:
    """The values m[i][j] = i + j for i, j <= k."""

    k: int
    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.k + 1
        if self.k < 0 or len(self.grid) != n or any(len(r) != n for r in self.grid):
            raise ValueError("table must be total on {0..k}^2")
        if any(m < 0 for r in self.grid for m in r):
            raise ValueError("table values are natural numbers")

    @classmethod
    def from_entries(cls, k: int, entries) -> PartialTable:
        if not isinstance(entries, dict):
            entries = {(i, j): m for i, j, m in entries}
        try:
            grid = tuple(tuple(int(entries[i, j]) for j in range(k + 1)) for i in range(k + 1))
        except KeyError as exc:
            raise ValueError(f"missing entry {exc.args[0]}") from None
        return cls(k, grid)

    @classmethod
    def trivial(cls) -> PartialTable:
        return cls(0, ((0,),))

    def __call__(self, i: int, j: int) -> int | None:
        if 0 <= i <= self.k and 0 <= j <= self.k:
            return self.grid[i][j]
        return None

    def entries(self) -> Iterator[tuple[int, int, int]]:
        for i, r in enumerate(self.grid):
            for j, m in enumerate(r):
                yield i, j, m

    def restrict(self, k: int) -> PartialTable:
        if k > self.k:
            raise ValueError("cannot restrict to a larger window")
        return PartialTable(k, tuple(r[: k + 1] for r in self.grid[: k + 1]))

    def extends(self, other: PartialTable) -> bool:
        """True if self agrees with `other` on other's whole window."""
        return self.k >= other.k and self.restrict(other.k) == other

    def to_json(self) -> dict:
        return {"k": self.k, "entries": [[i, j, m] for i, j, m in self.entries()]}

    @classmethod
    def from_json(cls, obj: dict) -> PartialTable:
        return cls.from_entries(int(obj["k"]), [tuple(map(int, e)) for e in obj["entries"]])


def window(T: Table, k: int) -> PartialTable:
    return PartialTable(k, tuple(tuple(T(i, j) for j in range(k + 1)) for i in range(k + 1)))


def supp(T: PartialTable) -> set[int]:
    return set(range(1, T.k + 1)) | {m for _, _, m in T.entries()}


# --- arithmetic through a table -------------------------------------------------------

def is_total(T) -> bool:
    return isinstance(T, GroupOracle)


def inverse(T: Table, a: int) -> int | None:
    if is_total(T):
        return T.neg(a)
    if a > T.k:
        return None
    for j in range(T.k + 1):
        if T(a, j) == 0 and T(j, a) == 0:
            return j
    return None


def multiple(T: Table, c: int, a: int) -> int | None:
    """c*a computed by table application; None once it leaves a partial table."""
    if c < 0:
        a = inverse(T, a)
        if a is None:
            return None
        c = -c
    if c == 0:
        return 0
    if is_total(T):
        acc, base = 0, a
        while c:
            if c & 1:
                acc = T(acc, base)
            c >>= 1
            if c:
                base = T(base, base)
        return acc
    acc = a
    for _ in range(c - 1):
        acc = T(acc, a)
        if acc is None:
            return None
    return acc


# --- axioms ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomStatus:
    status: str  # "holds" | "violated" | "undecided"
    witness: tuple | None = None


@dataclass(frozen=True)
class AxiomReport:
    associativity: AxiomStatus
    identity: AxiomStatus
    inverses: AxiomStatus
    commutativity: AxiomStatus
    inverse_of: dict = field(default_factory=dict)

    @property
    def violated(self) -> list[str]:
        return [name for name in ("associativity", "identity", "inverses", "commutativity")
                if getattr(self, name).status == "violated"]

    @property
    def consistent(self) -> bool:
        return not self.violated


def _first_assoc_violation(T: PartialTable):
    k, g = T.k, T.grid
    for n in range(k + 1):
        for m in range(k + 1):
            x = g[n][m]
            if x > k:
                continue
            gx = g[x]
            for l in range(k + 1):
                y = g[m][l]
                if y <= k and gx[l] != g[n][y]:
                    return (n, m, l)
    return None


def check_axioms(T: PartialTable) -> AxiomReport:
    """Check the group axioms on the defined region of a table fragment.

    Associativity is only tested on triples whose intermediate sums stay in
    the window.  A missing inverse is "undecided": it may appear beyond k.
    """
    w = _first_assoc_violation(T)
    assoc = AxiomStatus("violated", w) if w else AxiomStatus("holds")

    ident = AxiomStatus("holds")
    for n in range(T.k + 1):
        if T(n, 0) != n or T(0, n) != n:
            ident = AxiomStatus("violated", (n,))
            break

    comm = AxiomStatus("holds")
    for i, j, m in T.entries():
        if T(j, i) != m:
            comm = AxiomStatus("violated", (i, j))
            break

    inv = {i: next((j for j in range(T.k + 1) if T(i, j) == 0 and T(j, i) == 0), None)
           for i in range(T.k + 1)}
    missing = [i for i, j in inv.items() if j is None]
    inverses = AxiomStatus("undecided", tuple(missing)) if missing else AxiomStatus("holds")
    return AxiomReport(assoc, ident, inverses, comm, inv)


def torsion_witness_search(T: Table, bound: int) -> tuple[int, int] | None:
    """First (n, k) in lexicographic order, 1 <= n, k <= bound, with k*n == 0."""
    for n in range(1, bound + 1):
        if not is_total(T) and n > T.k:
            break
        acc = n
        for k in range(1, bound + 1):
            if k > 1:
                acc = T(acc, n)
                if acc is None:
                    break
            if acc == 0:
                return (n, k)
    return None


# --- linear constraints -----------------------------------------------------------------

@dataclass(frozen=True)
class LinearConstraintSet:
    """Equalities U_i(a) = b_i and disequalities V_j(a) != c_j.

    `args` are the elements a_1..a_n substituted for x_1..x_n; each form is a
    tuple of integer coefficients.
    """

    args: tuple[int, ...] = ()
    equalities: tuple[tuple[tuple[int, ...], int], ...] = ()
    disequalities: tuple[tuple[tuple[int, ...], int], ...] = ()


@dataclass(frozen=True)
class ConstraintResult:
    status: str  # "satisfied" | "violated" | "undetermined"
    witness: tuple | None = None


def evaluate_form(T: Table, coeffs: Sequence[int], args: Sequence[int]) -> int | None:
    acc = 0
    for c, a in zip(coeffs, args, strict=True):
        term = multiple(T, c, a)
        if term is None:
            return None
        acc = T(acc, term)
        if acc is None:
            return None
    return acc


def eval_constraints(T: Table, C: LinearConstraintSet) -> ConstraintResult:
    undetermined = False
    for kind, forms, want_equal in (("eq", C.equalities, True), ("neq", C.disequalities, False)):
        for idx, (coeffs, target) in enumerate(forms):
            got = evaluate_form(T, coeffs, C.args)
            if got is None:
                undetermined = True
            elif (got == target) != want_equal:
                return ConstraintResult("violated", (kind, idx, got))
    return ConstraintResult("undetermined" if undetermined else "satisfied")
