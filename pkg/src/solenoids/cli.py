"""Command-line front end.

Every subcommand prints one JSON document on stdout and exits 0.  Domain
errors print {"error": <type>, "message": ...} on stderr and exit 1; usage
errors (bad flags, unparsable JSON) exit 2.  Rationals travel as "num/den"
strings, large integers as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

from . import duality, exactalg, game, qembed, supernat, tablespace, torus

SAFE_INT = 2 ** 53


class UsageError(Exception):
    pass


class Rows:
    """Tabular output: rendered as {"columns", "rows"} in json or as tsv."""

    def __init__(self, columns: list[str], rows: list[list[Any]], extra: dict | None = None):
        self.columns, self.rows, self.extra = columns, rows, extra or {}


# --- encoding -------------------------------------------------------------------------

def enc(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x if abs(x) < SAFE_INT else str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): enc(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [enc(v) for v in items]
    if hasattr(x, "to_json"):
        return x.to_json()
    raise TypeError(f"cannot encode {type(x).__name__}")


def _tsv_cell(v) -> str:
    v = enc(v)
    return v if isinstance(v, str) else json.dumps(v)


def emit(result, fmt: str, out) -> None:
    if isinstance(result, Rows):
        if fmt == "tsv":
            out.write("\t".join(result.columns) + "\n")
            for r in result.rows:
                out.write("\t".join(_tsv_cell(v) for v in r) + "\n")
            return
        result = {**result.extra, "columns": result.columns, "rows": [[enc(v) for v in r] for r in result.rows]}
    if fmt == "tsv":
        for k, v in result.items():
            out.write(f"{k}\t{_tsv_cell(v)}\n")
        return
    out.write(json.dumps(enc(result), sort_keys=True) + "\n")


# --- decoding -------------------------------------------------------------------------

def load(text: str | None, what: str):
    """Parse a JSON flag value; '-' or a missing value reads standard input."""
    if text is None or text == "-":
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc.msg})") from None


def rational(s: str) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from None


def matrix(obj) -> exactalg.IntMatrix:
    if isinstance(obj, dict):
        return exactalg.IntMatrix.from_json(obj)
    rows = [[int(x) for x in r] for r in obj]
    return exactalg.IntMatrix.from_rows(rows)


def subgroup(obj) -> torus.ConnectedTorusSubgroup:
    """{"n", "annihilator"}, {"winding": w, "n": m}, {"full": n} or {"trivial": n}."""
    if "full" in obj:
        return torus.ConnectedTorusSubgroup.full(int(obj["full"]))
    if "trivial" in obj:
        return torus.ConnectedTorusSubgroup.trivial(int(obj["trivial"]))
    if "winding" in obj:
        w = [int(x) for x in obj["winding"]]
        return torus.padded_circle(w, int(obj.get("n", len(w))))
    n = int(obj["n"])
    A = obj["annihilator"]
    if isinstance(A, list):
        return torus.ConnectedTorusSubgroup.from_characters(n, A) if A else torus.ConnectedTorusSubgroup.full(n)
    return torus.ConnectedTorusSubgroup.from_json(obj)


def prime_seq(obj) -> supernat.PrimeSeqSpec:
    if isinstance(obj, list):
        return supernat.PrimeSeqSpec((), tuple(obj))
    return supernat.PrimeSeqSpec.from_json(obj)


# --- commands -------------------------------------------------------------------------

def cmd_snf(a):
    M = matrix(load(a.matrix, "--matrix"))
    U, D, V = exactalg.smith_normal_form(M)
    return {"U": U.tolist(), "D": D.tolist(), "V": V.tolist(), "invariant_factors": exactalg.invariant_factors(M)}


def cmd_hnf(a):
    H, U = exactalg.hermite_normal_form(matrix(load(a.matrix, "--matrix")))
    return {"H": H.tolist(), "U": U.tolist()}


def cmd_saturate(a):
    M = matrix(load(a.matrix, "--matrix"))
    return {"saturated": exactalg.saturate(M).tolist(), "was_saturated": exactalg.is_saturated(M)}


def cmd_check_table(a):
    T = tablespace.PartialTable.from_json(load(a.table, "--table"))
    rep = tablespace.check_axioms(T)
    out = {name: {"status": getattr(rep, name).status, "witness": getattr(rep, name).witness}
           for name in ("associativity", "identity", "inverses", "commutativity")}
    out["consistent"] = rep.consistent
    out["torsion_witness"] = tablespace.torsion_witness_search(T, a.torsion_bound)
    return out


def cmd_supp(a):
    return {"supp": tablespace.supp(tablespace.PartialTable.from_json(load(a.table, "--table")))}


def cmd_permute(a):
    base = tablespace.CANONICAL_Q if a.oracle == "q" else tablespace.IntegerLatticeTable(1)
    nu = tablespace.FinitePermutation.from_json(load(a.perm, "--perm"))
    O = tablespace.apply_permutation(base, nu)
    return {"window": tablespace.window(O, a.k)}


def cmd_embed_fg(a):
    rel = load(a.relations, "--relations") if a.relations else []
    R = exactalg.IntMatrix.from_rows(rel, a.generators) if rel else exactalg.IntMatrix.zero(0, a.generators)
    r, images = qembed.embed_fg_group(qembed.FGGroupPresentation(a.generators, R))
    return {"rank": r, "map": [list(v) for v in images]}


def cmd_realize(a):
    C = qembed.Certificate.from_json(load(a.certificate, "--certificate"))
    real = qembed.realize_patch(C)
    agrees = tablespace.window(real.oracle, C.table.k) == C.table
    return {"nu": real.nu, "N": real.N, "K": real.K, "images": real.images, "window_agrees": agrees}


def _expr(a):
    return duality.from_json(load(a.expr, "--expr"))


def cmd_dual(a):
    e = _expr(a)
    d = duality.dual(e)
    return {"dual": d, "predicates": {"input": duality.predicates(e).as_dict(), "dual": duality.predicates(d).as_dict()}}


def cmd_predicates(a):
    return duality.predicates(_expr(a)).as_dict()


def cmd_check_laws(a):
    e = _expr(a)
    rep = duality.check_duality_laws(e)
    return {
        "compact_metrizable": rep.compact_metrizable,
        "connected_torsion_free": rep.connected_torsion_free,
        "torsion_free_divisible": rep.torsion_free_divisible,
        "double_dual_is_identity": duality.double_dual_is_identity(e),
        "passed": rep.passed,
    }


def cmd_classify_solenoid(a):
    if a.expr is not None:
        ok, breakdown = duality.characterize_universal_solenoid(_expr(a))
        return {"universal": ok, "breakdown": breakdown}
    if a.seq is None:
        raise UsageError("classify-solenoid needs --expr or --seq")
    s = supernat.steinitz(prime_seq(load(a.seq, "--seq")))
    out = {"steinitz": s, "universal": supernat.is_universal(s), "finite": s.is_finite()}
    if a.against is not None:
        t = supernat.steinitz(prime_seq(load(a.against, "--against")))
        out["against"] = t
        out["equivalent"] = supernat.equivalent(s, t)
    return out


def cmd_steinitz(a):
    spec = prime_seq(load(a.seq, "--seq"))
    return {"steinitz": supernat.steinitz(spec), "display": str(supernat.steinitz(spec))}


def cmd_circle_net(a):
    if len(a.delta) > 1 or a.verify:
        rows = []
        for d in a.delta:
            net = torus.circle_net(a.k, d)
            rep = torus.verify_net(a.k, d) if a.verify else None
            rows.append([a.k, d, net.N, net.x, list(net.circle.w),
                         rep.covered if rep else None, rep.grid_points if rep else None,
                         rep.worst_sq if rep else None])
        return Rows(["k", "delta", "N", "x", "w", "covered", "grid_points", "worst_sq"], rows)
    net = torus.circle_net(a.k, a.delta[0])
    return {"N": net.N, "x": net.x, "w": list(net.circle.w)}


def cmd_cube_witness(a):
    if a.j is None:
        from itertools import product

        rows = []
        for j in product(range(a.N), repeat=a.k):
            m, pt = torus.grid_cube_witness(a.k, a.N, j)
            rows.append([list(j), m, pt, torus.in_cube(pt, a.N, j)])
        return Rows(["j", "m", "point", "in_cube"], rows)
    j = [int(x) for x in load(a.j, "--j")]
    m, pt = torus.grid_cube_witness(a.k, a.N, j)
    return {"m": m, "point": pt, "in_cube": torus.in_cube(pt, a.N, j)}


def cmd_hausdorff(a):
    H1 = subgroup(load(a.h1, "--h1"))
    H2 = subgroup(load(a.h2, "--h2"))
    if len(a.mesh) == 1:
        est, err = torus.hausdorff_distance(H1, H2, a.mesh[0])
        return {"estimate": est, "error_bound": err}
    rows = [[m, *torus.hausdorff_distance(H1, H2, m)] for m in a.mesh]
    return Rows(["mesh", "estimate", "error_bound"], rows)


def cmd_solenoid_approx(a):
    w = torus.WindingCircle(tuple(int(x) for x in load(a.w, "--w")))
    primes = [int(p) for p in load(a.primes, "--primes")]
    if not a.coherence:
        v = torus.solenoid_winding(w, primes)
        return {"v": list(v.w), "subgroup": v.subgroup()}
    rows = []
    for m in range(len(primes)):
        lo = torus.project_and_pad(torus.solenoid_approximant(w, primes[:m]), w.n + m + 1)
        hi = torus.solenoid_approximant(w, primes[: m + 1])
        bound = Fraction(1, 2 ** (w.n + m - 1))
        mesh = min(torus.mesh_for(lo, bound / 4), torus.mesh_for(hi, bound / 4))
        est, err = torus.hausdorff_distance(lo, hi, mesh)
        rows.append([m, list(hi.parametrization().row(0)), est, err, bound, est + err <= bound])
    return Rows(["m", "winding", "estimate", "error_bound", "bound", "within_bound"], rows)


def _strategy(name: str, seed: int, budget: int):
    if name == "builder":
        return game.builder_strategy
    return game.random_adversary(seed, budget)


def cmd_play_game(a):
    adv = _strategy(a.adversary, a.seed, a.budget)
    t = game.play(game.builder_strategy, adv, a.rounds, a.seed)
    return {"transcript": t.to_json(), "audit": game.audit(t).to_json()}


def cmd_audit(a):
    obj = load(a.transcript, "--transcript")
    t = game.Transcript.from_json(obj.get("transcript", obj))
    return game.audit(t).to_json()


# --- parser --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="solenoids", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--format", choices=("json", "tsv"), default=argparse.SUPPRESS)
        return sp

    for name, fn, h in (("snf", cmd_snf, "Smith normal form"), ("hnf", cmd_hnf, "Hermite normal form"),
                        ("saturate", cmd_saturate, "saturation of a row lattice")):
        add(name, fn, h).add_argument("--matrix", help="JSON list of integer rows ('-' for stdin)")

    sp = add("check-table", cmd_check_table, "group axioms on a table fragment")
    sp.add_argument("--table")
    sp.add_argument("--torsion-bound", type=int, default=10)
    add("supp", cmd_supp, "support of a table fragment").add_argument("--table")

    sp = add("permute", cmd_permute, "window of a canonical table moved by a finite permutation")
    sp.add_argument("--oracle", choices=("q", "z"), default="q")
    sp.add_argument("--perm", required=True, help='{"mapping": [[a, b], ...]}')
    sp.add_argument("--k", type=int, default=4)

    sp = add("embed-fg", cmd_embed_fg, "embed a finitely generated torsion-free group into Q^r")
    sp.add_argument("--generators", type=int, required=True)
    sp.add_argument("--relations")

    add("realize", cmd_realize, "realize a certificate inside the canonical Q table").add_argument("--certificate")

    for name, fn, h in (("dual", cmd_dual, "Pontryagin dual"), ("predicates", cmd_predicates, "predicate vector"),
                        ("check-laws", cmd_check_laws, "duality correspondences")):
        add(name, fn, h).add_argument("--expr")

    sp = add("classify-solenoid", cmd_classify_solenoid, "universal-solenoid test or prime-sequence classification")
    sp.add_argument("--expr")
    sp.add_argument("--seq")
    sp.add_argument("--against")
    add("steinitz", cmd_steinitz, "supernatural number of a prime sequence").add_argument("--seq")

    sp = add("circle-net", cmd_circle_net, "circle whose cyclic subgroup is a delta-net")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--delta", type=rational, nargs="+", required=True)
    sp.add_argument("--verify", action="store_true")

    sp = add("cube-witness", cmd_cube_witness, "multiplier landing in a grid cube (all cubes without --j)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--j")

    sp = add("hausdorff", cmd_hausdorff, "certified Hausdorff distance of connected torus subgroups")
    sp.add_argument("--h1", required=True)
    sp.add_argument("--h2", required=True)
    sp.add_argument("--mesh", type=rational, nargs="+", default=[Fraction(1, 64)])

    sp = add("solenoid-approx", cmd_solenoid_approx, "solenoid approximant circles")
    sp.add_argument("--w", default="[1]")
    sp.add_argument("--primes", required=True)
    sp.add_argument("--coherence", action="store_true")

    sp = add("play-game", cmd_play_game, "builder against an adversary")
    sp.add_argument("--rounds", type=int, default=30)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--adversary", choices=("random", "builder"), default="random")
    sp.add_argument("--budget", type=int, default=2)

    add("audit", cmd_audit, "re-check a transcript").add_argument("--transcript")
    return p


DOMAIN_ERRORS = (ValueError, ArithmeticError, IndexError, KeyError, TypeError)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.fn(args)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 2
    except DOMAIN_ERRORS as exc:
        stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    emit(result, args.format, stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
