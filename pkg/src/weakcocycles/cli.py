"""Command-line interface.

Every producer writes one JSON document (or a text table / DOT graph) to
stdout, and every consumer reads one JSON document from a path or stdin, so
commands compose with pipes.  Exit codes: 0 success, 1 a verification or
property check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import cocycle as cc
from . import io
from .checks import run_property_suite
from .cocycle import (IdempotentCocycle, ValuedCocycle, br_from_r, decompose,
                      deflate_idempotent, format_pi, hereditary_criterion,
                      idempotent_from_r, inflate_idempotent, partner_h, rf_from_f,
                      verify_cocycle)
from .errors import CocycleError, InputError, VerificationError
from .groups import (FiniteGroup, build_group, quotient_group, subgroup_closure,
                     verify_group_axioms)
from .order import hasse, poset_from_idempotent, poset_from_r, to_dot, verify_poset
from .slg import (bump, enumerate_slg, evenize, halve, inflate_r, m_subgroup, n1_set,
                  r_from_generators)


class CheckFailed(VerificationError):
    pass


# -- helpers ---------------------------------------------------------------------

def _load(args):
    data = io.read_json(args.input)
    base = os.path.dirname(args.input) if args.input not in (None, "-") else None
    return data, base


def _elements(G: FiniteGroup, spec: str) -> list[int]:
    """Comma-separated element labels or indices."""
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(G.index(tok))
        except (KeyError, IndexError) as exc:
            raise InputError(f"unknown element {tok!r} in {G.name}") from exc
    return out


def _load_group(args) -> FiniteGroup:
    data, base = _load(args)
    kind = io.kind_of(data)
    if kind == "group":
        return io.group_from_ref(data)
    if "group" in data:
        return io.group_from_ref(data["group"], base)
    raise InputError("expected a group document")


def _load_r(args):
    data, base = _load(args)
    return io.r_from_json(data, base)


def _load_cocycle(args):
    data, base = _load(args)
    return io.cocycle_from_json(data, base)


def _normal(G: FiniteGroup, spec: str):
    return subgroup_closure(G, _elements(G, spec))


def format_table(G: FiniteGroup, cells, corner: str = "(σ,τ)") -> str:
    """Aligned text table with element labels on both axes."""
    labels = [G.label(g) for g in range(len(G))]
    rows = [[corner] + labels] + [[labels[i]] + list(row) for i, row in enumerate(cells)]
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def _exp_cells(table, raw: bool):
    def cell(x):
        if x is None:
            return "0"
        return str(x) if raw else format_pi(x)
    return [[cell(x) for x in row] for row in table]


def _report(violations, what: str):
    if violations:
        raise CheckFailed(f"{what}: {len(violations)} violation(s)", violations)


# -- group ------------------------------------------------------------------------

def cmd_group_make(args):
    G = build_group(args.kind, args.n)
    return io.dumps(G.to_json())


def cmd_group_verify(args):
    data, _ = _load(args)
    table = data.get("table") if isinstance(data, dict) else data
    if not isinstance(table, list):
        raise InputError("expected a group document or a bare table")
    _report(verify_group_axioms(table), "group axioms")
    return io.dumps(data)


def cmd_group_quotient(args):
    G = _load_group(args)
    Q, _ = quotient_group(G, _normal(G, args.normal), suffix=args.suffix)
    return io.dumps(Q.to_json())


# -- r ---------------------------------------------------------------------------

def cmd_r_from_gens(args):
    G = _load_group(args)
    return io.dumps(io.r_to_json(r_from_generators(G, _elements(G, args.gens))))


def cmd_r_validate(args):
    r = _load_r(args)
    G = r.group
    sys.stderr.write(f"M_r = {{{', '.join(m_subgroup(r).labels())}}}; "
                     f"N1 = {{{', '.join(G.label(g) for g in sorted(n1_set(r)))}}}\n")
    return io.dumps(io.r_to_json(r))


def cmd_r_transform(args):
    r = _load_r(args)
    if args.op == "bump":
        if args.at is None:
            raise InputError("bump needs --at")
        (a,) = _elements(r.group, args.at)
        out = bump(r, a)
    elif args.op == "halve":
        out = halve(r)
    elif args.op == "evenize":
        out = evenize(r)
    else:
        if args.group is None or args.normal is None:
            raise InputError("inflate needs --group and --normal")
        G = io.group_from_ref(io.read_json(args.group))
        out = inflate_r(G, _normal(G, args.normal), r)
    return io.dumps(io.r_to_json(out))


def cmd_r_enumerate(args):
    G = _load_group(args)
    rs = enumerate_slg(G, args.max)
    sys.stderr.write(f"{len(rs)} functions\n")
    return io.dumps({"group": G.to_json(), "count": len(rs),
                     "functions": [list(r.values) for r in rs]})


# -- cocycle ----------------------------------------------------------------------

def cmd_cocycle_er(args):
    return io.dumps(idempotent_from_r(_load_r(args)).to_json())


def cmd_cocycle_br(args):
    return io.dumps(br_from_r(_load_r(args)).to_json())


def cmd_cocycle_eps_table(args):
    data, base = _load(args)
    kind = io.kind_of(data)
    if kind == "r":
        r = io.r_from_json(data, base)
        G, cells = r.group, _exp_cells(cc.epsilon_table(r), args.raw)
    else:
        f = io.cocycle_from_json(data, base)
        G = f.group
        if isinstance(f, IdempotentCocycle):
            cells = [[str(x) for x in row] for row in f.values]
        else:
            cells = _exp_cells(f.exponents(), args.raw)
    return format_table(G, cells)


def cmd_cocycle_verify(args):
    f = _load_cocycle(args)
    _report(verify_cocycle(f, args.level, args.unramified), f"cocycle identity ({args.level})")
    return io.dumps(f.to_json())


def _valued(args) -> ValuedCocycle:
    f = _load_cocycle(args)
    if not isinstance(f, ValuedCocycle):
        raise InputError("expected a valued cocycle")
    return f


def cmd_cocycle_decompose(args):
    c, r = decompose(_valued(args), unramified=args.unramified)
    if args.c_output:
        with open(args.c_output, "w", encoding="utf-8") as fh:
            fh.write(io.dumps(c.to_json()))
    return io.dumps(io.r_to_json(r))


def cmd_cocycle_hereditary(args):
    return io.dumps(hereditary_criterion(_valued(args)))


def cmd_cocycle_rf(args):
    return io.dumps(io.r_to_json(rf_from_f(_valued(args))))


def cmd_cocycle_partner(args):
    f = _valued(args)
    rf = rf_from_f(f)
    r = rf if args.r == "rf" else halve(rf)
    return io.dumps(partner_h(f, r, args.unramified).to_json())


def _idempotent(args) -> IdempotentCocycle:
    f = _load_cocycle(args)
    if not isinstance(f, IdempotentCocycle):
        raise InputError("expected an idempotent cocycle")
    return f


def cmd_cocycle_inflate(args):
    eps = _idempotent(args)
    if args.group is None:
        raise InputError("inflate needs --group")
    G = io.group_from_ref(io.read_json(args.group))
    return io.dumps(inflate_idempotent(eps, G, _normal(G, args.normal)).to_json())


def cmd_cocycle_deflate(args):
    e = _idempotent(args)
    return io.dumps(deflate_idempotent(e, _normal(e.group, args.normal)).to_json())


# -- poset ------------------------------------------------------------------------

def cmd_poset_from_r(args):
    return io.dumps(poset_from_r(_load_r(args)).to_json())


def cmd_poset_from_e(args):
    return io.dumps(poset_from_idempotent(_idempotent(args)).to_json())


def cmd_poset_dot(args):
    data, base = _load(args)
    kind = io.kind_of(data)
    if kind == "poset":
        P = io.poset_from_json(data, base)
        _report(verify_poset(P), "poset axioms")
    elif kind == "r":
        P = poset_from_r(io.r_from_json(data, base))
    else:
        f = io.cocycle_from_json(data, base)
        if not isinstance(f, IdempotentCocycle):
            raise InputError("dot needs a poset, an r-function or an idempotent cocycle")
        P = poset_from_idempotent(f)
    return to_dot(hasse(P), mode=args.mode, name=args.name)


# -- check ------------------------------------------------------------------------

def cmd_check_all(args):
    if args.preset:
        kind, _, n = args.preset.partition(":")
        G = build_group(kind, int(n) if n else None)
    else:
        G = _load_group(args)
    results = run_property_suite(G, maxval=args.max, seed=args.seed,
                                 unramified=args.unramified)
    text = "".join(f"{res}\n" for res in results)
    failed = [res.name for res in results if not res.passed]
    if failed:
        sys.stdout.write(text)
        raise CheckFailed(f"{len(failed)} property check(s) failed on {G.name}", failed)
    return text


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write output here instead of stdout")
    common.add_argument("--unramified", action="store_true",
                        help="treat every u(s) as 1 when comparing unit words")

    def leaf(sub, name, func, help_, takes_input=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if takes_input:
            p.add_argument("input", nargs="?", default="-", help="JSON file, or - for stdin")
        p.set_defaults(func=func)
        return p

    parser = argparse.ArgumentParser(
        prog="weakcocycles",
        description="Subadditive functions, weak 2-cocycles and coset posets on finite groups.")
    top = parser.add_subparsers(dest="area", required=True)

    g = top.add_parser("group", help="build and check groups").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "make", cmd_group_make, "emit a preset group", takes_input=False)
    p.add_argument("kind", choices=["cyclic", "dihedral", "symmetric"])
    p.add_argument("n", type=int, help="order (cyclic, dihedral) or degree (symmetric)")
    leaf(g, "verify", cmd_group_verify, "check the group axioms of a table")
    p = leaf(g, "quotient", cmd_group_quotient, "quotient by the normal closure of --normal")
    p.add_argument("--normal", required=True, help="generators of the normal subgroup")
    p.add_argument("--suffix", default="N", help="coset label suffix")

    r = top.add_parser("r", help="functions in Sl(G)").add_subparsers(dest="cmd", required=True)
    p = leaf(r, "from-gens", cmd_r_from_gens, "word length over a generating set")
    p.add_argument("--gens", required=True, help="comma-separated labels or indices")
    leaf(r, "validate", cmd_r_validate, "check r(1)=0, nonnegativity and subadditivity")
    p = leaf(r, "transform", cmd_r_transform, "bump, halve, evenize or inflate r")
    p.add_argument("--op", required=True, choices=["bump", "halve", "evenize", "inflate"])
    p.add_argument("--at", help="element for bump")
    p.add_argument("--group", help="group file of the big group (inflate)")
    p.add_argument("--normal", help="generators of N (inflate)")
    p = leaf(r, "enumerate", cmd_r_enumerate, "all r with values <= --max")
    p.add_argument("--max", type=int, default=3)

    c = top.add_parser("cocycle", help="idempotent and valued cocycles").add_subparsers(
        dest="cmd", required=True)
    leaf(c, "er", cmd_cocycle_er, "idempotent cocycle of r")
    leaf(c, "br", cmd_cocycle_br, "valued cocycle b_r")
    p = leaf(c, "eps-table", cmd_cocycle_eps_table, "print the pi-power table")
    p.add_argument("--raw", action="store_true", help="print integer exponents")
    p = leaf(c, "verify", cmd_cocycle_verify, "check the cocycle identity")
    p.add_argument("--level", choices=[cc.VALUATION, cc.STRICT], default=cc.VALUATION)
    p = leaf(c, "decompose", cmd_cocycle_decompose, "split b = c * b_r, print r")
    p.add_argument("--c-output", help="also write the unit cocycle c here")
    leaf(c, "hereditary", cmd_cocycle_hereditary, "valuation test on f(s, s^-1)")
    leaf(c, "rf", cmd_cocycle_rf, "r_f(s) = v(f(s, s^-1))")
    p = leaf(c, "partner", cmd_cocycle_partner, "h with f * h = b_r")
    p.add_argument("--r", choices=["rf", "half"], default="half")
    p = leaf(c, "inflate", cmd_cocycle_inflate, "lift an idempotent cocycle from G/N")
    p.add_argument("--group", required=True, help="group file of G")
    p.add_argument("--normal", required=True, help="generators of N")
    p = leaf(c, "deflate", cmd_cocycle_deflate, "push an idempotent cocycle down to G/N")
    p.add_argument("--normal", required=True, help="generators of N")

    q = top.add_parser("poset", help="coset posets").add_subparsers(dest="cmd", required=True)
    leaf(q, "from-r", cmd_poset_from_r, "order on G/M_r from r")
    leaf(q, "from-e", cmd_poset_from_e, "order on G/H(e) from an idempotent cocycle")
    p = leaf(q, "dot", cmd_poset_dot, "Hasse diagram as DOT")
    p.add_argument("--mode", choices=["coset", "expanded"], default="coset")
    p.add_argument("--name", default="poset")

    k = top.add_parser("check", help="property suites").add_subparsers(dest="cmd", required=True)
    p = leaf(k, "all", cmd_check_all, "exhaustive property suite for one group")
    p.add_argument("--preset", help="e.g. cyclic:6 or dihedral:8 instead of a group file")
    p.add_argument("--max", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _write(out: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
        sys.stdout.flush()


def run(argv=None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except CocycleError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        for w in exc.witnesses:
            sys.stderr.write(f"  witness: {w}\n")
        return 1 if isinstance(exc, VerificationError) else 2
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        sys.stderr.write(f"error: malformed input: {exc}\n")
        return 2
    _write(out, args.output)
    return 0


def main():
    sys.exit(run())
