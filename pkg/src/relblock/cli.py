"""Command-line front end: ``relblock <subcommand> ...``.

Exit codes: 0 ok, 2 non-membership / domain error, 3 resource guard,
1 anything else (bad input, failed cross-check).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .antichains import Antichain
from .blockers import absolute_blocker, blocking_subposet, relative_blocker, weight_map
from .clutter import load_clutter
from .enumeration import METHODS, count_all, count_brute, count_mobius
from .errors import CapabilityError, DomainError, ResourceGuardError
from .farey import farey_boolean, farey_full, farey_left
from .layers import assert_empty_layers, d_set, structure_farey_form, structure_ideal_form
from .poset import BooleanLattice, FinitePoset, load_poset
from .rational import as_threshold, format_fraction, parse_fraction


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_antichain(P: FinitePoset, text: str) -> Antichain:
    """``EMPTY``, ``BOTTOM`` or comma-separated element names."""
    text = text.strip()
    if text == "EMPTY":
        return Antichain.empty(P)
    if text == "BOTTOM":
        return Antichain.bottom(P)
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise ValueError("empty antichain literal (use EMPTY)")
    return Antichain.of(P, (P.element(nm) for nm in names), reduce=None)


def _sorted_names(P: FinitePoset, xs) -> list[str]:
    return [P.name(x) for x in sorted(xs, key=P.linear_key)]


def format_antichain(A: Antichain) -> str:
    if A.is_empty:
        return "EMPTY"
    if A.is_bottom:
        return "BOTTOM"
    return "{" + ",".join(_sorted_names(A.host, A.members)) + "}"


def _antichain_json(A: Antichain):
    if A.is_empty:
        return "EMPTY"
    if A.is_bottom:
        return "BOTTOM"
    return _sorted_names(A.host, A.members)


def _host(args) -> FinitePoset:
    if args.boolean is not None and args.poset is not None:
        raise ValueError("give either --boolean or --poset, not both")
    if args.boolean is not None:
        return BooleanLattice(args.boolean)
    if args.poset is not None:
        return load_poset(args.poset)
    raise ValueError("a poset is required: --boolean N or --poset FILE")


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- subcommands -------------------------------------------------------

def cmd_farey(args) -> int:
    if args.kind == "full":
        seq = farey_full(args.n)
    else:
        if args.m is None:
            raise ValueError(f"--kind {args.kind} needs --m")
        seq = (farey_boolean if args.kind == "boolean" else farey_left)(args.n, args.m)
    if args.index is not None:
        i = seq.index(parse_fraction(args.index))
        _emit(args, str(i), {"index": i})
    elif args.pred is not None or args.succ is not None:
        query = args.pred if args.pred is not None else args.succ
        f = parse_fraction(query)
        before, after = seq.neighbors(f)
        hit = before if args.pred is not None else after
        if hit is None:
            side = "predecessor" if args.pred is not None else "successor"
            raise DomainError(f"{format_fraction(f)} has no {side} in {seq.describe()}")
        _emit(args, format_fraction(hit), {"fraction": format_fraction(hit)})
    elif args.card:
        _emit(args, str(len(seq)), {"cardinality": len(seq)})
    else:
        _emit(args, seq.format("\n"), [format_fraction(f) for f in seq])
    return 0


def cmd_blocker(args) -> int:
    P = _host(args)
    omega = weight_map(args.omega)
    A = parse_antichain(P, args.antichain)
    if (args.relative is None) == (args.absolute is None):
        raise ValueError("give exactly one of --relative r or --absolute j")
    if args.relative is not None:
        r = as_threshold(args.relative)
        Y = relative_blocker(P, omega, r, A)
        payload = {"mode": "relative", "r": format_fraction(r), "blocker": _antichain_json(Y)}
        lines = [format_antichain(Y)]
        if args.layers:
            found = blocking_subposet(P, omega, r, A)
            levels: dict[int, list[int]] = {}
            for b in found:
                levels.setdefault(omega.of(P, b), []).append(b)
            payload["layers"] = {str(k): _sorted_names(P, v) for k, v in sorted(levels.items())}
            lines += [f"{k}: " + " ".join(_sorted_names(P, v)) for k, v in sorted(levels.items())]
    else:
        Y = absolute_blocker(P, omega, args.absolute, A)
        payload = {"mode": "absolute", "j": args.absolute, "blocker": _antichain_json(Y)}
        lines = [format_antichain(Y)]
    _emit(args, "\n".join(lines), payload)
    return 0


def _count_one(n: int, A, r, k: int):
    try:
        return count_mobius(n, A, r, k)
    except ResourceGuardError:
        return count_brute(n, A, r, k)


def cmd_committee(args) -> int:
    C = load_clutter(args.clutter)
    B = C.lattice
    A = C.to_antichain(B)
    if A.is_trivial:
        raise DomainError("the family is trivial (it contains the empty set)")
    r = as_threshold(args.r)
    omega = weight_map("atoms")
    Y = relative_blocker(B, omega, r, A)
    committees = sorted((C.unmask(y) for y in Y.members), key=lambda S: (len(S), C.ordered(S)))
    counts = {k: _count_one(B.n, A, r, k) for k in range(1, B.n + 1)}
    lines = [f"r = {format_fraction(r)}", "minimal committees:"]
    lines += [f"  {C.format_set(S)}" for S in committees]
    lines += ["committees by cardinality:"] + [f"  {k}: {v}" for k, v in counts.items()]
    payload = {
        "r": format_fraction(r),
        "committees": [C.ordered(S) for S in committees],
        "counts": {str(k): v for k, v in counts.items()},
    }
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_count(args) -> int:
    if args.poset is not None or args.boolean is None:
        raise CapabilityError("count works on B(n) only: pass --boolean N")
    B = BooleanLattice(args.boolean)
    A = parse_antichain(B, args.antichain)
    r = as_threshold(args.r)
    if args.method == "all":
        out = count_all(B.n, A, r, args.k)
    else:
        out = {args.method: METHODS[args.method](B.n, A, r, args.k)}
    _emit(args, " ".join(f"{name}={v}" for name, v in out.items()), out)
    return 0


def cmd_dset(args) -> int:
    P = _host(args)
    omega = weight_map(args.omega)
    A = parse_antichain(P, args.antichain)
    r = as_threshold(args.r)
    D = sorted(d_set(P, A, omega, r))
    payload = {"dset": D}
    text = " ".join(map(str, D))
    if args.check:
        checked = sorted(assert_empty_layers(P, A, omega, r))
        payload["empty_outside"] = checked
        text += "\nempty outside the common ideal: " + " ".join(map(str, checked))
    _emit(args, text, payload)
    return 0


def cmd_structure(args) -> int:
    P = _host(args)
    if args.omega != "rank":
        raise CapabilityError("structure decompositions are defined for --omega rank only")
    A = parse_antichain(P, args.antichain)
    r = as_threshold(args.r)
    if args.form == "ideal":
        found = structure_ideal_form(P, A, r)
    elif args.form == "farey":
        found = structure_farey_form(P, A, r)
    else:
        found = structure_ideal_form(P, A, r)
        other = structure_farey_form(P, A, r)
        if found != other:
            raise AssertionError("ideal and farey forms disagree")
    names = _sorted_names(P, found)
    _emit(args, "\n".join(names), names)
    return 0


# -- wiring ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="canonical JSON output")
    common.add_argument("--boolean", type=int, metavar="N", help="work in B(N)")
    common.add_argument("--poset", metavar="FILE", help="poset JSON file")
    common.add_argument("--omega", choices=["ideal", "atoms", "rank"], default="rank",
                        help="weight map (default: rank)")

    ap = _Parser(prog="relblock", description="Relative blockers and Farey subsequences, exactly.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("farey", parents=[common], help="generate or query a Farey subsequence")
    p.add_argument("--kind", choices=["full", "boolean", "left"], default="boolean")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    q = p.add_mutually_exclusive_group()
    q.add_argument("--index", metavar="H/K")
    q.add_argument("--pred", metavar="H/K")
    q.add_argument("--succ", metavar="H/K")
    q.add_argument("--card", action="store_true")
    p.set_defaults(func=cmd_farey)

    p = sub.add_parser("blocker", parents=[common], help="relative or absolute blocker")
    p.add_argument("--antichain", required=True, help='e.g. "0111,1100", EMPTY or BOTTOM')
    p.add_argument("--relative", metavar="R")
    p.add_argument("--absolute", type=int, metavar="J")
    p.add_argument("--layers", action="store_true", help="also list all blocking elements by weight")
    p.set_defaults(func=cmd_blocker)

    p = sub.add_parser("committee", parents=[common], help="minimal r-committees of a clutter")
    p.add_argument("clutter", help="clutter file")
    p.add_argument("--r", required=True)
    p.set_defaults(func=cmd_committee)

    p = sub.add_parser("count", parents=[common], help="count blocking elements of rank k")
    p.add_argument("--antichain", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=[*METHODS, "all"], default="all")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("dset", parents=[common], help="weight levels that may hold blocking elements")
    p.add_argument("--antichain", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--check", action="store_true", help="verify the remaining levels are empty")
    p.set_defaults(func=cmd_dset)

    p = sub.add_parser("structure", parents=[common], help="blocking subposet from absolute blockers")
    p.add_argument("--antichain", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--form", choices=["ideal", "farey", "both"], default="both")
    p.set_defaults(func=cmd_structure)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
            return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
