"""Command-line front end: inspection, membership queries, encoding, verification.

Verdicts map to the exit status so shell pipelines can branch without
parsing output: 0 accepted/true, 1 rejected/false, 3 inconclusive, 2 bad
input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import buchi, twotape, verify
from .buchi import BuchiAutomaton, buchi_accepts_lasso, ones_automaton
from .constructions import (
    alpha,
    automaton_T,
    c_automaton,
    r2_automaton,
    r_automaton,
    section_member,
)
from .grid import encode_h, decode_h_prefix, grid_from_json
from .twotape import Verdict, accepts_lasso_pair, bounded_run_search
from .words import GAMMA, LassoWord

TWO_TAPE_NAMES = {
    "T": automaton_T,
    "C1": lambda: c_automaton(1),
    "C2": lambda: c_automaton(2),
    "C3": lambda: c_automaton(3),
    "C4": lambda: c_automaton(4),
    "C5": lambda: c_automaton(5),
    "R2": r2_automaton,
    "R": r_automaton,
}
ONE_TAPE_NAMES = {
    "A": lambda: ones_automaton(False),
    "Acomp": lambda: ones_automaton(True),
}


class InputError(Exception):
    pass


def _load_two_tape(args) -> twotape.TwoTapeAutomaton:
    if getattr(args, "aut_file", None):
        with open(args.aut_file) as fh:
            return twotape.from_json(fh.read())
    name = args.aut
    if name in TWO_TAPE_NAMES:
        return TWO_TAPE_NAMES[name]()
    if name in ONE_TAPE_NAMES:
        raise InputError(f"{name} is a one-tape automaton; pass --word instead of --pair")
    raise InputError(f"unknown automaton {name!r}; choose from "
                     f"{sorted(TWO_TAPE_NAMES) + sorted(ONE_TAPE_NAMES)} or use --aut-file")


def _load_grid(path: str):
    with open(path) as fh:
        return grid_from_json(fh.read())


def _parse_lasso(text: str) -> LassoWord:
    return LassoWord.parse(text, GAMMA)


def cmd_alpha(args) -> int:
    print(alpha().prefix_of(args.prefix))
    return 0


def cmd_encode(args) -> int:
    print(encode_h(_load_grid(args.grid)).prefix_of(args.prefix))
    return 0


def cmd_decode(args) -> int:
    partial = decode_h_prefix(args.word)
    items = sorted(partial.items())
    if args.json:
        print(json.dumps({"entries": [[m, n, ch] for (m, n), ch in items]}))
    else:
        for (m, n), ch in items:
            print(f"({m},{n}) = {ch}")
    return 0


def cmd_member(args) -> int:
    if args.word is not None:
        if args.aut not in ONE_TAPE_NAMES:
            raise InputError("--word only applies to the one-tape automata A and Acomp")
        aut = ONE_TAPE_NAMES[args.aut]()
        accepted = buchi_accepts_lasso(aut, LassoWord.parse(args.word, aut.alphabet))
        if args.json:
            print(json.dumps({"verdict": "accepted" if accepted else "rejected"}))
        else:
            print("accepted" if accepted else "rejected")
        return 0 if accepted else 1

    if args.pair is None:
        raise InputError("member needs --pair W1 W2 (or --word W for A/Acomp)")
    aut = _load_two_tape(args)
    w1 = _parse_lasso(args.pair[0])
    w2 = _parse_lasso(args.pair[1])
    outcome = accepts_lasso_pair(aut, w1, w2)
    accepted = outcome.verdict is Verdict.ACCEPTED
    if args.json:
        doc = {"verdict": outcome.verdict.value}
        if outcome.certificate:
            doc["certificate"] = {
                "stem": [list(t) for t in outcome.certificate.stem.transitions],
                "cycle": [list(t) for t in outcome.certificate.cycle.transitions],
            }
        print(json.dumps(doc))
    else:
        print(outcome.verdict.value)
        if outcome.certificate:
            print("stem:")
            for t in outcome.certificate.stem.transitions:
                print(f"  {t.src} --{t.read1 or 'ε'}/{t.read2 or 'ε'}--> {t.dst}")
            print("cycle:")
            for t in outcome.certificate.cycle.transitions:
                print(f"  {t.src} --{t.read1 or 'ε'}/{t.read2 or 'ε'}--> {t.dst}")
    return 0 if accepted else 1


def cmd_search(args) -> int:
    aut = _load_two_tape(args)
    x = _load_grid(args.grid)
    outcome = bounded_run_search(aut, encode_h(x), alpha(), args.budget)
    if args.json:
        doc = {"verdict": outcome.verdict.value}
        if outcome.stats:
            s = outcome.stats
            doc["stats"] = {
                "expansions": s.expansions,
                "fair_visits": s.fair_visits,
                "deepest": s.deepest,
                "frontier": s.frontier,
                "exhausted": s.exhausted,
            }
        print(json.dumps(doc))
    else:
        print(outcome.verdict.value)
        if outcome.stats:
            s = outcome.stats
            print(
                f"expansions={s.expansions} fair_visits={s.fair_visits} "
                f"deepest={s.deepest} frontier={s.frontier} exhausted={s.exhausted}"
            )
    if outcome.verdict is Verdict.ACCEPTED:
        return 0
    if outcome.verdict is Verdict.REJECTED:
        return 1
    return 3


def cmd_in_p(args) -> int:
    from .grid import in_P

    verdict = in_P(_load_grid(args.grid))
    if args.json:
        print(json.dumps({"in_P": verdict}))
    else:
        print("true" if verdict else "false")
    return 0 if verdict else 1


def cmd_sections(args) -> int:
    verdict = section_member(_parse_lasso(args.sigma), _parse_lasso(args.u))
    if args.json:
        print(json.dumps({"member": verdict}))
    else:
        print("true" if verdict else "false")
    return 0 if verdict else 1


def cmd_export(args) -> int:
    name = args.aut
    if name in TWO_TAPE_NAMES:
        aut = TWO_TAPE_NAMES[name]()
        print(twotape.to_json(aut) if args.format == "json" else twotape.to_dot(aut), end="")
        return 0
    if name in ONE_TAPE_NAMES:
        aut: BuchiAutomaton = ONE_TAPE_NAMES[name]()
        print(buchi.to_json(aut) if args.format == "json" else buchi.to_dot(aut), end="")
        return 0
    raise InputError(f"unknown automaton {name!r}")


def cmd_verify(args) -> int:
    results = verify.run_all(seed=args.seed, trials=args.trials)
    failed = 0
    for res in results:
        if res.passed:
            print(f"ok   {res.name}")
        else:
            failed += 1
            print(f"FAIL {res.name}: {res.detail}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratrel",
        description="Two-tape Buchi automata and the built-in reference relation family",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alpha", help="print a prefix of the fixed word alpha")
    p.add_argument("--prefix", type=int, required=True, metavar="N")
    p.set_defaults(fn=cmd_alpha)

    p = sub.add_parser("encode", help="code a grid file and print a prefix")
    p.add_argument("--grid", required=True, metavar="FILE")
    p.add_argument("--prefix", type=int, required=True, metavar="N")
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("decode", help="decode a coded prefix into grid entries")
    p.add_argument("--word", required=True, metavar="STRING")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_decode)

    p = sub.add_parser("member", help="decide lasso membership for an automaton")
    p.add_argument("--aut", metavar="NAME", help="built-in automaton name")
    p.add_argument("--aut-file", metavar="FILE", help="two-tape automaton JSON file")
    p.add_argument("--pair", nargs=2, metavar=("LASSO1", "LASSO2"))
    p.add_argument("--word", metavar="LASSO", help="single word for the one-tape automata")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_member)

    p = sub.add_parser("search", help="bounded run search on (coded grid, alpha)")
    p.add_argument("--aut", metavar="NAME", default="R")
    p.add_argument("--aut-file", metavar="FILE")
    p.add_argument("--grid", required=True, metavar="FILE")
    p.add_argument("--budget", type=int, required=True, metavar="N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("inP", help="column predicate of a grid file")
    p.add_argument("--grid", required=True, metavar="FILE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_in_p)

    p = sub.add_parser("sections", help="membership of a lasso pair in the reference relation")
    p.add_argument("--sigma", required=True, metavar="LASSO")
    p.add_argument("--u", required=True, metavar="LASSO")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_sections)

    p = sub.add_parser("export", help="emit a built-in automaton as JSON or DOT")
    p.add_argument("--aut", required=True, metavar="NAME")
    p.add_argument("--format", choices=("dot", "json"), required=True)
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("verify", help="run the embedded property suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=25)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
