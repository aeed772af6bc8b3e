"""Command-line interface.

Exit codes: 0 ok, 1 usage, 2 computation failure, 3 precondition.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .errors import ComputationError, PreconditionError, StepError
from .root_data import diagram_automorphisms, parse_type
from .weyl_words import parse_word

SCHEMA = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(obj) -> None:
    print(json.dumps({"schema": SCHEMA, **obj}, sort_keys=True, indent=2))


def _word(args):
    datum = parse_type(args.type)
    return parse_word(datum, args.word)


def cmd_info(args) -> int:
    d = parse_type(args.type)
    auts = [list(t.perm) for t in diagram_automorphisms(d)]
    if args.json:
        _emit({"type": d.name, "rank": d.rank, "cartan": [list(r) for r in d.cartan], "automorphisms": auts})
        return 0
    print(f"type {d.name}, rank {d.rank}")
    print("Cartan matrix:")
    for row in d.cartan:
        print("  " + " ".join(f"{c:3d}" for c in row))
    print(f"diagram automorphisms ({len(auts)}):")
    for p in auts:
        print("  " + " ".join(map(str, p)))
    return 0


def cmd_digraph(args) -> int:
    from .digraph import digraph_of_word

    w = _word(args)
    G = digraph_of_word(w)
    if args.dot:
        print(G.to_dot(), end="" if G.to_dot().endswith("\n") else "\n")
    elif args.json:
        _emit({"type": w.datum.name, "word": list(w.letters), **G.to_json()})
    else:
        print(f"vertices: {' '.join(map(str, G.sorted_vertices()))}")
        for a, b, lab in G.sorted_edges():
            print(f"  {a} -> {b}  [{lab}]")
    return 0


def cmd_fan(args) -> int:
    from .bott_fan import bott_fan, fan_to_json

    f = bott_fan(_word(args))
    data = fan_to_json(f)
    if args.json:
        _emit({"type": f.word.datum.name, **data})
        return 0
    print("reduced characteristic matrix:")
    for row in data["reduced_char_matrix"]:
        print("  " + " ".join(f"{c:3d}" for c in row))
    for rel in data["relations"]:
        rhs = " + ".join((f"{a}*" if a != 1 else "") + f"v{j}" for j, a in rel["rhs"].items()) or "0"
        print(f"  v{rel['letter']} + w{rel['letter']} = {rhs}")
    print(f"degrees: {data['degrees']}")
    return 0


def cmd_fano(args) -> int:
    from .bott_fan import bott_fan, is_fano_batyrev, is_weak_fano_batyrev
    from .digraph import digraph_of_word, is_fano, is_weak_fano

    w = _word(args)
    G, f = digraph_of_word(w), bott_fan(w)
    res = {
        "fano": {"indegree": is_fano(G), "batyrev": is_fano_batyrev(f)},
        "weak_fano": {"indegree": is_weak_fano(G), "batyrev": is_weak_fano_batyrev(f)},
    }
    agree = all(v["indegree"] == v["batyrev"] for v in res.values())
    if args.json:
        _emit({"type": w.datum.name, "word": list(w.letters), "agree": agree, **res})
    else:
        for k, v in res.items():
            print(f"{k}: {str(v['indegree']).lower()} (indegree), {str(v['batyrev']).lower()} (Batyrev)")
    if not agree:
        print("error: the two criteria disagree", file=sys.stderr)
        return 2
    return 0


def cmd_cohomology(args) -> int:
    from .cohomology import betti_numbers, eigen_data, format_bits, presentation

    w = _word(args)
    ring = presentation(w)
    names = ring.generators
    eig = None
    if ring.max_label <= 1:
        eig = [{"alpha": format_bits(e.alpha, names), "basis": [format_bits(b, names) for b in sorted(e.space.basis)],
                "dim": e.space.dim, "multiplicity": e.multiplicity} for e in eigen_data(ring)]
    elif args.eigen:
        raise PreconditionError("eigen data is only defined here for labels 1 (simply-laced words)")
    if args.json:
        _emit({"type": w.datum.name, "word": list(w.letters), "relations": ring.relation_strings(),
               "betti": betti_numbers(ring), "eigen": eig})
        return 0
    for s in ring.relation_strings():
        print(s)
    print(f"betti: {betti_numbers(ring)}")
    if eig is not None:
        print("eigenelements:")
        for e in eig:
            print(f"  {e['alpha']:>14}  mult {e['multiplicity']}  E = <{', '.join(e['basis'])}>")
    return 0


def _load_recovery_input(args):
    from .cohomology import BottRing, ProductTable, presentation
    from .recovery import OBFUSCATED, RecoveryInput, obfuscate, random_unimodular, recovery_input

    try:
        with open(args.input, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"{args.input} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise PreconditionError("input JSON must be an object")
    bound = args.bound
    if "word" in data:
        ring = presentation(parse_word(parse_type(data["type"]), str(data["word"])))
    elif "alphas" in data:
        ring = BottRing(tuple(data["generators"]), tuple(map(tuple, data["alphas"])), source=args.input)
    elif "table" in data:
        table = ProductTable.from_json(data)
        b = bound or int(data.get("bound", 18))
        inp = RecoveryInput(table, data.get("mode", OBFUSCATED), b, data.get("max_label"))
        if args.obfuscate is not None:
            rng = random.Random(args.obfuscate)
            inp = obfuscate(table, random_unimodular(table.r, rng), max_label=inp.max_label)
        return inp
    else:
        raise PreconditionError("input needs 'type' and 'word', 'generators' and 'alphas', or a product 'table'")
    if args.obfuscate is not None:
        rng = random.Random(args.obfuscate)
        inp = obfuscate(ring, random_unimodular(ring.m, rng))
        if bound:
            inp = RecoveryInput(inp.table, inp.mode, bound, inp.max_label)
        return inp
    return recovery_input(ring, bound or 3)


def cmd_recover(args) -> int:
    from .digraph import canonical_form
    from .recovery import recover

    inp = _load_recovery_input(args)
    res = recover(inp, strict_leaves=args.strict_leaves)
    G = res.digraph
    if args.emit == "dot":
        print(G.to_dot(), end="" if G.to_dot().endswith("\n") else "\n")
        return 0
    _emit({"mode": inp.mode, "r": inp.r, "steps_run": res.steps_run, "validated": res.validated,
           "canonical_form": canonical_form(G).hex(), **G.to_json()})
    return 0


def cmd_enumerate(args) -> int:
    from .enumeration import classify_all_toric, classify_coxeter, table3_closed_form

    d = parse_type(args.type)
    rep = classify_all_toric(d) if args.all_toric else classify_coxeter(d)
    status = 0
    check = None
    if args.check_table3:
        if args.all_toric:
            raise UsageError("--check-table3 applies to Coxeter elements, not --all-toric")
        expected = table3_closed_form(d.family, d.rank)
        check = {"expected": list(expected), "pass": tuple(rep.totals) == expected}
        status = 0 if check["pass"] else 2
    if args.json:
        out = rep.to_json()
        out["scope"] = "all_toric" if args.all_toric else "coxeter"
        if check is not None:
            out["check"] = check
        _emit(out)
    else:
        n, wf, f = rep.totals
        print(f"{d.name}: {n} classes, {wf} weak Fano, {f} Fano")
        if check is not None:
            print(f"check=({', '.join(map(str, check['expected']))}) {'pass' if check['pass'] else 'FAIL'}")
    return status


def cmd_selfcheck(args) -> int:
    from . import selfcheck

    results = selfcheck.run_all(seed=args.seed, quick=args.quick)
    failed = [r for r in results if not r[1]]
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 2 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toric-schubert", description="Toric Schubert varieties: digraphs, fans, cohomology.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def typed(name, help_, word=True):
        q = sub.add_parser(name, help=help_)
        q.add_argument("type", help="Lie type, e.g. A5 or E6")
        if word:
            q.add_argument("word", help="comma-separated letters, e.g. 3,1,4,5,2")
        q.add_argument("--json", action="store_true")
        return q

    typed("info", "Cartan matrix and diagram automorphisms", word=False).set_defaults(func=cmd_info)
    q = typed("digraph", "labelled digraph of a word")
    q.add_argument("--dot", action="store_true")
    q.set_defaults(func=cmd_digraph)
    typed("fan", "characteristic matrix, primitive relations, degrees").set_defaults(func=cmd_fan)
    typed("fano", "Fano and weak Fano by both criteria").set_defaults(func=cmd_fano)
    q = typed("cohomology", "relations, Betti numbers, eigen table")
    q.add_argument("--eigen", action="store_true", help="fail unless the eigen table can be computed")
    q.set_defaults(func=cmd_cohomology)

    q = sub.add_parser("recover", help="recover the digraph from cohomology data")
    q.add_argument("--input", required=True, help="JSON file: a word, a ring, or a product table")
    q.add_argument("--obfuscate", type=int, metavar="SEED", help="apply a seeded random change of basis first")
    q.add_argument("--bound", type=int, help="coefficient bound for the square-zero search")
    q.add_argument("--emit", choices=("json", "dot"), default="json")
    q.add_argument("--strict-leaves", action="store_true", help=argparse.SUPPRESS)
    q.set_defaults(func=cmd_recover)

    q = sub.add_parser("enumerate", help="isomorphism classes over Coxeter elements")
    q.add_argument("type")
    q.add_argument("--check-table3", action="store_true", help="compare with the closed-form counts")
    q.add_argument("--all-toric", action="store_true", help="all distinct-letter words instead")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("selfcheck", help="run the built-in oracle and fixture checks")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--quick", action="store_true")
    q.set_defaults(func=cmd_selfcheck)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(json.dumps({"schema": SCHEMA, "error": "precondition", "message": str(exc)}, sort_keys=True),
              file=sys.stderr)
        return 3
    except StepError as exc:
        print(json.dumps({"schema": SCHEMA, "error": "step", **exc.as_dict()}, sort_keys=True, default=str),
              file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(json.dumps({"schema": SCHEMA, "error": "computation", "message": str(exc)}, sort_keys=True),
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
