"""Command-line interface.

Every subcommand prints canonical text and exits 0 on success, 1 when a
checker answers false (including `invert` on a non-invertible element),
and 2 on usage or parse errors.  Output is deterministic: identical
invocations produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import (NotInvertible, annihilator, decompose,
                      find_idempotent_obstructions, invert, obstruction)
from .category import (MatrixFunctor, NotAFunctorError, check_duality_identity,
                       check_obstructed_functor, check_regular_cocycle,
                       cocycle_from_json, dual_cocycle, _matrix_from_json)
from .parser import ParseError, parse_element, parse_wick, parse_word_letters
from .rewrite import RewriteSystem, ZERO
from .reports import write_all
from .scalar import ONE
from .tensor import (SIGN_CONVENTIONS, bialgebra_candidates,
                     check_almost_bialgebra, check_regular_module,
                     dual_comultiplication, dual_system)
from .wick import ConjugatedPair, CrossSymmetry, check_coherence


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="rga",
        description="exact computer algebra for regular graded algebras")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an element expression")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("expr")

    p = sub.add_parser("nf", help="normal form of a raw word")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("letters", help='word letters, e.g. "1 2 1"')

    p = sub.add_parser("invert", help="closed-form inverse (n=2)")
    p.add_argument("-n", type=int, required=True, choices=[2])
    p.add_argument("expr")

    p = sub.add_parser("annihilate", help="annihilator basis (n=2)")
    p.add_argument("-n", type=int, required=True, choices=[2])
    p.add_argument("--side", choices=["left", "right"], required=True)
    p.add_argument("expr")

    p = sub.add_parser("obstruction", help="the obstruction map (n=2)")
    p.add_argument("-n", type=int, required=True, choices=[2])
    p.add_argument("expr")

    p = sub.add_parser("idempotents",
                       help="idempotent obstruction elements (n=2)")
    p.add_argument("-n", type=int, required=True, choices=[2])

    p = sub.add_parser("confluence", help="local confluence check")
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("decompose", help="the subspaces X_i")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--max-deg", type=int, required=True)

    check = sub.add_parser("check", help="structure checkers")
    checksub = check.add_subparsers(dest="checker", required=True)
    p = checksub.add_parser("cocycle")
    p.add_argument("file")
    p = checksub.add_parser("functor")
    p.add_argument("file")
    p = checksub.add_parser("bialgebra")
    p.add_argument("-n", type=int, required=True, choices=[2])
    p.add_argument("--signs", choices=list(SIGN_CONVENTIONS), required=True)
    p.add_argument("--evacuum", choices=["unit", "idem"], required=True)
    p = checksub.add_parser("module")
    p.add_argument("file")

    wick = sub.add_parser("wick", help="Wick cross-product operations")
    wicksub = wick.add_subparsers(dest="wickop", required=True)
    p = wicksub.add_parser("eval")
    p.add_argument("expr")
    p.add_argument("--vacuum", choices=["unit", "idem"], default="unit")
    p = wicksub.add_parser("coherence")
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--vacuum", choices=["unit", "idem"], default="unit")

    dual = sub.add_parser("dual", help="duality operations")
    dualsub = dual.add_subparsers(dest="dualop", required=True)
    dualsub.add_parser("delta")

    p = sub.add_parser("report", help="write every snapshot report")
    p.add_argument("--all", action="store_true", required=True)
    p.add_argument("--out", default="reports")

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ParseError as exc:
        print(f"error: {exc}")
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}")
        return 1


def _dispatch(args) -> int:
    cmd = args.command
    if getattr(args, "n", None) is not None and args.n < 1:
        print(f"error: generator count must be >= 1, got {args.n}")
        return 2
    if cmd == "eval":
        sys_ = RewriteSystem(args.n)
        print(parse_element(args.expr, sys_))
        return 0
    if cmd == "nf":
        sys_ = RewriteSystem(args.n)
        word = parse_word_letters(args.letters, sys_)
        nf = sys_.normal_form(word)
        print("0" if nf is ZERO else nf.to_text(sys_.symbol))
        return 0
    if cmd == "invert":
        sys_ = RewriteSystem(2)
        try:
            print(invert(parse_element(args.expr, sys_)))
            return 0
        except NotInvertible as exc:
            print(f"error: {exc}")
            return 1
    if cmd == "annihilate":
        sys_ = RewriteSystem(2)
        basis = annihilator(parse_element(args.expr, sys_), args.side)
        if not basis:
            print("0")
        for e in basis:
            print(e)
        return 0
    if cmd == "obstruction":
        sys_ = RewriteSystem(2)
        print(obstruction(parse_element(args.expr, sys_)))
        return 0
    if cmd == "idempotents":
        for e in find_idempotent_obstructions(RewriteSystem(2)):
            print(e)
        return 0
    if cmd == "confluence":
        rep = RewriteSystem(args.n).check_local_confluence()
        k = len(rep.critical_pairs)
        if rep.locally_confluent:
            print(f"locally confluent: true (critical pairs: {k}, "
                  f"all joinable)")
            return 0
        joinable = sum(1 for p in rep.critical_pairs if p.joinable)
        print(f"locally confluent: false (critical pairs: {k}, "
              f"{joinable} joinable)")
        return 1
    if cmd == "decompose":
        sys_ = RewriteSystem(args.n)
        for space in decompose(sys_, args.max_deg):
            print(f"{space.label}: " + ", ".join(space.basis_texts()))
        return 0
    if cmd == "check":
        return _dispatch_check(args)
    if cmd == "wick":
        return _dispatch_wick(args)
    if cmd == "dual":
        theta = RewriteSystem(2)
        xi = dual_system()
        table = dual_comultiplication(theta, xi)
        for w in sorted(table, key=lambda w: w.sort_key()):
            print(f"Delta({w.to_text('X')}) = {table[w]}")
        return 0
    if cmd == "report":
        for path in write_all(args.out):
            print(f"wrote {path}")
        return 0
    raise AssertionError(f"unhandled command {cmd}")


def _dispatch_check(args) -> int:
    if args.checker == "cocycle":
        with open(args.file, "r", encoding="utf-8") as fh:
            cocycle, pairings = cocycle_from_json(json.load(fh))
        verdict = check_regular_cocycle(cocycle)
        if verdict.ok:
            print("regular cocycle: true")
        else:
            print(f"regular cocycle: false "
                  f"(fails at index {verdict.failing_index})")
        ok = verdict.ok
        if pairings is not None and verdict.ok:
            dual = dual_cocycle(cocycle, pairings)
            dual_ok = (check_regular_cocycle(dual).ok
                       and check_duality_identity(cocycle, dual, pairings))
            print(f"duality identity: {str(dual_ok).lower()}")
            ok = ok and dual_ok
        return 0 if ok else 1
    if args.checker == "functor":
        with open(args.file, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        cocycle, _ = cocycle_from_json(doc["cocycle"])
        change = {label: _matrix_from_json(rows)
                  for label, rows in doc["base_change"].items()}
        functor = MatrixFunctor.base_change(change)
        try:
            verdict = check_obstructed_functor(functor, [cocycle])
        except NotAFunctorError as exc:
            print(f"obstructed functor: false ({exc})")
            return 1
        print(f"obstructed functor: {str(verdict.ok).lower()}")
        return 0 if verdict.ok else 1
    if args.checker == "bialgebra":
        sys_ = RewriteSystem(2)
        name = f"e1={args.evacuum},e2={args.evacuum}"
        gens = bialgebra_candidates(sys_)[name]
        rep = check_almost_bialgebra(gens, args.signs)
        print(f"Delta(T1)^2 = 0: {str(rep.square_zero[0]).lower()}")
        print(f"Delta(T2)^2 = 0: {str(rep.square_zero[1]).lower()}")
        print(f"D1 D2 D1 = D1: {str(rep.cyclic[0]).lower()}")
        print(f"D2 D1 D2 = D2: {str(rep.cyclic[1]).lower()}")
        return 0 if rep.ok else 1
    if args.checker == "module":
        with open(args.file, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        sys_ = RewriteSystem(doc.get("n", 2))
        basis = []
        action = {}
        for key, rows in doc["action"].items():
            e = parse_element(key, sys_)
            terms = e.terms()
            if len(terms) != 1 or terms[0][1] != ONE:
                raise ValueError(f"action key {key!r} is not a basis word")
            word = terms[0][0]
            basis.append(word)
            action[word] = _matrix_from_json(rows)
        dim = doc["module_dim"]
        e_algebra = obstruction if doc.get("e_algebra",
                                           "obstruction") == "obstruction" \
            else (lambda a: a)
        if doc.get("e_module") in (None, "identity"):
            e_module = lambda v: v
        else:
            m = _matrix_from_json(doc["e_module"])
            e_module = m.apply
        ok, witnesses = check_regular_module(action, basis, dim,
                                             e_algebra, e_module, sys_)
        print(f"regular module law: {str(ok).lower()}")
        if witnesses:
            w, j = witnesses[0]
            print(f"  first failure at word {w.to_text()} basis index {j}")
        return 0 if ok else 1
    raise AssertionError(f"unhandled checker {args.checker}")


def _dispatch_wick(args) -> int:
    pair = ConjugatedPair()
    psi = CrossSymmetry.regular(pair, args.vacuum)
    if args.wickop == "eval":
        print(parse_wick(args.expr, pair, psi))
        return 0
    if args.wickop == "coherence":
        rep = check_coherence(psi, args.max_deg)
        if rep.coherent:
            print(f"coherent: true (instances: {rep.checked})")
            return 0
        print(f"coherent: false (instances: {rep.checked}, "
              f"order coherent: {str(rep.order_coherent).lower()}, "
              f"disagreements: {len(rep.disagreements)})")
        for kind, reduces, parts, got, want in rep.disagreements[:10]:
            cls = "reduction" if reduces else "order"
            print(f"  {kind}[{cls}] at {parts}: {got} != {want}")
        return 1
    raise AssertionError(f"unhandled wick op {args.wickop}")


def entry():  # console script hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
