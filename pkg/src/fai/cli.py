"""Command line front end.

Exit codes: 0 success (entailed / valid / degree 1), 1 negative result
(not entailed, proof invalid, goal not provable), 2 usage, 3 bad input.
Output on stdout is deterministic; progress notes go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .context import (
    LContext,
    complete_set,
    downup,
    hasse_dot,
    intents_enum,
    minimize_sides,
    reduce_to_base,
)
from .errors import CapExceeded, FaiError, GoalMismatch, InvalidStep, NotProvable
from .fset import Universe, parse_lset, render_lset
from .gconn import (
    Compose,
    ConstMult,
    ConstMultSet,
    DiffSet,
    Identity,
    Rotate,
    generate_monoid,
    generators_from_descriptors,
    verify_adjoint,
)
from .lattice import Chain, parse_degree, render_degree
from .proof import check_proof, proof_from_json, proof_to_json, prove
from .semantics import (
    entail_degree,
    least_model,
    models_enum,
    parse_fai,
    parse_theory,
    render_fai,
    render_theory,
)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_setting(path: str):
    """Chain, universe and monoid from a parameter file.

    JSON keys: degrees (list), logic, attributes (list), generators (list of
    descriptors, may be empty for plain implications), monoid_cap (optional).
    Floats are read as exact fractions.
    """
    data = json.loads(_read(path), parse_float=Fraction)
    for key in ("degrees", "logic", "attributes"):
        if key not in data:
            raise FaiError(f"parameter file lacks {key!r}")
    chain = Chain([_fraction(d) for d in data["degrees"]], data["logic"])
    universe = Universe(data["attributes"])
    gens = generators_from_descriptors(data.get("generators", []), universe, chain)
    cap = int(data.get("monoid_cap", 4096))
    return chain, universe, generate_monoid(gens, universe, chain, cap=cap)


def _fraction(value) -> Fraction:
    return parse_degree(value) if isinstance(value, str) else Fraction(value)


def _load_context(path: str, chain: Chain, universe: Universe) -> LContext:
    return LContext.from_csv(_read(path), chain, universe)


def _load_theory(path: str, universe: Universe, chain: Chain):
    return parse_theory(_read(path), universe, chain)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _render_term(term) -> str:
    if isinstance(term, Identity):
        return "identity"
    if isinstance(term, ConstMult):
        return f"const-mult({render_degree(term.c)})"
    if isinstance(term, ConstMultSet):
        return f"const-mult-set({{{render_lset(term.C)}}})"
    if isinstance(term, DiffSet):
        return f"diff-set({{{render_lset(term.C)}}})"
    if isinstance(term, Rotate):
        return f"rotate({term.shift})"
    if isinstance(term, Compose):
        return f"compose({_render_term(term.outer)}, {_render_term(term.inner)})"
    return repr(term)


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    chain, universe, s = _load_setting(args.params)
    degrees = ", ".join(render_degree(d) for d in chain.degrees)
    print(f"chain: {chain.n} degrees ({degrees}), logic {chain.logic}")
    print(f"attributes: {', '.join(universe.attributes)}")
    print(f"S: {len(s)} connections")
    for i, conn in enumerate(s):
        print(f"  [{i}] {_render_term(conn.term)}  fp={conn.fingerprint_hash()}")
    try:
        for conn in s:
            verify_adjoint(conn.lower, conn.upper, universe, chain, cap=args.cap)
    except CapExceeded:
        print("adjointness: skipped (state space above --cap)")
    else:
        print(f"adjointness: verified for all {len(s)} members")
    return 0


def cmd_closure(args) -> int:
    chain, universe, s = _load_setting(args.params)
    _note(f"S: {len(s)} connections")
    m = parse_lset(args.set, universe, chain)
    if (args.theory is None) == (args.context is None):
        print("error: closure needs exactly one of --theory or --context", file=sys.stderr)
        return 2
    if args.theory is not None:
        closed = least_model(_load_theory(args.theory, universe, chain), s, m)
    else:
        closed = downup(_load_context(args.context, chain, universe), m, s)
    print(render_lset(closed))
    return 0


def cmd_entail(args) -> int:
    chain, universe, s = _load_setting(args.params)
    _note(f"S: {len(s)} connections")
    theory = _load_theory(args.theory, universe, chain)
    query = parse_fai(args.query, universe, chain)
    degree = entail_degree(theory, query, s)
    if args.json:
        print(json.dumps({"degree": render_degree(degree), "entailed": degree == 1}))
    else:
        print(render_degree(degree))
    return 0 if degree == 1 else 1


def _cmd_rules(args, reduce: bool) -> int:
    chain, universe, s = _load_setting(args.params)
    _note(f"S: {len(s)} connections")
    ctx = _load_context(args.context, chain, universe)
    theory = complete_set(ctx, s, cap=args.cap)
    if reduce and not args.complete_only:
        theory = reduce_to_base(theory, ctx, s)
        if args.minimize_sides:
            theory = minimize_sides(theory, ctx, s, cap=args.cap)
    if args.json:
        payload = {"count": len(theory), "rules": [render_fai(r) for r in theory]}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
        return 0
    _emit(render_theory(theory), args.out)
    print(f"# rules: {len(theory)}")
    return 0


def cmd_base(args) -> int:
    return _cmd_rules(args, reduce=True)


def cmd_complete_set(args) -> int:
    return _cmd_rules(args, reduce=False)


def _cmd_listing(args, sets, what: str) -> int:
    if args.dot is not None:
        _emit(hasse_dot(sets, name=what), args.dot)
    if args.json:
        payload = {"count": len(sets), what: [render_lset(m) for m in sets]}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
        return 0
    body = "".join(render_lset(m) + "\n" for m in sets)
    _emit(body, args.out)
    print(f"# {what}: {len(sets)}")
    return 0


def cmd_intents(args) -> int:
    chain, universe, s = _load_setting(args.params)
    _note(f"S: {len(s)} connections")
    ctx = _load_context(args.context, chain, universe)
    return _cmd_listing(args, intents_enum(ctx, s, cap=args.cap), "intents")


def cmd_models(args) -> int:
    chain, universe, s = _load_setting(args.params)
    _note(f"S: {len(s)} connections")
    theory = _load_theory(args.theory, universe, chain)
    return _cmd_listing(args, models_enum(theory, s, cap=args.cap), "models")


def cmd_check_proof(args) -> int:
    chain, universe, s = _load_setting(args.params)
    _note(f"S: {len(s)} connections")
    theory = _load_theory(args.theory, universe, chain)
    data = json.loads(_read(args.proof), parse_float=Fraction)
    proof = proof_from_json(data, universe, chain)
    goal = parse_fai(args.goal, universe, chain) if args.goal else None
    try:
        check_proof(proof, theory, s, goal=goal, allow_cutf=args.allow_cutf)
    except (InvalidStep, GoalMismatch) as exc:
        print(f"invalid: {exc}")
        return 1
    print(f"ok: {len(proof)} steps, goal {render_fai(proof.goal)}")
    return 0


def cmd_prove(args) -> int:
    chain, universe, s = _load_setting(args.params)
    _note(f"S: {len(s)} connections")
    theory = _load_theory(args.theory, universe, chain)
    goal = parse_fai(args.query, universe, chain)
    try:
        proof = prove(theory, s, goal)
    except NotProvable as exc:
        print(f"not provable: {exc}")
        return 1
    payload = json.dumps(proof_to_json(proof), indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(payload)
    else:
        _emit(payload, args.out)
        print(f"proved in {len(proof)} steps")
    return 0


# ---------------------------------------------------------------- wiring


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", required=True, metavar="FILE",
                        help="JSON with degrees, logic, attributes, generators")
    common.add_argument("--cap", type=int, default=10**6, metavar="N",
                        help="abort enumeration past N candidate sets")

    parser = argparse.ArgumentParser(
        prog="fai",
        description="Graded attribute implications with parameterized semantics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="check the parameter file and list S")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("closure", parents=[common],
                       help="least model (--theory) or context closure (--context) of a set")
    p.add_argument("--set", required=True, help="graded set literal, e.g. 'k, 0.5/l'")
    p.add_argument("--theory", metavar="FILE")
    p.add_argument("--context", metavar="FILE")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("entail", parents=[common],
                       help="degree to which a theory entails an implication")
    p.add_argument("--theory", required=True, metavar="FILE")
    p.add_argument("--query", required=True, help="implication, e.g. '0.75/a, e -> l'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_entail)

    for name, func, extra in (
        ("base", cmd_base, True),
        ("complete-set", cmd_complete_set, False),
    ):
        p = sub.add_parser(name, parents=[common],
                           help="non-redundant base from a context" if extra
                           else "pseudo-intent implications of a context")
        p.add_argument("--context", required=True, metavar="FILE")
        p.add_argument("--json", action="store_true")
        p.add_argument("--out", metavar="FILE", help="write the rules here instead of stdout")
        if extra:
            p.add_argument("--minimize-sides", action="store_true",
                           help="also lower degrees inside the surviving rules")
            p.add_argument("--complete-only", action="store_true",
                           help="skip the redundancy pass")
        else:
            p.set_defaults(minimize_sides=False, complete_only=True)
        p.set_defaults(func=func)

    p = sub.add_parser("intents", parents=[common],
                       help="all context closures, in lectic order")
    p.add_argument("--context", required=True, metavar="FILE")
    p.add_argument("--dot", metavar="FILE", help="write the cover diagram as DOT")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_intents)

    p = sub.add_parser("models", parents=[common],
                       help="all models of a theory, in lectic order")
    p.add_argument("--theory", required=True, metavar="FILE")
    p.add_argument("--dot", metavar="FILE", help="write the cover diagram as DOT")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_models)

    p = sub.add_parser("check-proof", parents=[common],
                       help="validate a proof against a theory")
    p.add_argument("--theory", required=True, metavar="FILE")
    p.add_argument("--proof", required=True, metavar="FILE")
    p.add_argument("--goal", help="require the proof to end in this implication")
    p.add_argument("--allow-cutf", action="store_true",
                   help="accept combined Cut+F steps")
    p.set_defaults(func=cmd_check_proof)

    p = sub.add_parser("prove", parents=[common],
                       help="synthesize a proof of an entailed implication")
    p.add_argument("--theory", required=True, metavar="FILE")
    p.add_argument("--query", required=True, help="implication to prove")
    p.add_argument("--out", metavar="FILE", help="write the proof JSON here")
    p.set_defaults(func=cmd_prove)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (FaiError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
