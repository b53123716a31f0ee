"""
Command-line interface.

    hassett generators --g 1 --weights 1/2,1/2
    hassett eval --g 1 --weights 1,1 --class "kappa - 12*lambda"
    hassett map reduce-pull --g 1 --from 1,1 --to 1/2,1/2 --class "psi(1)"
    hassett delta --g 1 --weights 1/2,1/2 --json
    hassett verify canonical --g 2 --weights ""
    hassett verify all --json
    hassett grid --genera 1,2 --sizes 0-3

Exit status: 0 on success, 1 if a verification failed, 2 on usage,
parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import grid as gridmod
from . import lcm
from .core import (
    DivisorClass, InvalidGeneratorError, InvalidSpaceError, ModuliSpace,
    SpaceMismatchError, enumerate_generators, normal_form,
)
from .expr import ParseError, parse_class, parse_rational, parse_subset, parse_weights
from .morphisms import (
    CoincidentMap, DomainError, NodalBoundaryMap, PairClass, ReductionMap,
    coincident_restriction, forget_target, forgetful_pullback, irr_restriction,
    nodal_restriction, reduction_pullback, reduction_pushforward, unweighted,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

USER_ERRORS = (ParseError, InvalidSpaceError, InvalidGeneratorError, SpaceMismatchError,
               DomainError)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def space_doc(space: ModuliSpace) -> dict:
    return {"genus": space.genus, "weights": [str(a) for a in space.weights]}


def class_terms(c: DivisorClass) -> list:
    return [{"generator": str(g), "coefficient": str(v)} for g, v in c.items()]


def class_doc(c: DivisorClass) -> dict:
    return {"space": space_doc(c.space), "expression": str(c), "terms": class_terms(c)}


def report_doc(r) -> dict:
    if isinstance(r.difference, PairClass):
        diff = ([dict(t, factor="left") for t in class_terms(r.difference.left)]
                + [dict(t, factor="right") for t in class_terms(r.difference.right)])
    else:
        diff = class_terms(r.difference)
    doc = {"identity": r.identity, "passed": r.passed, "difference": diff,
           "checks": dict(sorted(r.checks.items()))}
    doc.update(space_doc(r.space))
    if r.detail:
        doc["detail"] = r.detail
    return doc


def dump(doc) -> str:
    return json.dumps(dict(doc, schema_version=SCHEMA_VERSION), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _space(args, weights_attr="weights") -> ModuliSpace:
    if args.g is None:
        raise UsageError("--g is required")
    text = getattr(args, weights_attr)
    if text is None:
        raise UsageError("--%s is required" % weights_attr.replace("_", "-"))
    return ModuliSpace(args.g, parse_weights(text))


def _int_list(text: str) -> list:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-")
            out += list(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _stratum(text: str):
    """'j;{i,...}' -> (j, subset)."""
    try:
        j, s = text.split(";", 1)
        return int(j), parse_subset(s)
    except ValueError:
        raise ParseError("strata are written as 'j;{i,...}', got %r" % text) from None


def _grid_spaces(args) -> list:
    return gridmod.grid(_int_list(args.genera), _int_list(args.sizes), args.samples, args.seed)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_generators(args, out):
    S = _space(args)
    gens = enumerate_generators(S)
    if args.json:
        out.write(dump({"command": "generators", "space": space_doc(S),
                        "generators": [str(g) for g in gens]}) + "\n")
    else:
        out.write("%s: %d generators\n" % (S, len(gens)))
        for g in gens:
            out.write("  %s\n" % g)
    return EXIT_OK


def cmd_eval(args, out):
    S = _space(args)
    c = parse_class(S, args.cls)
    nf = normal_form(c)
    if args.json:
        out.write(dump({"command": "eval", "class": class_doc(c),
                        "normal_form": class_doc(nf)}) + "\n")
    else:
        out.write("%s\nnormal form: %s\n" % (c, nf))
    return EXIT_OK


def _map_result(args):
    name = args.morphism
    if name in ("reduce-push", "reduce-pull"):
        if args.g is None or args.source is None or args.target is None:
            raise UsageError("%s needs --g, --from and --to" % name)
        m = ReductionMap(ModuliSpace(args.g, parse_weights(args.source)),
                         ModuliSpace(args.g, parse_weights(args.target)))
        if name == "reduce-push":
            return reduction_pushforward(m, parse_class(m.source, args.cls))
        return reduction_pullback(m, parse_class(m.target, args.cls))
    S = _space(args)
    if name == "forget-pull":
        # --weights names the source, whose last marking is forgotten
        return forgetful_pullback(S, parse_class(forget_target(S), args.cls))
    c = parse_class(S, args.cls)
    if name == "eta":
        if args.stratum is None:
            raise UsageError("eta needs --stratum 'j;{i,...}'")
        j, I = _stratum(args.stratum)
        return nodal_restriction(NodalBoundaryMap(S, j, I), c)
    if name == "xi":
        return irr_restriction(S, c)
    if name == "chi":
        if args.subset is None:
            raise UsageError("chi needs --subset '{i,...}'")
        return coincident_restriction(CoincidentMap(S, parse_subset(args.subset)), c)
    raise UsageError("unknown morphism %r" % name)


def cmd_map(args, out):
    res = _map_result(args)
    if isinstance(res, PairClass):
        doc = {"left": class_doc(res.left), "right": class_doc(res.right)}
        text = "left  %s: %s\nright %s: %s\n" % (res.left.space, res.left,
                                                 res.right.space, res.right)
    else:
        doc = {"result": class_doc(res)}
        text = "%s: %s\n" % (res.space, res)
    if args.json:
        out.write(dump(dict(doc, command="map", morphism=args.morphism)) + "\n")
    else:
        out.write(text)
    return EXIT_OK


def cmd_delta(args, out):
    S = _space(args)
    delta = lcm.delta_class(unweighted(S), S.weights)
    push = lcm.delta_pushforward(S)
    if args.json:
        out.write(dump({"command": "delta", "space": space_doc(S), "delta": class_doc(delta),
                        "pushforward": class_doc(push)}) + "\n")
    else:
        out.write("Delta on %s: %s\n" % (delta.space, delta))
        out.write("push-forward on %s: %s\n" % (S, push))
    return EXIT_OK


IDENTITIES = ("canonical", "delta-presentations", "delta-routes", "nodal", "irr",
              "coincident", "theorem", "step1", "all")


def _run_identity(name, S, args) -> list:
    if name == "canonical":
        return [lcm.verify_canonical(S)]
    if name == "delta-presentations":
        return [lcm.verify_delta_presentations(S)]
    if name == "delta-routes":
        return [lcm.verify_delta_routes(S)]
    if name == "nodal":
        strata = [_stratum(args.stratum)] if args.stratum else lcm.nodal_strata(S)
        return [lcm.verify_nodal_restriction(S, j, I) for j, I in strata]
    if name == "irr":
        if S.genus < 1:
            raise InvalidSpaceError("xi needs genus >= 1")
        return [lcm.verify_irr_restriction(S)]
    if name == "coincident":
        subsets = [parse_subset(args.subset)] if args.subset else lcm.light_subsets(S)
        return [lcm.verify_coincident_restriction(S, I) for I in subsets]
    if name == "theorem":
        return [lcm.verify_theorem_decomposition(S)]
    if name == "step1":
        taus = [parse_rational(args.tau)] if args.tau else lcm.default_taus(S)
        return [lcm.verify_step1_identity(S, t) for t in taus]
    if name == "all":
        return lcm.verify_all(S)
    raise UsageError("unknown identity %r" % name)


def cmd_verify(args, out):
    if args.g is not None:
        spaces = [_space(args)]
    elif args.identity == "all" or args.grid:
        spaces = _grid_spaces(args)
    else:
        raise UsageError("give --g/--weights, or use --grid")
    reports = [r for S in spaces for r in _run_identity(args.identity, S, args)]
    ok = all(r.passed for r in reports)
    if args.json:
        out.write(dump({"command": "verify", "identity": args.identity, "passed": ok,
                        "count": len(reports),
                        "reports": [report_doc(r) for r in reports]}) + "\n")
    else:
        failed = [r for r in reports if not r.passed]
        for r in (reports if args.verbose else failed):
            out.write("%s %s %s %s\n" % ("PASS" if r.passed else "FAIL", r.identity, r.space,
                                         r.detail))
            if not r.passed:
                out.write("    difference: %s\n    checks: %s\n" % (r.difference, r.checks))
        out.write("%s: %d/%d passed over %d space(s)\n"
                  % (args.identity, len(reports) - len(failed), len(reports), len(spaces)))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_grid(args, out):
    spaces = _grid_spaces(args)
    if args.json:
        out.write(dump({"command": "grid", "seed": args.seed,
                        "spaces": [space_doc(S) for S in spaces]}) + "\n")
    else:
        for S in spaces:
            out.write("%d %s\n" % (S.genus, ",".join(map(str, S.weights))))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", type=int, help="genus")
    common.add_argument("--weights", help="comma separated rationals, e.g. 1/2,1/2")
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    gridopts = argparse.ArgumentParser(add_help=False)
    gridopts.add_argument("--genera", default=",".join(map(str, gridmod.GENERA)))
    gridopts.add_argument("--sizes", default="%d-%d" % (gridmod.SIZES[0], gridmod.SIZES[-1]))
    gridopts.add_argument("--samples", type=int, default=gridmod.SAMPLES)
    gridopts.add_argument("--seed", type=int, default=None,
                          help="sampler seed (default: $%s or %d)"
                          % (gridmod.SEED_ENV, gridmod.DEFAULT_SEED))

    p = _ArgumentParser(prog="hassett", description="Tautological divisor calculus on M_{g,A}.")
    sub = p.add_subparsers(dest="command", parser_class=_ArgumentParser)
    sub.required = True

    s = sub.add_parser("generators", parents=[common], help="list valid generators")
    s.set_defaults(func=cmd_generators)

    s = sub.add_parser("eval", parents=[common], help="parse a class and print its normal form")
    s.add_argument("--class", dest="cls", required=True)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("map", parents=[common], help="apply a morphism to a class")
    s.add_argument("morphism", choices=["reduce-push", "reduce-pull", "forget-pull",
                                        "eta", "xi", "chi"])
    s.add_argument("--from", dest="source", help="source weights of a reduction")
    s.add_argument("--to", dest="target", help="target weights of a reduction")
    s.add_argument("--stratum", help="eta stratum 'j;{i,...}'")
    s.add_argument("--subset", help="chi subset '{i,...}'")
    s.add_argument("--class", dest="cls", required=True)
    s.set_defaults(func=cmd_map)

    s = sub.add_parser("delta", parents=[common], help="Delta_A and its push-forward")
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("verify", parents=[common, gridopts], help="check identities")
    s.add_argument("identity", choices=IDENTITIES)
    s.add_argument("--grid", action="store_true", help="run over the sampled grid")
    s.add_argument("--stratum")
    s.add_argument("--subset")
    s.add_argument("--tau")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("grid", parents=[common, gridopts], help="list the sampled test spaces")
    s.set_defaults(func=cmd_grid)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "seed", 0) is None:
            args.seed = gridmod.default_seed()
        return args.func(args, out)
    except UsageError as e:
        err.write("usage error: %s\n" % e)
        return EXIT_USAGE
    except USER_ERRORS as e:
        err.write("error: %s\n" % e)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
