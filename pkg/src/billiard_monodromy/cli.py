"""Command-line front end.

Every subcommand maps to exactly one library operation and supports --json.
Exit codes: 0 success, 1 domain rejection, 2 cap exceeded, 3 usage error.
The environment variable BILLIARD_MONODROMY_MAX_CAP overrides the default
span/group caps; explicit flags beat the environment.
"""

import argparse
import json
import os
import sys

from . import construct, exactla, monodromy, oracle, polyfp
from .errors import CapExceeded, DomainError
from .polygon import enumerate_algebraic, enumerate_geometric, validate

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_CAP = 2
EXIT_USAGE = 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(message)


def _emit_json(doc):
    print(json.dumps(doc, sort_keys=True, separators=(",", ":")))


def _parse_tuple(text):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise _Usage(f"tuple must be comma-separated integers, got {text!r}")


def _env_cap(default):
    raw = os.environ.get("BILLIARD_MONODROMY_MAX_CAP")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise _Usage(f"BILLIARD_MONODROMY_MAX_CAP must be an integer, got {raw!r}")


def _caps(args):
    span = args.max_span if args.max_span else _env_cap(oracle.DEFAULT_SPAN_CAP)
    group = args.max_group if args.max_group else _env_cap(oracle.DEFAULT_GROUP_CAP)
    return span, group


def _add_tuple_args(sp):
    sp.add_argument("--n", type=int, required=True, help="modulus")
    sp.add_argument("--tuple", required=True, help="comma-separated entries")


def _add_cap_args(sp):
    sp.add_argument("--max-span", type=int, default=0,
                    help=f"span enumeration cap (default {oracle.DEFAULT_SPAN_CAP})")
    sp.add_argument("--max-group", type=int, default=0,
                    help=f"group closure cap (default {oracle.DEFAULT_GROUP_CAP})")


def cmd_group(args):
    t = validate(_parse_tuple(args.tuple), args.n, args.level)
    desc = monodromy.group_of(t)
    doc = {"tuple": t.to_json_dict(), "group": desc.to_json_dict()}
    lines = [f"{desc.pretty()}, order {desc.order}"]
    if args.verify:
        span_cap, group_cap = _caps(args)
        pp = oracle.build_permutations(t)
        size = oracle.group_order(pp, cap=group_cap)
        inv = oracle.span_invariants(t, cap=span_cap)
        ok = size == desc.order and inv.factors == desc.deltas
        doc["oracle"] = {"group_order": size,
                         "span_factors": list(inv.factors), "ok": ok}
        lines.append(f"oracle: {'OK' if ok else 'MISMATCH'} (|G|={size})")
        if not ok:
            if args.json:
                _emit_json(doc)
            else:
                print("\n".join(lines))
            return EXIT_DOMAIN
    if args.json:
        _emit_json(doc)
    else:
        print("\n".join(lines))
    return EXIT_OK


def cmd_snf(args):
    if args.matrix:
        try:
            A = json.loads(args.matrix)
        except json.JSONDecodeError as e:
            raise _Usage(f"--matrix must be a JSON array of rows: {e}")
        if (not isinstance(A, list) or not A
                or any(not isinstance(r, list) or len(r) != len(A[0]) for r in A)):
            raise _Usage("--matrix must be a nonempty rectangular array of rows")
        A = [[int(x) for x in row] for row in A]
    elif args.n and args.tuple:
        A = exactla.circulant(validate(_parse_tuple(args.tuple), args.n, "algebraic"))
    else:
        raise _Usage("snf needs either --matrix or both --n and --tuple")
    res = exactla.smith_normal_form(A)
    if args.json:
        _emit_json({"U": res.U, "D": res.D, "V": res.V,
                    "divisors": list(res.divisors)})
    else:
        for name, M in (("U", res.U), ("D", res.D), ("V", res.V)):
            print(f"{name}:")
            for row in M:
                print("  " + " ".join(map(str, row)))
        print("divisors: " + ", ".join(map(str, res.divisors)))
    return EXIT_OK


def cmd_verify(args):
    t = validate(_parse_tuple(args.tuple), args.n, "algebraic")
    span_cap, group_cap = _caps(args)
    report = oracle.check_structure(t, span_cap=span_cap, group_cap=group_cap)
    if args.json:
        _emit_json({
            "n": report.n, "k": report.k,
            "group_order": report.group_order,
            "translation_order": report.translation_order,
            "action_trivial": report.action_trivial,
            "clauses": report.clauses,
            "passed": report.passed,
        })
    else:
        for name, ok in report.clauses.items():
            print(f"{name}: {'PASS' if ok else 'FAIL'}")
        print(f"|G| = {report.group_order}, |N| = {report.translation_order}, "
              f"action {'trivial' if report.action_trivial else 'nontrivial'}")
    return EXIT_OK if report.passed else EXIT_DOMAIN


def cmd_factor(args):
    factors = polyfp.factor_xk_minus_1(args.k, args.p)
    if args.json:
        _emit_json({"k": args.k, "p": args.p, "factors": [
            {"coeffs": list(f.coeffs), "multiplicity": m} for f, m in factors]})
    else:
        for f, m in factors:
            print(f"({f})" + (f"^{m}" if m > 1 else ""))
    return EXIT_OK


def cmd_enumerate(args):
    gen = (enumerate_geometric if args.level == "geometric"
           else enumerate_algebraic)(args.k, args.n)
    if args.json:
        out = []
        for t in gen:
            item = {"tuple": t.to_json_dict()}
            if args.groups:
                item["group"] = monodromy.group_of(t).to_json_dict()
            out.append(item)
        _emit_json({"k": args.k, "n": args.n, "level": args.level,
                    "count": len(out), "tuples": out})
    else:
        count = 0
        for t in gen:
            line = str(t)
            if args.groups:
                line += f"  ->  {monodromy.group_of(t).pretty()}"
            print(line)
            count += 1
        print(f"{count} tuples")
    return EXIT_OK


def _print_report(report, as_json):
    if as_json:
        _emit_json(report.to_json_dict())
        return
    for desc in report.achievable:
        wit = report.witnesses[desc]
        print(f"{desc.pretty()}, order {desc.order}  witness {wit}")
    for desc, rule in report.excluded:
        print(f"excluded: {desc.pretty()}  [{rule}]")


def cmd_classify_prime(args):
    _print_report(construct.classify_prime(args.k, args.p), args.json)
    return EXIT_OK


def cmd_classify_triangle(args):
    _print_report(construct.classify_triangles(args.n), args.json)
    return EXIT_OK


def cmd_construct(args):
    t = construct.construct_prime_case(args.k, args.p, args.d)
    desc = monodromy.group_of(t)
    if args.json:
        _emit_json({"tuple": t.to_json_dict(), "group": desc.to_json_dict()})
    else:
        print(f"{t}  ->  {desc.pretty()}, order {desc.order}")
    return EXIT_OK


def cmd_combine(args):
    t1 = validate(_parse_tuple(args.tuple1), args.n1, "algebraic")
    t2 = validate(_parse_tuple(args.tuple2), args.n2, "algebraic")
    out = (construct.combine_crt(t1, t2) if t1.k == t2.k
           else construct.combine_coprime_k(t1, t2))
    if args.json:
        _emit_json({"tuple": out.to_json_dict()})
    else:
        print(out)
    return EXIT_OK


def cmd_project(args):
    out = construct.project(
        validate(_parse_tuple(args.tuple), args.n, "algebraic"), args.to)
    if args.json:
        _emit_json({"tuple": out.to_json_dict()})
    else:
        print(out)
    return EXIT_OK


def cmd_lift(args):
    out = construct.lift(
        validate(_parse_tuple(args.tuple), args.n, "algebraic"), args.ell)
    if args.json:
        _emit_json({"tuple": out.to_json_dict()})
    else:
        print(out)
    return EXIT_OK


def cmd_composite(args):
    cap = args.max_cases if args.max_cases else _env_cap(construct.DEFAULT_PRIME_POWER_CAP)
    result = construct.composite_feasible(
        args.k, args.n, _parse_tuple(args.deltas), per_prime_cap=cap)
    if args.json:
        _emit_json(result.to_json_dict())
    elif result.feasible:
        print(f"feasible: witness {result.witness}")
    else:
        where = f" (mod {result.failing_modulus})" if result.failing_modulus else ""
        print(f"infeasible{where}: {result.detail}")
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="billiard-monodromy",
                     description="Monodromy groups of dessins on rational "
                                 "polygonal billiards surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("group", help="descriptor of a tuple's monodromy group")
    _add_tuple_args(sp)
    sp.add_argument("--level", choices=("algebraic", "geometric"),
                    default="algebraic")
    sp.add_argument("--verify", action="store_true",
                    help="cross-check with the permutation oracle")
    _add_cap_args(sp)
    sp.set_defaults(func=cmd_group)

    sp = sub.add_parser("snf", help="Smith normal form with transforms")
    sp.add_argument("--matrix", help="JSON array of rows")
    sp.add_argument("--n", type=int, default=0, help="modulus (circulant mode)")
    sp.add_argument("--tuple", default="", help="entries (circulant mode)")
    sp.set_defaults(func=cmd_snf)

    sp = sub.add_parser("verify", help="run every structural check on a tuple")
    _add_tuple_args(sp)
    _add_cap_args(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("factor", help="factor x^k - 1 over F_p")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("enumerate", help="list all valid tuples for (k, n)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--level", choices=("geometric", "algebraic"),
                    default="geometric")
    sp.add_argument("--groups", action="store_true",
                    help="also print each tuple's group")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("classify-prime",
                        help="all groups of k-gons mod a prime p > k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_classify_prime)

    sp = sub.add_parser("classify-triangle",
                        help="all triangle groups for a modulus n")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_classify_triangle)

    sp = sub.add_parser("construct",
                        help="witness k-gon mod p with gcd degree d")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("combine", help="CRT-combine two tuples")
    sp.add_argument("--n1", type=int, required=True)
    sp.add_argument("--tuple1", required=True)
    sp.add_argument("--n2", type=int, required=True)
    sp.add_argument("--tuple2", required=True)
    sp.set_defaults(func=cmd_combine)

    sp = sub.add_parser("project", help="reduce a tuple mod a factor")
    _add_tuple_args(sp)
    sp.add_argument("--to", type=int, required=True, help="target modulus")
    sp.set_defaults(func=cmd_project)

    sp = sub.add_parser("lift", help="repeat a tuple's pattern to ell entries")
    _add_tuple_args(sp)
    sp.add_argument("--ell", type=int, required=True)
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("composite",
                        help="decide a target group for a composite modulus")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--deltas", required=True,
                    help="target invariant factors, comma-separated")
    sp.add_argument("--max-cases", type=int, default=0,
                    help="per-prime-power enumeration cap "
                         f"(default {construct.DEFAULT_PRIME_POWER_CAP})")
    sp.set_defaults(func=cmd_composite)

    for name in ("group", "snf", "verify", "factor", "enumerate",
                 "classify-prime", "classify-triangle", "construct",
                 "combine", "project", "lift", "composite"):
        sub.choices[name].add_argument("--json", action="store_true",
                                       help="machine-readable output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _Usage as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except DomainError as e:
        print(f"rejected: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
