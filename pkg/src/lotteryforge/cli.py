"""Command-line front end.

Exit codes: 0 success, 1 property fails (witness printed), 2 usage or parse
error, 3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import construct, solve, sysfile
from .errors import LotteryForgeError
from .setsystem import Params
from .verify import verify_lottery

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3


def frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _params_arg(text: str) -> Params:
    try:
        return Params.parse(text)
    except LotteryForgeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write_system(sf: sysfile.SystemFile, args, comments=()) -> None:
    if args.emit:
        sysfile.dump(sf, args.emit, comments)
        for c in comments:
            print(c)
        print(f"wrote {len(sf.system)} blocks to {args.emit}")
    elif args.json:
        sys.stdout.write(sysfile.emit_json(sf))
    else:
        sys.stdout.write(sysfile.emit_text(sf, comments))


def cmd_verify(args) -> int:
    sf = sysfile.load(args.file)
    params = args.params or sf.params()
    if params is None:
        raise LotteryForgeError("no parameters: pass --params n,k,r,p or put r= p= in the header")
    verdict = verify_lottery(sf.system, params)
    if args.json:
        print(json.dumps({
            "params": list(params.as_tuple()),
            "ok": verdict.ok,
            "witness": list(verdict.witness) if verdict.witness is not None else None,
            "detail": verdict.detail,
        }))
    elif verdict.ok:
        print(f"lottery{params}: ok ({len(sf.system)} blocks)")
    else:
        print(f"lottery{params}: FAIL witness {' '.join(map(str, verdict.witness))}")
        print(f"  {verdict.detail}")
    return EXIT_OK if verdict.ok else EXIT_FAIL


def cmd_construct(args) -> int:
    what = args.what
    if what == "gdd":
        s = construct.gdd(args.N, args.k, args.r)
        _write_system(sysfile.SystemFile(s, label=f"gdd-N{args.N}-k{args.k}-r{args.r}"), args)
    elif what == "cover":
        s = construct.greedy_covering(args.n, args.k, args.r)
        _write_system(sysfile.SystemFile(s, r=args.r, p=args.r, label="greedy-cover"), args)
    elif what == "patches":
        s = construct.patches(args.m, args.N, args.k, args.r)
        _write_system(sysfile.SystemFile(s, label=f"patches-m{args.m}-N{args.N}"), args)
    else:
        src = sysfile.load(args.H)
        params = args.params or src.params()
        if params is None:
            raise LotteryForgeError("H needs parameters: --params n,k,r,p or r= p= in its header")
        HN, report = construct.compose(src.system, params, args.N)
        out = sysfile.SystemFile(HN, params.r, params.p, f"composed-N{args.N}")
        _write_system(out, args, report.lines())
    return EXIT_OK


def _bracket_line(name: str, b: solve.BoundPair) -> str:
    if b.complete:
        return f"{name} = {b.upper}"
    return f"{b.lower} ≤ {name} ≤ {b.upper} [incomplete]"


def cmd_solve(args) -> int:
    kind = args.kind
    n, k, r, p = args.n, args.k, args.r, args.p
    if kind == "turan":
        r = 2 if r is None else r
        missing = [f for f, v in (("-n", n), ("-p", p)) if v is None]
        name = f"T({n},{p},{r})"
        k = r
    elif kind == "covering":
        missing = [f for f, v in (("-n", n), ("-k", k), ("-r", r)) if v is None]
        p = r
        name = f"C({n},{k},{r})"
    else:
        missing = [f for f, v in (("-n", n), ("-k", k), ("-r", r), ("-p", p)) if v is None]
        name = f"L({n},{k},{r},{p})"
    if missing:
        raise LotteryForgeError(f"solve {kind} needs {' '.join(missing)}")
    params = Params(n, k, r, p)
    result = solve.exact_min_lottery(
        params,
        max_nodes=args.budget_nodes,
        max_seconds=args.budget_seconds,
        symmetry_break=args.symmetry_break,
    )
    if args.json:
        print(json.dumps({
            "params": list(params.as_tuple()),
            "lower": result.lower,
            "upper": result.upper,
            "complete": result.complete,
            "nodes": result.nodes,
        }))
    else:
        print(_bracket_line(name, result))
    if args.emit:
        cert = sysfile.SystemFile(result.certificate, r, p, f"{kind}-certificate")
        sysfile.dump(cert, args.emit)
    return EXIT_OK if result.complete else EXIT_INCOMPLETE


def cmd_density(args) -> int:
    k, r, p = args.k, args.r, args.p
    rows = solve.density_table(k, r, p, range(args.n_min, args.n_max + 1), args.budget_nodes)
    print(f"density of L(n,{k},{r},{p}) / C(n,{r})")
    header = f"{'n':>4} {'T(n,p,r)':>9} {'lower':>6} {'exact':>6} {'upper':>6}  {'density':>12} {'decimal':>9}"
    print(header)
    for row in rows:
        n = row.params.n
        T = f"{row.turan_value}" + ("" if row.turan_exact else "+")
        exact = "-" if row.exact is None else str(row.exact)
        print(
            f"{n:>4} {T:>9} {row.lower_int:>6} {exact:>6} {row.upper:>6}  "
            f"{frac(row.density):>12} {float(row.density):>9.6f}"
        )
    print("lower = ceil(T(n,p,r)/C(k,r)); a trailing + marks a lower bound on T")
    refs = solve.reference_limits(k, r, p)
    for label, value in refs.items():
        print(f"reference {label} = {frac(value)} ~ {float(value):.6f}")
    incomplete = any(row.exact is None for row in rows)
    return EXIT_INCOMPLETE if incomplete and args.strict else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lotteryforge",
        description="Construct, verify and minimize lottery systems, coverings and Turán systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the lottery property of a system file")
    p.add_argument("file")
    p.add_argument("--params", type=_params_arg, help="n,k,r,p (default: from the file header)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build gdd, cover, patches or compose systems")
    csub = p.add_subparsers(dest="what", required=True)
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--emit", metavar="FILE", help="write the system here (.json selects JSON)")
    out.add_argument("--json", action="store_true", help="print JSON instead of text")
    q = csub.add_parser("gdd", parents=[out])
    q.add_argument("-N", type=int, required=True)
    q.add_argument("-k", type=int, required=True)
    q.add_argument("-r", type=int, required=True)
    q = csub.add_parser("cover", parents=[out])
    q.add_argument("-n", type=int, required=True)
    q.add_argument("-k", type=int, required=True)
    q.add_argument("-r", type=int, required=True)
    q = csub.add_parser("patches", parents=[out])
    q.add_argument("-m", type=int, required=True)
    q.add_argument("-N", type=int, required=True)
    q.add_argument("-k", type=int, required=True)
    q.add_argument("-r", type=int, required=True)
    q = csub.add_parser("compose", parents=[out])
    q.add_argument("-H", required=True, metavar="FILE", help="base lottery system")
    q.add_argument("-N", type=int, required=True)
    q.add_argument("--params", type=_params_arg, help="parameters of H (default: header)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve", help="exact minimum by branch and bound")
    p.add_argument("kind", nargs="?", default="lottery", choices=["lottery", "covering", "turan"])
    p.add_argument("-n", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("-r", type=int)
    p.add_argument("-p", type=int)
    p.add_argument("--budget-nodes", type=int)
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--symmetry-break", action="store_true",
                   help="fix the first block to {0..k-1}")
    p.add_argument("--emit", metavar="FILE", help="write the certificate")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("density", help="bounds and densities over a range of n")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--budget-nodes", type=int, default=20000)
    p.add_argument("--strict", action="store_true", help="exit 3 if any exact value is missing")
    p.set_defaults(func=cmd_density)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LotteryForgeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
