"""Command-line front end.

Exit status: 0 on success, 1 when a check finds a nonzero defect, 2 on
usage or domain errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import random
import sys

from . import fock, mixing, ops
from .fock import Basis, FockVector, format_word, parse_word
from .scalar import QFockError, format_scalar, parse_q, q_factorial, q_int


def _both(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return f"{format_scalar(x)}\t{float(x)!r}"


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_inner(args, q):
    a = FockVector.word(parse_word(args.a, args.dim, args.degree_cap), q.one())
    b = FockVector.word(parse_word(args.b, args.dim, args.degree_cap), q.one())
    fn = fock.inner_product_bruteforce if args.bruteforce else fock.inner_product
    val = fn(a, b, q)
    print(format_scalar(val))
    if q.exact:
        print(repr(float(val)))
    if args.json:
        _write_json(args.json, {"q": str(q), "a": args.a, "b": args.b,
                                "value_exact": format_scalar(val) if q.exact else None,
                                "value_float": float(val)})
    return 0


def cmd_norm(args, q):
    v = FockVector.word(parse_word(args.word, args.dim, args.degree_cap), q.one())
    val = fock.norm_sq(v, q)
    print(format_scalar(val))
    if q.exact:
        print(repr(float(val)))
    if args.json:
        _write_json(args.json, {"q": str(q), "word": args.word,
                                "norm_sq_exact": format_scalar(val) if q.exact else None,
                                "norm_sq_float": float(val)})
    return 0


def cmd_gram(args, q):
    words = Basis(args.dim).words_upto(args.max_degree)
    # distinct degrees are orthogonal, so factor block by block
    pivots = []
    for n in range(args.max_degree + 1):
        block = [w for w in words if len(w) == n]
        pivots.extend(fock.ldlt_pivots(fock.gram_matrix(block, q)))
    bad = [p for p in pivots if p < 0]
    print(f"words\t{len(words)}")
    print(f"min_pivot\t{_both(min(pivots))}")
    print("PASS" if not bad else f"FAIL negative pivots: {len(bad)}")
    if args.json:
        _write_json(args.json, {"q": str(q), "dim": args.dim, "max_degree": args.max_degree,
                                "pivots": [format_scalar(p) for p in pivots], "ok": not bad})
    return 0 if not bad else 1


def cmd_wick(args, q):
    word = parse_word(args.wick_word, args.dim, args.degree_cap)
    exp = ops.wick_expand(word, q, cap=min(args.degree_cap, ops.WICK_DEGREE_CAP))
    for m in exp.monomials:
        print(m.render())
    if args.json:
        payload = exp.to_json()
        payload["q"] = str(q)
        _write_json(args.json, payload)
    return 0


def cmd_commutator_check(args, q):
    rng = random.Random(args.seed)
    failures = 0
    for s in range(args.samples):
        v = fock.random_vector(rng, args.dim, args.max_degree, q)
        for a in range(args.dim):
            for b in range(args.dim):
                defect = ops.q_commutation_defect(a, b, v, q)
                ok = defect.is_zero()
                failures += not ok
                print(f"{'PASS' if ok else 'FAIL'}\tsample={s}\ta={a}\tb={b}")
    print(f"failures\t{failures}")
    return 0 if failures == 0 else 1


def cmd_hermite_check(args, q):
    failures = 0
    for n in range(args.nmax + 1):
        en = FockVector.word((0,) * n, q.one())
        got = ops.apply_W((0,), en, q, args.degree_cap)
        want = FockVector.word((0,) * (n + 1), q.one())
        if n:
            want = want + FockVector.word((0,) * (n - 1), q_int(n, q))
        ok = got == want
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}\tn={n}\t[n]_q={format_scalar(q_int(n, q))}")
    return 0 if failures == 0 else 1


def cmd_ortho_check(args, q):
    report = mixing.basis_orthonormality_check(args.jmax, q)
    for j in range(args.jmax + 1):
        print(f"[{j}]_q!\t{_both(q_factorial(j, q))}")
    for i, j, got, want in report.violations:
        print(f"FAIL\ti={i}\tj={j}\tgot={format_scalar(got)}\twant={format_scalar(want)}")
    print(f"{'PASS' if report.ok else 'FAIL'}\tpairs={report.checked}")
    return 0 if report.ok else 1


def cmd_mixing(args, q):
    Basis(args.dim).require_mixing()
    a = parse_word(args.a, args.dim, args.degree_cap)
    b = parse_word(args.b, args.dim, args.degree_cap)
    series = mixing.mixing_series(a, b, args.nmax, q, dim=args.dim, cap=args.degree_cap,
                                  workers=args.workers)
    data = series.to_json()
    print("N\tc_exact\tc_float\tpartial_sum_exact\tpartial_sum_float\tratio_float")
    for e in data["entries"]:
        ratio = "" if e["ratio_float"] is None else repr(e["ratio_float"])
        print(f"{e['N']}\t{e['c_exact']}\t{e['c_float']!r}\t{e['partial_sum_exact']}"
              f"\t{e['partial_sum_float']!r}\t{ratio}")
    print(f"partial_sum\t{_both(series.partial_sums[-1])}")
    print(f"fitted_rate\t{series.fitted_rate!r}")
    print(f"eventual_n0\t{series.eventual_n0}")
    print(f"verdict\t{series.verdict}")
    if args.json:
        _write_json(args.json, data)
    if args.csv:
        fields = ["N", "c_exact", "c_float", "partial_sum_exact", "partial_sum_float",
                  "ratio_exact", "ratio_float"]
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            for e in data["entries"]:
                writer.writerow({k: ("" if e[k] is None else e[k]) for k in fields})
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", default="1/2", help='"p/d" for exact arithmetic, a decimal for floats')
    common.add_argument("--dim", type=int, default=2, help="basis dimension (letter 0 is e)")
    common.add_argument("--degree-cap", type=int, default=fock.DEFAULT_DEGREE_CAP)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", help="write machine-readable output here")

    parser = argparse.ArgumentParser(prog="qfock", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inner", parents=[common], help="q-inner product of two words")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--bruteforce", action="store_true", help="enumerate the symmetric group")
    p.set_defaults(func=cmd_inner)

    p = sub.add_parser("norm", parents=[common], help="squared norm of a word")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("gram", parents=[common], help="exact LDL^T pivots of the Gram matrix")
    p.add_argument("--max-degree", type=int, default=4)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("wick", parents=[common], help="normal-ordered expansion of W(word)")
    p.add_argument("wick_word", metavar="word")
    p.set_defaults(func=cmd_wick)

    p = sub.add_parser("commutator-check", parents=[common], help="q-commutation relation on samples")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--max-degree", type=int, default=6)
    p.set_defaults(func=cmd_commutator_check)

    p = sub.add_parser("hermite-check", parents=[common], help="W(e) e^n = e^(n+1) + [n]_q e^(n-1)")
    p.add_argument("--nmax", type=int, default=12)
    p.set_defaults(func=cmd_hermite_check)

    p = sub.add_parser("mixing", parents=[common], help="mixing coefficients C_N and decay verdict")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--csv")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_mixing)

    p = sub.add_parser("ortho-check", parents=[common], help="orthogonality of e^j, j <= jmax")
    p.add_argument("--jmax", type=int, default=6)
    p.set_defaults(func=cmd_ortho_check)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.dim < 1:
            raise QFockError("--dim must be >= 1")
        q = parse_q(args.q)
        return args.func(args, q)
    except QFockError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
