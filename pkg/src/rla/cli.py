"""Command-line surface.

Exit codes: 0 for success / verdict true, 1 for verdict false or a
verification disagreement, 2 for any input or size error.  All report lines
on stdout are `key = value` and deterministic; timings go to stderr so that
stdout can be compared byte for byte.
"""

from __future__ import annotations

import argparse
import sys
import time

from rla import classify as _classify
from rla import corpus, fileformat
from rla.classify import InapplicableError
from rla.env import (DEFAULT_BUDGET, BudgetExceededError, EnvAlgebra,
                     SizeLimitError, default_max_dim)
from rla.fileformat import ParseError


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fileformat.parse(fh.read())
    except OSError as e:
        raise ParseError("cannot read %s: %s" % (path, e)) from None


def _emit(lines):
    for ln in lines:
        print(ln)


def cmd_validate(args) -> int:
    spec = _load(args.file)
    rep = spec.validate()
    print("valid = %s" % ("true" if rep.ok else "false"))
    if not rep.ok:
        for ln in rep.message(spec.names).splitlines():
            print("violation = %s" % ln)
        return 2
    return 0


def cmd_info(args) -> int:
    spec = _load(args.file)
    rep = spec.validate()
    if not rep.ok:
        print("error = invalid algebra", file=sys.stderr)
        print(rep.message(spec.names), file=sys.stderr)
        return 2
    lower = spec.lower_central_series()
    upper = spec.upper_central_series()
    cls = spec.nilpotency_class()
    print("p = %d" % spec.p)
    print("dim_L = %d" % spec.n)
    print("basis = %s" % " ".join(spec.names))
    print("abelian = %s" % ("true" if spec.is_abelian else "false"))
    print("dim_derived = %d" % spec.derived_subalgebra().dim)
    print("dim_center = %d" % spec.center().dim)
    print("lower_central_dims = %s" % " ".join(str(s.dim) for s in lower))
    print("upper_central_dims = %s" % " ".join(str(s.dim) for s in upper))
    print("nilpotency_class = %s" % ("not nilpotent" if cls is None else cls))
    print("dim_env = %d" % spec.p ** spec.n)
    return 0


def _subspace_for(env: EnvAlgebra, which: str):
    if which == "plus":
        return env.symmetric_subspace()
    if which == "minus":
        return env.skew_subspace()
    if which == "full":
        return env.full_subspace()
    raise ParseError("unknown target %r (want plus/minus/full)" % which)


def cmd_env(args) -> int:
    spec = _load(args.file)
    rep = spec.validate()
    if not rep.ok:
        print("error = invalid algebra", file=sys.stderr)
        return 2
    env = EnvAlgebra(spec, max_dim=args.max_dim)
    parts = args.check.split(":")
    t0 = time.perf_counter()
    if parts[0] == "metabelian" and len(parts) == 2:
        space = _subspace_for(env, parts[1])
        if args.brute_force:
            res = env.brute_force_metabelian(space, budget=args.budget)
        else:
            res = env.is_lie_metabelian(space)
        print("check = metabelian:%s" % parts[1])
        print("dim_subspace = %d" % space.dim)
        print("verdict = %s" % ("true" if res.verdict else "false"))
        if res.witness is not None:
            for tag, el in zip("abcd", res.witness):
                print("witness_%s = %s" % (tag, el))
            print("witness_product = %s" % res.product)
        ok = res.verdict
    elif parts[0] == "solvable" and len(parts) == 3:
        space = _subspace_for(env, parts[1])
        depth = int(parts[2])
        length = env.is_lie_solvable(space, depth)
        print("check = solvable:%s:%d" % (parts[1], depth))
        print("dim_subspace = %d" % space.dim)
        if length is None:
            print("derived_length = exceeds %d" % depth)
            ok = False
        else:
            print("derived_length = %d" % length)
            ok = True
    else:
        raise ParseError("bad --check specifier %r" % args.check)
    print("# time_s = %.3f" % (time.perf_counter() - t0), file=sys.stderr)
    return 0 if ok else 1


def cmd_classify(args) -> int:
    spec = _load(args.file)
    rep = spec.validate()
    if not rep.ok:
        print("error = invalid algebra", file=sys.stderr)
        return 2
    report = _classify.classify(spec)
    _emit(report.lines())
    return 0


def cmd_verify(args) -> int:
    spec = _load(args.file)
    rep = spec.validate()
    if not rep.ok:
        print("error = invalid algebra", file=sys.stderr)
        return 2
    record = _classify.verify(spec, max_dim=args.max_dim)
    _emit(record.lines())
    for c in record.checks:
        print("# time_%s_s = %.3f" % (c.name, c.seconds), file=sys.stderr)
    return 0 if record.all_agree else 1


def cmd_corpus(args) -> int:
    if args.list or args.name is None:
        for name in corpus.names():
            print("%s: %s" % (name, corpus.get(name).description))
        return 0
    try:
        entry = corpus.get(args.name)
    except KeyError as e:
        print("error = %s" % e, file=sys.stderr)
        return 2
    sys.stdout.write(entry.text)
    return 0


def cmd_repro(args) -> int:
    outcomes = corpus.run_all_witnesses()
    width = max(len(o.key) for o in outcomes)
    all_ok = True
    for o in outcomes:
        status = "PASS" if o.ok else "FAIL"
        all_ok &= o.ok
        print("%-*s  %s" % (width, o.key, status))
        if not o.ok:
            print("%-*s    stated   = %s" % (width, "", o.stated_reduced))
            print("%-*s    computed = %s" % (width, "", o.computed))
            detail = []
            if not o.membership_ok:
                detail.append("membership")
            if not o.inner_match:
                detail.append("inner-brackets")
            if not o.stated_match:
                detail.append("final-value")
            if not o.nonzero_match:
                detail.append("zero-status")
            print("%-*s    differs  = %s" % (width, "", ",".join(detail)))
    print("result = %s" % ("pass" if all_ok else "fail"))
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rla",
        description="exact computations in restricted Lie algebras and their "
                    "enveloping algebras")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check the structure table axioms")
    sp.add_argument("file")
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("info", help="structural invariants of the algebra")
    sp.add_argument("file")
    sp.set_defaults(fn=cmd_info)

    sp = sub.add_parser("env", help="checks inside the enveloping algebra")
    sp.add_argument("file")
    sp.add_argument("--check", required=True,
                    help="metabelian:{plus,minus,full} or solvable:{plus,minus,full}:DEPTH")
    sp.add_argument("--brute-force", action="store_true",
                    help="use the quadruple-enumeration oracle")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--max-dim", type=int, default=None)
    sp.set_defaults(fn=cmd_env)

    sp = sub.add_parser("classify", help="structural metabelian classification (p > 2)")
    sp.add_argument("file")
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("verify", help="classifier vs. enveloping computation")
    sp.add_argument("file")
    sp.add_argument("--max-dim", type=int, default=None)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("corpus", help="emit built-in algebra files")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--list", action="store_true")
    sp.set_defaults(fn=cmd_corpus)

    sp = sub.add_parser("repro-paper",
                        help="recompute the witness identities behind the corpus verdicts")
    sp.set_defaults(fn=cmd_repro)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, InapplicableError, SizeLimitError,
            BudgetExceededError, ValueError) as e:
        print("error = %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
