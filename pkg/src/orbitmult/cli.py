"""Command-line front end.

Examples::

    orbitmult cg --lambda 3,1 --alpha 2 --mu 4,2
    orbitmult branch --lambda 3,1 --alpha-sign + --mu 3,0
    orbitmult decompose --lambda 1,0 --k 1
    orbitmult compare --lambda -1,-1 --alpha 1 --mu-box -2:2
    orbitmult verify --lambda 3,1 --alpha 2 --mu 4,2 --seed 7
    orbitmult table --lambda 1,0 --alpha -1 --k-max 3 --format csv

Exit codes: 0 success, 1 usage or parse error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Sequence

from orbitmult import branching, cg_solver, oracle
from orbitmult.weights import LengthMismatch, check_lengths, parse_weight

SEED_ENV = "ORBITMULT_SEED"
_NEGATIVE_VALUE = re.compile(r"^-\d")


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if q == 0:
        raise argparse.ArgumentTypeError("alpha must be nonzero")
    return q


def _weight(text: str):
    try:
        return parse_weight(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _box(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("empty box: lo > hi")
    return lo, hi


def _sign(text: str) -> int:
    if text in ("+", "+1", "1", "pos"):
        return 1
    if text in ("-", "-1", "neg"):
        return -1
    raise argparse.ArgumentTypeError(f"alpha sign must be + or -, got {text!r}")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--flag -1,2`` into ``--flag=-1,2`` so argparse accepts it."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbitmult", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    cg = sub.add_parser("cg", help="Corwin-Greenleaf multiplicity n with certificate")
    cg.add_argument("--lambda", dest="lam", type=_weight, required=True)
    cg.add_argument("--alpha", type=_rational, required=True)
    cg.add_argument("--mu", type=_weight, required=True)

    br = sub.add_parser("branch", help="branching multiplicity m")
    br.add_argument("--lambda", dest="lam", type=_weight, required=True)
    br.add_argument("--alpha-sign", type=_sign, required=True)
    br.add_argument("--mu", type=_weight, required=True)
    br.add_argument("--convention", choices=[c.value for c in branching.Convention], default="paper")

    de = sub.add_parser("decompose", help="constituents of tau_lam (x) tau_(0,...,0,-k)")
    de.add_argument("--lambda", dest="lam", type=_weight, required=True)
    de.add_argument("--k", type=int, required=True)

    co = sub.add_parser("compare", help="n versus m over a set of mu")
    co.add_argument("--lambda", dest="lam", type=_weight, required=True)
    co.add_argument("--alpha", type=_rational, required=True)
    grp = co.add_mutually_exclusive_group(required=True)
    grp.add_argument("--mu-box", type=_box, help="all dominant mu with entries in lo:hi")
    grp.add_argument("--k-max", type=int, help="mu from the branching table rows 0..k-max")
    co.add_argument("--convention", choices=[c.value for c in branching.Convention], default="paper")
    co.add_argument("--format", choices=["csv", "json"], default="csv")

    ve = sub.add_parser("verify", help="check the solver against the floating-point oracle")
    ve.add_argument("--lambda", dest="lam", type=_weight, required=True)
    ve.add_argument("--alpha", type=_rational, required=True)
    ve.add_argument("--mu", type=_weight, required=True)
    ve.add_argument("--budget", type=int, default=200_000)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--tol", type=float, default=1e-8)

    ta = sub.add_parser("table", help="branching table by Fock degree")
    ta.add_argument("--lambda", dest="lam", type=_weight, required=True)
    ta.add_argument("--alpha", type=_rational, required=True)
    ta.add_argument("--k-max", type=int, required=True)
    ta.add_argument("--convention", choices=[c.value for c in branching.Convention], default="paper")
    ta.add_argument("--format", choices=["json", "csv"], default="json")
    return p


def _fmt_weight(w) -> str:
    return "(" + ",".join(map(str, w)) + ")"


def _cmd_cg(args, out) -> int:
    check_lengths(args.lam, args.mu)
    res = cg_solver.cg_multiplicity(args.lam, args.alpha, args.mu)
    print(json.dumps(res.to_json()), file=out)
    return 0


def _cmd_branch(args, out) -> int:
    check_lengths(args.lam, args.mu)
    m = branching.branching_multiplicity(args.lam, args.mu, args.alpha_sign, args.convention)
    k = branching.fock_degree(args.lam, args.mu, args.alpha_sign, args.convention)
    print(json.dumps({"m": m, "k": k}), file=out)
    return 0


def _cmd_decompose(args, out) -> int:
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    print(" ".join(_fmt_weight(nu) for nu in branching.tensor_with_dual_sym(args.lam, args.k)), file=out)
    return 0


def _cmd_compare(args, out) -> int:
    n = len(args.lam)
    if args.mu_box is not None:
        mus = branching.dominant_box(n, *args.mu_box)
    else:
        if args.k_max < 0:
            raise UsageError("--k-max must be non-negative")
        table = branching.branch_table(args.lam, 1 if args.alpha > 0 else -1, args.convention, args.k_max)
        mus = [nu for _, nus in table.rows for nu in nus]
    rows = branching.compare_n_m(args.lam, args.alpha, mus, args.convention)
    if args.format == "json":
        payload = [
            {"mu": list(r.mu), "n": r.n, "m": r.m, "agree": r.agree, "paper_form_flag": r.paper_form_flag}
            for r in rows
        ]
        print(json.dumps(payload), file=out)
    else:
        out.write(branching.comparisons_to_csv(rows))
    return 0


def _cmd_verify(args, out) -> int:
    check_lengths(args.lam, args.mu)
    seed = int(os.environ.get(SEED_ENV, args.seed))
    cfg = oracle.OracleConfig(tol=args.tol, seed=seed)
    res = cg_solver.cg_multiplicity(args.lam, args.alpha, args.mu)
    alpha = float(args.alpha)
    witness_ok = None
    if res.multiplicity == 1:
        witness_ok = oracle.verify_membership(args.lam, alpha, res.witness.to_complex(), args.mu, cfg)
    found = oracle.randomized_search(args.lam, alpha, args.mu, args.budget, cfg)
    search_ok = (found is not None) == (res.multiplicity == 1)
    ok = search_ok and witness_ok is not False
    report = {
        "n": res.to_json()["n"],
        "witness_confirmed": witness_ok,
        "search_found": found is not None,
        "agree": ok,
        "seed": seed,
    }
    print(json.dumps(report), file=out)
    if not ok:
        print("oracle disagrees with the exact solver", file=sys.stderr)
        return 2
    return 0


def _cmd_table(args, out) -> int:
    if args.k_max < 0:
        raise UsageError("--k-max must be non-negative")
    sign = 1 if args.alpha > 0 else -1
    table = branching.branch_table(args.lam, sign, args.convention, args.k_max)
    if args.format == "csv":
        out.write(table.to_csv())
    else:
        print(json.dumps(table.to_json()), file=out)
    return 0


_COMMANDS = {
    "cg": _cmd_cg,
    "branch": _cmd_branch,
    "decompose": _cmd_decompose,
    "compare": _cmd_compare,
    "verify": _cmd_verify,
    "table": _cmd_table,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    if len(args.lam) == 1:
        print("warning: n = 1; the multiplicity results in the literature assume n >= 2", file=sys.stderr)
    try:
        return _COMMANDS[args.command](args, out)
    except (UsageError, LengthMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
