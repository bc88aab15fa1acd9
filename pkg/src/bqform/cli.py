"""Command-line front end.

Exit codes: 0 success, 1 criterion/oracle disagreement, 2 domain error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .criteria import CriterionSpec, builtin_spec, evaluate, load_spec, theorem_hypotheses
from .errors import DomainError, SearchLimitError
from .localsolve import QuadForm, failing_places, local_profile, overall_solvable, reduce
from .pell import cf_sqrt, negative_pell, pell_fundamental, solve_generalized_pell
from .solver import is_solution, solve

EXIT_OK, EXIT_DISAGREE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3
JOBS_ENV = "BQFORM_JOBS"
CSV_HEADER = ["g", "criterion", "oracle", "agree", "witness_x", "witness_y"]


@dataclass
class VerifyRow:
    g: int
    criterion_verdict: bool
    oracle_verdict: bool
    witness: Optional[Tuple[int, int]]
    condition_trace: str

    @property
    def agree(self) -> bool:
        return self.criterion_verdict == self.oracle_verdict


def verify_row(spec: CriterionSpec, g: int) -> VerifyRow:
    report = evaluate(spec, g)
    form = spec.quad_form(g)
    sols = solve(form)
    witness = sols.witness()
    if witness is not None and not is_solution(form, *witness):
        raise AssertionError(f"oracle produced a non-solution {witness} for g={g}")
    return VerifyRow(g, report.verdict, sols.solvable, witness, report.compact())


def _row_task(args: Tuple[CriterionSpec, int]) -> VerifyRow:
    return verify_row(*args)


def _tf(flag: bool) -> str:
    return "T" if flag else "F"


def format_rows(rows: Sequence[VerifyRow], fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            wx, wy = r.witness if r.witness else ("", "")
            writer.writerow([r.g, int(r.criterion_verdict), int(r.oracle_verdict), int(r.agree), wx, wy])
    elif fmt == "jsonl":
        for r in rows:
            obj = {
                "g": r.g,
                "criterion": r.criterion_verdict,
                "oracle": r.oracle_verdict,
                "agree": r.agree,
                "witness": list(r.witness) if r.witness else None,
                "trace": r.condition_trace,
            }
            buf.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        for r in rows:
            w = f"({r.witness[0]},{r.witness[1]})" if r.witness else "-"
            buf.write(
                f"g={r.g} criterion={_tf(r.criterion_verdict)} oracle={_tf(r.oracle_verdict)} "
                f"agree={_tf(r.agree)} witness={w} [{r.condition_trace}]\n"
            )
    return buf.getvalue()


def _term(coef: int, mono: str, first: bool = False) -> str:
    if coef == 0:
        return ""
    mag = abs(coef)
    body = mono if mag == 1 and mono else f"{mag}{mono}"
    if first:
        return ("-" if coef < 0 else "") + body
    return f" {'-' if coef < 0 else '+'} {body}"


def equation_text(a: int, b: int, c: int, g: int) -> str:
    """Human-readable a x^2 + b xy + c y^2 + g = 0."""
    return (_term(a, "x^2", True) + _term(b, "xy") + _term(c, "y^2") + _term(g, "")) + " = 0"


def _form(args) -> QuadForm:
    return QuadForm(args.a, args.b, args.c, args.g)


def cmd_solve(args) -> int:
    form = _form(args)
    pf = reduce(form)
    print(f"equation: {equation_text(form.a, form.b, form.c, form.g)}   (d = {form.d})")
    print(f"norm form: xt^2{_term(pf.d_hat, 'yt^2')} = {pf.n_hat},  x = (xt{_term(-pf.b_back, 'yt')})/{pf.a_back}")
    sols = solve(form)
    print(f"solvable: {'yes' if sols.solvable else 'no'}")
    if form.d > 0:
        print(f"solutions ({len(sols.solutions)}, complete):")
    else:
        info = sols.orbit_info or {}
        print(f"automorph: {info.get('automorph')}  period mod {pf.mod_back}: {info.get('order')}")
        print(f"solutions, one per admissible orbit ({len(sols.solutions)}):")
    for x, y in sols.solutions:
        print(f"  ({x}, {y})")
    return EXIT_OK


def cmd_local(args) -> int:
    form = _form(args)
    profile = local_profile(form)
    for place, v in profile.items():
        status = "solvable" if v.solvable else "NOT solvable"
        extra = f" witness={v.witness} depth={v.depth}" if v.witness else ""
        print(f"{str(place):>6}: {status}{extra}  {v.reason}")
    if overall_solvable(profile):
        print("all places pass (unlisted primes are solvable)")
    else:
        print("fails at: " + ", ".join(str(p) for p in failing_places(profile)))
    return EXIT_OK


def _spec(args) -> CriterionSpec:
    if getattr(args, "config", None):
        return load_spec(args.config)
    return builtin_spec(args.example)


def cmd_criterion(args) -> int:
    spec = _spec(args)
    report = evaluate(spec, args.g)
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
        return EXIT_OK
    a, b, c = spec.form
    print(f"{spec.name}: {equation_text(a, b, c, args.g)}")
    for cond in report.conditions:
        print(f"  condition ({cond.label}): {'holds' if cond.holds else 'FAILS'}  {cond.detail}")
    print(f"verdict: {'solvable' if report.verdict else 'not solvable'}")
    return EXIT_OK


def _jobs(requested: Optional[int]) -> int:
    if requested:
        return requested
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"{JOBS_ENV} must be an integer")
    return 1


def cmd_verify(args) -> int:
    spec = _spec(args)
    if args.g_min > args.g_max:
        raise DomainError("empty range")
    if spec.galois_order == 4 and args.g_max >= 0:
        raise DomainError("this criterion is stated for negative g only")
    gs = [g for g in range(args.g_min, args.g_max + 1) if g != 0]
    skipped = args.g_max - args.g_min + 1 - len(gs)
    jobs = _jobs(args.jobs)
    start = time.perf_counter()
    if jobs == 1:
        rows: List[VerifyRow] = [verify_row(spec, g) for g in gs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_row_task, [(spec, g) for g in gs], chunksize=64))
    elapsed = time.perf_counter() - start
    text = format_rows(rows, args.format)
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    disagree = sum(not r.agree for r in rows)
    note = " (g=0 skipped)" if skipped else ""
    print(
        f"{spec.name}: {len(rows)} rows, {len(rows) - disagree} agree, {disagree} disagree"
        f"{note}; {elapsed:.2f}s with {jobs} job(s)",
        file=sys.stderr,
    )
    return EXIT_DISAGREE if disagree else EXIT_OK


def cmd_pell(args) -> int:
    D = args.D
    cf = cf_sqrt(D)
    fund = pell_fundamental(D)
    neg = negative_pell(D)
    print(f"sqrt({D}) = [{cf.a0}; ({', '.join(map(str, cf.period))})]  period length {len(cf.period)}")
    print(f"fundamental: ({fund.t}, {fund.u})")
    print(f"negative: {'none' if neg is None else f'({neg.t}, {neg.u})'}")
    if args.N is not None:
        reps = solve_generalized_pell(D, args.N)
        print(f"x^2 - {D}y^2 = {args.N}: {len(reps)} class representative(s)")
        for x, y in reps:
            print(f"  ({x}, {y})")
    return EXIT_OK


def cmd_hypotheses(args) -> int:
    form = _form(args)
    print(theorem_hypotheses(form).value)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bqform", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def form_args(p):
        for name in ("a", "b", "c", "g"):
            p.add_argument(name, type=int)

    p = sub.add_parser("solve", help="integral solutions of ax^2+bxy+cy^2+g=0")
    form_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("local", help="local solvability at every relevant place")
    form_args(p)
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("hypotheses", help="which theorem covers the form")
    form_args(p)
    p.set_defaults(func=cmd_hypotheses)

    p = sub.add_parser("criterion", help="evaluate an explicit criterion with its trace")
    p.add_argument("example", type=int, choices=(1, 2))
    p.add_argument("g", type=int)
    p.add_argument("--config", help="criterion configuration file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("verify", help="compare criterion and oracle over a range of g")
    p.add_argument("example", type=int, choices=(1, 2))
    p.add_argument("g_min", type=int)
    p.add_argument("g_max", type=int)
    p.add_argument("--out", help="write rows here instead of stdout")
    p.add_argument("--format", choices=("text", "csv", "jsonl"), default="text")
    p.add_argument("--jobs", type=int, help=f"worker processes (default ${JOBS_ENV} or 1)")
    p.add_argument("--config", help="criterion configuration file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pell", help="continued fraction and Pell solutions for D")
    p.add_argument("D", type=int)
    p.add_argument("N", type=int, nargs="?")
    p.set_defaults(func=cmd_pell)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, SearchLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
