"""Command-line front end.

Exit codes: 0 when pi_1 is certified trivial and every identity holds,
1 on usage errors, 2 when the coset budget is exhausted, 3 on an identity
violation, 4 when the group is certified nontrivial.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

from .blocks import SIGMA2_SQUARED, SYM2, instantiate_block
from .corpus import CORPUS_BUDGET, CORPUS_DIR, run_corpus, summary
from .fpgroup.cosets import CERTIFIED_TRIVIAL, DEFAULT_BUDGET, EXHAUSTED
from .manifold import ManifoldError
from .pipeline import (IdentityViolation, ParameterError, Report, build_explore, build_tilde_Y,
                       classify)
from .scenario import ScenarioError, build_scenario, load_scenario
from .surgery import DERIVED, SCHEMA, SIGMA2_SCHEMAS, SYM2_SCHEMAS

EXIT_OK, EXIT_USAGE, EXIT_EXHAUSTED, EXIT_IDENTITY, EXIT_NONTRIVIAL = 0, 1, 2, 3, 4

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def report_json(report: Report) -> str:
    return json.dumps(report.as_dict(), sort_keys=True, indent=2) + "\n"


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def report_name(l, n, k) -> str:
    return f"report_l{l}_n{n}_k{k}.json"


def exit_code(report: Report) -> int:
    if report.pi1_trivial:
        return EXIT_OK
    if report.pi1_verdict["status"] == EXHAUSTED:
        return EXIT_EXHAUSTED
    return EXIT_NONTRIVIAL


def check_formulas(report: Report) -> list[str]:
    """Mismatches against the closed-form invariants of the surgered family."""
    p = report.parameters
    l, n = p["l"], p["n"]
    expected = {"euler": 4 * n + 6 * l, "signature": -2 * l, "b1": 0,
                "b2plus": 2 * n + 2 * l - 1, "b2minus": 2 * n + 4 * l - 1}
    return [f"{key} = {getattr(report, key)}, expected {value}"
            for key, value in expected.items() if getattr(report, key) != value]


def build_report(l: int, n: int, k: int, budget: int = DEFAULT_BUDGET, mode: str = SCHEMA,
                 replay: bool = False, explore: bool = False, unsafe: bool = False) -> Report:
    params = {"l": l, "n": n, "k": k, "mode": mode}
    if explore:
        if l != 0:
            raise ParameterError("--explore is for l = 0")
        if n < 1:
            raise ParameterError("--explore needs n >= 1")
        state = build_explore(n, k)
    else:
        state = build_tilde_Y(l, n, k, mode=mode, unsafe=unsafe)
    return classify(state, budget, replay=replay, parameters=params)


def _sweep_point(args) -> tuple:
    l, n, k, budget, mode, replay = args
    try:
        report = build_report(l, n, k, budget, mode, replay)
    except IdentityViolation as exc:
        return (l, n, k), None, str(exc)
    return (l, n, k), report, None


def parse_range(text: str) -> list[int]:
    """``"1-4"``, ``"1,2,5"`` or a mix such as ``"0,2-3"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, dash, hi = part.partition("-")
        try:
            if dash:
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
    return sorted(set(out))


# commands

def cmd_build(args, out=None) -> int:
    out = out or sys.stdout
    try:
        report = build_report(args.l, args.n, args.k, args.budget, args.mode, args.replay,
                              args.explore, args.unsafe)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    text = report_json(report)
    if args.out:
        path = Path(args.out) / report_name(args.l, args.n, args.k)
        write_atomic(path, text)
        print(f"wrote {path}", file=out)
    else:
        out.write(text)
    if not args.explore:
        bad = check_formulas(report)
        if bad:
            print("formula mismatch: " + "; ".join(bad), file=sys.stderr)
            return EXIT_IDENTITY
    return exit_code(report)


def cmd_sweep(args, out=None) -> int:
    out = out or sys.stdout
    ls, ns, ks = parse_range(args.l), parse_range(args.n), parse_range(args.k)
    if not ls or not ns or not ks:
        raise UsageError("l, n and k ranges must be nonempty")
    if min(ls) < 1 or min(ns) < 0 or min(ks) < 1:
        raise UsageError("sweep needs l >= 1, n >= 0, k >= 1")
    points = [(l, n, k, args.budget, args.mode, args.replay) for l in ls for n in ns for k in ks]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_point, points))  # keeps input order
    else:
        results = [_sweep_point(p) for p in points]

    code = EXIT_OK
    print(f"{'l':>3} {'n':>3} {'k':>3} {'e':>4} {'sig':>4} {'b1':>3} {'b2+':>4} {'b2-':>4}  verdict",
          file=out)
    for (l, n, k), report, error in results:
        if report is None:
            print(f"{l:>3} {n:>3} {k:>3}  identity violation: {error}", file=out)
            code = max(code, EXIT_IDENTITY)
            continue
        if args.out:
            write_atomic(Path(args.out) / report_name(l, n, k), report_json(report))
        bad = check_formulas(report)
        status = report.pi1_verdict["status"]
        if report.pi1_trivial and status != CERTIFIED_TRIVIAL:
            status += " (deduction)"
        print(f"{l:>3} {n:>3} {k:>3} {report.euler:>4} {report.signature:>4} {report.b1:>3} "
              f"{report.b2plus:>4} {report.b2minus:>4}  {status}"
              + (f"  MISMATCH {'; '.join(bad)}" if bad else ""), file=out)
        code = max(code, EXIT_IDENTITY if bad else exit_code(report))
    failed = sum(1 for _, r, e in results if r is None or check_formulas(r) or not r.pi1_trivial)
    print(f"{len(results)} points, {len(results) - failed} passed, {failed} failed", file=out)
    return code


def cmd_corpus(args, out=None) -> int:
    out = out or sys.stdout
    cases = run_corpus(args.dir, args.budget)
    print(summary(cases), file=out)
    if args.out:
        text = json.dumps([c.as_dict() for c in cases], sort_keys=True, indent=2) + "\n"
        write_atomic(Path(args.out) / "corpus.json", text)
    return EXIT_OK


def cmd_catalog(args, out=None) -> int:
    out = out or sys.stdout
    for kind, table in ((SYM2, SYM2_SCHEMAS), (SIGMA2_SQUARED, SIGMA2_SCHEMAS)):
        block = instantiate_block(kind, 1)
        print(f"{kind} (e = {block.euler}, sigma = {block.signature}), "
              f"{len(block.generators)} generators, {len(block.base_relators)} base relators", file=out)
        for t in block.tori:
            print(f"  {t.key:<28} {t.kind:<10} {t.role:<9} meridian {t.meridian_name}", file=out)
        print(f"  {len(table)} recorded surgery relations", file=out)
    return EXIT_OK


def cmd_run_scenario(args, out=None) -> int:
    out = out or sys.stdout
    try:
        sc = load_scenario(args.path)
    except OSError as exc:
        raise UsageError(f"cannot read scenario: {exc}") from None
    state = build_scenario(sc)
    budget = args.budget if args.budget is not None else sc.budget
    params = dict(sc.params) or None
    report = classify(state, budget, replay=args.replay, parameters=params)
    text = report_json(report)
    if args.out:
        name = Path(args.path).stem + ".json"
        write_atomic(Path(args.out) / name, text)
        print(f"wrote {Path(args.out) / name}", file=out)
    else:
        out.write(text)
    return exit_code(report)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="luttinger",
                     description="Build and certify the surgered fiber-sum family.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="coset budget")
        p.add_argument("--mode", choices=(SCHEMA, DERIVED), default=SCHEMA)
        p.add_argument("--replay", action="store_true", help="also replay the scripted deduction")
        p.add_argument("--out", help="directory for report files")

    b = sub.add_parser("build", help="build one member of the family and classify it")
    b.add_argument("--l", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, default=1)
    b.add_argument("--explore", action="store_true", help="l = 0 configuration, no claim made")
    b.add_argument("--unsafe", action="store_true", help="allow k <= -1")
    common(b)
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("sweep", help="classify a grid of parameters")
    s.add_argument("--l", default="1")
    s.add_argument("--n", default="0")
    s.add_argument("--k", default="1")
    s.add_argument("--jobs", type=int, default=1)
    common(s)
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("corpus", help="run the bundled presentation corpus")
    c.add_argument("--dir", default=str(CORPUS_DIR))
    c.add_argument("--budget", type=int, default=CORPUS_BUDGET)
    c.add_argument("--out")
    c.set_defaults(func=cmd_corpus)

    k = sub.add_parser("catalog", help="list blocks, tori and recorded surgery relations")
    k.set_defaults(func=cmd_catalog)

    r = sub.add_parser("run-scenario", help="build and classify a scenario file")
    r.add_argument("path")
    r.add_argument("--budget", type=int, default=None)
    r.add_argument("--replay", action="store_true")
    r.add_argument("--out")
    r.set_defaults(func=cmd_run_scenario)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing command")
        if getattr(args, "budget", 1) is not None and getattr(args, "budget", 1) < 1:
            raise UsageError("budget must be positive")
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScenarioError, ManifoldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IdentityViolation as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        return EXIT_IDENTITY


if __name__ == "__main__":
    sys.exit(main())
