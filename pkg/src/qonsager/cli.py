"""Command-line front end: ``tables``, ``verify`` and ``series``.

Exit codes: 0 pass, 1 a residual or mismatch was found, 2 inconclusive,
3 usage or input error.  ``QONSAGER_ORDER``, ``QONSAGER_MAX_INDEX``,
``QONSAGER_DEGREE`` and ``QONSAGER_TRIALS`` override the defaults of
``verify`` (explicit flags still win).
"""

import argparse
import csv
import io
import json
import os
import sys
from importlib import resources

from .reports import SuiteReport

EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")


# ---------------------------------------------------------------------------
# tables


def load_fixtures():
    """The transcribed appendix tables shipped with the package."""
    text = resources.files("qonsager").joinpath("data/appendix_tables.json").read_text()
    return json.loads(text)


def parse_index_range(spec):
    """'1..8' -> [1..8], '3' -> [3], '1,3,5' -> [1, 3, 5]."""
    out = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..", 1)
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad index range {spec!r}")
    if not out:
        raise UsageError(f"bad index range {spec!r}")
    return out


def _norm_target(t):
    t = t.strip().replace("{", "").replace("}", "").replace(" ", "")
    if not t.startswith("W_"):
        raise UsageError(f"appendix B targets look like W_-3 or W_4, got {t!r}")
    try:
        idx = int(t[2:])
    except ValueError:
        raise UsageError(f"bad appendix B target {t!r}")
    return f"W_{idx}"


def parse_b_targets(spec):
    """Targets for appendix B: 'W_-3', 'W_{-3}', 'W_1,W_2', or 'W_-7..W_8'
    (a range over the subscript)."""
    out = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = (int(_norm_target(x)[2:]) for x in part.split("..", 1))
            if hi < lo:
                raise UsageError(f"empty range {part!r}")
            out.extend(f"W_{i}" for i in range(lo, hi + 1))
        else:
            out.append(_norm_target(part))
    if not out:
        raise UsageError(f"bad appendix B target list {spec!r}")
    return out


def build_tables(which, spec=None):
    from .oq import appendix_a_table, appendix_b_table, appendix_b_targets

    if which == "appendix-a":
        idx = parse_index_range(spec) if spec else list(range(1, 9))
        if any(n < 1 for n in idx):
            raise UsageError("appendix A tables start at 1")
        return [appendix_a_table(n) for n in idx]
    targets = parse_b_targets(spec) if spec else appendix_b_targets()
    return [appendix_b_table(t) for t in targets]


def check_tables(which, tables, fixtures=None):
    """Compare entries against the fixtures.  Returns a list of mismatch
    lines; tables without a fixture are skipped."""
    fixtures = fixtures or load_fixtures()
    key = "appendix_a" if which == "appendix-a" else "appendix_b"
    diffs = []
    for t in tables:
        name = t.target[3:] if which == "appendix-a" else t.target
        fx = fixtures[key].get(name)
        if fx is None:
            continue
        expected = fx if which == "appendix-a" else fx["entries"]
        if len(expected) != len(t.entries):
            diffs.append(f"{t.target}: {len(t.entries)} rows, expected {len(expected)}")
            continue
        for label, got, want in zip(t.rows, t.entries, expected):
            if got != want:
                diffs.append(f"{t.target} row {label}: got {got}, expected {want}")
    return diffs


def _marker(t):
    return " [beyond-paper]" if t.beyond_paper else ""


def render_table(t, fmt):
    if fmt == "json":
        return json.dumps(t.to_json())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([t.target + _marker(t)] + t.cols)
        for label, row in zip(t.rows, t.entries):
            w.writerow([label] + row)
        return buf.getvalue().rstrip("\n")
    if fmt == "latex":
        lines = [f"% {t.target}{_marker(t)}" + (f", prefactor {t.prefactor}" if t.prefactor else "")]
        lines.append("\\begin{tabular}{l" + "r" * len(t.cols) + "}")
        lines.append(" & ".join([""] + [f"${c}$" for c in t.cols]) + " \\\\ \\hline")
        for label, row in zip(t.rows, t.entries):
            lines.append(" & ".join([f"${label}$"] + [str(v) for v in row]) + " \\\\")
        lines.append("\\end{tabular}")
        return "\n".join(lines)
    head = f"{t.target}{_marker(t)}"
    if t.prefactor:
        head += f"   (prefactor {t.prefactor})"
    w0 = max(len(r) for r in t.rows)
    widths = [max(len(c), *(len(str(row[i])) for row in t.entries)) for i, c in enumerate(t.cols)]
    lines = [head, " " * w0 + " | " + "  ".join(c.rjust(w) for c, w in zip(t.cols, widths))]
    lines.append("-" * len(lines[-1]))
    for label, row in zip(t.rows, t.entries):
        lines.append(label.ljust(w0) + " | " + "  ".join(str(v).rjust(w) for v, w in zip(row, widths)))
    return "\n".join(lines)


def cmd_tables(args, out):
    tables = build_tables(args.target, args.range)
    if args.format == "json":
        out.write(json.dumps([t.to_json() for t in tables], indent=1) + "\n")
    else:
        out.write("\n\n".join(render_table(t, args.format) for t in tables) + "\n")
    if args.check:
        diffs = check_tables(args.target, tables)
        checked = sum(1 for t in tables if not t.beyond_paper)
        for d in diffs:
            print(d, file=sys.stderr)
        status = "MISMATCH" if diffs else "ok"
        print(f"golden check: {status} ({checked} tables compared, {len(diffs)} differing rows)", file=sys.stderr)
        return 1 if diffs else 0
    return 0


# ---------------------------------------------------------------------------
# verify


def run_suite(args, progress=None):
    """Dispatch a verification suite; returns a ``SuiteReport``."""
    suite = args.suite
    if suite == "conjecture":
        from .ideal_check import verify_conjecture

        K = args.max_index if args.max_index is not None else _env_int("QONSAGER_MAX_INDEX", 2)
        D = args.degree if args.degree is not None else _env_int("QONSAGER_DEGREE", 8)
        if D < 4:
            raise UsageError("--degree must be at least 4")
        return verify_conjecture(K, D, slack=args.slack, square=not args.triangle,
                                 fast_pass_only=args.fast_pass_only, progress=progress)
    if suite == "deltaq":
        from .deltaq import verify_deltaq

        N = args.order if args.order is not None else _env_int("QONSAGER_ORDER", 8)
        K = args.max_index if args.max_index is not None else _env_int("QONSAGER_MAX_INDEX", 6)
        return verify_deltaq(order=N, K=K)
    if suite == "onsager":
        from .onsager import jacobi_check, verify_limit_series, verify_onsager

        K = args.max_index if args.max_index is not None else _env_int("QONSAGER_MAX_INDEX", 10)
        trials = args.trials if args.trials is not None else _env_int("QONSAGER_TRIALS", 1000)
        N = args.order if args.order is not None else _env_int("QONSAGER_ORDER", 12)
        report = SuiteReport("onsager", [], {"max_index": K, "trials": trials, "order": N})
        report.extend(verify_onsager(K, square=not args.triangle))
        report.extend(jacobi_check(trials, seed=args.seed))
        report.extend(verify_limit_series(N))
        return report
    if suite == "gseries":
        from .gseries import property_suite

        N = args.order if args.order is not None else _env_int("QONSAGER_ORDER", 12)
        trials = args.trials if args.trials is not None else _env_int("QONSAGER_TRIALS", 100)
        return property_suite(trials=trials, order=N, seed=args.seed)
    raise UsageError(f"unknown suite {suite!r}")


def render_report(report, fmt):
    if fmt == "json":
        return json.dumps(report.as_dict(), indent=1)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "verdict", "residual_terms", "ms"])
        for c in report.cases:
            w.writerow([c.id, c.verdict, c.residual_terms, c.ms])
        w.writerow(["overall", report.overall, "", ""])
        return buf.getvalue().rstrip("\n")
    lines = [report.summary()]
    for c in report.cases:
        if c.verdict != "pass":
            extra = f" ({c.note})" if c.note else ""
            lines.append(f"  {c.verdict.upper():13s} {c.id}  residual terms {c.residual_terms}{extra}")
    return "\n".join(lines)


def cmd_verify(args, out):
    if args.format == "latex":
        raise UsageError("verify reports are text, json or csv")
    progress = None
    if args.verbose:
        def progress(tag, ms):
            print(f"  {tag} {ms} ms", file=sys.stderr)
    report = run_suite(args, progress)
    out.write(render_report(report, args.format) + "\n")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.as_dict(), fh, indent=1)
    return report.exit_code


# ---------------------------------------------------------------------------
# series


def parse_series(text, order, variable="t"):
    """A truncated series from an expression in ``variable`` or from the JSON
    form ``{"order": N, "coeffs": [...]}``.  Other names become commuting
    symbols.  Terms above ``order`` are dropped; ``order=None`` keeps the
    expression's own degree (or the JSON order)."""
    from .commpoly import CommPoly
    from .gseries import TruncatedSeries

    stripped = text.strip()
    if stripped.startswith("{"):
        s = TruncatedSeries.from_json(stripped)
        if order is None or order == s.order:
            return s
        if order < s.order:
            return s.truncate(order)
        zero = CommPoly.scalar(0)
        return TruncatedSeries(list(s.coeffs) + [zero] * (order - s.order))
    poly = CommPoly.parse(stripped)
    buckets = {}
    for mono, c in poly.terms.items():
        e = dict(mono).get(variable, 0)
        rest = tuple((v, k) for v, k in mono if v != variable)
        buckets.setdefault(e, {})[rest] = c
    top = max(buckets) if buckets else 0
    N = top if order is None else order
    return TruncatedSeries([CommPoly(buckets.get(n, {})) for n in range(N + 1)])


def cmd_series(args, out):
    from .gseries import (
        NormalizationError,
        certify_commutative,
        inverse,
        q_expand,
        q_square_root,
        q_symmetrize,
    )

    text = args.input
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    try:
        a = parse_series(text, args.order)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot parse series input: {exc}")
    certify_commutative(a)
    ops = {"q-expand": q_expand, "q-sqrt": q_square_root, "q-symmetrize": q_symmetrize, "inverse": inverse}
    try:
        b = ops[args.op](a)
    except NormalizationError as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        out.write(b.dumps() + "\n")
    else:
        for n, c in enumerate(b.coeffs):
            out.write(f"t^{n}: {c}\n")
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="qonsager", description="Exact computations for the q-Onsager current algebra.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("tables", help="emit the appendix coefficient tables")
    t.add_argument("target", choices=["appendix-a", "appendix-b"])
    t.add_argument("range", nargs="?", help="e.g. 1..8, 3, 1,3 (A) or W_-1, W_{-1}, W_1..W_8 (B)")
    t.add_argument("--format", choices=["text", "json", "csv", "latex"], default="text")
    t.add_argument("--check", action="store_true", help="diff the entries against the shipped fixtures")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=["conjecture", "deltaq", "onsager", "gseries"])
    v.add_argument("--order", type=int, help="series order N")
    v.add_argument("--max-index", type=int, help="largest relation index K")
    v.add_argument("--degree", type=int, help="degree bound D (conjecture)")
    v.add_argument("--slack", type=int, default=2, help="extra degree allowed above D (conjecture)")
    v.add_argument("--triangle", action="store_true", help="only k + l <= K for two-index relations")
    v.add_argument("--fast-pass-only", action="store_true", help="modular pass only; passes become inconclusive")
    v.add_argument("--trials", type=int, help="random trials (onsager, gseries)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=["text", "json", "csv", "latex"], default="text")
    v.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")
    v.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    s = sub.add_parser("series", help="apply a generating-function operation")
    s.add_argument("op", choices=["q-expand", "q-sqrt", "q-symmetrize", "inverse"])
    s.add_argument("input", help="expression in t (e.g. '1 + a1*t'), a JSON series, or a file holding either")
    s.add_argument("--order", type=int, help="truncation order (default: the input's degree)")
    s.add_argument("--format", choices=["text", "json"], default="text")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("order", "max_index", "degree", "trials"):
        val = getattr(args, name, None)
        if val is not None and val < 0:
            parser.error(f"--{name.replace('_', '-')} must be nonnegative")
    handlers = {"tables": cmd_tables, "verify": cmd_verify, "series": cmd_series}
    try:
        return handlers[args.command](args, out)
    except UsageError as exc:
        print(f"qonsager: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
