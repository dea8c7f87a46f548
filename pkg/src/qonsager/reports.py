"""Pass/fail reports shared by the verification suites.

Every suite returns a ``SuiteReport`` whose ``as_dict`` follows one schema::

    {"suite": str,
     "cases": [{"id": str, "verdict": "pass|fail|inconclusive",
                "residual_terms": int, "ms": int, ...}],
     "overall": "PASS|FAIL|INCONCLUSIVE"}
"""

import time

__all__ = ["CaseResult", "SuiteReport", "timed_case", "EXIT_CODES"]

EXIT_CODES = {"PASS": 0, "FAIL": 1, "INCONCLUSIVE": 2}


class CaseResult:
    def __init__(self, id, verdict, residual_terms, ms, report=None, bound=None, note=""):
        self.id = id
        self.verdict = verdict
        self.residual_terms = residual_terms
        self.ms = ms
        self.report = report
        self.bound = bound
        self.note = note

    def as_dict(self):
        out = {"id": self.id, "verdict": self.verdict, "residual_terms": self.residual_terms, "ms": self.ms}
        if self.bound is not None:
            out["degree_bound"] = self.bound
        if self.note:
            out["note"] = self.note
        return out

    def __repr__(self):
        return f"CaseResult({self.id!r}, {self.verdict})"


class SuiteReport:
    def __init__(self, suite, cases, params=None):
        self.suite = suite
        self.cases = list(cases)
        self.params = params or {}

    @property
    def overall(self):
        verdicts = {c.verdict for c in self.cases}
        if "fail" in verdicts:
            return "FAIL"
        if "inconclusive" in verdicts:
            return "INCONCLUSIVE"
        return "PASS"

    @property
    def passed(self):
        return self.overall == "PASS"

    @property
    def exit_code(self):
        return EXIT_CODES[self.overall]

    def failures(self):
        return [c for c in self.cases if c.verdict == "fail"]

    def extend(self, other):
        self.cases.extend(other.cases)
        return self

    def as_dict(self):
        return {"suite": self.suite, "cases": [c.as_dict() for c in self.cases], "overall": self.overall}

    def summary(self):
        counts = {}
        for c in self.cases:
            counts[c.verdict] = counts.get(c.verdict, 0) + 1
        body = ", ".join(f"{v} {counts[v]}" for v in sorted(counts))
        return f"{self.suite}: {self.overall} ({body})"

    def __repr__(self):
        return f"SuiteReport({self.suite!r}, {self.overall}, {len(self.cases)} cases)"


def _term_count(residual):
    return len(residual) if residual else 0


def timed_case(case_id, fn, size=_term_count):
    """Run ``fn()``, which returns a residual; the case passes when
    ``size(residual)`` (the residual's term count) is zero."""
    t0 = time.perf_counter()
    n = size(fn())
    ms = int(round((time.perf_counter() - t0) * 1000))
    return CaseResult(case_id, "fail" if n else "pass", n, ms)
