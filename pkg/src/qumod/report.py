"""Pass/fail reporting for law suites."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class LawResult:
    law: str
    passed: bool
    counterexample: str | None = None

    def line(self) -> str:
        if self.passed:
            return f"PASS {self.law}"
        return f"FAIL {self.law}: {self.counterexample}"


class LawReport:
    """An ordered list of named law checks with first counterexamples.

    A report with zero failures certifies every listed identity on the
    carrier it was run against.
    """

    def __init__(self):
        self.results: list[LawResult] = []

    def record(self, law: str, counterexample=None):
        ce = None if counterexample is None else str(counterexample)
        self.results.append(LawResult(law, counterexample is None, ce))

    def extend(self, other: "LawReport"):
        self.results.extend(other.results)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[LawResult]:
        return [r for r in self.results if not r.passed]

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]

    def __str__(self):
        return "\n".join(self.lines())

    def __repr__(self):
        good = sum(r.passed for r in self.results)
        return f"<LawReport {good}/{len(self.results)} passed>"
