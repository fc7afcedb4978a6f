"""Structured pass/fail records tying a named claim to computed witnesses."""

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of one named structural check.

    ``witnesses`` holds the computed quantities supporting the verdict;
    on failure ``failures`` carries concrete counterexample data.
    """

    claim: str
    params: dict = field(default_factory=dict)
    passed: bool = True
    witnesses: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def ledger_line(self):
        """Render as ``CLAIM <id> <params> PASS|FAIL <witness-summary>``."""
        params = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        verdict = "PASS" if self.passed else "FAIL"
        parts = [f"{k}={_compact(v)}" for k, v in self.witnesses.items()]
        if self.failures:
            parts.append("counterexample=" + _compact(self.failures[0]))
        summary = " ".join(parts)
        return f"CLAIM {self.claim} {params or '-'} {verdict} {summary}".rstrip()

    def require(self, label, ok, witness=None):
        """Record one sub-check; a failed sub-check fails the report."""
        if ok:
            if witness is not None:
                self.witnesses[label] = witness
        else:
            self.passed = False
            self.failures.append((label, witness))
        return ok


def _compact(value):
    text = str(value)
    text = text.replace(" ", "")
    if len(text) > 60:
        text = text[:57] + "..."
    return text
