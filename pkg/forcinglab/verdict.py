from dataclasses import dataclass
from typing import Any, Optional


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive check: pass, or the first counterexample in canonical order."""

    check: str
    passed: bool
    counterexample: Optional[tuple[Any, ...]] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def ok(cls, check: str, detail: str = "") -> "Verdict":
        return cls(check=check, passed=True, detail=detail)

    @classmethod
    def fail(cls, check: str, counterexample: tuple[Any, ...], detail: str = "") -> "Verdict":
        return cls(check=check, passed=False, counterexample=counterexample, detail=detail)

    def to_doc(self) -> dict:
        doc = {"check": self.check, "passed": self.passed}
        if self.counterexample is not None:
            doc["counterexample"] = [str(part) for part in self.counterexample]
        if self.detail:
            doc["detail"] = self.detail
        return doc
