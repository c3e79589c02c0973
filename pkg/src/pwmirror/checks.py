"""Report-valued check results shared by the checker operations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    ok: bool
    details: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def from_problems(cls, problems: list[str], **data) -> "CheckResult":
        return cls(not problems, list(problems), [], dict(data))
