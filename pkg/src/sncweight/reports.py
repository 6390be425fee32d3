"""Small pass/fail report values shared by the validation and check routines."""

from dataclasses import dataclass

__all__ = ["Report"]


@dataclass(frozen=True)
class Report:
    name: str
    passed: bool
    details: tuple[str, ...] = ()

    @classmethod
    def ok(cls, name: str, details: tuple[str, ...] = ()) -> "Report":
        return cls(name, True, details)

    @classmethod
    def fail(cls, name: str, details: tuple[str, ...]) -> "Report":
        return cls(name, False, details)

    def summary(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}"

    def render(self) -> str:
        lines = [self.summary()]
        lines.extend(f"  {d}" for d in self.details)
        return "\n".join(lines)
