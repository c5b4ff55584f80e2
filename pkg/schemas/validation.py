"""Pydantic schema for oracle checks of the validation suite."""

from pydantic import BaseModel, ConfigDict, Field


class CheckResult(BaseModel):
    """Outcome of one oracle comparison."""
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    worst: float = Field(..., description="Largest observed deviation")
    tolerance: float
    cases: int = Field(..., ge=0)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: worst deviation {self.worst:.3g} (tolerance {self.tolerance:.3g}, {self.cases} cases)"
