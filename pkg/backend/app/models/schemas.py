"""
Pydantic models for verification cases, reports and run configuration.
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from app.core.config import parse_window

REPORT_SCHEMA_VERSION = 1


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"
    DIAGNOSTIC = "diagnostic"


def _freeze(value: Any) -> Any:
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


class TheoremCase(BaseModel):
    """One parameter choice of one registered statement."""

    theorem_id: str = Field(
        ...,
        description="Registered statement id, e.g. 'depth2-star'"
    )
    params: Dict[str, Any] = Field(
        default_factory=dict,
        description="Integer parameters; indices as tuples"
    )
    side: str = Field(
        default="A",
        description="'A' for the per-prime check, 'S' for real numbers"
    )
    n: Optional[int] = Field(
        default=None,
        description="Truncation level of the statement"
    )
    window: Tuple[int, int] = Field(
        default=(7, 97),
        description="Prime window (low, high)"
    )
    digits: int = Field(
        default=40,
        ge=20,
        description="Requested decimal digits for real evaluations"
    )

    @field_validator("params", mode="before")
    @classmethod
    def freeze_params(cls, v):
        return {key: _freeze(value) for key, value in dict(v).items()}

    @field_validator("side", mode="before")
    @classmethod
    def parse_side(cls, v):
        side = str(v).strip().upper()
        if side not in {"A", "S"}:
            raise ValueError(f"side must be 'A' or 'S', got {v!r}")
        return side

    @model_validator(mode="after")
    def check_hypotheses(self):
        from app.services.theorems import Side, get_theorem

        theorem = get_theorem(self.theorem_id)
        if theorem.side is Side.A:
            theorem.check(self.params, self.n)
        else:
            theorem.check(self.params)
        return self

    @property
    def case_id(self) -> str:
        args = ",".join(f"{key}={_render(value)}" for key, value in self.params.items())
        level = f"[n={self.n}]" if self.n is not None else ""
        suffix = "/S" if self.side == "S" and self.n is not None else ""
        return f"{self.theorem_id}{level}{suffix}({args})"


def _render(value: Any) -> str:
    if isinstance(value, tuple):
        return "(" + ",".join(str(v) for v in value) + ")"
    return str(value)


class CaseReport(BaseModel):
    """Outcome of one case."""

    case: str = Field(..., description="Case id")
    theorem_id: str
    params: Dict[str, Any] = Field(default_factory=dict)
    side: str
    n: Optional[int] = None
    primes_compared: int = Field(default=0, ge=0)
    skipped: Dict[int, str] = Field(
        default_factory=dict,
        description="Skipped primes and the reason for each"
    )
    status: Status
    max_abs_error: Optional[str] = Field(
        default=None,
        description="Largest |lhs - rhs| for real-number checks"
    )
    detail: Optional[str] = None
    wall_ms: float = Field(default=0.0, exclude=True)


class VerifyReport(BaseModel):
    """All case reports of one run; timing is kept apart from the results."""

    schema_version: int = Field(default=REPORT_SCHEMA_VERSION, alias="schema")
    cases: List[CaseReport] = Field(default_factory=list)
    summary: Dict[str, int] = Field(default_factory=dict)
    window_note: str = ""
    timing: Dict[str, float] = Field(default_factory=dict)

    model_config = {"populate_by_name": True}

    @classmethod
    def from_cases(cls, cases: List[CaseReport], window_note: str = "") -> "VerifyReport":
        summary = {status.value: 0 for status in Status}
        for case in cases:
            summary[case.status.value] += 1
        summary["total"] = len(cases)
        return cls(cases=cases, summary=summary, window_note=window_note,
                   timing={case.case: case.wall_ms for case in cases})

    @property
    def failed(self) -> List[CaseReport]:
        return [case for case in self.cases if case.status is Status.FAIL]

    @property
    def passed(self) -> bool:
        return not self.failed

    @property
    def exit_code(self) -> int:
        """0 pass, 1 failure, 3 when no case was decided and some were inconclusive."""
        if self.failed:
            return 1
        decided = [case for case in self.cases if case.status is Status.PASS]
        inconclusive = [case for case in self.cases if case.status is Status.INCONCLUSIVE]
        if inconclusive and not decided:
            return 3
        return 0

    def to_json(self, include_timing: bool = True) -> str:
        exclude = None if include_timing else {"timing"}
        return self.model_dump_json(by_alias=True, exclude=exclude, indent=2)


class RunConfig(BaseModel):
    """Validated command-line configuration."""

    command: str = Field(..., description="verify, eval or table")
    ids: List[str] = Field(default_factory=lambda: ["all"])
    window: Tuple[int, int] = (7, 97)
    n: Optional[int] = None
    digits: int = Field(default=40, ge=20)
    limits: Dict[str, Optional[int]] = Field(default_factory=dict)
    params: Dict[str, Any] = Field(default_factory=dict)
    side: str = "A"
    output_format: str = Field(default="json", alias="format")
    out: Optional[str] = None
    jobs: Optional[int] = Field(default=None, ge=1)

    model_config = {"populate_by_name": True}

    @field_validator("window", mode="before")
    @classmethod
    def parse_window_text(cls, v):
        if isinstance(v, str):
            return parse_window(v)
        low, high = v
        if low < 5 or low > high:
            raise ValueError(f"invalid prime window {v}")
        return low, high

    @field_validator("n")
    @classmethod
    def check_level(cls, v):
        if v is not None and v not in (1, 2, 3):
            raise ValueError(f"n must be 1, 2 or 3, got {v}")
        return v

    @field_validator("output_format")
    @classmethod
    def check_format(cls, v):
        if v not in {"json", "csv", "text"}:
            raise ValueError(f"format must be json, csv or text, got {v!r}")
        return v

    @field_validator("side", mode="before")
    @classmethod
    def parse_side(cls, v):
        side = str(v).strip().upper()
        if side not in {"A", "S"}:
            raise ValueError(f"side must be 'A' or 'S', got {v!r}")
        return side
