"""Report schema of the verification suites."""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from polyrep.systems.claims import Verdict

SCHEMA_VERSION = "1"

Status = Literal["MATCH", "MISMATCH", "NOT_APPLICABLE"]


class Check(BaseModel):
    """Outcome of a claim at one index."""

    model_config = ConfigDict(frozen=True)

    index: list[int]
    verdict: Status
    engine: str = ""
    reference: str = ""
    difference: str = ""

    @classmethod
    def from_verdict(cls, verdict: Verdict) -> "Check":
        return cls(
            index=list(verdict.index),
            verdict=verdict.status,
            engine=verdict.engine,
            reference=verdict.reference,
            difference=verdict.difference,
        )


class Finding(BaseModel):
    """Aggregated outcome of one claim over the indices probed.

    The verdict is MISMATCH if any index mismatches, MATCH if some index
    matches and none mismatches, and NOT_APPLICABLE otherwise. ``engine`` and
    ``reference`` show the first mismatching index, or the first checked one.
    """

    model_config = ConfigDict(frozen=True)

    id: str
    suite: str
    algebra: str
    claim_ref: str
    statement: str = ""
    verdict: Status
    engine: str = ""
    reference: str = ""
    indices: list[list[int]] = Field(default_factory=list)
    checks: list[Check] = Field(default_factory=list)

    @model_validator(mode="after")
    def _mismatch_has_values(self) -> "Finding":
        if self.verdict == "MISMATCH" and not (self.engine and self.reference):
            raise ValueError(f"MISMATCH finding {self.id} needs both values")
        return self

    @classmethod
    def from_checks(
        cls,
        suite: str,
        algebra: str,
        claim_ref: str,
        checks: list[Check],
        statement: str = "",
    ) -> "Finding":
        """Aggregate per-index checks into one finding."""
        statuses = {check.verdict for check in checks}
        if "MISMATCH" in statuses:
            verdict = "MISMATCH"
        elif "MATCH" in statuses:
            verdict = "MATCH"
        else:
            verdict = "NOT_APPLICABLE"
        shown = next((c for c in checks if c.verdict == verdict), None)
        return cls(
            id=f"{suite}:{claim_ref}",
            suite=suite,
            algebra=algebra,
            claim_ref=claim_ref,
            statement=statement,
            verdict=verdict,
            engine=shown.engine if shown else "",
            reference=shown.reference if shown else "",
            indices=[check.index for check in checks],
            checks=checks,
        )


class Report(BaseModel):
    """Everything ``polyrep verify`` writes.

    ``timings`` is empty unless timings are requested, so that two runs over
    the same inputs give identical bytes.
    """

    schema_version: str = SCHEMA_VERSION
    tool_version: str
    algebra: str
    presentation_hashes: dict[str, str] = Field(default_factory=dict)
    suites: list[str] = Field(default_factory=list)
    findings: list[Finding] = Field(default_factory=list)
    timings: dict[str, float] = Field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        counts = {"MATCH": 0, "MISMATCH": 0, "NOT_APPLICABLE": 0}
        for finding in self.findings:
            counts[finding.verdict] += 1
        return counts

    @property
    def mismatches(self) -> list[Finding]:
        return [f for f in self.findings if f.verdict == "MISMATCH"]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)
