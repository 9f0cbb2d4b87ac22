"""Test the report schema."""
import json

import pytest
from pydantic import ValidationError

from polyrep.report.findings import SCHEMA_VERSION, Check, Finding, Report
from polyrep.systems.claims import Verdict


class TestCheck:
    """Test per-index checks."""

    def test_from_verdict(self):
        """Test copying a verdict."""
        verdict = Verdict("DI.F_shift", "DI", (2,), "MISMATCH", "(1)*psi(3)", "(E)*psi(3)", "x")
        check = Check.from_verdict(verdict)
        assert check.index == [2]
        assert check.verdict == "MISMATCH"
        assert check.engine == "(1)*psi(3)"
        assert check.difference == "x"

    def test_invalid_status(self):
        """Test that unknown statuses are rejected."""
        with pytest.raises(ValidationError):
            Check(index=[0], verdict="MAYBE")


class TestFinding:
    """Test the aggregation of checks."""

    def setup_method(self):
        """Set up one check of every status."""
        self.match = Check(index=[0], verdict="MATCH", engine="1", reference="1")
        self.mismatch = Check(index=[1], verdict="MISMATCH", engine="1", reference="2")
        self.skipped = Check(index=[2], verdict="NOT_APPLICABLE")

    def test_mismatch_wins(self):
        """Test that any mismatch makes the finding a mismatch."""
        finding = Finding.from_checks(
            "propositions", "DI", "DI.x", [self.match, self.mismatch, self.skipped]
        )
        assert finding.verdict == "MISMATCH"
        assert finding.engine == "1"
        assert finding.reference == "2"
        assert finding.indices == [[0], [1], [2]]
        assert finding.id == "propositions:DI.x"

    def test_match(self):
        """Test that a match with skipped indices is a match."""
        finding = Finding.from_checks("casimir", "DI", "DI.x", [self.skipped, self.match])
        assert finding.verdict == "MATCH"
        assert finding.engine == "1"

    def test_not_applicable(self):
        """Test findings with nothing checked."""
        assert Finding.from_checks("oracle", "DI", "DI.x", [self.skipped]).verdict == (
            "NOT_APPLICABLE"
        )
        assert Finding.from_checks("oracle", "DI", "DI.x", []).verdict == "NOT_APPLICABLE"

    def test_mismatch_needs_values(self):
        """Test that a mismatch must show both values."""
        with pytest.raises(ValidationError):
            Finding(id="s:x", suite="s", algebra="DI", claim_ref="x", verdict="MISMATCH")


class TestReport:
    """Test the report document."""

    def setup_method(self):
        """Set up a report with two findings."""
        match = Check(index=[0], verdict="MATCH", engine="0", reference="0")
        mismatch = Check(index=[0], verdict="MISMATCH", engine="1", reference="2")
        self.report = Report(
            tool_version="0.0.1",
            algebra="DI",
            suites=["jacobi"],
            findings=[
                Finding.from_checks("jacobi", "DI", "DI.jacobi", [match]),
                Finding.from_checks("jacobi", "DI", "DI.weight_guard", [mismatch]),
            ],
        )

    def test_counts(self):
        """Test the verdict counts."""
        assert self.report.counts() == {"MATCH": 1, "MISMATCH": 1, "NOT_APPLICABLE": 0}
        assert [f.claim_ref for f in self.report.mismatches] == ["DI.weight_guard"]

    def test_json(self):
        """Test the JSON document."""
        document = json.loads(self.report.to_json())
        assert document["schema_version"] == SCHEMA_VERSION
        assert document["timings"] == {}
        assert [f["verdict"] for f in document["findings"]] == ["MATCH", "MISMATCH"]
        assert Report.model_validate_json(self.report.to_json()) == self.report
