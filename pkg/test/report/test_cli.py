"""Test the command-line interface."""
import json

import pandas as pd
import pytest
from click.testing import CliRunner

from polyrep.report.cli import EXIT_FUEL, EXIT_INPUT, EXIT_MISMATCH, main, parse_state


class TestParseState:
    """Test reading basis states."""

    def test_lowest(self):
        """Test the names of the lowest state."""
        assert parse_state("1", ("F",)) == (0,)
        assert parse_state("Psi", ("F", "X2")) == (0, 0)

    def test_products(self):
        """Test exponents of the template generators."""
        assert parse_state("F^2*X2^3", ("F", "X2")) == (2, 3)
        assert parse_state("X2 * F * F", ("F", "X2")) == (2, 1)

    @pytest.mark.parametrize("spec", ["G", "F^", "2*F", "F^-1"])
    def test_invalid(self, spec):
        """Test that factors outside the template are rejected."""
        with pytest.raises(ValueError):
            parse_state(spec, ("F",))


class TestCommands:
    """Test the commands end to end."""

    def setup_method(self):
        """Set up the runner."""
        self.runner = CliRunner()

    def test_show(self):
        """Test printing a presentation."""
        result = self.runner.invoke(main, ["show", "DI"])
        assert result.exit_code == 0
        assert "[relations]" in result.output

    def test_act(self):
        """Test applying operators."""
        result = self.runner.invoke(main, ["act", "DI", "--op", "F"])
        assert result.exit_code == 0
        assert result.output.strip() == "(1)*psi(1)"
        result = self.runner.invoke(main, ["act", "DI", "--op", "F", "--state", "F^2", "--format", "json"])
        assert json.loads(result.output) == {"3": "1"}

    def test_act_csv(self):
        """Test the tabular form of a combination."""
        result = self.runner.invoke(main, ["act", "DI", "--op", "F*F", "--format", "csv"])
        assert result.output.splitlines() == ["index,coefficient", "2,1"]

    def test_band(self, tmp_path):
        """Test writing the band of the raising operator."""
        out = tmp_path / "band.csv"
        result = self.runner.invoke(
            main, ["band", "DI", "--op", "F", "--range", "0..2", "--out", str(out)]
        )
        assert result.exit_code == 0
        assert out.read_text().splitlines() == ["row,column,value", "1,0,1", "2,1,1", "3,2,1"]

    def test_seq(self):
        """Test the sequence table without engine values."""
        result = self.runner.invoke(main, ["seq", "a", "--k", "0..1", "--p", "1..1", "--format", "json"])
        assert result.exit_code == 0
        rows = json.loads(result.output)
        assert [row["recurrence"] for row in rows] == ["2", "4/3"]
        assert rows[0]["engine"] == "2"

    def test_verify(self, tmp_path):
        """Test a passing strict run."""
        out = tmp_path / "report.json"
        result = self.runner.invoke(
            main, ["verify", "DI", "--suites", "jacobi,casimir", "--strict", "--out", str(out)]
        )
        assert result.exit_code == 0
        document = json.loads(out.read_text())
        assert document["algebra"] == "DI"
        assert {f["verdict"] for f in document["findings"]} == {"MATCH"}

    def test_verify_text(self):
        """Test the text summary."""
        result = self.runner.invoke(main, ["verify", "DI", "--suites", "jacobi", "--format", "text"])
        assert result.exit_code == 0
        assert result.output.splitlines()[-1] == "MATCH=2 MISMATCH=0 NOT_APPLICABLE=0"

    def test_verify_csv(self, tmp_path):
        """Test the csv export of a report, one row per check."""
        out = tmp_path / "report.csv"
        result = self.runner.invoke(
            main, ["verify", "DI", "--suites", "jacobi", "--format", "csv", "--out", str(out)]
        )
        assert result.exit_code == 0
        table = pd.read_csv(out, dtype=str, keep_default_na=False)
        assert list(table.columns) == [
            "claim_ref", "suite", "algebra", "finding", "index", "verdict", "engine", "reference"
        ]
        assert set(table["claim_ref"]) == {"DI.jacobi", "DI.weight_guard"}
        assert set(table["verdict"]) == {"MATCH"}
        assert set(table["algebra"]) == {"DI"}
        assert (table["claim_ref"] == "DI.weight_guard").sum() == 1

    def test_strict_mismatch(self):
        """Test the exit code of a strict run with a mismatch."""
        result = self.runner.invoke(main, ["verify", "DI", "--suites", "propositions", "--strict"])
        assert result.exit_code == EXIT_MISMATCH
        result = self.runner.invoke(main, ["verify", "DI", "--suites", "propositions"])
        assert result.exit_code == 0

    @pytest.mark.parametrize(
        "args",
        [
            ["verify", "DI", "--suites", "proofs"],
            ["verify", "DI", "--range", "5..1"],
            ["act", "DI", "--op", "Y9"],
            ["act", "DI", "--op", "F +"],
            ["act", "DI", "--op", "F", "--state", "G"],
            ["show", "missing.alg"],
        ],
    )
    def test_input_errors(self, args):
        """Test the exit code of invalid input."""
        assert self.runner.invoke(main, args).exit_code == EXIT_INPUT

    def test_fuel(self):
        """Test the exit code of an exhausted rewrite budget."""
        assert self.runner.invoke(main, ["show", "DI", "--fuel", "1"]).exit_code == EXIT_FUEL
