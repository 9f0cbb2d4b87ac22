"""Test the verification suites."""
import pytest

from polyrep.parser.alg_file import load_presentation
from polyrep.report.suites import (
    SUITES,
    SuiteRunner,
    anchors,
    parse_range,
    parse_suites,
    run_suites,
    suite_of,
)
from polyrep.systems.catalog import BUILTIN_NAMES, CLAIMS, builtin, get_claim
from polyrep.utils.config import EngineConfig

HEISENBERG = """
[presentation]
name = HEIS

[parameters]
free = k

[generators]
names = Q P Z

[weights]
Q = 1
P = 1
Z = 2

[relations]
[P,Q] = k*Z
[P,Z] = 0
[Q,Z] = 0

[casimir]
element = Z
"""


class TestParsing:
    """Test the parsing of suite and range options."""

    @pytest.mark.parametrize(
        "text, expected", [("4..10", (4, 10)), ("m=4..10", (4, 10)), (" 0..0 ", (0, 0))]
    )
    def test_range(self, text, expected):
        """Test valid ranges."""
        assert parse_range(text) == expected

    @pytest.mark.parametrize("text", ["4-10", "10..4", "m=..3", "a..b"])
    def test_invalid_range(self, text):
        """Test that malformed or decreasing ranges are rejected."""
        with pytest.raises(ValueError):
            parse_range(text)

    def test_suites(self):
        """Test suite lists."""
        assert parse_suites("jacobi, casimir") == ["jacobi", "casimir"]
        assert parse_suites(",".join(SUITES)) == list(SUITES)
        with pytest.raises(ValueError):
            parse_suites("jacobi,proofs")

    def test_suite_of(self):
        """Test the suite each claim is reported under."""
        assert suite_of(get_claim("DI.casimir_scalar")) == "casimir"
        assert suite_of(get_claim("DI.relation_display")) == "casimir"
        assert suite_of(get_claim("DI.F_shift")) == "propositions"
        assert suite_of(get_claim("DI.oracle_X1")) == "oracle"

    def test_anchors(self):
        """Test that every claim and structural check is an anchor."""
        known = anchors()
        assert set(CLAIMS) <= known
        assert "DIV.jacobi" in known
        assert "QUINTIC.sequence_seed" in known


class TestStructuralSuites:
    """Test the suites that check the presentation itself."""

    def test_jacobi_and_casimir(self):
        """Test that DI passes its structural and Casimir checks."""
        report = run_suites(builtin("DI"), ["jacobi", "casimir"])
        assert report.findings
        assert report.counts()["MISMATCH"] == 0
        assert report.counts()["NOT_APPLICABLE"] == 0
        refs = [f.claim_ref for f in report.findings]
        assert refs[:3] == ["DI.jacobi", "DI.weight_guard", "DI.casimir_central"]
        assert set(refs) <= anchors()

    def test_power_commutators(self):
        """Test that the telescoped form matches and both forms are reported."""
        runner = SuiteRunner(builtin("DI"), index_range=(0, 2))
        telescoped, binomial = runner.power_commutators()
        assert telescoped.verdict == "MATCH"
        assert binomial.claim_ref == "DI.power_commutator_binomial"
        assert len(binomial.checks) == len(telescoped.checks)

    def test_sequences_not_applicable(self):
        """Test that sequences need ``[F, X1] = a + b X1^2``."""
        findings = SuiteRunner(builtin("QUINTIC")).sequence_tables()
        assert [f.claim_ref for f in findings] == ["QUINTIC.sequence_a", "QUINTIC.sequence_b"]
        assert {f.verdict for f in findings} == {"NOT_APPLICABLE"}

    def test_sequences_on_dii(self):
        """Test the sequence findings of D_II."""
        findings = SuiteRunner(builtin("DII"), index_range=(0, 1)).sequence_tables()
        refs = [f.claim_ref for f in findings]
        assert refs == ["DII.sequence_a", "DII.sequence_b", "DII.sequence_seed"]
        assert findings[0].verdict == "MISMATCH"
        assert findings[2].verdict == "MATCH"

    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_representation(self, name):
        """Test that every bracket holds on the module up to the default limits."""
        presentation = builtin(name)
        config = EngineConfig()
        (finding,) = SuiteRunner(presentation, config).representation()
        assert finding.claim_ref == f"{name}.representation"
        assert finding.verdict == "MATCH"
        arity = len(presentation.module_spec.template)
        top = config.single_index_probe if arity == 1 else config.multi_index_probe
        n = len(presentation.generators)
        assert len(finding.checks) == (top + 1) ** arity * n * (n - 1) // 2
        assert {c.verdict for c in finding.checks} == {"MATCH"}

    def test_representation_range(self):
        """Test that a requested range selects the checked states."""
        runner = SuiteRunner(builtin("DIII"), index_range=(1, 2))
        (finding,) = runner.representation()
        states = sorted({tuple(c.index[2:]) for c in finding.checks})
        assert states == [(1, 1), (1, 2), (2, 1), (2, 2)]
        assert finding.verdict == "MATCH"

    def test_representation_without_module(self):
        """Test that a presentation without a module is not applicable."""
        (finding,) = SuiteRunner(load_presentation(HEISENBERG)).representation()
        assert finding.verdict == "NOT_APPLICABLE"
        assert finding.claim_ref == "HEIS.representation"


class TestRuns:
    """Test complete runs."""

    def test_order_and_determinism(self):
        """Test that two runs give identical reports."""
        first = run_suites(builtin("DI"), ["casimir", "jacobi"])
        second = run_suites(builtin("DI"), ["casimir", "jacobi"])
        assert first.to_json() == second.to_json()
        assert first.findings[0].suite == "casimir"
        assert first.timings == {}

    def test_timings(self):
        """Test that timings are recorded when requested."""
        report = run_suites(builtin("DI"), ["jacobi"], timings=True)
        assert set(report.timings) == {"jacobi"}

    def test_propositions(self):
        """Test that the displayed raising factor is reported as a mismatch."""
        report = run_suites(builtin("DI"), ["propositions"])
        verdicts = {f.claim_ref: f.verdict for f in report.findings}
        assert verdicts["DI.F_shift"] == "MISMATCH"
        assert verdicts["DI.K1_eigenvalue"] == "MATCH"

    def test_index_range_is_capped(self):
        """Test that requested ranges are capped by the probe limits."""
        config = EngineConfig(single_index_probe=3)
        runner = SuiteRunner(builtin("DI"), config, index_range=(1, 50))
        assert runner.indices_for(get_claim("DI.X1_lowering")) == ((1,), (2,), (3,))

    def test_workers(self):
        """Test that threaded runs keep the claim order."""
        serial = run_suites(builtin("DI"), ["propositions"])
        threaded = run_suites(builtin("DI"), ["propositions"], EngineConfig(workers=3))
        assert serial.to_json() == threaded.to_json()

    def test_hash(self):
        """Test that the presentation hash is recorded."""
        report = run_suites(builtin("DIII"), [])
        assert list(report.presentation_hashes) == ["DIII"]
        assert report.findings == []
