"""Verification suites that turn engine checks into report findings."""
from __future__ import annotations

import logging
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from itertools import permutations
from typing import Callable, Iterable, Literal

from tqdm import tqdm

from polyrep.base.presentation import Presentation
from polyrep.parser.alg_file import presentation_hash
from polyrep.systems.catalog import BUILTIN_NAMES, CLAIMS, claims_for, module_for, verify_claim
from polyrep.systems.claims import Claim, probe
from polyrep.systems.sequences import BracketSequences
from polyrep.report.findings import Check, Finding, Report
from polyrep.utils.config import EngineConfig

logger = logging.getLogger(__name__)

Suite = Literal[
    "jacobi",
    "casimir",
    "representation",
    "power_commutators",
    "propositions",
    "sequences",
    "oracle",
]
SUITES: tuple[Suite, ...] = (
    "jacobi",
    "casimir",
    "representation",
    "power_commutators",
    "propositions",
    "sequences",
    "oracle",
)

# claim refs of the structural checks, per presentation
STRUCTURAL = (
    "jacobi",
    "weight_guard",
    "casimir_central",
    "representation",
    "power_commutator_telescoped",
    "power_commutator_binomial",
    "sequence_a",
    "sequence_b",
    "sequence_seed",
)

IndexRange = tuple[int, int]

_RANGE = re.compile(r"^(?:[A-Za-z]\w*=)?(\d+)\.\.(\d+)$")


def anchors() -> set[str]:
    """Every claim ref a finding about a built-in may carry."""
    structural = {f"{name}.{suffix}" for name in BUILTIN_NAMES for suffix in STRUCTURAL}
    return structural | set(CLAIMS)


def parse_range(text: str) -> IndexRange:
    """Read ``"4..10"`` or ``"m=4..10"`` as ``(4, 10)``."""
    match = _RANGE.match(text.strip())
    if match is None:
        raise ValueError(f"Invalid range {text}")
    start, top = int(match.group(1)), int(match.group(2))
    if start > top:
        raise ValueError(f"Invalid range {text}")
    return start, top


def parse_suites(text: str) -> list[Suite]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    for name in names:
        if name not in SUITES:
            raise ValueError(f"Invalid suite {name}")
    return names


def suite_of(claim: Claim) -> Suite:
    """Suite a registered claim is reported under."""
    if claim.kind == "realized":
        return "oracle"
    name = claim.id.split(".", 1)[1]
    if name.startswith(("casimir", "relation_")):
        return "casimir"
    return "propositions"


class SuiteRunner:
    """Run suites on one presentation and collect findings in a fixed order.

    Parameters
    ----------
    presentation : Presentation
        Presentation to verify.
    config : EngineConfig, optional
        Probe limits and worker count.
    index_range : tuple of int, optional
        ``(start, top)`` of the module indices probed by claims; default the
        claims' own indices.
    sequences : BracketSequences, optional
        Sequence tables for the ``sequences`` suite.
    progress : bool, default=False
        Show tqdm progress bars.
    """

    def __init__(
        self,
        presentation: Presentation,
        config: EngineConfig | None = None,
        index_range: IndexRange | None = None,
        sequences: BracketSequences | None = None,
        progress: bool = False,
    ) -> None:
        self.presentation = presentation
        self.config = config or EngineConfig.from_env()
        self.index_range = index_range
        self.sequences = sequences or BracketSequences()
        self.progress = progress and sys.stderr.isatty()

    @property
    def name(self) -> str:
        return self.presentation.name

    def run(self, suites: Iterable[Suite], timings: bool = False) -> Report:
        """Run the suites in the given order."""
        from polyrep import __version__

        suites = list(suites)
        report = Report(
            tool_version=__version__,
            algebra=self.name,
            presentation_hashes={self.name: presentation_hash(self.presentation)},
            suites=suites,
        )
        runners: dict[Suite, Callable[[], list[Finding]]] = {
            "jacobi": self.jacobi,
            "casimir": self.casimir,
            "representation": self.representation,
            "power_commutators": self.power_commutators,
            "propositions": lambda: self.claims("propositions"),
            "sequences": self.sequence_tables,
            "oracle": lambda: self.claims("oracle"),
        }
        for suite in suites:
            if suite not in runners:
                raise ValueError(f"Invalid suite {suite}")
            started = time.perf_counter()
            findings = runners[suite]()
            report.findings.extend(findings)
            if timings:
                report.timings[suite] = round(time.perf_counter() - started, 6)
            counts = {s: sum(f.verdict == s for f in findings) for s in ("MATCH", "MISMATCH")}
            logger.info(
                "suite %s on %s: %d findings, %d match, %d mismatch",
                suite,
                self.name,
                len(findings),
                counts["MATCH"],
                counts["MISMATCH"],
            )
        return report

    def _finding(self, suite: str, suffix: str, checks: list[Check], statement="") -> Finding:
        finding = Finding.from_checks(suite, self.name, f"{self.name}.{suffix}", checks, statement)
        _log_mismatch(finding)
        return finding

    # structural suites

    def jacobi(self) -> list[Finding]:
        generators = self.presentation.generators
        position = {name: i for i, name in enumerate(generators)}
        checks = []
        for triple, residual in self.presentation.jacobi_residuals().items():
            checks.append(
                Check(
                    index=[position[g] for g in triple],
                    verdict="MISMATCH" if residual else "MATCH",
                    engine=str(residual),
                    reference="0",
                )
            )
        guard = [
            Check(
                index=[position[low], position[high]],
                verdict="MISMATCH",
                engine="*".join(word) or "1",
                reference="lighter word",
            )
            for (low, high), word in self.presentation.weight_guard_failures()
        ]
        if not guard:
            guard = [Check(index=[], verdict="MATCH", engine="decreasing", reference="decreasing")]
        return [
            self._finding("jacobi", "jacobi", checks, "Jacobi sums normal-order to 0"),
            self._finding("jacobi", "weight_guard", guard, "rules decrease the measure"),
        ]

    def casimir(self) -> list[Finding]:
        generators = self.presentation.generators
        checks = [
            Check(
                index=[i],
                verdict="MISMATCH" if residual else "MATCH",
                engine=str(residual),
                reference="0",
            )
            for i, residual in enumerate(
                self.presentation.casimir_centrality()[name] for name in generators
            )
        ]
        findings = [
            self._finding("casimir", "casimir_central", checks, "[casimir, g] = 0")
        ]
        return findings + self.claims("casimir")

    def representation(self) -> list[Finding]:
        """``g h s - h g s = [g, h] s`` for every generator pair on basis states."""
        statement = "the bracket table holds on the module"
        if self.presentation.module_spec is None:
            checks = [Check(index=[], verdict="NOT_APPLICABLE")]
            return [self._finding("representation", "representation", checks, statement)]
        module = module_for(self.presentation, config=self.config)
        arity = len(module.template)
        cap = self.config.single_index_probe if arity == 1 else self.config.multi_index_probe
        start, top = self.index_range or (0, cap)
        indices = probe(arity, min(top, cap), start)
        defects = {
            (pair, idx): difference
            for pair, idx, difference in module.representation_defects(indices)
        }
        generators = self.presentation.generators
        checks = []
        for idx in indices:
            for i, g in enumerate(generators):
                for j in range(i + 1, len(generators)):
                    difference = defects.get(((g, generators[j]), idx))
                    checks.append(
                        Check(
                            index=[i, j, *idx],
                            verdict="MISMATCH" if difference is not None else "MATCH",
                            engine=str(difference) if difference is not None else "0",
                            reference="0",
                        )
                    )
        return [self._finding("representation", "representation", checks, statement)]

    def power_commutators(self) -> list[Finding]:
        """``[a^n, b]`` by expansion against the telescoped and binomial forms."""
        algebra = self.presentation.algebra
        generators = self.presentation.generators
        top = min(self.index_range[1], 6) if self.index_range else 6
        telescoped, binomial = [], []
        for (i, a), (j, b) in permutations(enumerate(generators), 2):
            ga, gb = algebra.gen(a), algebra.gen(b)
            for n in range(1, top + 1):
                direct = algebra.power_commutator(ga, gb, n)
                for checks, other in (
                    (telescoped, algebra.power_commutator_telescoped(ga, gb, n)),
                    (binomial, algebra.binomial_power_commutator(ga, gb, n)),
                ):
                    checks.append(
                        Check(
                            index=[i, j, n],
                            verdict="MISMATCH" if direct - other else "MATCH",
                            engine=str(direct),
                            reference=str(other),
                        )
                    )
        return [
            self._finding(
                "power_commutators",
                "power_commutator_telescoped",
                telescoped,
                "[a^n, b] = sum_j a^(n-j) [a, b] a^(j-1)",
            ),
            self._finding(
                "power_commutators",
                "power_commutator_binomial",
                binomial,
                "[a^n, b] = sum_l sum_j (-1)^j C(n,j) C(j,l) a^l ad_a^(n-j)(b)",
            ),
        ]

    def _has_sequences(self) -> bool:
        if not {"X1", "F"} <= set(self.presentation.generators):
            return False
        first = self.sequences.chain(self.presentation, 1)[1]
        a, b = self.sequences.bracket_constants(self.presentation)
        return set(first.terms) <= {(), ("X1", "X1")} and bool(a) and bool(b)

    def sequence_tables(self) -> list[Finding]:
        """Engine and recurrence values of the bracket sequences."""
        if not self._has_sequences():
            return [
                self._finding(
                    suffix=suffix,
                    suite="sequences",
                    checks=[Check(index=[], verdict="NOT_APPLICABLE")],
                    statement="needs [F, X1] = a + b*X1^2 with a, b nonzero",
                )
                for suffix in ("sequence_a", "sequence_b")
            ]
        top = min(self.index_range[1], self.config.multi_index_probe) if self.index_range else 3
        findings = []
        for family in ("a", "b"):
            table = self.sequences.extract(self.presentation, top, families=(family,))
            checks = []
            for row in table.itertuples(index=False):
                if not row.engine or not row.recurrence:
                    verdict = "NOT_APPLICABLE"
                else:
                    verdict = "MATCH" if row.match else "MISMATCH"
                checks.append(
                    Check(
                        index=[int(row.k), int(row.p)],
                        verdict=verdict,
                        engine=row.engine or "",
                        reference=row.recurrence or "",
                    )
                )
            findings.append(
                self._finding(
                    "sequences", f"sequence_{family}", checks, f"{family}(k, p) by recurrence"
                )
            )
        seed = [
            Check(
                index=[p],
                verdict="MATCH" if self.sequences.seed_identity(p) else "MISMATCH",
                engine=str(2 ** (2 * p + 2)),
                reference=f"2*(2^{2 * p} + 3*a(1, {p}))",
            )
            for p in range(1, top + 1)
        ]
        findings.append(
            self._finding("sequences", "sequence_seed", seed, "2^(2p+2) = 2(2^(2p) + 3 a(1, p))")
        )
        return findings

    # registered claims

    def indices_for(self, claim: Claim) -> tuple:
        """Indices probed for a claim: its own, or the requested range capped."""
        if self.index_range is None or len(claim.indices) < 2:
            return claim.indices
        arity = len(claim.indices[0])
        if claim.kind == "realized":
            cap = self.config.oracle_probe
        elif arity == 1:
            cap = self.config.single_index_probe
        else:
            cap = self.config.multi_index_probe
        start, top = self.index_range
        return probe(arity, min(top, cap), start)

    def claims(self, suite: Suite) -> list[Finding]:
        selected = [c for c in claims_for(self.name) if suite_of(c) == suite]
        if not selected:
            return []

        def run(claim: Claim) -> Finding:
            verdicts = verify_claim(
                self.presentation, claim.id, self.indices_for(claim), self.config
            )
            finding = Finding.from_checks(
                suite,
                self.name,
                claim.id,
                [Check.from_verdict(v) for v in verdicts],
                claim.statement,
            )
            _log_mismatch(finding)
            return finding

        bar = dict(desc=f"{self.name} {suite}", total=len(selected), disable=not self.progress)
        if self.config.workers == 1:
            return [run(claim) for claim in tqdm(selected, **bar)]
        with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
            return list(tqdm(pool.map(run, selected), **bar))


def run_suites(
    presentation: Presentation,
    suites: Iterable[Suite] = SUITES,
    config: EngineConfig | None = None,
    index_range: IndexRange | None = None,
    timings: bool = False,
    progress: bool = False,
) -> Report:
    """Run suites on a presentation; see :class:`SuiteRunner`."""
    runner = SuiteRunner(presentation, config, index_range, progress=progress)
    return runner.run(suites, timings)


def _log_mismatch(finding: Finding) -> None:
    if finding.verdict == "MISMATCH":
        logger.warning("%s on %s: MISMATCH", finding.claim_ref, finding.algebra)
