from .findings import Check, Finding, Report
from .suites import SUITES, SuiteRunner, run_suites

__all__ = ["Check", "Finding", "Report", "SUITES", "SuiteRunner", "run_suites"]
