from .sequences import BracketSequences, dii_lowering_coefficient, quintic_lowering_coefficient
from .claims import Claim, Verdict, judge
from .catalog import (
    BUILTIN_NAMES,
    CLAIMS,
    builtin,
    claims_for,
    get_claim,
    module_for,
    realization,
    realize,
    resolve,
    verify_claim,
)

__all__ = [
    "BracketSequences",
    "dii_lowering_coefficient",
    "quintic_lowering_coefficient",
    "Claim",
    "Verdict",
    "judge",
    "BUILTIN_NAMES",
    "CLAIMS",
    "builtin",
    "claims_for",
    "get_claim",
    "module_for",
    "realization",
    "realize",
    "resolve",
    "verify_claim",
]
