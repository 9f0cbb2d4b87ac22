"""Built-in presentations and the registry of claims about them."""
from __future__ import annotations

import logging
import threading
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Mapping

from polyrep.base.differential import Convention, DiffOp, Realization
from polyrep.base.module import RepresentationModule, StateIndex
from polyrep.base.presentation import Presentation
from polyrep.base.scalar import Number
from polyrep.errors import UnknownClaim
from polyrep.parser.alg_file import load_presentation
from polyrep.systems import darboux_i, darboux_ii, darboux_iii, darboux_iv, quintic
from polyrep.systems.claims import Claim, Verdict, judge, realization_for
from polyrep.utils.config import EngineConfig

logger = logging.getLogger(__name__)

BUILTIN_NAMES = ("DI", "DI_REALIZED", "DII", "DIII", "DIV", "QUINTIC", "QUINTIC_REALIZED")

CLAIMS: dict[str, Claim] = {
    claim.id: claim
    for table in (
        darboux_i.CLAIMS,
        darboux_ii.CLAIMS,
        darboux_iii.CLAIMS,
        darboux_iv.CLAIMS,
        quintic.CLAIMS,
    )
    for claim in table
}

REALIZATIONS: dict[str, tuple[Callable[[Presentation, str], Realization], Convention]] = {
    "DI": (darboux_i.realization, "momentum"),
    "DI_REALIZED": (darboux_i.realization, "momentum"),
    "QUINTIC": (quintic.realization, "display"),
    "QUINTIC_REALIZED": (quintic.realization, "display"),
}


def builtin(name: str, config: EngineConfig | None = None) -> Presentation:
    """Load a built-in presentation.

    Parameters
    ----------
    name : str
        One of :data:`BUILTIN_NAMES`.
    config : EngineConfig, optional
        Rewriting configuration of the algebra.

    Returns
    -------
    Presentation
        The validated presentation; repeated calls with equal arguments return
        the same object.
    """
    return _builtin(name, config)


@lru_cache(maxsize=None)
def _builtin(name: str, config: EngineConfig | None) -> Presentation:
    if name not in BUILTIN_NAMES:
        raise ValueError(f"Invalid built-in presentation {name}")
    text = (resources.files("polyrep.systems") / "data" / f"{name}.alg").read_text(
        encoding="utf-8"
    )
    return load_presentation(text, config)


def resolve(source: str | Path, config: EngineConfig | None = None) -> Presentation:
    """A built-in name, or a path to a ``.alg`` file."""
    if isinstance(source, str) and source in BUILTIN_NAMES:
        return builtin(source, config)
    return load_presentation(Path(source), config)


def get_claim(claim_id: str) -> Claim:
    try:
        return CLAIMS[claim_id]
    except KeyError:
        raise UnknownClaim(claim_id) from None


def claims_for(system: str) -> list[Claim]:
    """Registered claims about one presentation, in registration order."""
    return [claim for claim in CLAIMS.values() if claim.system == system]


_modules: dict[tuple, tuple[Presentation, RepresentationModule]] = {}
_modules_lock = threading.Lock()


def module_for(
    presentation: Presentation,
    bindings: Iterable[tuple[str, Number]] | Mapping[str, Number] = (),
    config: EngineConfig | None = None,
) -> RepresentationModule:
    """Shared module of a presentation under extra bindings."""
    if isinstance(bindings, Mapping):
        bindings = bindings.items()
    bindings = tuple(sorted(bindings))
    key = (id(presentation), bindings, config)
    with _modules_lock:
        cached = _modules.get(key)
        if cached is not None and cached[0] is presentation:
            return cached[1]
        module = RepresentationModule(presentation, dict(bindings), config)
        _modules[key] = (presentation, module)
        return module


def verify_claim(
    presentation: Presentation,
    claim_id: str,
    indices: Iterable[StateIndex] | None = None,
    config: EngineConfig | None = None,
) -> list[Verdict]:
    """Judge a registered claim on a presentation.

    Parameters
    ----------
    presentation : Presentation
        Presentation to evaluate on; a claim about another system is not
        applicable.
    claim_id : str
        Key of :data:`CLAIMS`.
    indices : iterable of tuple of int, optional
        Module indices, default the claim's own.
    config : EngineConfig, optional
        Rewriting configuration of the module.

    Returns
    -------
    list of Verdict
        One verdict per index, in the given order.

    Raises
    ------
    UnknownClaim
        If ``claim_id`` is not registered.
    """
    claim = get_claim(claim_id)
    indices = [tuple(idx) for idx in (claim.indices if indices is None else indices)]
    if presentation.name != claim.system:
        detail = f"{claim_id} is about {claim.system}, not {presentation.name}"
        return [
            Verdict(claim.id, presentation.name, idx, "NOT_APPLICABLE", difference=detail)
            for idx in indices
        ]
    module = module_for(presentation, claim.bindings, config)
    verdicts = [judge(claim, module, idx) for idx in indices]
    logger.debug("%s judged at %d indices", claim_id, len(verdicts))
    return verdicts


def realization(
    presentation: Presentation | str, convention: Convention | None = None
) -> Realization:
    """Differential realization of a presentation that has one."""
    if isinstance(presentation, str):
        presentation = builtin(presentation)
    if presentation.name not in REALIZATIONS:
        raise ValueError(f"Invalid realized system {presentation.name}")
    builder, default = REALIZATIONS[presentation.name]
    return realization_for(presentation, convention or default, builder)


def realize(
    system: Presentation | str, generator: str, convention: Convention | None = None
) -> DiffOp:
    """The differential operator of one generator (or of the Hamiltonian)."""
    return realization(system, convention).operator(generator)
