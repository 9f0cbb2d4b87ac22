"""Engine configuration."""
import logging
import os
from dataclasses import dataclass, replace

logger = logging.getLogger(__name__)

FUEL_ENV = "POLYREP_FUEL"
DEFAULT_FUEL = 10**6


@dataclass(frozen=True)
class EngineConfig:
    """Settings shared by the rewriting kernel and the verification suites.

    Parameters
    ----------
    fuel : int, default=10**6
        Maximal number of rewrite steps of a single normal-ordering call.
    single_index_probe : int, default=10
        Largest exponent probed for one-index bases (DI, QUINTIC).
    multi_index_probe : int, default=5
        Largest exponent probed per index for two-index bases.
    oracle_probe : int, default=6
        Largest exponent compared against the differential realization.
    workers : int, default=1
        Number of worker threads used by suites.
    """

    fuel: int = DEFAULT_FUEL
    single_index_probe: int = 10
    multi_index_probe: int = 5
    oracle_probe: int = 6
    workers: int = 1

    def __post_init__(self) -> None:
        if self.fuel < 1:
            raise ValueError(f"fuel must be positive, got {self.fuel}")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")

    @classmethod
    def from_env(cls, **overrides) -> "EngineConfig":
        """Build a configuration, reading the fuel budget from the environment.

        Explicit keyword overrides that are not None win over the environment.
        """
        config = cls()
        raw = os.environ.get(FUEL_ENV)
        if raw is not None:
            try:
                config = replace(config, fuel=int(raw))
            except ValueError:
                logger.warning("ignoring non-integer %s=%r", FUEL_ENV, raw)
        overrides = {key: value for key, value in overrides.items() if value is not None}
        return replace(config, **overrides)
