"""r-round adaptive stochastic submodular cover workbench."""

from ._core import (
    CapacityError,
    Instance,
    InvariantError,
    UsageError,
    best_nonadaptive,
    expected_coverage,
    gap,
    gen_edifice_hard,
    gen_random_setcover,
    gen_singleton_gap,
    load_instance,
    loads_instance,
    lp_solve,
    oracle_expected_cost,
    run,
    save_instance,
    stats_csv_header,
    verify_instance,
)

__all__ = [
    "CapacityError",
    "Instance",
    "InvariantError",
    "UsageError",
    "best_nonadaptive",
    "expected_coverage",
    "gap",
    "gen_edifice_hard",
    "gen_random_setcover",
    "gen_singleton_gap",
    "load_instance",
    "loads_instance",
    "lp_solve",
    "oracle_expected_cost",
    "run",
    "save_instance",
    "stats_csv_header",
    "verify_instance",
]

__version__ = "0.1.0"
