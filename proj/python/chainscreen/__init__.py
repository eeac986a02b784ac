from ._core import (
    ChainscreenError,
    Scenario,
    brute_force_value,
    ceo_scenario,
    civil_servant_scenario,
    complete_info,
    fda_closed_form,
    fda_scenario,
    fosd_compare,
    load_scenario,
    parse_scenario,
    run_cli,
    solve,
)

__all__ = [
    "ChainscreenError",
    "Scenario",
    "brute_force_value",
    "ceo_scenario",
    "civil_servant_scenario",
    "complete_info",
    "fda_closed_form",
    "fda_scenario",
    "fosd_compare",
    "load_scenario",
    "parse_scenario",
    "run_cli",
    "solve",
]
