from .config import ScenarioConfig, load_config, parse_config
from .experiment import (ExperimentResult, Scenario, SummaryRow, build_scenario, run_experiment,
                         packets_csv, summary_csv, sweep)

__all__ = ["ExperimentResult", "Scenario", "ScenarioConfig", "SummaryRow", "build_scenario",
           "load_config", "packets_csv", "parse_config", "run_experiment", "summary_csv", "sweep"]
