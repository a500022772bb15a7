from .artifacts import emit_results, load_csv
from .config import ExperimentConfig, MethodConfig, RunConfig, config_from_dict, load_config
from .methods import list_methods, method_class, run_method
from .runner import ExperimentReport, MethodReport, run_experiment
from .timing import PhaseTimer

__all__ = [
    "emit_results", "load_csv",
    "ExperimentConfig", "MethodConfig", "RunConfig", "config_from_dict", "load_config",
    "list_methods", "method_class", "run_method",
    "ExperimentReport", "MethodReport", "run_experiment",
    "PhaseTimer",
]
