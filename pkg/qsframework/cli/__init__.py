from .experiment import IExperiment, ExperimentResult, InvariantCheck, REQUIRED, registry, relative_error
from .config import ExperimentConfig, parse_config, validate, load_config, config_from_dict, output_directory, \
    thread_count, OUTPUT_ENV, THREADS_ENV
from .runner import RunReport, run_experiment, run_directory, seed_hash, write_columns, EXIT_PASSED, \
    EXIT_INVARIANT_FAILED, EXIT_CONFIGURATION
