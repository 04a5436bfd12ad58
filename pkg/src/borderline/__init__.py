"""Find and describe the boundary between valid and invalid parser inputs.

Step 1 grows a small, maximally spread set of valid inputs by searching a
generator's choice space; step 2 mutates each of those seeds back and forth
across the validity boundary; the analysis compares the resulting valid and
invalid boundary sets against random and reference sets under several string
distances.
"""

__version__ = "0.1.0"

from .analysis import (
    BoundaryVerdict,
    ComparisonReport,
    boundary_verdict,
    compare_sets,
    cross_metric_analysis,
)
from .candidates import Candidate, TestSet
from .config import RunConfig, config_from_dict, load_config
from .distance import (
    DistanceMetric,
    build_metric,
    levenshtein,
    min_dist_to_set,
    set_min_distances,
)
from .errors import (
    BorderlineError,
    CompressorError,
    ConfigError,
    EmptySetError,
    GenerationStall,
    GeneratorValidityError,
    MissingRowError,
    NoSwitchFound,
    OracleError,
    ReplayError,
    SerializationError,
)
from .generators import (
    ChoiceTrace,
    Generator,
    GeneratorOptions,
    NmcsBudget,
    build_generator,
    nmcs_generate,
    nmcs_step1,
)
from .mutation import MutatorSet, build_mutator_set, mutate
from .oracles import build_oracle, random_valid_set, reference_invalid_dates
from .pipeline import RunResult, analyze_run_dir, run_pipeline
from .switchsearch import BoundaryPair, SwitchBudget, property_switch_search, run_step2

__all__ = [
    "__version__",
    "BoundaryPair",
    "BoundaryVerdict",
    "BorderlineError",
    "Candidate",
    "ChoiceTrace",
    "ComparisonReport",
    "CompressorError",
    "ConfigError",
    "DistanceMetric",
    "EmptySetError",
    "GenerationStall",
    "Generator",
    "GeneratorOptions",
    "GeneratorValidityError",
    "MissingRowError",
    "MutatorSet",
    "NmcsBudget",
    "NoSwitchFound",
    "OracleError",
    "ReplayError",
    "RunConfig",
    "RunResult",
    "SerializationError",
    "SwitchBudget",
    "TestSet",
    "analyze_run_dir",
    "boundary_verdict",
    "build_generator",
    "build_metric",
    "build_mutator_set",
    "build_oracle",
    "compare_sets",
    "config_from_dict",
    "cross_metric_analysis",
    "levenshtein",
    "load_config",
    "min_dist_to_set",
    "mutate",
    "nmcs_generate",
    "nmcs_step1",
    "property_switch_search",
    "random_valid_set",
    "reference_invalid_dates",
    "run_pipeline",
    "run_step2",
    "set_min_distances",
]
