"""chernoff-lab: how fast do composed shift-measure steps reach a flow?

The package builds n-fold compositions of simple one-step approximations
(finite shift measures), compares them in sup norm against the exact
transport and heat flows, and extracts empirical convergence orders by
log-log regression.  See the README for the experiment catalog.
"""
from .functions import (
    EXP_ABS,
    SIN,
    TABULATED,
    Grid,
    InitialCondition,
    eval_initial,
    sup_norm_diff,
)
from .measures import (
    DEFAULT_ATOM_CAP,
    AtomBudgetError,
    ShiftMeasure,
    apply_measure,
    convolve_measures,
    measure_power,
)
from .transport import (
    PowerLawScheme,
    SlowScheme,
    transport_chernoff_measure,
    transport_composed_measure,
    transport_exact,
    transport_power_composed,
    transport_sin_error_exact,
    transport_sin_error_slow,
    transport_slow_composed,
)
from .heat import (
    HEAT_SCHEME_KINDS,
    ExactCoefficientTable,
    HeatParams,
    erfc,
    heat_binomial_coefficients,
    heat_chernoff_measure,
    heat_exact_expabs,
    heat_exact_quadrature,
    heat_exact_sin,
    heat_kernel,
    heat_sin_composed_closed_form,
    heat_sin_first_order_constant,
    heat_sin_multiplier,
)
from .analysis import (
    HEAT,
    TRANSPORT,
    BoundProbe,
    ErrorRecord,
    InsufficientDataError,
    LeadingCoefficient,
    Problem,
    RegressionFit,
    composed_on_grid,
    conjecture_bound_probe,
    error_curve,
    exact_on_grid,
    geometric_degrees,
    leading_coefficient,
    loglog_fit,
)
from .experiments import (
    CSV_HEADER,
    ConfigError,
    ExperimentConfig,
    RunReport,
    list_presets,
    parse_config,
    preset_text,
    read_error_csv,
    report_to_dict,
    run_experiment,
    write_error_csv,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # functions
    "SIN", "EXP_ABS", "TABULATED", "InitialCondition", "Grid",
    "eval_initial", "sup_norm_diff",
    # measures
    "ShiftMeasure", "AtomBudgetError", "DEFAULT_ATOM_CAP",
    "convolve_measures", "measure_power", "apply_measure",
    # transport
    "PowerLawScheme", "SlowScheme", "transport_exact",
    "transport_chernoff_measure", "transport_composed_measure",
    "transport_power_composed", "transport_slow_composed",
    "transport_sin_error_exact", "transport_sin_error_slow",
    # heat
    "HEAT_SCHEME_KINDS", "HeatParams", "ExactCoefficientTable", "erfc",
    "heat_kernel", "heat_exact_sin", "heat_exact_expabs",
    "heat_exact_quadrature", "heat_chernoff_measure",
    "heat_binomial_coefficients", "heat_sin_multiplier",
    "heat_sin_composed_closed_form", "heat_sin_first_order_constant",
    # analysis
    "TRANSPORT", "HEAT", "Problem", "ErrorRecord", "RegressionFit",
    "LeadingCoefficient", "BoundProbe", "InsufficientDataError",
    "geometric_degrees", "exact_on_grid", "composed_on_grid", "error_curve",
    "loglog_fit", "leading_coefficient", "conjecture_bound_probe",
    # experiments
    "CSV_HEADER", "ConfigError", "ExperimentConfig", "RunReport",
    "parse_config", "list_presets", "preset_text", "run_experiment",
    "write_error_csv", "read_error_csv", "report_to_dict",
]
