"""Mean-residual-life ageing classes: classification, moment bounds, MRL inversion."""

from ._agewise import (
    AgewiseError,
    BoundEntry,
    BoundReport,
    ClassVerdict,
    HypothesisViolation,
    InvalidArgument,
    LifeDistribution,
    MrlShapeVerdict,
    NoSignChange,
    NonConvergence,
    ParseError,
    SupportExceeded,
    ValidationError,
    __version__,
    catalog,
    catalog_names,
    check_phi_inequality,
    classify_crossing,
    classify_mrl_shape,
    deficiency,
    example_mrl_spec,
    exponential,
    from_mrl,
    gamma_fn,
    mean_of,
    moment,
    mrl_of,
    nbue_moment_bound,
    nbue_moment_check,
    nwbue_bounds,
    parse_spec,
    reproduce,
    resolve_idmrl,
    run_convergence,
    tail_bound_check,
    validate_mrl,
    weibull,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
