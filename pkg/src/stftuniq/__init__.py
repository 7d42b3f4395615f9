"""Sampling sets, growth analysis, and phase-retrieval checks for transforms
against windows with super-exponentially decaying Fourier transforms."""

from .errors import (
    DegenerateFitError,
    EvaluationOverflowError,
    InsufficientDataError,
    InvalidParameterError,
    QuadratureConvergenceError,
    ZeroAtOriginError,
    ZeroNormError,
)
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig
from .windows import (
    AmbiguityScanReport,
    DecayReport,
    WindowFamily,
    WindowModel,
    fourier_window_eval,
    make_generalized_gaussian,
    make_modulated_generalized_gaussian,
    time_window_closed_form,
    time_window_eval,
    time_window_values,
    verify_decay,
    window_ambiguity_scan,
)
from .entire import (
    CanonicalProduct,
    GrowthEstimate,
    StripGrowthFit,
    TaylorSeries,
    build_counterexample_product,
    canonical_product_eval,
    canonical_product_log_magnitudes,
    counterexample_eval,
    counterexample_growth_coefficient,
    counterexample_log_magnitudes,
    estimate_order,
    estimate_type,
    jensen_integral,
    moment_integral,
    predicted_growth,
    strip_growth_fit,
    taylor_coefficients,
    weierstrass_factor,
    zero_count_bound,
)
from .sampling import (
    SamplingSet,
    TauBounds,
    ThresholdReport,
    Verdict,
    classify_sequence,
    density_index,
    generate_sampling_set,
    max_tau_bounds,
    nonuniqueness_threshold,
    uniqueness_threshold,
)
from .stft import (
    ClosedFormSignal,
    DiscriminationReport,
    DiscriminationVerdict,
    GridSignal,
    Signal,
    SignalFamily,
    SignalGrid,
    SpectrogramSamples,
    chirp_signal,
    discriminate,
    extend_stft,
    gaussian_signal,
    global_phase_residual,
    grid_signal,
    gs_reconstruct,
    hermite_signal,
    moyal_energy_check,
    resample_bandlimited,
    spectrogram_on_set,
    stft_eval,
    window_l2_norm,
)
from .cli import parse_sequence_expr, parse_signal_spec

__version__ = "0.1.0"

__all__ = [
    "AmbiguityScanReport",
    "CanonicalProduct",
    "ClosedFormSignal",
    "DEFAULT_QUADRATURE",
    "DecayReport",
    "DegenerateFitError",
    "DiscriminationReport",
    "DiscriminationVerdict",
    "EvaluationOverflowError",
    "GridSignal",
    "GrowthEstimate",
    "InsufficientDataError",
    "InvalidParameterError",
    "QuadratureConfig",
    "QuadratureConvergenceError",
    "SamplingSet",
    "Signal",
    "SignalFamily",
    "SignalGrid",
    "SpectrogramSamples",
    "StripGrowthFit",
    "TauBounds",
    "TaylorSeries",
    "ThresholdReport",
    "Verdict",
    "WindowFamily",
    "WindowModel",
    "ZeroAtOriginError",
    "ZeroNormError",
    "build_counterexample_product",
    "canonical_product_eval",
    "canonical_product_log_magnitudes",
    "chirp_signal",
    "classify_sequence",
    "counterexample_eval",
    "counterexample_growth_coefficient",
    "counterexample_log_magnitudes",
    "density_index",
    "discriminate",
    "estimate_order",
    "estimate_type",
    "extend_stft",
    "fourier_window_eval",
    "gaussian_signal",
    "generate_sampling_set",
    "global_phase_residual",
    "grid_signal",
    "gs_reconstruct",
    "hermite_signal",
    "jensen_integral",
    "make_generalized_gaussian",
    "make_modulated_generalized_gaussian",
    "max_tau_bounds",
    "moment_integral",
    "moyal_energy_check",
    "nonuniqueness_threshold",
    "parse_sequence_expr",
    "parse_signal_spec",
    "predicted_growth",
    "resample_bandlimited",
    "spectrogram_on_set",
    "stft_eval",
    "strip_growth_fit",
    "taylor_coefficients",
    "time_window_closed_form",
    "time_window_eval",
    "time_window_values",
    "uniqueness_threshold",
    "verify_decay",
    "weierstrass_factor",
    "window_ambiguity_scan",
    "window_l2_norm",
    "zero_count_bound",
]
