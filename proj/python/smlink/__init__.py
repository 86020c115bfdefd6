"""Link-level analysis of SSK / TOSD-SSK space-modulation MIMO systems.

Closed-form average bit error probabilities under pilot-based channel
estimation (quadratic-form characteristic functions inverted by Gil-Pelaez
quadrature), Monte Carlo mismatched-ML detection for SSK, TOSD-SSK, QAM and
Alamouti baselines, and the time-orthogonal shaping-filter bandwidth
analysis.
"""

from ._smlink import (
    ConfigError,
    QuadratureError,
    ThresholdRangeError,
    abep,
    bandwidth,
    bank_coefficients,
    estimate_ber,
    hermite_pulse_samples,
    pep_conditional,
    philox_raw,
    run_sweep_csv,
    snr_threshold_abep,
    ssk_cf_params,
)

__all__ = [
    "ConfigError",
    "QuadratureError",
    "ThresholdRangeError",
    "abep",
    "bandwidth",
    "bank_coefficients",
    "estimate_ber",
    "hermite_pulse_samples",
    "pep_conditional",
    "philox_raw",
    "run_sweep_csv",
    "snr_threshold_abep",
    "ssk_cf_params",
]
