"""Inverse Abel transform from Legendre coefficients read off a single FFT."""
from .abel import PAIRS, AbelPair, forward_abel, forward_basis, forward_expansion, get_pair, pair_eval
from .errors import AliasingError, DomainError
from .legendre import LegendreExpansion, eval_expansion, project, shifted_legendre, shifted_legendre_basis
from .noise import (
    NoiseSpec,
    add_noise,
    check_noise_propagation,
    l2_error,
    l2mu_norm,
    l2mu_norm_samples,
    normalized_perturbation,
    pointwise_error_curve,
    snr_db,
    sup_error,
)
from .regularize import (
    InversionReport,
    a_priori_n,
    discrepancy,
    discrepancy_curve,
    invert,
    select_n_min_discrepancy,
    select_n_morozov,
    truncate,
)
from .spectral import (
    AuxSpectrum,
    EtaGrid,
    SampleSet,
    coeffs_from_spectrum,
    eta_from_samples,
    fourier_coeffs,
    fourier_coeffs_nonuniform,
    legendre_coeffs,
    sample_function,
    uniform_t_grid,
)

__version__ = "0.1.0"
