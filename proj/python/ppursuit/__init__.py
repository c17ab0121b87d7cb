"""Projection pursuit dimension reduction.

Thin wrapper over the compiled core: preprocessing (zero filtering, quantile
normalization), projection indexes (logcosh, cumulant, variance, mean), the
sphere-constrained optimizer, PCA, random-projection diagnostics, and
Marcenko-Pastur spectra. Matrices are lists of rows (lists of floats);
library errors surface as ValueError.
"""

from ._core import (
    __version__,
    covariance,
    cumulant_negentropy,
    df_projection_experiment,
    differential_entropy,
    discrete_entropy,
    embed,
    esd_mp_distance,
    hermite,
    hermite_orthogonality,
    jl_distortion,
    kl_divergence,
    ks_to_standard_normal,
    lda_direction,
    logcosh_gaussian_baseline,
    logcosh_negentropy,
    mp_density,
    mp_mass_in,
    mp_total_mass,
    mutual_information,
    pca,
    pursue,
    quantile_normalize,
    random_projection,
    standardize,
    two_clusters,
    whiten,
    wishart_esd,
    zero_filter_columns,
)

__all__ = [
    "__version__",
    "covariance",
    "cumulant_negentropy",
    "df_projection_experiment",
    "differential_entropy",
    "discrete_entropy",
    "embed",
    "esd_mp_distance",
    "hermite",
    "hermite_orthogonality",
    "jl_distortion",
    "kl_divergence",
    "ks_to_standard_normal",
    "lda_direction",
    "logcosh_gaussian_baseline",
    "logcosh_negentropy",
    "mp_density",
    "mp_mass_in",
    "mp_total_mass",
    "mutual_information",
    "pca",
    "pursue",
    "quantile_normalize",
    "random_projection",
    "standardize",
    "two_clusters",
    "whiten",
    "wishart_esd",
    "zero_filter_columns",
]
