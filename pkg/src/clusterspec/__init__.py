"""Clustering spectra of scale-free hidden-variable and erased configuration model graphs."""
from .errors import AccuracyError, ParameterDomainError, PrecisionWarning, ResourceError
from .graphgen import (
    GenReport,
    Graph,
    expected_degree,
    generate_ecm,
    generate_hidden_variable,
    generate_hidden_variable_naive,
    sample_power_law_degrees,
    validate_graph,
)
from .model import (
    Kernel,
    ModelParams,
    connection_prob,
    derive_params,
    kernel_eval,
    make_rng,
    regime_boundaries,
    sample_hidden,
)
from .spectrum import (
    SpectrumAccumulator,
    SpectrumTable,
    clustering_spectrum,
    degree_ccdf,
    local_clustering,
    log_bin_spectrum,
    triangles_per_vertex,
)

__version__ = "0.1.0"
