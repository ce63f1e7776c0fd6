"""Bayesian model selection among congruence class models for networks.

A congruence class model factors a network distribution through a summary
statistic: all graphs sharing a statistic value are equally likely, so the
likelihood is the statistic's own probability divided by the class size.
This package computes the four supported statistics, counts or estimates
class sizes, evaluates log model evidence for five generative families,
and reports posterior model probabilities.
"""

from .errors import (
    CCMError,
    DegeneratePosteriorError,
    DegeneratePriorError,
    DomainError,
    EmptyNetworkError,
    NonGraphicalSequenceError,
    NumericError,
    OptimizationError,
    OracleRefusalError,
    ParseError,
    SchemaError,
    TypedAttributeMissingError,
)
from .logdomain import LogValue, log_add_exp, log_diff_exp, log_sum_exp
from .graph import (
    Graph,
    NodeType,
    StatisticKind,
    StatisticValue,
    compute_statistic,
    graph_from_json,
    graph_to_json,
    load_graph,
    representative_degree_sequence,
    save_graph,
    statistic_key,
)
from .enumeration import (
    ORACLE_LIMIT_DEFAULT,
    VolumeEstimate,
    VolumeMethod,
    count_degree_sequence_graphs,
    erdos_gallai_check,
    log_binomial,
    log_volume_degree_distribution,
    log_volume_degree_mixing,
    log_volume_degree_sequence,
    log_volume_edges,
    log_volume_type_mixing,
    oracle_class_table,
    oracle_enumerate,
    volume_for_statistic,
)
from .quadrature import QuadratureResult, log_integral_adaptive, log_integral_mode_window
from .evidence import (
    EvidenceMethod,
    EvidenceResult,
    ModelId,
    ModelSpec,
    evidence_for,
    evidence_m1,
    evidence_m2,
    evidence_m3,
    evidence_m4,
    evidence_m5,
    posterior_probabilities,
    realizable_cells,
)
from .priorfit import (
    PriorFitReport,
    fit_beta_density,
    fit_block_beta_densities,
    fit_lambda_normal,
    fit_mvn_degree_logistic,
    fit_prior,
)
from .simulate import (
    BlockMixing,
    DegreeMixingLogistic,
    ErdosRenyi,
    ExponentialDegree,
    Mechanism,
    SimConfig,
    sample_network,
)
from .ingest import (
    DEFAULT_PRIMARY_SPECIALTIES,
    IngestConfig,
    ProviderParseResult,
    ProviderRecord,
    SharedPatientRecord,
    build_state_graph,
    load_ingest_config,
    parse_provider_file,
    parse_shared_patient_file,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # errors
    "CCMError",
    "DomainError",
    "NonGraphicalSequenceError",
    "TypedAttributeMissingError",
    "EmptyNetworkError",
    "DegeneratePriorError",
    "DegeneratePosteriorError",
    "ParseError",
    "SchemaError",
    "NumericError",
    "OptimizationError",
    "OracleRefusalError",
    # log-domain arithmetic
    "LogValue",
    "log_add_exp",
    "log_diff_exp",
    "log_sum_exp",
    # graphs and statistics
    "Graph",
    "NodeType",
    "StatisticKind",
    "StatisticValue",
    "compute_statistic",
    "statistic_key",
    "representative_degree_sequence",
    "graph_to_json",
    "graph_from_json",
    "load_graph",
    "save_graph",
    # class size computation
    "ORACLE_LIMIT_DEFAULT",
    "VolumeEstimate",
    "VolumeMethod",
    "log_binomial",
    "erdos_gallai_check",
    "count_degree_sequence_graphs",
    "log_volume_edges",
    "log_volume_type_mixing",
    "log_volume_degree_sequence",
    "log_volume_degree_distribution",
    "log_volume_degree_mixing",
    "volume_for_statistic",
    "oracle_class_table",
    "oracle_enumerate",
    # quadrature
    "QuadratureResult",
    "log_integral_adaptive",
    "log_integral_mode_window",
    # evidence and selection
    "ModelId",
    "ModelSpec",
    "EvidenceMethod",
    "EvidenceResult",
    "evidence_m1",
    "evidence_m2",
    "evidence_m3",
    "evidence_m4",
    "evidence_m5",
    "evidence_for",
    "realizable_cells",
    "posterior_probabilities",
    # prior fitting
    "PriorFitReport",
    "fit_beta_density",
    "fit_lambda_normal",
    "fit_block_beta_densities",
    "fit_mvn_degree_logistic",
    "fit_prior",
    # simulation
    "ErdosRenyi",
    "ExponentialDegree",
    "BlockMixing",
    "DegreeMixingLogistic",
    "Mechanism",
    "SimConfig",
    "sample_network",
    # ingestion
    "DEFAULT_PRIMARY_SPECIALTIES",
    "IngestConfig",
    "SharedPatientRecord",
    "ProviderRecord",
    "ProviderParseResult",
    "load_ingest_config",
    "parse_shared_patient_file",
    "parse_provider_file",
    "build_state_graph",
]
