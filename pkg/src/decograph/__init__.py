"""Estimation of finitely decorated graphons from a single network."""

from .decorations import (
    AsymmetricLayer,
    BivariateBernoulliParams,
    DecoratedGraph,
    DecorationSpace,
    DimensionMismatch,
    NonOneHotRow,
    NotAPowerOfTwoSpace,
    NotASimplexPoint,
    OneHotTensor,
    bernoulli2_reparam,
    binary_label_space,
    decode_one_hot,
    decorated_to_layers,
    encode_one_hot,
    multiplex_to_decorated,
)
from .estimator import (
    Assignment,
    EmptyShape,
    Fit,
    FitConfig,
    GridEmpty,
    KTooLarge,
    MergePath,
    PathEntry,
    ShapeParams,
    block_means,
    canonical_node_order,
    estimate_function,
    fit,
    full_block_shape_map,
    greedy_swaps,
    merge_path,
    objective,
    select_k,
    select_s_bic,
    spectral_init,
)
from .experiments import (
    ExperimentConfig,
    fit_dataset,
    fit_to_json_dict,
    run_rate_study,
    write_sample,
)
from .graphons import (
    GraphonSpec,
    OutOfDomain,
    SampleResult,
    SsmParams,
    custom_spec,
    eval_graphon,
    eval_many,
    sample_graph,
    spec_from_json_dict,
    spec_to_json_dict,
    ssm_spec,
    theta_matrix,
    w1_spec,
    w2_spec,
    w3_spec,
)
from .heatmap import emit_heatmap
from .ingest import (
    EmptyAfterFilter,
    IngestionConfig,
    MultiplexDataset,
    ParseError,
    ingest_multiplex,
)
from .metrics import (
    CorrelationSurface,
    EvaluationReport,
    NotBivariateCoding,
    ShapeMismatch,
    XiMismatch,
    correlation_surface,
    mise_oracle,
    mse,
    rate_reference,
    theta_hat_matrix,
)
from .seeds import derive_seed, splitmix64

__version__ = "0.1.0"
