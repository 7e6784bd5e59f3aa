from .rng import RngKey, seed, fold_in, split
from .distributions import (
    Distribution,
    Normal,
    HalfNormal,
    Uniform,
    Categorical,
    DiagMvNormal,
    MixtureSameFamily,
)
from .prior import PriorSpec, ThetaBatch, prior_sample, prior_log_prob
from .data import (
    Dataset,
    stack_data,
    split_train_val,
    drop_nonfinite,
    dataset_to_csv,
    dataset_from_csv,
)

__all__ = [
    "RngKey",
    "seed",
    "fold_in",
    "split",
    "Distribution",
    "Normal",
    "HalfNormal",
    "Uniform",
    "Categorical",
    "DiagMvNormal",
    "MixtureSameFamily",
    "PriorSpec",
    "ThetaBatch",
    "prior_sample",
    "prior_log_prob",
    "Dataset",
    "stack_data",
    "split_train_val",
    "drop_nonfinite",
    "dataset_to_csv",
    "dataset_from_csv",
]
