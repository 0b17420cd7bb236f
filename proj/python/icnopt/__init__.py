"""Offline surrogate-assisted evolutionary optimization toolkit."""

from ._icnopt import (
    EnsembleModel,
    IcnConfig,
    IcnModel,
    RbfnModel,
    evaluate,
    lhs,
    problem_names,
    run_offline,
    strong_rosenbrock_terms,
    train_icn,
    train_rbfn,
    train_rbfn_ensemble,
    weak_rosenbrock_terms,
    wilcoxon_signed_rank,
)

__all__ = [
    "EnsembleModel",
    "IcnConfig",
    "IcnModel",
    "RbfnModel",
    "evaluate",
    "lhs",
    "problem_names",
    "run_offline",
    "strong_rosenbrock_terms",
    "train_icn",
    "train_rbfn",
    "train_rbfn_ensemble",
    "weak_rosenbrock_terms",
    "wilcoxon_signed_rank",
]
