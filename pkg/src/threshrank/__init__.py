"""Ranking items from coarse binary ratings under a latent-threshold model."""

from .binseq import (
    BinSequence,
    bin_size_stats,
    brute_force_msf,
    ground_truth_partition,
    msf,
    msf_of_bin,
    refine,
)
from .distributions import (
    UNIFORM,
    BetaParams,
    beta_cdf,
    beta_pdf,
    log_beta_fn,
    quadrature_unit,
    sample_beta,
)
from .harness import (
    CSV_HEADER,
    MISMATCH_FX,
    MISMATCH_FY,
    ExperimentConfig,
    OracleBudget,
    SweepRow,
    run_oracle_checks,
    run_sweep,
    run_tail_experiment,
    write_csv,
)
from .model import (
    Instance,
    QueryLedger,
    instance_from_text,
    instance_to_text,
    rate,
    rescale_instance,
    sample_instance,
    sample_users_to_total_order,
)
from .tbs import isolate, run_tbs, search, split
from .theory import (
    DivergenceUndefinedError,
    RegimeSpec,
    divergence_beta_closed_form,
    divergence_quadrature,
    msf_from_bin_stats,
    predict_eb2,
    predict_msf_linear,
    predict_msf_power,
    predict_p_odd,
)

__all__ = [
    "BetaParams",
    "BinSequence",
    "CSV_HEADER",
    "DivergenceUndefinedError",
    "ExperimentConfig",
    "Instance",
    "MISMATCH_FX",
    "MISMATCH_FY",
    "OracleBudget",
    "QueryLedger",
    "RegimeSpec",
    "SweepRow",
    "UNIFORM",
    "beta_cdf",
    "beta_pdf",
    "bin_size_stats",
    "brute_force_msf",
    "divergence_beta_closed_form",
    "divergence_quadrature",
    "ground_truth_partition",
    "instance_from_text",
    "instance_to_text",
    "isolate",
    "log_beta_fn",
    "msf",
    "msf_from_bin_stats",
    "msf_of_bin",
    "predict_eb2",
    "predict_msf_linear",
    "predict_msf_power",
    "predict_p_odd",
    "quadrature_unit",
    "rate",
    "refine",
    "rescale_instance",
    "run_oracle_checks",
    "run_sweep",
    "run_tail_experiment",
    "run_tbs",
    "sample_beta",
    "sample_instance",
    "sample_users_to_total_order",
    "search",
    "split",
    "write_csv",
]
