"""Measure and predict data loss under listwise deletion.

The package profiles missingness in tabular data, simulates random variable
subsampling, and evaluates closed-form lower bounds on the probability that
complete-case analysis leaves no rows at all.
"""

__version__ = "0.1.0"

from listwise._backend import BACKEND
from listwise.bounds import (
    BoundQuery,
    GrowthFunction,
    asymptotic_term,
    expected_missing_prop_bound,
    growth_eval,
    is_superlog,
    max_k_for_target,
    p_all_lower_bound,
)
from listwise.dgp import DgpSpec, Iid, PAllEstimate, Sequential, estimate_p_all, generate
from listwise.errors import (
    DomainError,
    EnumerationRefused,
    InputError,
    ListwiseError,
    ParseError,
)
from listwise.groups import GroupPartition, detect_groups, group_p_all_lower_bound
from listwise.ingest import IngestConfig, IngestReport, ingest, read_mask, write_mask
from listwise.matrix import (
    DatasetProfile,
    MissingnessMatrix,
    complete_row_mask,
    complete_row_mask_subset,
    profile,
)
from listwise.subsample import (
    ExactSubsample,
    SubsampleConfig,
    SubsampleRecord,
    SubsampleResult,
    enumerate_exact,
    run_subsample,
)

__all__ = [
    "BACKEND",
    "BoundQuery",
    "DatasetProfile",
    "DgpSpec",
    "DomainError",
    "EnumerationRefused",
    "ExactSubsample",
    "GroupPartition",
    "GrowthFunction",
    "Iid",
    "IngestConfig",
    "IngestReport",
    "InputError",
    "ListwiseError",
    "MissingnessMatrix",
    "PAllEstimate",
    "ParseError",
    "Sequential",
    "SubsampleConfig",
    "SubsampleRecord",
    "SubsampleResult",
    "asymptotic_term",
    "complete_row_mask",
    "complete_row_mask_subset",
    "detect_groups",
    "enumerate_exact",
    "estimate_p_all",
    "expected_missing_prop_bound",
    "generate",
    "group_p_all_lower_bound",
    "growth_eval",
    "ingest",
    "is_superlog",
    "max_k_for_target",
    "p_all_lower_bound",
    "profile",
    "read_mask",
    "run_subsample",
    "write_mask",
]
