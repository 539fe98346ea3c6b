from ._bispan import (
    biset_basis_size,
    canonical_name,
    compose,
    default_pool,
    group_by_name,
    groupoid,
    normalize,
    run_suite,
    span_basis_size,
    suite_names,
    yoshida_rank,
)

__all__ = [
    "biset_basis_size",
    "canonical_name",
    "compose",
    "default_pool",
    "group_by_name",
    "groupoid",
    "normalize",
    "run_suite",
    "span_basis_size",
    "suite_names",
    "yoshida_rank",
]
