from ._core import (
    DomainError,
    NormalMetric,
    Profile,
    boundary_term,
    catalog_ids,
    deficit,
    iso_ratios,
    local_end,
    local_sing,
    mixed_volumes,
    qmeasure_ids,
    scalar_curvature,
)

__all__ = [
    "DomainError",
    "NormalMetric",
    "Profile",
    "boundary_term",
    "catalog_ids",
    "deficit",
    "iso_ratios",
    "local_end",
    "local_sing",
    "mixed_volumes",
    "qmeasure_ids",
    "scalar_curvature",
]
