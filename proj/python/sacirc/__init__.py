from ._sacirc import (  # noqa: F401
    ChartPoint,
    DomainError,
    SacUsageError,
    cyl_eval,
    density,
    distortion,
    eval,
    growth_exponent,
    holonomy_leaf,
    map_names,
    phi,
    preimages,
    psi,
    pullback_zeros,
    series_bandwidths,
    slice,
    tension,
)
