"""Exact free-Boolean noncommutative probability.

Interval-noncrossing partition lattices, their Möbius functions, free-Boolean
cumulants, mixed-moment algorithms, and a truncated reduced free product
operator model used as ground truth.
"""

from .cumulants import (
    CumulantTable,
    MissingMomentError,
    MomentSpec,
    PairDistribution,
    check_combinatorial_independence,
    check_moment_conditions,
    clt_cumulant_scaling,
    convolve_distributions,
    evaluate_moment_recursive,
    kappa,
    moments_from_cumulants,
    phi_pi,
    predicted_moment_star,
)
from .fock import clt_moment_oracle, fock_clt_family
from .inc import (
    IncFactorization,
    NotIncError,
    enumerate_inc,
    factorize,
    interval_below,
    is_inc,
    join,
    meet,
    unfactorize,
)
from .incidence import (
    FiniteLattice,
    IncidenceFunction,
    convolve,
    delta,
    moebius_block_product,
    moebius_direct,
    moebius_inc,
    zeta,
)
from .operators import (
    DepthError,
    ModelOperator,
    OperatorModel,
    PointedSpace,
    ReducedProductSpace,
    build_reduced_product,
    lambda_,
    make_family,
    projection,
    rho,
    vacuum_moment,
)
from .partitions import (
    ColorMap,
    Letter,
    Partition,
    SizeLimitError,
    Word,
    enumerate_partitions,
    inner_blocks,
    is_interval,
    is_noncrossing,
    kernel,
    leq,
    one,
    restrict,
    zero,
)
from .scalars import GaussianRational

__version__ = "0.1.0"
