"""Exact Fourier-side laboratory for time-dependent expanding circle maps.

The package computes, without discretisation error, the operator quantities
that govern central limit behaviour of Birkhoff sums over sequences of maps
x -> a_k * x mod 1: backward-averaged observables, transversality angles,
Var(S_n) by two independent routes, coboundary solvability, and exact-orbit
Monte Carlo checks of Gaussian convergence.
"""

from .analysis import (
    AngleRecord,
    DecayReport,
    ThresholdCert,
    VarianceReport,
    accumulated_transversality,
    angle_profile,
    block_shadowing_check,
    example1_threshold,
    neumann_sum,
    separation_bound_check,
    u_at,
    u_sequence,
    variance_covariance,
    variance_covariance_curve,
    variance_martingale,
    variance_martingale_curve,
    variance_report,
    verify_decay,
)
from .coboundary import CoboundaryResult, solve, verify
from .montecarlo import (
    DyadicPoint,
    MCReport,
    birkhoff_samples,
    ks_statistic,
    orbit_birkhoff,
    required_bits,
    sample_birkhoff,
)
from .sequences import (
    Blocks,
    Constant,
    Explicit,
    Periodic,
    SequenceSpec,
    Triples,
    block_index,
    generate,
    log2_multiplier,
)
from .trigpoly import (
    C1Norm,
    TrigPoly,
    c1_norm,
    cosine,
    evaluate,
    koopman,
    l2_inner,
    linear_combine,
    make_trigpoly,
    project_measurable,
    transfer,
)

__version__ = "0.1.0"
