from .builders import (
    BuildStats,
    build_minimal_gens,
    gaschutz_lift,
    pair_generators_for_minimals,
    pyramid_generators,
)
from .certify import certify
from .signs import SignVector, lower_bound_certificate, sign_quotient, sign_rank

__all__ = [
    "BuildStats",
    "SignVector",
    "build_minimal_gens",
    "certify",
    "gaschutz_lift",
    "lower_bound_certificate",
    "pair_generators_for_minimals",
    "pyramid_generators",
    "sign_quotient",
    "sign_rank",
]
