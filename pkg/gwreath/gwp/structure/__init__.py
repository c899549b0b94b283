from .decompose import decompose, decomposition_tree
from .generation import conjugate_generation_check, generating_set_D, generating_set_H
from .subgroups import (
    FactorTuple,
    Subgroup,
    SubgroupKind,
    SubgroupSpec,
    conj_action,
    members,
    theta,
    theta_inverse,
)
from .wreath import (
    StandaloneWreath,
    Witness,
    antichain_decompose,
    chain_decompose,
    direct_pair_check,
    factor_semidirect,
    semidirect_witness,
    wreath_witness,
)

__all__ = [
    "FactorTuple",
    "StandaloneWreath",
    "Subgroup",
    "SubgroupKind",
    "SubgroupSpec",
    "Witness",
    "antichain_decompose",
    "chain_decompose",
    "conj_action",
    "decompose",
    "decomposition_tree",
    "conjugate_generation_check",
    "direct_pair_check",
    "factor_semidirect",
    "generating_set_D",
    "generating_set_H",
    "members",
    "semidirect_witness",
    "theta",
    "theta_inverse",
    "wreath_witness",
]
