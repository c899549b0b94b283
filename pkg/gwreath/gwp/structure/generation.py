from __future__ import annotations

import logging
from typing import List

from ..core import GwpElement, GwpGroup
from ..errors import HypothesisViolation
from .subgroups import d_generators, h_generators
from .wreath import require_minimal

logger = logging.getLogger(__name__)


def generating_set_H(group: GwpGroup) -> List[GwpElement]:
    """Generators of every H_i, concatenated in label order."""
    return [g for i in group.labels for g in h_generators(group, i)]


def generating_set_D(group: GwpGroup) -> List[GwpElement]:
    """Generators of every D_i; needs transitive factors."""
    intransitive = [i for i in group.labels if not group.factors[i].is_transitive()]
    if intransitive:
        raise HypothesisViolation(f"intransitive factor at {', '.join(intransitive)}")
    return [g for i in group.labels for g in d_generators(group, i)]


def conjugate_generation_check(group: GwpGroup, i: str) -> bool:
    """Whether the F̄_J-conjugates of D_i generate H_i (J = I without ``i``)."""
    require_minimal(group, i)
    intransitive = [j for j in group.up[i] if not group.factors[j].is_transitive()]
    if intransitive:
        raise HypothesisViolation(f"intransitive factor above {i} at {', '.join(intransitive)}")
    fbar = group.permutation_group(g for j in group.labels if j != i for g in h_generators(group, j))
    d_image = [group.as_permutation(g) for g in d_generators(group, i)]
    closure = fbar.normal_closure(d_image)
    h_image = group.permutation_group(h_generators(group, i))
    target = group.factors[i].order() ** group.table_sizes[i]
    logger.debug("[generation] i=%s conjugate closure=%d target=%d", i, closure.order(), target)
    return closure.order() == target and all(h_image.contains(g) for g in closure.generators)
