from __future__ import annotations

import logging
from random import Random
from typing import List, Optional

from ..core import GwpGroup
from ..poset import SmallShape, classify_small
from ..reports import DecompositionNode, DecompositionReport
from .wreath import (
    antichain_decompose,
    chain_decompose,
    chain_node,
    complement,
    factor_name,
    semidirect_witness,
    wreath_witness,
)

logger = logging.getLogger(__name__)


def decomposition_tree(group: GwpGroup) -> DecompositionNode:
    """Peel minimal elements off until a chain or an antichain is left."""
    if not group.labels:
        return DecompositionNode(label="1", kind="trivial", order=1)
    if group.poset.is_antichain():
        children = [
            DecompositionNode(label=factor_name(group, i), kind="factor", order=group.factors[i].order())
            for i in group.labels
        ]
        if len(children) == 1:
            return children[0]
        return DecompositionNode(
            label=" × ".join(c.label for c in children), kind="direct", order=group.theoretical_order(), children=children
        )
    if group.poset.is_chain():
        return chain_node(group, list(reversed(group.poset.linear_extension())))
    i = group.poset.minimal_elements()[0]
    top = decomposition_tree(group.restrict(complement(group, i)))
    head = DecompositionNode(label=factor_name(group, i), kind="factor", order=group.factors[i].order())
    if group.up[i]:
        label = f"{head.label} ≀_Δ[{','.join(group.up[i])}] ({top.label})"
        kind = "wreath"
    else:
        label = f"{head.label} × ({top.label})"
        kind = "direct"
    return DecompositionNode(label=label, kind=kind, order=group.theoretical_order(), children=[head, top])


def shape_notes(group: GwpGroup) -> List[str]:
    result = classify_small(group.poset)
    roles = result.witness
    name = {role: factor_name(group, label) for role, label in roles.items()}
    if result.shape is SmallShape.PYRAMID:
        return [f"pyramid: F ≅ ({name['i']} × {name['j']}) ≀_Δ[{roles['k']}] {name['k']}"]
    if result.shape is SmallShape.TRIANGLE:
        return [f"triangle: F ≅ {name['i']} ≀_Δ[{roles['j']},{roles['k']}] ({name['j']} × {name['k']})"]
    if result.shape is SmallShape.WRDI:
        return [f"wrdi: F ≅ {name['j']} × ({name['i']} ≀ {name['k']})"]
    return []


def decompose(
    group: GwpGroup,
    *,
    rng: Optional[Random] = None,
    max_enum: int = 10_000,
    samples: int = 200,
) -> DecompositionReport:
    rng = rng or Random(0)
    shape = classify_small(group.poset).shape
    checks = []
    notes = shape_notes(group)
    if group.labels:
        if group.poset.is_chain():
            checks.extend(chain_decompose(group).checks)
        if group.poset.is_antichain():
            checks.extend(antichain_decompose(group).checks)
        i = group.poset.minimal_elements()[0]
        wreath = wreath_witness(group, i, rng=rng, samples=samples)
        checks.extend(wreath.checks)
        notes.extend(wreath.notes)
        checks.extend(semidirect_witness(group, i, rng=rng, max_enum=max_enum, samples=samples).checks)
    tree = decomposition_tree(group)
    logger.info("[decompose] instance=%s shape=%s checks=%d", group.name, shape.value, len(checks))
    return DecompositionReport(
        instance=group.name or "instance",
        shape=shape.value,
        theoretical_order=group.theoretical_order(),
        tree=tree,
        checks=checks,
        notes=notes,
    )
