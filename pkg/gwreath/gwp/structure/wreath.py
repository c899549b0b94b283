"""Semidirect and wreath decompositions with executable witnesses.

The wreath product used for cross-validation is built here from scratch:
elements are pairs (base tuple over X, top permutation of Y) where the top
group acts on X through a quotient map Y -> X.  It never calls the product
multiplication of :mod:`gwp.core`.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from random import Random
from typing import Dict, List, Optional, Sequence, Tuple

from ..core import GwpElement, GwpGroup
from ..errors import HypothesisViolation
from ..permgroup import PermGroupHandle, Permutation, equals_group, identity as perm_identity
from ..reports import CheckOutcome, DecompositionNode
from .subgroups import SubgroupKind, SubgroupSpec, h_generators, members

logger = logging.getLogger(__name__)

EXHAUSTIVE_ISO = 1_024

WreathElement = Tuple[Tuple[Permutation, ...], Permutation]


@dataclass
class Witness:
    node: DecompositionNode
    checks: List[CheckOutcome] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)


def _outcome(name: str, lemma: str, ok: bool, detail: str = "", cases: int = 0) -> CheckOutcome:
    return CheckOutcome(name=name, lemma=lemma, status="pass" if ok else "fail", detail=detail, cases=cases)


def factor_name(group: GwpGroup, i: str) -> str:
    factor = group.factors[i]
    if factor.is_symmetric():
        return f"S_{factor.degree}"
    return f"G_{i}<order {factor.order()} on {factor.degree}>"


def require_minimal(group: GwpGroup, i: str) -> None:
    if i not in group.domains:
        raise HypothesisViolation(f"unknown index {i!r}")
    if i not in group.poset.minimal_elements():
        raise HypothesisViolation(f"{i} is not minimal in {group.poset.describe()}")


def complement(group: GwpGroup, i: str) -> Tuple[str, ...]:
    return tuple(j for j in group.labels if j != i)


class StandaloneWreath:
    """G ≀_X T with T a permutation group on Y acting on X through ``quotient``."""

    def __init__(self, base: PermGroupHandle, x_size: int, top: PermGroupHandle, quotient: Sequence[int]) -> None:
        self.base = base
        self.x_size = x_size
        self.top = top
        self.quotient = tuple(quotient)
        section: Dict[int, int] = {}
        for y, x in enumerate(self.quotient):
            section.setdefault(x, y)
        if sorted(section) != list(range(x_size)):
            raise HypothesisViolation("quotient map does not cover X")
        self.section = tuple(section[x] for x in range(x_size))

    def move(self, x: int, t: Permutation) -> int:
        return self.quotient[t.images[self.section[x]]]

    def identity(self) -> WreathElement:
        return (perm_identity(self.base.degree),) * self.x_size, perm_identity(self.top.degree)

    def multiply(self, a: WreathElement, b: WreathElement) -> WreathElement:
        (b1, t1), (b2, t2) = a, b
        base = tuple(b1[x] * b2[self.move(x, t1)] for x in range(self.x_size))
        return base, t1 * t2

    def contains(self, w: WreathElement) -> bool:
        base, top = w
        return len(base) == self.x_size and all(self.base.contains(g) for g in base) and self.top.contains(top)

    def order(self) -> int:
        return self.base.order() ** self.x_size * self.top.order()


def factor_semidirect(group: GwpGroup, i: str, f: GwpElement) -> Tuple[GwpElement, GwpElement]:
    """``f = h · f̄`` with ``h`` in H_i and ``f̄`` in F̄_J, J = I minus a minimal ``i``."""
    require_minimal(group, i)
    slot = group.slot(i)
    ident = perm_identity(group.domains[i])
    tables = list(f.tables)
    tables[slot] = (ident,) * group.table_sizes[i]
    fbar = group._make(tuple(tables))
    h = group.multiply(f, group.invert(fbar))
    return h, fbar


def _sample(group: GwpGroup, rng: Random, count: int, max_enum: int) -> Tuple[List[GwpElement], bool]:
    if group.theoretical_order() <= max_enum:
        return group.elements(limit=max_enum), True
    return [group.random_element(rng) for _ in range(count)], False


def semidirect_witness(
    group: GwpGroup,
    i: str,
    *,
    rng: Optional[Random] = None,
    max_enum: int = 10_000,
    samples: int = 200,
) -> Witness:
    require_minimal(group, i)
    rng = rng or Random(0)
    J = frozenset(complement(group, i))
    h_sub = members(SubgroupSpec(SubgroupKind.H, i=i), group)
    fbar_sub = members(SubgroupSpec(SubgroupKind.DBAR, J=J), group)
    h_order = h_sub.closure_order()
    fbar_order = fbar_sub.closure_order()
    total = group.theoretical_order()
    checks = [
        _outcome(
            "orders", "F = H_i ⋊ F̄_J", h_order * fbar_order == total,
            f"|H_{i}| = {h_order}, |F̄_J| = {fbar_order}, |F| = {total}",
        )
    ]
    population, exhaustive = _sample(group, rng, samples, max_enum)
    meet = [f for f in population if h_sub.contains(f) and fbar_sub.contains(f)]
    checks.append(_outcome(
        "trivial_intersection", "F = H_i ⋊ F̄_J",
        all(f.is_identity() for f in meet),
        "exhaustive" if exhaustive else "sampled", len(population),
    ))
    generators = [g for j in group.labels for g in h_generators(group, j)]
    conjugators = generators + [group.random_element(rng) for _ in range(min(samples, 20))]
    normal = all(h_sub.contains(group.conjugate(h, f)) for h in h_sub.generators for f in conjugators)
    checks.append(_outcome("normality", "H_i normal in F", normal, cases=len(h_sub.generators) * len(conjugators)))
    factored = True
    for f in population:
        h, fbar = factor_semidirect(group, i, f)
        if not (h_sub.contains(h) and fbar_sub.contains(fbar) and group.multiply(h, fbar) == f):
            factored = False
            break
    checks.append(_outcome(
        "factorization", "F = H_i ⋊ F̄_J", factored,
        "exhaustive" if exhaustive else "sampled", len(population),
    ))
    node = DecompositionNode(
        label=f"H_{i} ⋊ F̄[{','.join(sorted(J))}]",
        kind="semidirect",
        order=total,
        children=[
            DecompositionNode(label=f"H_{i} ≅ {factor_name(group, i)}^{group.table_sizes[i]}", kind="direct", order=h_order),
            DecompositionNode(label=f"F̄[{','.join(sorted(J))}]", kind="factor", order=fbar_order),
        ],
    )
    return Witness(node=node, checks=checks)


def direct_pair_check(group: GwpGroup, i: str, j: str) -> CheckOutcome:
    """⟨H_i, H_j⟩ = H_i × H_j for distinct minimal ``i``, ``j``."""
    require_minimal(group, i)
    require_minimal(group, j)
    if i == j:
        raise HypothesisViolation("direct product check needs two distinct minimal elements")
    hi = members(SubgroupSpec(SubgroupKind.H, i=i), group)
    hj = members(SubgroupSpec(SubgroupKind.H, i=j), group)
    commute = all(group.multiply(a, b) == group.multiply(b, a) for a in hi.generators for b in hj.generators)
    joint = group.closure_order(hi.generators + hj.generators)
    ok = commute and joint == hi.closure_order() * hj.closure_order()
    return _outcome("h_direct", "⟨H_i, H_j⟩ = H_i × H_j", ok, f"{i},{j}: |⟨H_i,H_j⟩| = {joint}")


def wreath_witness(
    group: GwpGroup,
    i: str,
    *,
    rng: Optional[Random] = None,
    samples: int = 200,
    exhaustive_limit: int = EXHAUSTIVE_ISO,
) -> Witness:
    """Check F ≅ G_i ≀_{Δ_{A(i)}} F_J through the map f ↦ (f_i, f projected to J)."""
    require_minimal(group, i)
    rng = rng or Random(0)
    J = complement(group, i)
    top_group = group.restrict(J)
    x_tuples = group.up_tuples(i)
    up_positions = [J.index(k) for k in group.up[i]]
    quotient = [group.rank(i, tuple(y[p] for p in up_positions)) for y in top_group.points()]
    top = top_group.permutation_group(
        [g for j in top_group.labels for g in h_generators(top_group, j)]
    )
    wreath = StandaloneWreath(group.factors[i], len(x_tuples), top, quotient)

    def phi(f: GwpElement) -> WreathElement:
        return f.table(i), top_group.as_permutation(group.project_element(f, J))

    total = group.theoretical_order()
    checks = [_outcome("wreath_order", "F ≅ G_i ≀ F_J", wreath.order() == total, f"{wreath.order()} vs {total}")]
    generators = [g for j in group.labels for g in h_generators(group, j)]
    exhaustive = total <= exhaustive_limit
    population = group.elements(limit=exhaustive_limit) if exhaustive else [group.random_element(rng) for _ in range(samples)]
    hom_ok = True
    cases = 0
    for f in population:
        image_f = phi(f)
        partners = generators + ([] if exhaustive else [group.random_element(rng)])
        for g in partners:
            cases += 1
            if phi(group.multiply(f, g)) != wreath.multiply(image_f, phi(g)):
                hom_ok = False
                break
        if not hom_ok:
            break
    checks.append(_outcome("wreath_homomorphism", "F ≅ G_i ≀ F_J", hom_ok, "exhaustive" if exhaustive else "sampled", cases))
    if exhaustive:
        images = {phi(f) for f in population}
        bijective = len(images) == total and all(wreath.contains(w) for w in images)
        checks.append(_outcome("wreath_bijective", "F ≅ G_i ≀ F_J", bijective, f"{len(images)} distinct images"))
    else:
        valid = all(wreath.contains(phi(f)) for f in population)
        checks.append(_outcome("wreath_image", "F ≅ G_i ≀ F_J", valid, "sampled images land in the wreath product", len(population)))

    notes = []
    minimal = group.poset.minimal_elements()
    if minimal == [i] and J:
        induced = PermGroupHandle(
            max(1, len(x_tuples)),
            [Permutation._trusted(tuple(wreath.move(x, t) for x in range(len(x_tuples)))) for t in top.generators],
        )
        faithful = induced.order() == top.order()
        checks.append(_outcome("faithful_top", "unique minimal element", faithful, f"{induced.order()} vs {top.order()}"))
        notes.append(f"{i} is the unique minimal element: F_J acts faithfully on {factor_name(group, i)}^Δ_A({i})")
    if not group.up[i]:
        notes.append(f"{i} is incomparable to every other index: F ≅ {factor_name(group, i)} × F_J")

    top_label = f"F[{','.join(J)}]" if J else "1"
    if group.up[i]:
        label = f"{factor_name(group, i)} ≀_Δ[{','.join(group.up[i])}] {top_label}"
        kind = "wreath"
    else:
        label = f"{factor_name(group, i)} × {top_label}"
        kind = "direct"
    node = DecompositionNode(
        label=label,
        kind=kind,
        order=total,
        children=[
            DecompositionNode(label=factor_name(group, i), kind="factor", order=group.factors[i].order()),
            DecompositionNode(label=top_label, kind="factor" if J else "trivial", order=top.order()),
        ],
    )
    return Witness(node=node, checks=checks, notes=notes)


def _relabel(group: GwpGroup, order: Sequence[str]) -> List[int]:
    """Index in ``group``'s point order of each point enumerated in ``order``."""
    positions = [order.index(label) for label in group.labels]
    out = []
    for point in itertools.product(*(range(group.domains[label]) for label in order)):
        out.append(group.point_index(tuple(point[p] for p in positions)))
    return out


def _transport(perm: Sequence[int], relabel: Sequence[int]) -> Permutation:
    images = [0] * len(relabel)
    for source, target in enumerate(perm):
        images[relabel[source]] = relabel[target]
    return Permutation._trusted(tuple(images))


def _iterated_wreath(group: GwpGroup, chain: Sequence[str]) -> List[List[int]]:
    """Generators of G_{c0} ≀ (G_{c1} ≀ (...)) on Δ_{c0} × Δ_{c1} × ... as image lists."""
    if not chain:
        return []
    head, rest = chain[0], chain[1:]
    head_size = group.domains[head]
    rest_size = math.prod(group.domains[label] for label in rest)
    gens: List[List[int]] = []
    for y in range(rest_size):
        for s in group.factors[head].generators:
            images = list(range(head_size * rest_size))
            for a in range(head_size):
                images[a * rest_size + y] = s.images[a] * rest_size + y
            gens.append(images)
    for t in _iterated_wreath(group, rest):
        gens.append([a * rest_size + t[y] for a in range(head_size) for y in range(rest_size)])
    return gens


def chain_decompose(group: GwpGroup) -> Witness:
    if not group.poset.is_chain():
        raise HypothesisViolation(f"{group.poset.describe()} is not a chain")
    chain = list(reversed(group.poset.linear_extension()))
    relabel = _relabel(group, chain)
    built = PermGroupHandle(group.delta_size, [_transport(g, relabel) for g in _iterated_wreath(group, chain)])
    image = group.permutation_group(gens for j in group.labels for gens in h_generators(group, j))
    same = equals_group(built, image)
    total = group.theoretical_order()
    checks = [
        _outcome("chain_order", "iterated wreath", built.order() == total, f"{built.order()} vs {total}"),
        _outcome("chain_equal", "iterated wreath", same, "same permutation group on Δ"),
    ]
    node = chain_node(group, chain)
    return Witness(node=node, checks=checks)


def chain_node(group: GwpGroup, chain: Sequence[str]) -> DecompositionNode:
    head = chain[0]
    if len(chain) == 1:
        return DecompositionNode(label=factor_name(group, head), kind="factor", order=group.factors[head].order())
    inner = chain_node(group, chain[1:])
    x_size = math.prod(group.domains[label] for label in chain[1:])
    return DecompositionNode(
        label=f"{factor_name(group, head)} ≀ ({inner.label})",
        kind="wreath",
        order=group.factors[head].order() ** x_size * inner.order,
        children=[
            DecompositionNode(label=factor_name(group, head), kind="factor", order=group.factors[head].order()),
            inner,
        ],
    )


def antichain_decompose(group: GwpGroup) -> Witness:
    if not group.poset.is_antichain():
        raise HypothesisViolation(f"{group.poset.describe()} is not an antichain")
    labels = group.labels
    gens = []
    for pos, label in enumerate(labels):
        for s in group.factors[label].generators:
            images = []
            for point in group.points():
                moved = list(point)
                moved[pos] = s.images[point[pos]]
                images.append(group.point_index(tuple(moved)))
            gens.append(Permutation._trusted(tuple(images)))
    built = PermGroupHandle(group.delta_size, gens)
    image = group.permutation_group(g for j in labels for g in h_generators(group, j))
    total = group.theoretical_order()
    checks = [
        _outcome("product_order", "direct product", built.order() == total, f"{built.order()} vs {total}"),
        _outcome("product_equal", "direct product", equals_group(built, image), "same permutation group on Δ"),
    ]
    children = [
        DecompositionNode(label=factor_name(group, label), kind="factor", order=group.factors[label].order())
        for label in labels
    ]
    label = " × ".join(child.label for child in children) or "1"
    node = DecompositionNode(label=label, kind="direct" if len(children) > 1 else "factor", order=total, children=children if len(children) > 1 else [])
    return Witness(node=node, checks=checks)
