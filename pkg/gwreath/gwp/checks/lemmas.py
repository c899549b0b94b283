"""Property suites run against one product instance.

Each suite returns ``(ok, detail, cases)``.  Suites enumerate when the
group is small enough and fall back to seeded random samples otherwise;
``detail`` says which.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from random import Random
from typing import List, Optional, Tuple

from ..core import GwpElement, GwpGroup
from ..mingen.certify import unit_vectors_hit
from ..mingen.signs import rank_of_vectors, sign_quotient, sign_rank
from ..settings import DeskSettings
from ..structure import (
    FactorTuple,
    SubgroupKind,
    SubgroupSpec,
    antichain_decompose,
    chain_decompose,
    conj_action,
    conjugate_generation_check,
    direct_pair_check,
    generating_set_D,
    generating_set_H,
    members,
    semidirect_witness,
    theta,
    theta_inverse,
    wreath_witness,
)
from ..structure.subgroups import subgroup_specs

logger = logging.getLogger(__name__)

AXIOM_EXHAUSTIVE = 64
LEMMA_EXHAUSTIVE = 256
FAITHFUL_EXHAUSTIVE = 1_024
RANK_CANDIDATES = 1_000
SMALL_SAMPLE = 40

SuiteResult = Tuple[bool, str, int]


@dataclass
class CheckContext:
    settings: DeskSettings = field(default_factory=DeskSettings)
    rng: Random = field(default_factory=lambda: Random(0))

    @classmethod
    def from_settings(cls, settings: DeskSettings, seed: Optional[int] = None) -> "CheckContext":
        return cls(settings=settings, rng=Random(settings.seed if seed is None else seed))


def population(
    group: GwpGroup, ctx: CheckContext, limit: int, count: Optional[int] = None
) -> Tuple[List[GwpElement], bool]:
    if group.theoretical_order() <= limit:
        return group.elements(limit=limit), True
    return [group.random_element(ctx.rng) for _ in range(count or ctx.settings.sample_size)], False


def _mode(exhaustive: bool) -> str:
    return "exhaustive" if exhaustive else "sampled"


def _without(group: GwpGroup, f: GwpElement, labels) -> GwpElement:
    """``f`` with identity tables on ``labels``."""
    tables = list(f.tables)
    blank = group.identity().tables
    for j in labels:
        tables[group.slot(j)] = blank[group.slot(j)]
    return group._make(tuple(tables))


def _random_in_h(group: GwpGroup, i: str, rng: Random) -> GwpElement:
    factor = group.factors[i]
    entries = tuple(factor.random_element(rng) for _ in range(group.table_sizes[i]))
    return theta_inverse(group, FactorTuple(i, entries))


def _ancestral(group: GwpGroup) -> List[Tuple[str, ...]]:
    subsets = [tuple(a.labels()) for a in group.poset.ancestral_subsets()]
    return sorted((s for s in subsets if s), key=lambda s: (len(s), s))


# -- basic laws ---------------------------------------------------------------


def check_identity(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    z = group.identity()
    fixes = all(group.act(delta, z) == tuple(delta) for delta in group.points())
    elements, exhaustive = population(group, ctx, LEMMA_EXHAUSTIVE)
    neutral = all(group.multiply(z, f) == f and group.multiply(f, z) == f for f in elements)
    projected = all(group.project_element(z, J).is_identity() for J in _ancestral(group))
    return fixes and neutral and projected, _mode(exhaustive), len(elements)


def check_group_axioms(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    if group.theoretical_order() <= AXIOM_EXHAUSTIVE:
        elements = group.elements(limit=AXIOM_EXHAUSTIVE)
        triples = itertools.product(elements, repeat=3)
        singles = elements
        exhaustive = True
    else:
        rng = ctx.rng
        triples = (
            (group.random_element(rng), group.random_element(rng), group.random_element(rng))
            for _ in range(ctx.settings.axiom_samples)
        )
        singles = [group.random_element(rng) for _ in range(ctx.settings.sample_size)]
        exhaustive = False
    z = group.identity()
    cases = 0
    for f, g, h in triples:
        cases += 1
        if group.multiply(group.multiply(f, g), h) != group.multiply(f, group.multiply(g, h)):
            return False, f"associativity fails on case {cases}", cases
    for f in singles:
        cases += 1
        inverse = group.invert(f)
        if group.multiply(f, inverse) != z or group.multiply(inverse, f) != z:
            return False, "inverse law fails", cases
    return True, _mode(exhaustive), cases


def check_action_law(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    points = list(group.points())
    cases = 0
    if group.theoretical_order() <= AXIOM_EXHAUSTIVE:
        elements = group.elements(limit=AXIOM_EXHAUSTIVE)
        for f, h in itertools.product(elements, repeat=2):
            fh = group.multiply(f, h)
            for delta in points:
                cases += 1
                if group.act(delta, fh) != group.act(group.act(delta, f), h):
                    return False, f"act law fails at {delta}", cases
        return True, "exhaustive", cases
    for _ in range(ctx.settings.axiom_samples):
        f, h = group.random_element(ctx.rng), group.random_element(ctx.rng)
        delta = ctx.rng.choice(points)
        cases += 1
        if group.act(delta, group.multiply(f, h)) != group.act(group.act(delta, f), h):
            return False, f"act law fails at {delta}", cases
    return True, "sampled", cases


def check_faithfulness(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    elements, exhaustive = population(group, ctx, FAITHFUL_EXHAUSTIVE)
    images = {group.as_permutation(f) for f in elements}
    if len(images) != len(set(elements)):
        return False, f"{len(set(elements))} elements but {len(images)} images", len(elements)
    for _ in range(ctx.settings.sample_size):
        f, h = group.random_element(ctx.rng), group.random_element(ctx.rng)
        if group.as_permutation(group.multiply(f, h)) != group.as_permutation(f) * group.as_permutation(h):
            return False, "the permutation image is not a homomorphism", len(elements)
    return True, f"{_mode(exhaustive)}; {len(images)} distinct images", len(elements)


# -- projections and kernels --------------------------------------------------


def check_relation_preserve(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    """γ ∼_J δ implies γf ∼_J δf for every ancestral J."""
    elements, exhaustive = population(group, ctx, LEMMA_EXHAUSTIVE, count=SMALL_SAMPLE)
    points = list(group.points())
    cases = 0
    for J in _ancestral(group):
        for f in elements:
            seen = {}
            for delta in points:
                cases += 1
                key = group.project_point(delta, J)
                image = group.project_point(group.act(delta, f), J)
                if seen.setdefault(key, image) != image:
                    return False, f"J={list(J)} at {delta}", cases
    return True, _mode(exhaustive), cases


def check_projection(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    elements, exhaustive = population(group, ctx, LEMMA_EXHAUSTIVE, count=SMALL_SAMPLE)
    points = list(group.points())
    subsets = _ancestral(group)
    cases = 0
    for J in subsets:
        sub = group.restrict(J)
        for f in elements:
            fJ = group.project_element(f, J)
            for delta in points:
                cases += 1
                if sub.act(group.project_point(delta, J), fJ) != group.project_point(group.act(delta, f), J):
                    return False, f"projection to {list(J)} fails at {delta}", cases
            for K in subsets:
                if K == J or not set(K) <= set(J):
                    continue
                fK = sub.project_element(fJ, K)
                inner = sub.restrict(K)
                if fK != group.project_element(f, K):
                    return False, f"projections {list(J)} -> {list(K)} do not compose", cases
                for delta in sub.points():
                    cases += 1
                    if inner.act(sub.project_point(delta, K), fK) != sub.project_point(sub.act(delta, fJ), K):
                        return False, f"nested projection {list(J)} -> {list(K)} fails", cases
        for _ in range(SMALL_SAMPLE):
            f, h = group.random_element(ctx.rng), group.random_element(ctx.rng)
            cases += 1
            product = sub.multiply(group.project_element(f, J), group.project_element(h, J))
            if group.project_element(group.multiply(f, h), J) != product:
                return False, f"projection to {list(J)} is not a homomorphism", cases
    return True, _mode(exhaustive), cases


def check_kernels(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    """The kernel of F_J -> F_K is the set of elements trivial on K."""
    subsets = _ancestral(group)
    cases = 0
    for J in subsets:
        sub = group.restrict(J)
        elements, _ = population(sub, ctx, LEMMA_EXHAUSTIVE, count=SMALL_SAMPLE)
        for K in subsets:
            if not set(K) <= set(J):
                continue
            predicate = group.kernel_of_projection(J, K)
            pool = elements + [_without(sub, f, K) for f in elements[:20]]
            for f in pool:
                cases += 1
                if predicate(f) != sub.project_element(f, K).is_identity():
                    return False, f"kernel of {list(J)} -> {list(K)} mismatch", cases
    return True, f"{len(subsets)} ancestral subsets", cases


def check_order_identity(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    expected = group.theoretical_order()
    if expected <= LEMMA_EXHAUSTIVE:
        images = {group.as_permutation(f) for f in group.elements(limit=LEMMA_EXHAUSTIVE)}
        counted = len(images)
        mode = "distinct images counted"
    else:
        seeds = generating_set_H(group) + [group.random_element(ctx.rng) for _ in range(5)]
        counted = group.closure_order(seeds)
        mode = "stabilizer chain"
    return counted == expected, f"{mode}: {counted}, formula {expected}", 1


def check_transitivity(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    transitive = group.permutation_group(generating_set_H(group)).is_transitive()
    factors = group.is_transitive()
    return transitive == factors, f"F transitive={transitive}, every factor transitive={factors}", 1


# -- subgroups and θ ----------------------------------------------------------


def check_barf_iso(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    cases = 0
    for J in _ancestral(group):
        sub = group.restrict(J)
        fbar = members(SubgroupSpec(SubgroupKind.DBAR, J=frozenset(J)), group)
        projected = [group.project_element(g, J) for g in fbar.generators]
        cases += 1
        if sub.closure_order(projected) != sub.theoretical_order():
            return False, f"F̄_J does not map onto F_J for J={list(J)}", cases
        if fbar.closure_order() != sub.theoretical_order():
            return False, f"|F̄_J| != |F_J| for J={list(J)}", cases
        if any(group.lift(p) != g for p, g in zip(projected, fbar.generators)):
            return False, f"lifting does not invert the projection on F̄_J for J={list(J)}", cases
        for i in J:
            h = members(SubgroupSpec(SubgroupKind.H, i=i), group)
            hJ = members(SubgroupSpec(SubgroupKind.HJ, i=i, J=frozenset(J)), group)
            if [group.project_element(g, J) for g in h.generators] != list(hJ.generators):
                return False, f"H_{i} does not map to H_{i}^J for J={list(J)}", cases
    return True, "F̄_J ≅ F_J on every ancestral J", cases


def check_theta(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    cases = 0
    for i in group.labels:
        factor = group.factors[i]
        width = group.table_sizes[i]
        size = factor.order() ** width
        h_sub = members(SubgroupSpec(SubgroupKind.H, i=i), group)
        exhaustive = size <= LEMMA_EXHAUSTIVE
        if exhaustive:
            tuples = [FactorTuple(i, entries) for entries in itertools.product(factor.elements(), repeat=width)]
        else:
            tuples = [theta(i, _random_in_h(group, i, ctx.rng)) for _ in range(ctx.settings.sample_size)]
        elements = [theta_inverse(group, t) for t in tuples]
        for t, f in zip(tuples, elements):
            cases += 1
            if not h_sub.contains(f) or theta(i, f) != t:
                return False, f"θ_{i} does not invert its preimage map", cases
        if exhaustive and len(set(elements)) != size:
            return False, f"θ_{i} is not bijective", cases
        if exhaustive:
            pairs = itertools.product(elements, repeat=2)
        else:
            pairs = ((ctx.rng.choice(elements), ctx.rng.choice(elements)) for _ in range(ctx.settings.sample_size))
        for f, g in pairs:
            cases += 1
            if theta(i, group.multiply(f, g)) != theta(i, f).compose(theta(i, g)):
                return False, f"θ_{i} is not a homomorphism", cases
    return True, "θ_i bijective homomorphisms", cases


def check_equivariance(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    cases = 0
    for i in group.poset.minimal_elements():
        J = [j for j in group.labels if j != i]
        h_sub = members(SubgroupSpec(SubgroupKind.H, i=i), group)
        pool, _ = population(group, ctx, LEMMA_EXHAUSTIVE, count=SMALL_SAMPLE)
        fbar_pool = [_without(group, f, [i]) for f in pool]
        hs = list(h_sub.generators) + [_random_in_h(group, i, ctx.rng) for _ in range(10)]
        for h in hs:
            t = theta(i, h)
            for f in fbar_pool:
                cases += 1
                if theta(i, group.conjugate(h, f)) != conj_action(group, t, f):
                    return False, f"conjugating H_{i} by F̄_J disagrees with the action on tuples", cases
        for _ in range(SMALL_SAMPLE):
            t = theta(i, _random_in_h(group, i, ctx.rng))
            f, g = group.random_element(ctx.rng), group.random_element(ctx.rng)
            cases += 1
            if conj_action(group, conj_action(group, t, f), g) != conj_action(group, t, group.multiply(f, g)):
                return False, "the action on tuples is not a right action", cases
        if J:
            for _ in range(10):
                t = theta(i, _random_in_h(group, i, ctx.rng))
                f = _without(group, group.random_element(ctx.rng), [i])
                cases += 1
                if conj_action(group, t, f) != conj_action(group, t, group.project_element(f, J)):
                    return False, f"F̄_J and F_J act differently on H_{i}", cases
    return True, "every minimal index", cases


def check_normality(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    cases = 0
    conjugators = generating_set_H(group) + [group.random_element(ctx.rng) for _ in range(SMALL_SAMPLE)]
    for i in group.poset.minimal_elements():
        h_sub = members(SubgroupSpec(SubgroupKind.H, i=i), group)
        hs = list(h_sub.generators) + [_random_in_h(group, i, ctx.rng) for _ in range(5)]
        for h in hs:
            for f in conjugators:
                cases += 1
                if not h_sub.contains(group.conjugate(h, f)):
                    return False, f"a conjugate of H_{i} leaves H_{i}", cases
    return True, "H_i normal for every minimal i", cases


def check_h_direct(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    minimal = group.poset.minimal_elements()
    cases = 0
    for i, j in itertools.combinations(minimal, 2):
        cases += 1
        outcome = direct_pair_check(group, i, j)
        if not outcome.passed:
            return False, outcome.detail, cases
    return True, f"{cases} pairs of minimal elements", cases


def check_semidirect(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    cases = 0
    for i in group.poset.minimal_elements():
        witness = semidirect_witness(
            group, i, rng=ctx.rng, max_enum=LEMMA_EXHAUSTIVE, samples=ctx.settings.sample_size
        )
        cases += sum(check.cases for check in witness.checks)
        failed = [check.name for check in witness.checks if not check.passed]
        if failed:
            return False, f"{i}: {', '.join(failed)}", cases
    return True, "F = H_i ⋊ F̄_J for every minimal i", cases


def check_subgroup_closure(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    """Generator closure, predicate count and the order formula agree."""
    cases = 0
    for spec in subgroup_specs(group):
        sub = members(spec, group)
        ambient = sub.ambient
        if spec.kind is SubgroupKind.L:
            expected = ambient.theoretical_order() // ambient.factors[spec.i].order() ** ambient.table_sizes[spec.i]
        elif spec.kind in (SubgroupKind.H, SubgroupKind.HJ):
            expected = ambient.factors[spec.i].order() ** ambient.table_sizes[spec.i]
        elif spec.kind is SubgroupKind.DBAR:
            expected = group.restrict(spec.J).theoretical_order()
        else:
            expected = ambient.factors[spec.i].order()
        cases += 1
        if not all(sub.contains(g) for g in sub.generators):
            return False, f"{spec.describe()}: a generator fails the membership test", cases
        closure = sub.closure_order()
        if closure != expected:
            return False, f"{spec.describe()}: closure {closure}, formula {expected}", cases
        if ambient.theoretical_order() <= LEMMA_EXHAUSTIVE:
            counted = len(sub.elements(limit=LEMMA_EXHAUSTIVE))
            if counted != expected:
                return False, f"{spec.describe()}: {counted} members, formula {expected}", cases
    return True, "closure, membership count and formula agree", cases


# -- generation ---------------------------------------------------------------


def check_d_conjugates(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    minimal = group.poset.minimal_elements()
    for i in minimal:
        if not conjugate_generation_check(group, i):
            return False, f"F̄_J-conjugates of D_{i} do not generate H_{i}", len(minimal)
    return True, "every minimal index", len(minimal)


def check_h_generation(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    image = group.permutation_group(generating_set_H(group))
    if image.order() != group.theoretical_order():
        return False, f"⟨H_i⟩ has order {image.order()}", 1
    samples = [group.random_element(ctx.rng) for _ in range(SMALL_SAMPLE)]
    missing = sum(1 for f in samples if not image.contains(group.as_permutation(f)))
    return missing == 0, f"{missing} random elements outside ⟨H_i⟩", len(samples)


def check_d_generation(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    target = group.theoretical_order()
    order = group.closure_order(generating_set_D(group))
    if order != target:
        return False, f"⟨D_i⟩ has order {order}, |F| = {target}", 1
    anchors = {i: ctx.rng.choice(group.up_tuples(i)) for i in group.labels}
    moved = [
        g
        for i in group.labels
        for g in members(SubgroupSpec(SubgroupKind.D, i=i, anchor=anchors[i]), group).generators
    ]
    order = group.closure_order(moved)
    return order == target, f"random anchors {anchors}: order {order}", 2


# -- decompositions and signs -------------------------------------------------


def check_wreath(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    cases = 0
    witnesses = [
        wreath_witness(group, i, rng=ctx.rng, samples=min(ctx.settings.sample_size, SMALL_SAMPLE))
        for i in group.poset.minimal_elements()
    ]
    if group.poset.is_chain():
        witnesses.append(chain_decompose(group))
    if group.poset.is_antichain():
        witnesses.append(antichain_decompose(group))
    for witness in witnesses:
        cases += len(witness.checks)
        failed = [check.name for check in witness.checks if not check.passed]
        if failed:
            return False, f"{witness.node.label}: {', '.join(failed)}", cases
    return True, f"{len(witnesses)} decompositions", cases


def check_sign_quotient(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    cases = 0
    elements, exhaustive = population(group, ctx, LEMMA_EXHAUSTIVE)
    if exhaustive:
        pairs = itertools.product(elements, repeat=2)
    else:
        pairs = ((ctx.rng.choice(elements), ctx.rng.choice(elements)) for _ in range(ctx.settings.sample_size))
    signs = {f: sign_quotient(f) for f in elements}
    for f, g in pairs:
        cases += 1
        if sign_quotient(group.multiply(f, g)) != signs[f] ^ signs[g]:
            return False, "sign quotient is not a homomorphism", cases
    if not unit_vectors_hit(group):
        return False, "a planted transposition misses its unit vector", cases
    width = len(group.labels)
    if exhaustive:
        image = {vector.bits for vector in signs.values()}
        if len(image) != 2 ** width:
            return False, f"image has {len(image)} of {2 ** width} vectors", cases
    elif rank_of_vectors((sign_quotient(g).bits for g in generating_set_H(group)), width) != width:
        return False, "H generators do not span C_2^I", cases
    return True, f"{_mode(exhaustive)}; surjective homomorphism onto C_2^I", cases


def check_lower_bound_rank(group: GwpGroup, ctx: CheckContext) -> SuiteResult:
    size = len(group.labels)
    target = group.theoretical_order()
    for attempt in range(1, RANK_CANDIDATES + 1):
        candidate = [group.random_element(ctx.rng) for _ in range(size - 1)]
        if sign_rank(candidate, group.labels) >= size:
            return False, f"candidate {attempt} of size {size - 1} reached full sign rank", attempt
        if attempt <= 10 and group.closure_order(candidate) == target:
            return False, f"candidate {attempt} of size {size - 1} generates F", attempt
    if sign_rank(generating_set_H(group), group.labels) != size:
        return False, "the H generators fall short of full sign rank", RANK_CANDIDATES
    return True, f"{RANK_CANDIDATES} candidate sets of size {size - 1} rejected", RANK_CANDIDATES
