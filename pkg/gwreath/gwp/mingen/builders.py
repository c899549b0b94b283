"""Generating sets of size |I| for products of symmetric groups.

The recursion peels minimal elements off the poset:

* one index: the factor's own generators;
* the pyramid i < k > j: explicit x, y, z over (S_l × S_m) ≀ S_n;
* two minimal elements m, n with more than one index left above them:
  a 2-generating pair of Sym(Δ_m) × Sym(Δ_n) planted at the anchors,
  followed by the recursive generators of F_K, K = I - {m, n};
* otherwise: lift the recursive generators of F_K, K = I - {m}, through
  the quotient F -> F_K by random H_m coordinates until they generate F.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from random import Random
from typing import Callable, List, Optional, Sequence, Tuple

from ..core import GwpElement, GwpGroup
from ..errors import BudgetExhausted, HypothesisViolation
from ..permgroup import PermGroupHandle, Permutation, cycle, identity, transposition
from ..poset import SmallShape, classify_small
from .signs import require_symmetric, sign_rank

logger = logging.getLogger(__name__)


@dataclass
class BuildStats:
    """Attempt counters filled in by the randomized steps."""

    lift_attempts: int = 0
    pair_attempts: int = 0
    pyramid_attempts: int = 0
    steps: List[str] = field(default_factory=list)


def require_buildable(group: GwpGroup) -> None:
    require_symmetric(group)
    small = [i for i in group.labels if group.domains[i] < 2]
    if small:
        raise HypothesisViolation(f"every domain needs at least two points; too small at {', '.join(small)}")
    if not group.labels:
        raise HypothesisViolation("the poset is empty")


def _disjoint(a: Permutation, b: Permutation) -> Permutation:
    shift = a.degree
    return Permutation._trusted(a.images + tuple(shift + p for p in b.images))


def _sampler(factor: PermGroupHandle, rng: Random, max_enum: int) -> Callable[[], Permutation]:
    """Uniform draws from ``factor``; listed once when it is small enough."""
    if factor.order() <= max_enum:
        pool = factor.elements(limit=max_enum)
        return lambda: rng.choice(pool)
    return lambda: factor.random_element(rng)


def pair_generators_for_minimals(
    group: GwpGroup,
    m: str,
    n: str,
    *,
    rng: Optional[Random] = None,
    budget: int = 5_000,
    max_enum: int = 10_000,
    stats: Optional[BuildStats] = None,
) -> Tuple[GwpElement, GwpElement]:
    """Two elements planted at (ε_m, ε_n) generating Sym(Δ_m) × Sym(Δ_n)."""
    minimal = group.poset.minimal_elements()
    if m == n or m not in minimal or n not in minimal:
        raise HypothesisViolation(f"{m} and {n} must be two distinct minimal elements")
    require_symmetric(group)
    rng = rng or Random(0)
    left, right = group.factors[m], group.factors[n]
    target = left.order() * right.order()
    degree = group.domains[m] + group.domains[n]
    if target <= max_enum and target ** 2 <= budget:
        pairs = [(a, b) for a in left.elements(limit=max_enum) for b in right.elements(limit=max_enum)]
        candidates = itertools.product(pairs, repeat=2)
        mode = "exhaustive"
    else:
        draw_left, draw_right = _sampler(left, rng, max_enum), _sampler(right, rng, max_enum)
        candidates = (
            ((draw_left(), draw_right()), (draw_left(), draw_right())) for _ in range(budget)
        )
        mode = "random"
    attempts = 0
    for (a1, b1), (a2, b2) in candidates:
        attempts += 1
        handle = PermGroupHandle(degree, [_disjoint(a1, b1), _disjoint(a2, b2)])
        if handle.order() == target:
            if stats is not None:
                stats.pair_attempts += attempts
            logger.debug("[pair] %s,%s found after %d %s attempts", m, n, attempts, mode)
            return (
                group.element({m: {group.anchor(m): a1}, n: {group.anchor(n): b1}}),
                group.element({m: {group.anchor(m): a2}, n: {group.anchor(n): b2}}),
            )
    raise BudgetExhausted(attempts, f"no generating pair for Sym(Δ_{m}) × Sym(Δ_{n})")


def even_partner(l: int) -> Permutation:
    """An even α with ⟨(0 1), α⟩ = S_l."""
    if l == 2:
        return identity(2)
    if l % 2:
        return cycle(l, list(range(l)))
    return cycle(l, list(range(1, l)))


def pyramid_generators(
    group: GwpGroup,
    *,
    rng: Optional[Random] = None,
    budget: int = 10_000,
    max_enum: int = 10_000,
    stats: Optional[BuildStats] = None,
) -> List[GwpElement]:
    """x, y, z for the pyramid i < k > j, using F ≅ (S_l × S_m) ≀_{Δ_k} S_n."""
    result = classify_small(group.poset)
    if result.shape is not SmallShape.PYRAMID:
        raise HypothesisViolation(f"{group.poset.describe()} is not a pyramid")
    require_buildable(group)
    rng = rng or Random(0)
    i, j, k = result.witness["i"], result.witness["j"], result.witness["k"]
    l, m, n = group.domains[i], group.domains[j], group.domains[k]
    alpha = even_partner(l)
    swap_top = transposition(n)
    beta = cycle(n, list(range(n)))
    lower = group.restrict([j, k])
    lower_target = lower.theoretical_order()
    draw = _sampler(group.factors[j], rng, max_enum)
    target = group.theoretical_order()
    x = group.element({i: {(0,): transposition(l)}})
    for attempt in range(1, budget + 1):
        a = [draw() for _ in range(n)]
        b = [draw() for _ in range(n)]
        pair = [lower.element({j: a, k: swap_top}), lower.element({j: b, k: beta})]
        if lower.closure_order(pair) != lower_target:
            continue
        y = group.element({i: {(0,): alpha}, j: a, k: swap_top})
        z = group.element({j: b, k: beta})
        if group.closure_order([x, y, z]) == target:
            if stats is not None:
                stats.pyramid_attempts += attempt
            logger.debug("[pyramid] l=%d m=%d n=%d found after %d attempts", l, m, n, attempt)
            return [x, y, z]
    raise BudgetExhausted(budget, f"no generating pair (a, b) of S_{m} ≀ S_{n} for the pyramid")


def _single_index(group: GwpGroup) -> List[GwpElement]:
    (i,) = group.labels
    size = group.domains[i]
    gens = [group.element({i: transposition(size)})]
    if size > 2:
        gens.append(group.element({i: cycle(size, list(range(size)))}))
    return gens


def _random_h(group: GwpGroup, m: str, rng: Random) -> GwpElement:
    factor = group.factors[m]
    return group.element({m: [factor.random_element(rng) for _ in range(group.table_sizes[m])]}, validate=False)


def gaschutz_lift(
    group: GwpGroup,
    m: str,
    quotient_gens: Sequence[GwpElement],
    *,
    rng: Random,
    budget: int = 10_000,
    stats: Optional[BuildStats] = None,
) -> List[GwpElement]:
    """Dress lifted generators of F_K with random H_m coordinates until they generate F."""
    size = len(group.labels)
    base = [group.lift(g) for g in quotient_gens]
    if len(base) > size:
        raise HypothesisViolation(f"{len(base)} quotient generators cannot be lifted to {size}")
    base += [group.identity()] * (size - len(base))
    target = group.theoretical_order()
    for attempt in range(1, budget + 1):
        candidate = [group.multiply(g, _random_h(group, m, rng)) for g in base]
        if sign_rank(candidate, group.labels) < size:
            continue
        if group.closure_order(candidate) == target:
            if stats is not None:
                stats.lift_attempts += attempt
            logger.debug("[lift] m=%s succeeded after %d attempts", m, attempt)
            return candidate
    raise BudgetExhausted(budget, f"randomized lift through H_{m} did not generate F")


def build_minimal_gens(
    group: GwpGroup,
    *,
    rng: Optional[Random] = None,
    lift_budget: int = 10_000,
    pair_budget: int = 5_000,
    max_enum: int = 10_000,
    stats: Optional[BuildStats] = None,
) -> List[GwpElement]:
    require_buildable(group)
    rng = rng or Random(0)
    stats = stats if stats is not None else BuildStats()
    labels = group.labels
    if len(labels) == 1:
        stats.steps.append(f"single {labels[0]}")
        return _single_index(group)
    if classify_small(group.poset).shape is SmallShape.PYRAMID:
        stats.steps.append("pyramid")
        return pyramid_generators(group, rng=rng, budget=lift_budget, max_enum=max_enum, stats=stats)
    minimal = group.poset.minimal_elements()
    if len(minimal) >= 2 and len(labels) - 2 != 1:
        m, n = minimal[0], minimal[1]
        stats.steps.append(f"pair {m},{n}")
        pair = list(
            pair_generators_for_minimals(
                group, m, n, rng=rng, budget=pair_budget, max_enum=max_enum, stats=stats
            )
        )
        rest = [label for label in labels if label not in (m, n)]
        if not rest:
            return pair
        inner = build_minimal_gens(
            group.restrict(rest),
            rng=rng,
            lift_budget=lift_budget,
            pair_budget=pair_budget,
            max_enum=max_enum,
            stats=stats,
        )
        return pair + [group.lift(g) for g in inner]
    m = minimal[0]
    rest = [label for label in labels if label != m]
    stats.steps.append(f"lift {m}")
    inner = build_minimal_gens(
        group.restrict(rest),
        rng=rng,
        lift_budget=lift_budget,
        pair_budget=pair_budget,
        max_enum=max_enum,
        stats=stats,
    )
    return gaschutz_lift(group, m, inner, rng=rng, budget=lift_budget, stats=stats)
