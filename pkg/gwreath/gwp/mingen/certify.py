from __future__ import annotations

import logging
from random import Random
from typing import List, Optional

from ..codec import format_element
from ..core import GwpElement, GwpGroup
from ..errors import HypothesisViolation
from ..permgroup import min_generators_exact, transposition
from ..reports import CertReport
from ..settings import DeskSettings
from .builders import BuildStats, build_minimal_gens, require_buildable
from .signs import sign_quotient, sign_rank

logger = logging.getLogger(__name__)


def unit_vectors_hit(group: GwpGroup) -> bool:
    """Each D_i transposition planted at ε_i maps to the i-th unit vector."""
    for pos, i in enumerate(group.labels):
        planted = group.plant(i, group.anchor(i), transposition(group.domains[i]))
        bits = sign_quotient(planted).bits
        if bits != tuple(1 if p == pos else 0 for p in range(len(group.labels))):
            return False
    return True


def oracle_d(group: GwpGroup, settings: DeskSettings, rng: Random) -> Optional[int]:
    image = group.permutation_group(
        group.plant(i, omega, s)
        for i in group.labels
        for omega in group.up_tuples(i)
        for s in group.factors[i].generators
    )
    return min_generators_exact(
        image,
        len(group.labels),
        rng=rng,
        exhaustive_order=settings.exhaustive_order,
        randomized_order=settings.randomized_order,
        search_budget=settings.search_budget,
        word_length=settings.random_word_length,
    )


def certify(group: GwpGroup, settings: Optional[DeskSettings] = None, *, seed: Optional[int] = None) -> CertReport:
    """Certify d(F) = |I|: an |I|-element generating set plus the rank-|I| sign quotient."""
    settings = settings or DeskSettings()
    seed = settings.seed if seed is None else seed
    if len(group.labels) < 2:
        raise HypothesisViolation(f"certification needs |I| >= 2, got |I| = {len(group.labels)}")
    require_buildable(group)
    rng = Random(seed)
    stats = BuildStats()
    gens: List[GwpElement] = build_minimal_gens(
        group,
        rng=rng,
        lift_budget=settings.lift_budget,
        pair_budget=settings.pair_budget,
        max_enum=settings.max_enum,
        stats=stats,
    )
    size = len(group.labels)
    theoretical = group.theoretical_order()
    closure = group.closure_order(gens)
    upper_ok = closure == theoretical and len(gens) == size
    rank = sign_rank(gens, group.labels)
    lower_ok = rank == size and unit_vectors_hit(group)
    report = CertReport(
        instance=group.name or "instance",
        poset=group.poset.describe(),
        domains=dict(group.domains),
        index_count=size,
        witness_generators=[format_element(g, compact=True, separator="; ") for g in gens],
        closure_order=closure,
        theoretical_order=theoretical,
        upper_ok=upper_ok,
        sign_rank=rank,
        lower_ok=lower_ok,
        seed=seed,
        notes=[f"construction: {' -> '.join(stats.steps)}"],
    )
    if stats.lift_attempts or stats.pair_attempts or stats.pyramid_attempts:
        report.notes.append(
            f"attempts: lift {stats.lift_attempts}, pair {stats.pair_attempts}, pyramid {stats.pyramid_attempts}"
        )
    if theoretical <= settings.max_enum:
        report.oracle_ran = True
        report.oracle_d = oracle_d(group, settings, Random(seed + 1))
        report.oracle_ok = report.oracle_d == size
    else:
        report.notes.append(f"oracle skipped: |F| = {theoretical} above max_enum {settings.max_enum}")
    certified = upper_ok and lower_ok and len(gens) == size and report.oracle_ok
    report.verdict = "Certified" if certified else "Failed"
    logger.info(
        "[certify] instance=%s |I|=%d upper=%s lower=%s oracle=%s verdict=%s",
        report.instance, size, upper_ok, lower_ok, report.oracle_d, report.verdict,
    )
    return report
