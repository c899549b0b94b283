"""The four desk commands, shared by the CLI and the HTTP service."""
from __future__ import annotations

import logging
from pathlib import Path
from random import Random
from typing import Iterable, List, Optional, Sequence

from .checks import CheckContext, resolve_scope, run_checks
from .core import GwpGroup
from .instance import CORPUS_DIR, InstanceSpec, load_corpus
from .mingen import certify
from .poset import classify_small
from .reports import CertReport, DecompositionReport, InspectReport, InstanceChecks, SelftestReport
from .settings import DeskSettings
from .structure import decompose

logger = logging.getLogger(__name__)


def build_group(spec: InstanceSpec, settings: DeskSettings) -> GwpGroup:
    return spec.build(max_delta=settings.max_delta)


def inspect_group(group: GwpGroup) -> InspectReport:
    result = classify_small(group.poset)
    factor_transitive = {i: group.factors[i].is_transitive() for i in group.labels}
    return InspectReport(
        instance=group.name or "instance",
        elements=list(group.labels),
        covers=[[a, b] for a, b in group.poset.hasse_edges()],
        size=len(group.labels),
        shape=result.shape.value,
        witness=dict(result.witness),
        domains=dict(group.domains),
        theoretical_order=group.theoretical_order(),
        delta_size=group.delta_size,
        transitive=all(factor_transitive.values()),
        factor_transitive=factor_transitive,
        symmetric_factors=group.has_symmetric_factors(),
        minimal_elements=group.poset.minimal_elements(),
        maximal_elements=group.poset.maximal_elements(),
    )


def decompose_group(group: GwpGroup, settings: DeskSettings, seed: Optional[int] = None) -> DecompositionReport:
    rng = Random(settings.seed if seed is None else seed)
    return decompose(group, rng=rng, max_enum=settings.max_enum, samples=settings.sample_size)


def certify_group(group: GwpGroup, settings: DeskSettings, seed: Optional[int] = None) -> CertReport:
    return certify(group, settings, seed=seed)


def check_group(
    group: GwpGroup,
    settings: DeskSettings,
    scope: Optional[Iterable[str]] = None,
    seed: Optional[int] = None,
) -> InstanceChecks:
    names = resolve_scope(scope)
    ctx = CheckContext.from_settings(settings, seed)
    return InstanceChecks(instance=group.name or "instance", checks=run_checks(group, ctx, names))


def selftest(
    specs: Sequence[InstanceSpec],
    settings: DeskSettings,
    scope: Optional[Iterable[str]] = None,
    seed: Optional[int] = None,
) -> SelftestReport:
    """Run the selected suites on every instance; each instance gets its own seeded stream."""
    scope = list(scope or [])
    names = resolve_scope(scope)
    report = SelftestReport(scope=names)
    for spec in sorted(specs, key=lambda item: item.name):
        group = build_group(spec, settings)
        report.instances.append(check_group(group, settings, names, seed))
        logger.info("[selftest] instance=%s checks=%d", spec.name, len(names))
    logger.info(
        "[selftest] passed=%d failed=%d skipped=%d", report.passed, report.failed, report.skipped
    )
    return report


def load_selftest_corpus(directory: Optional[Path] = None, empty: bool = False) -> List[InstanceSpec]:
    if empty:
        return []
    return load_corpus(directory or CORPUS_DIR)
