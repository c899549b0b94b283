from __future__ import annotations

import json
from typing import Any, Dict, List, Literal, Optional, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1

Status = Literal["pass", "fail", "skipped"]
Verdict = Literal["Certified", "Failed"]

ModelT = TypeVar("ModelT", bound=BaseModel)


class _Report(BaseModel):
    model_config = ConfigDict(extra="ignore")


class CheckOutcome(_Report):
    name: str
    lemma: str = ""
    status: Status
    detail: str = ""
    cases: int = 0

    @property
    def passed(self) -> bool:
        return self.status != "fail"


class InspectReport(_Report):
    schema_version: int = Field(default=SCHEMA_VERSION)
    instance: str
    elements: List[str]
    covers: List[List[str]] = Field(default_factory=list)
    size: int
    shape: str
    witness: Dict[str, str] = Field(default_factory=dict)
    domains: Dict[str, int]
    theoretical_order: int
    delta_size: int
    transitive: bool
    factor_transitive: Dict[str, bool] = Field(default_factory=dict)
    symmetric_factors: bool
    minimal_elements: List[str] = Field(default_factory=list)
    maximal_elements: List[str] = Field(default_factory=list)


class DecompositionNode(_Report):
    label: str
    kind: Literal["wreath", "direct", "semidirect", "factor", "trivial"]
    order: int
    children: List["DecompositionNode"] = Field(default_factory=list)


class DecompositionReport(_Report):
    schema_version: int = Field(default=SCHEMA_VERSION)
    instance: str
    shape: str
    theoretical_order: int
    tree: DecompositionNode
    checks: List[CheckOutcome] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)


class CertReport(_Report):
    schema_version: int = Field(default=SCHEMA_VERSION)
    instance: str
    poset: str
    domains: Dict[str, int]
    index_count: int
    witness_generators: List[str] = Field(default_factory=list)
    closure_order: int = 0
    theoretical_order: int = 0
    upper_ok: bool = False
    sign_rank: int = 0
    lower_ok: bool = False
    oracle_d: Optional[int] = None
    oracle_ran: bool = False
    oracle_ok: bool = True
    verdict: Verdict = "Failed"
    seed: int = 0
    notes: List[str] = Field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.verdict == "Certified"


class InstanceChecks(_Report):
    instance: str
    checks: List[CheckOutcome] = Field(default_factory=list)


class SelftestReport(_Report):
    schema_version: int = Field(default=SCHEMA_VERSION)
    scope: List[str] = Field(default_factory=list)
    instances: List[InstanceChecks] = Field(default_factory=list)

    def _count(self, status: Status) -> int:
        return sum(1 for item in self.instances for check in item.checks if check.status == status)

    @property
    def passed(self) -> int:
        return self._count("pass")

    @property
    def failed(self) -> int:
        return self._count("fail")

    @property
    def skipped(self) -> int:
        return self._count("skipped")

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def failures(self) -> List[str]:
        return [
            f"{item.instance}:{check.name}"
            for item in self.instances
            for check in item.checks
            if check.status == "fail"
        ]


def dump_report(model: BaseModel) -> Dict[str, Any]:
    return model.model_dump(mode="json")


def load_report(cls: Type[ModelT], data: Dict[str, Any]) -> ModelT:
    return cls.model_validate(data)


def to_json(model: BaseModel) -> str:
    return json.dumps(dump_report(model), indent=2, sort_keys=True)


def _render_checks(checks: List[CheckOutcome], indent: str = "  ") -> List[str]:
    lines = []
    for check in checks:
        label = check.status.upper()
        suffix = f" ({check.detail})" if check.detail else ""
        lemma = f" [{check.lemma}]" if check.lemma else ""
        lines.append(f"{indent}{label:<7} {check.name}{lemma}{suffix}")
    return lines


def _render_node(node: DecompositionNode, depth: int = 0) -> List[str]:
    lines = [f"{'  ' * depth}- {node.label}  [{node.kind}, order {node.order}]"]
    for child in node.children:
        lines.extend(_render_node(child, depth + 1))
    return lines


def render_text(report: BaseModel) -> str:
    if isinstance(report, InspectReport):
        covers = ", ".join(f"{a} < {b}" for a, b in report.covers) or "none"
        lines = [
            f"instance: {report.instance}",
            f"elements: {' '.join(report.elements)}  (|I| = {report.size})",
            f"covers: {covers}",
            f"shape: {report.shape}" + (f"  roles {report.witness}" if report.witness else ""),
            "domains: " + ", ".join(f"{k}={v}" for k, v in report.domains.items()),
            f"|Δ| = {report.delta_size}",
            f"theoretical order: {report.theoretical_order}",
            f"transitive: {report.transitive}  factors {report.factor_transitive}",
            f"symmetric factors: {report.symmetric_factors}",
            f"minimal: {' '.join(report.minimal_elements)}  maximal: {' '.join(report.maximal_elements)}",
        ]
        return "\n".join(lines)
    if isinstance(report, DecompositionReport):
        lines = [f"instance: {report.instance}  shape: {report.shape}  order: {report.theoretical_order}"]
        lines.extend(_render_node(report.tree))
        lines.extend(f"note: {note}" for note in report.notes)
        lines.extend(_render_checks(report.checks))
        return "\n".join(lines)
    if isinstance(report, CertReport):
        oracle = "not run" if not report.oracle_ran else f"d = {report.oracle_d}"
        lines = [
            f"instance: {report.instance}",
            f"poset: {report.poset}",
            "domains: " + ", ".join(f"{k}={v}" for k, v in report.domains.items()),
            f"|I| = {report.index_count}, |F| = {report.theoretical_order}",
            f"upper bound: {'ok' if report.upper_ok else 'FAILED'} (closure order {report.closure_order})",
            f"lower bound: {'ok' if report.lower_ok else 'FAILED'} (sign rank {report.sign_rank})",
            f"oracle: {oracle}{'' if report.oracle_ok else ' (DISAGREES)'}",
            "witness generators:",
        ]
        for number, gen in enumerate(report.witness_generators, start=1):
            lines.append(f"  g{number}: {gen}")
        lines.extend(f"note: {note}" for note in report.notes)
        lines.append(f"verdict: {report.verdict}")
        return "\n".join(lines)
    if isinstance(report, SelftestReport):
        lines = []
        for item in report.instances:
            lines.append(f"{item.instance}:")
            lines.extend(_render_checks(item.checks, indent="  "))
        lines.append(f"passed {report.passed}, failed {report.failed}, skipped {report.skipped}")
        if report.failures():
            lines.append("failing: " + ", ".join(report.failures()))
        return "\n".join(lines)
    return to_json(report)
