"""The subgroups L_j, H_i, H_i^J, F̄_J, D_i, D_i^J and the isomorphism θ_i."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, FrozenSet, Iterable, List, Optional, Tuple

from ..core import GwpElement, GwpGroup
from ..errors import DomainMismatch, HypothesisViolation
from ..permgroup import Permutation


class SubgroupKind(str, Enum):
    L = "L"
    H = "H"
    HJ = "HJ"
    DBAR = "Dbar"
    D = "D"
    DJ = "DJ"


@dataclass(frozen=True)
class SubgroupSpec:
    kind: SubgroupKind
    i: Optional[str] = None
    J: Optional[FrozenSet[str]] = None
    # ε_i for the D kinds; the least tuple of Δ_{A(i)} when left out
    anchor: Optional[Tuple[int, ...]] = None

    def describe(self) -> str:
        parts = [p for p in (self.i, ",".join(sorted(self.J)) if self.J is not None else None) if p is not None]
        return f"{self.kind.value}({'; '.join(parts)})"


@dataclass(frozen=True)
class Subgroup:
    spec: SubgroupSpec
    ambient: GwpGroup
    predicate: Callable[[GwpElement], bool] = field(repr=False)
    generators: Tuple[GwpElement, ...] = field(repr=False)

    def contains(self, f: GwpElement) -> bool:
        return self.predicate(f)

    def closure_order(self) -> int:
        return self.ambient.closure_order(self.generators)

    def elements(self, limit: int = 10_000) -> List[GwpElement]:
        return [f for f in self.ambient.elements(limit=limit) if self.predicate(f)]


def planted_generators(group: GwpGroup, i: str, tuples: Iterable[Tuple[int, ...]]) -> List[GwpElement]:
    factor = group.factors[i]
    return [group.plant(i, omega, s) for omega in tuples for s in factor.generators]


def h_generators(group: GwpGroup, i: str) -> List[GwpElement]:
    return planted_generators(group, i, group.up_tuples(i))


def d_generators(group: GwpGroup, i: str, anchor: Optional[Tuple[int, ...]] = None) -> List[GwpElement]:
    return planted_generators(group, i, [_anchor(group, i, anchor)])


def _anchor(group: GwpGroup, i: str, anchor: Optional[Tuple[int, ...]]) -> Tuple[int, ...]:
    if anchor is None:
        return group.anchor(i)
    anchor = tuple(anchor)
    if anchor not in set(group.up_tuples(i)):
        raise HypothesisViolation(f"anchor {anchor} is not a tuple of Δ_A({i})")
    return anchor


def _only_at(group: GwpGroup, i: str) -> Callable[[GwpElement], bool]:
    others = [j for j in group.labels if j != i]

    def predicate(f: GwpElement) -> bool:
        return f.group is group and f.is_trivial_on(others)

    return predicate


def _planted_at(group: GwpGroup, i: str, anchor: Tuple[int, ...]) -> Callable[[GwpElement], bool]:
    inside_h = _only_at(group, i)
    at = group.rank(i, anchor)

    def predicate(f: GwpElement) -> bool:
        return inside_h(f) and all(p.is_identity() for r, p in enumerate(f.table(i)) if r != at)

    return predicate


def members(spec: SubgroupSpec, group: GwpGroup) -> Subgroup:
    """Membership test and a generating list for ``spec`` inside ``group`` (or F_J)."""
    kind = spec.kind
    if kind in (SubgroupKind.HJ, SubgroupKind.DJ, SubgroupKind.DBAR):
        if spec.J is None:
            raise HypothesisViolation(f"{kind.value} needs an ancestral subset J")
        if not group.poset.is_ancestral(spec.J):
            raise HypothesisViolation(f"{sorted(spec.J)} is not ancestral")
    if kind is not SubgroupKind.DBAR:
        if spec.i is None or spec.i not in group.domains:
            raise HypothesisViolation(f"{kind.value} needs an index of the poset, got {spec.i!r}")
    if kind in (SubgroupKind.HJ, SubgroupKind.DJ) and spec.i not in spec.J:  # type: ignore[operator]
        raise HypothesisViolation(f"{spec.i} is not in {sorted(spec.J)}")  # type: ignore[arg-type]

    if kind is SubgroupKind.L:
        j = spec.i
        gens = [g for i in group.labels if i != j for g in h_generators(group, i)]
        return Subgroup(spec, group, lambda f: f.group is group and f.is_trivial_on([j]), tuple(gens))
    if kind is SubgroupKind.H:
        return Subgroup(spec, group, _only_at(group, spec.i), tuple(h_generators(group, spec.i)))
    if kind is SubgroupKind.DBAR:
        outside = [j for j in group.labels if j not in spec.J]  # type: ignore[operator]
        gens = [g for i in group.labels if i in spec.J for g in h_generators(group, i)]  # type: ignore[operator]
        return Subgroup(spec, group, lambda f: f.group is group and f.is_trivial_on(outside), tuple(gens))
    if kind is SubgroupKind.D:
        anchor = _anchor(group, spec.i, spec.anchor)
        return Subgroup(spec, group, _planted_at(group, spec.i, anchor), tuple(d_generators(group, spec.i, anchor)))
    sub = group.restrict(spec.J)  # type: ignore[arg-type]
    if kind is SubgroupKind.HJ:
        return Subgroup(spec, sub, _only_at(sub, spec.i), tuple(h_generators(sub, spec.i)))
    anchor = _anchor(sub, spec.i, spec.anchor)
    return Subgroup(spec, sub, _planted_at(sub, spec.i, anchor), tuple(d_generators(sub, spec.i, anchor)))


def subgroup_specs(group: GwpGroup) -> List[SubgroupSpec]:
    """Every subgroup of the catalogue for ``group``, one spec per parameter choice."""
    specs: List[SubgroupSpec] = []
    for i in group.labels:
        specs.append(SubgroupSpec(SubgroupKind.L, i=i))
        specs.append(SubgroupSpec(SubgroupKind.H, i=i))
        specs.append(SubgroupSpec(SubgroupKind.D, i=i))
    for ancestral in group.poset.ancestral_subsets():
        J = frozenset(ancestral.members)
        specs.append(SubgroupSpec(SubgroupKind.DBAR, J=J))
        for i in ancestral.labels():
            specs.append(SubgroupSpec(SubgroupKind.HJ, i=i, J=J))
            specs.append(SubgroupSpec(SubgroupKind.DJ, i=i, J=J))
    return specs


@dataclass(frozen=True)
class FactorTuple:
    """An element of G_i^{Δ_{A(i)}}, entries in rank order of Δ_{A(i)}."""

    index: str
    entries: Tuple[Permutation, ...]

    def compose(self, other: "FactorTuple") -> "FactorTuple":
        if self.index != other.index or len(self.entries) != len(other.entries):
            raise DomainMismatch(f"cannot multiply tuples over {self.index} and {other.index}")
        return FactorTuple(self.index, tuple(a * b for a, b in zip(self.entries, other.entries)))

    def is_identity(self) -> bool:
        return all(p.is_identity() for p in self.entries)


def theta(i: str, f: GwpElement) -> FactorTuple:
    """θ_i: read off the i-table of an element of H_i."""
    group = f.group
    if not _only_at(group, i)(f):
        raise HypothesisViolation(f"element is not in H_{i}")
    return FactorTuple(i, f.table(i))


def theta_inverse(group: GwpGroup, t: FactorTuple) -> GwpElement:
    if len(t.entries) != group.table_sizes[t.index]:
        raise DomainMismatch(f"tuple has {len(t.entries)} entries, Δ_A({t.index}) has {group.table_sizes[t.index]}")
    return group.element({t.index: t.entries})


def conj_action(group: GwpGroup, t: FactorTuple, f: GwpElement) -> FactorTuple:
    """``(g_δ)^f = (g_{δ·(f^{-1} projected to A(i))})``; ``f`` may live in F or in some F_J ⊇ A(i)."""
    acting = f.group
    up = group.up[t.index]
    if not set(up) <= set(acting.labels):
        raise HypothesisViolation(f"A({t.index}) = {list(up)} is not inside {list(acting.labels)}")
    inverse = acting.invert(f)
    entries = []
    for delta in group.up_tuples(t.index):
        moved = acting.act_on(delta, inverse, up)
        entries.append(t.entries[group.rank(t.index, moved)])
    return FactorTuple(t.index, tuple(entries))
