"""The generalised wreath product over a finite poset.

An element ``f`` stores, for every index ``i`` (in sorted label order), a
dense table of permutations of ``Δ_i`` indexed by the lexicographic rank of
a tuple in ``Δ_{A(i)}``, where ``A(i)`` is the up-set of ``i`` listed in
label order.  Maximal indices have a one-entry table.  Points of ``Δ`` are
int tuples in label order.
"""
from __future__ import annotations

import itertools
import logging
import math
import threading
from dataclasses import dataclass
from random import Random
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DeskGuardExceeded, DomainMismatch, PosetError
from .permgroup import PermGroupHandle, Permutation, identity as perm_identity, symmetric_group
from .poset import AncestralSet, Poset

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]
Tables = Tuple[Tuple[Permutation, ...], ...]
TableInput = Union[Permutation, Sequence[Permutation], Mapping[Tuple[int, ...], Permutation]]

# per member of a label set: (table slot in the group, positions of its up-set inside the set)
Layout = Tuple[Tuple[int, Tuple[int, ...]], ...]


@dataclass(frozen=True, eq=False)
class GwpElement:
    group: "GwpGroup"
    tables: Tables

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GwpElement):
            return NotImplemented
        return self.group is other.group and self.tables == other.tables

    def __hash__(self) -> int:
        return hash(self.tables)

    def __mul__(self, other: "GwpElement") -> "GwpElement":
        return self.group.multiply(self, other)

    def __repr__(self) -> str:
        return f"GwpElement({self.group.name or 'F'}, {self.group.format_element(self)})"

    def inverse(self) -> "GwpElement":
        return self.group.invert(self)

    def table(self, i: str) -> Tuple[Permutation, ...]:
        return self.tables[self.group.slot(i)]

    def value(self, i: str, omega: Sequence[int]) -> Permutation:
        return self.tables[self.group.slot(i)][self.group.rank(i, omega)]

    def table_map(self, i: str) -> Dict[Tuple[int, ...], Permutation]:
        return dict(zip(self.group.up_tuples(i), self.table(i)))

    def is_identity(self) -> bool:
        return all(p.is_identity() for table in self.tables for p in table)

    def is_trivial_on(self, labels: Iterable[str]) -> bool:
        return all(p.is_identity() for i in labels for p in self.table(i))


class GwpGroup:
    """F built from ``(G_i, Δ_i)`` over ``poset``; factors default to ``Sym(Δ_i)``."""

    def __init__(
        self,
        poset: Poset,
        domains: Mapping[str, int],
        factors: Optional[Mapping[str, PermGroupHandle]] = None,
        *,
        name: str = "",
        max_delta: int = 5_000,
    ) -> None:
        if set(domains) != set(poset.elements):
            raise PosetError(f"domain sizes given for {sorted(domains)} but the poset has {list(poset.elements)}")
        factors = dict(factors or {})
        unknown = set(factors) - set(poset.elements)
        if unknown:
            raise PosetError(f"factors given for unknown elements {sorted(unknown)}")
        self.poset = poset
        self.name = name
        self.max_delta = max_delta
        self.labels: Tuple[str, ...] = poset.elements
        self.domains: Dict[str, int] = {}
        self.factors: Dict[str, PermGroupHandle] = {}
        for label in self.labels:
            size = int(domains[label])
            if size < 1:
                raise DomainMismatch(f"domain of {label} must have at least one point, got {size}")
            factor = factors.get(label) or symmetric_group(size)
            if factor.degree != size:
                raise DomainMismatch(f"factor for {label} acts on {factor.degree} points, domain has {size}")
            self.domains[label] = size
            self.factors[label] = factor
        self._slots = {label: pos for pos, label in enumerate(self.labels)}
        self.up: Dict[str, Tuple[str, ...]] = {i: tuple(poset.up_set(i).labels()) for i in self.labels}
        self._radix: Dict[str, Tuple[int, ...]] = {}
        self.table_sizes: Dict[str, int] = {}
        for i in self.labels:
            sizes = [self.domains[j] for j in self.up[i]]
            weights = []
            weight = 1
            for size in reversed(sizes):
                weights.append(weight)
                weight *= size
            self._radix[i] = tuple(reversed(weights))
            self.table_sizes[i] = weight
        self._radix_by_slot = {self._slots[i]: self._radix[i] for i in self.labels}
        self._layouts: Dict[Tuple[str, ...], Layout] = {}
        self._restricted: Dict[frozenset, "GwpGroup"] = {}
        self._lock = threading.Lock()
        self._identity = self._make(
            tuple((perm_identity(self.domains[i]),) * self.table_sizes[i] for i in self.labels)
        )

    def __repr__(self) -> str:
        sizes = ", ".join(f"{i}:{self.domains[i]}" for i in self.labels)
        return f"GwpGroup({self.name or self.poset.describe()}; domains {sizes})"

    # layout helpers

    def slot(self, i: str) -> int:
        try:
            return self._slots[i]
        except KeyError:
            raise PosetError(f"unknown element {i!r}") from None

    def rank(self, i: str, omega: Sequence[int]) -> int:
        radix = self._radix[i]
        if len(omega) != len(radix):
            raise DomainMismatch(f"tuple {tuple(omega)} does not match A({i}) = {self.up[i]}")
        return sum(c * w for c, w in zip(omega, radix))

    def up_tuples(self, i: str) -> List[Tuple[int, ...]]:
        """Δ_{A(i)} in rank order; ``[()]`` for a maximal index."""
        return list(itertools.product(*(range(self.domains[j]) for j in self.up[i])))

    def anchor(self, i: str) -> Tuple[int, ...]:
        """ε_i, the lexicographically least tuple of Δ_{A(i)}."""
        return (0,) * len(self.up[i])

    def layout(self, labels: Sequence[str]) -> Layout:
        key = tuple(labels)
        cached = self._layouts.get(key)
        if cached is None:
            positions = {label: pos for pos, label in enumerate(key)}
            cached = tuple(
                (self.slot(j), tuple(positions[k] for k in self.up[j])) for j in key
            )
            self._layouts[key] = cached
        return cached

    def _labels_of(self, subset: Union[AncestralSet, Iterable[str]]) -> Tuple[str, ...]:
        if isinstance(subset, AncestralSet):
            return tuple(subset.labels())
        members = list(subset)
        for label in members:
            self.slot(label)
        return tuple(self.poset.in_order(members))

    def _ancestral_labels(self, subset: Union[AncestralSet, Iterable[str]]) -> Tuple[str, ...]:
        labels = self._labels_of(subset)
        if not self.poset.is_ancestral(labels):
            raise PosetError(f"{list(labels)} is not ancestral")
        return labels

    # elements

    def _make(self, tables: Tables) -> GwpElement:
        return GwpElement(self, tables)

    def identity(self) -> GwpElement:
        return self._identity

    def element(self, tables: Mapping[str, TableInput], *, validate: bool = True) -> GwpElement:
        """Build an element; indices left out get identity tables.

        A table may be a single permutation (constant over Δ_{A(i)}), a
        sequence in rank order, or a mapping from tuples to permutations.
        """
        unknown = set(tables) - set(self.labels)
        if unknown:
            raise PosetError(f"tables given for unknown elements {sorted(unknown)}")
        out = []
        for i in self.labels:
            raw = tables.get(i)
            ident = perm_identity(self.domains[i])
            if raw is None:
                row = (ident,) * self.table_sizes[i]
            elif isinstance(raw, Permutation):
                row = (raw,) * self.table_sizes[i]
            elif isinstance(raw, Mapping):
                cells = [ident] * self.table_sizes[i]
                for omega, perm in raw.items():
                    cells[self.rank(i, tuple(omega))] = perm
                row = tuple(cells)
            else:
                row = tuple(raw)
                if len(row) != self.table_sizes[i]:
                    raise DomainMismatch(f"table for {i} has {len(row)} entries, expected {self.table_sizes[i]}")
            if validate:
                factor = self.factors[i]
                for perm in row:
                    if perm.degree != self.domains[i]:
                        raise DomainMismatch(f"{perm} is not a permutation of the {self.domains[i]} points of Δ_{i}")
                    if not factor.contains(perm):
                        raise DomainMismatch(f"{perm} is not in the factor group at {i}")
            out.append(row)
        return self._make(tuple(out))

    def plant(self, i: str, omega: Sequence[int], perm: Permutation) -> GwpElement:
        """The element trivial everywhere except ``f_i(omega) = perm``."""
        return self.element({i: {tuple(omega): perm}})

    def _require_member(self, *elements: GwpElement) -> None:
        for f in elements:
            if f.group is not self:
                raise DomainMismatch("element belongs to a different generalised wreath product")

    # action

    @staticmethod
    def _act_tables(tables: Tables, layout: Layout, omega: Sequence[int], radix: Mapping[int, Tuple[int, ...]]) -> Point:
        out = []
        for pos, (slot, ups) in enumerate(layout):
            weights = radix[slot]
            r = 0
            for q, w in zip(ups, weights):
                r += omega[q] * w
            out.append(tables[slot][r].images[omega[pos]])
        return tuple(out)

    def act_on(self, omega: Sequence[int], f: GwpElement, subset: Union[AncestralSet, Iterable[str]]) -> Point:
        """Action of the projection of ``f`` on ``Δ_J`` for ancestral ``J``."""
        labels = self._ancestral_labels(subset)
        return self._act_tables(f.tables, self.layout(labels), self._check_point(omega, labels), self._radix_by_slot)

    def _check_point(self, delta: Sequence[int], labels: Sequence[str]) -> Point:
        point = tuple(delta)
        if len(point) != len(labels):
            raise DomainMismatch(f"point {point} has {len(point)} coordinates, expected {len(labels)}")
        for value, label in zip(point, labels):
            if not 0 <= value < self.domains[label]:
                raise DomainMismatch(f"coordinate {value} is outside Δ_{label}")
        return point

    def act(self, delta: Sequence[int], f: GwpElement) -> Point:
        self._require_member(f)
        return self._act_tables(f.tables, self.layout(self.labels), self._check_point(delta, self.labels), self._radix_by_slot)

    # group law

    def multiply(self, f: GwpElement, h: GwpElement) -> GwpElement:
        """``t_i(ω) = f_i(ω) · h_i(ω·f_{A(i)})``."""
        self._require_member(f, h)
        radix = self._radix_by_slot
        out = []
        for i in self.labels:
            slot = self._slots[i]
            layout = self.layout(self.up[i])
            weights = self._radix[i]
            f_row, h_row = f.tables[slot], h.tables[slot]
            row = []
            for r, omega in enumerate(self.up_tuples(i)):
                moved = self._act_tables(f.tables, layout, omega, radix)
                target = sum(c * w for c, w in zip(moved, weights))
                row.append(f_row[r] * h_row[target])
            out.append(tuple(row))
        return self._make(tuple(out))

    def invert(self, f: GwpElement) -> GwpElement:
        """Top-down: ``inv_i(γ) = f_i(γ·(f_{A(i)})^{-1})^{-1}``."""
        self._require_member(f)
        radix = self._radix_by_slot
        tables: List[Optional[Tuple[Permutation, ...]]] = [None] * len(self.labels)
        for i in self.poset.linear_extension():
            slot = self._slots[i]
            layout = self.layout(self.up[i])
            weights = self._radix[i]
            row = []
            for gamma in self.up_tuples(i):
                back = self._act_tables(tables, layout, gamma, radix)  # type: ignore[arg-type]
                row.append(f.tables[slot][sum(c * w for c, w in zip(back, weights))].inverse())
            tables[slot] = tuple(row)
        return self._make(tuple(tables))  # type: ignore[arg-type]

    def conjugate(self, h: GwpElement, f: GwpElement) -> GwpElement:
        """``h^f = f^{-1} h f``."""
        return self.multiply(self.multiply(self.invert(f), h), f)

    def power(self, f: GwpElement, exponent: int) -> GwpElement:
        base = f if exponent >= 0 else self.invert(f)
        out = self.identity()
        for _ in range(abs(exponent)):
            out = self.multiply(out, base)
        return out

    # projections

    def restrict(self, subset: Union[AncestralSet, Iterable[str]]) -> "GwpGroup":
        """F_J as a standalone product; ``A(j)`` is the same inside ``J``."""
        labels = self._ancestral_labels(subset)
        key = frozenset(labels)
        if key == frozenset(self.labels):
            return self
        with self._lock:
            cached = self._restricted.get(key)
            if cached is None:
                cached = GwpGroup(
                    self.poset.restrict(labels),
                    {j: self.domains[j] for j in labels},
                    {j: self.factors[j] for j in labels},
                    name=f"{self.name or 'F'}[{','.join(labels)}]",
                    max_delta=self.max_delta,
                )
                self._restricted[key] = cached
        return cached

    def project_element(self, f: GwpElement, subset: Union[AncestralSet, Iterable[str]]) -> GwpElement:
        self._require_member(f)
        target = self.restrict(subset)
        if target is self:
            return f
        return target._make(tuple(f.tables[self._slots[j]] for j in target.labels))

    def project_point(self, delta: Sequence[int], subset: Union[AncestralSet, Iterable[str]]) -> Point:
        labels = self._labels_of(subset)
        point = self._check_point(delta, self.labels)
        return tuple(point[self._slots[j]] for j in labels)

    def equiv(self, gamma: Sequence[int], delta: Sequence[int], subset: Union[AncestralSet, Iterable[str]]) -> bool:
        labels = self._ancestral_labels(subset)
        return self.project_point(gamma, labels) == self.project_point(delta, labels)

    def lift(self, f: GwpElement) -> GwpElement:
        """Embed an element of some F_J as the element of F̄_J (identity outside J)."""
        if f.group is self:
            return f
        source = f.group
        self._ancestral_labels(source.labels)
        tables = {j: f.table(j) for j in source.labels}
        return self.element(tables, validate=False)

    def kernel_of_projection(
        self,
        outer: Union[AncestralSet, Iterable[str]],
        inner: Union[AncestralSet, Iterable[str]],
    ) -> Callable[[GwpElement], bool]:
        """Membership test for the kernel of F_J -> F_K (elements of ``self.restrict(J)``)."""
        outer_labels = self._ancestral_labels(outer)
        inner_labels = self._ancestral_labels(inner)
        if not set(inner_labels) <= set(outer_labels):
            raise PosetError(f"{list(inner_labels)} is not contained in {list(outer_labels)}")
        group = self.restrict(outer_labels)

        def predicate(f: GwpElement) -> bool:
            group._require_member(f)
            return f.is_trivial_on(inner_labels)

        return predicate

    # enumeration and the faithful image

    @property
    def delta_size(self) -> int:
        return math.prod(self.domains[i] for i in self.labels)

    def points(self) -> Iterator[Point]:
        return itertools.product(*(range(self.domains[i]) for i in self.labels))

    def point_index(self, delta: Sequence[int]) -> int:
        point = self._check_point(delta, self.labels)
        index = 0
        for value, label in zip(point, self.labels):
            index = index * self.domains[label] + value
        return index

    def _guard_delta(self) -> None:
        if self.delta_size > self.max_delta:
            raise DeskGuardExceeded("Δ", self.delta_size, self.max_delta)

    def as_permutation(self, f: GwpElement) -> Permutation:
        """The permutation of Δ in lexicographic point order."""
        self._require_member(f)
        self._guard_delta()
        layout = self.layout(self.labels)
        radix = self._radix_by_slot
        images = []
        for delta in self.points():
            image = self._act_tables(f.tables, layout, delta, radix)
            index = 0
            for value, label in zip(image, self.labels):
                index = index * self.domains[label] + value
            images.append(index)
        return Permutation._trusted(tuple(images))

    def permutation_group(self, generators: Iterable[GwpElement]) -> PermGroupHandle:
        self._guard_delta()
        return PermGroupHandle(self.delta_size, [self.as_permutation(g) for g in generators])

    def closure_order(self, generators: Iterable[GwpElement]) -> int:
        return self.permutation_group(generators).order()

    def theoretical_order(self) -> int:
        return math.prod(self.factors[i].order() ** self.table_sizes[i] for i in self.labels)

    def elements(self, limit: int = 10_000) -> List[GwpElement]:
        size = self.theoretical_order()
        if size > limit:
            raise DeskGuardExceeded("|F|", size, limit)
        slots: List[List[Permutation]] = []
        shape: List[Tuple[int, int]] = []
        for i in self.labels:
            members = self.factors[i].elements(limit=limit)
            for _ in range(self.table_sizes[i]):
                slots.append(members)
            shape.append((self._slots[i], self.table_sizes[i]))
        out = []
        for choice in itertools.product(*slots):
            tables = []
            offset = 0
            for _, width in shape:
                tables.append(tuple(choice[offset:offset + width]))
                offset += width
            out.append(self._make(tuple(tables)))
        return out

    def random_element(self, rng: Random) -> GwpElement:
        return self._make(
            tuple(
                tuple(self.factors[i].random_element(rng) for _ in range(self.table_sizes[i]))
                for i in self.labels
            )
        )

    def is_transitive(self) -> bool:
        return all(self.factors[i].is_transitive() for i in self.labels)

    def has_symmetric_factors(self) -> bool:
        return all(self.factors[i].is_symmetric() for i in self.labels)

    def format_element(self, f: GwpElement) -> str:
        from .codec import format_element

        return format_element(f, compact=True, separator="; ")


def theoretical_order(group: GwpGroup) -> int:
    return group.theoretical_order()


def identity(group: GwpGroup) -> GwpElement:
    return group.identity()


def multiply(f: GwpElement, h: GwpElement) -> GwpElement:
    return f.group.multiply(f, h)


def invert(f: GwpElement) -> GwpElement:
    return f.group.invert(f)


def act(delta: Sequence[int], f: GwpElement) -> Point:
    return f.group.act(delta, f)


def project_element(f: GwpElement, subset: Union[AncestralSet, Iterable[str]]) -> GwpElement:
    return f.group.project_element(f, subset)


def project_point(group: GwpGroup, delta: Sequence[int], subset: Union[AncestralSet, Iterable[str]]) -> Point:
    return group.project_point(delta, subset)


def equiv_J(group: GwpGroup, gamma: Sequence[int], delta: Sequence[int], subset: Union[AncestralSet, Iterable[str]]) -> bool:
    return group.equiv(gamma, delta, subset)


def as_permutation(f: GwpElement) -> Permutation:
    return f.group.as_permutation(f)
