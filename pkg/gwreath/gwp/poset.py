from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

import networkx as nx

from .errors import PosetError


class SmallShape(str, Enum):
    CHAIN = "chain"
    ANTICHAIN = "antichain"
    TRIANGLE = "triangle"
    PYRAMID = "pyramid"
    WRDI = "wrdi"
    NOT_SMALL = "not_small"


@dataclass(frozen=True)
class Classification:
    shape: SmallShape
    # role name ("i", "j", "k") -> label
    witness: Dict[str, str] = field(default_factory=dict, hash=False, compare=False)


@dataclass(frozen=True)
class Poset:
    """A finite strict partial order; ``elements`` is kept in sorted label order."""

    elements: Tuple[str, ...]
    strictly_less: FrozenSet[Tuple[str, str]] = frozenset()

    def __post_init__(self) -> None:
        if len(set(self.elements)) != len(self.elements):
            raise PosetError(f"duplicate labels in {self.elements}")
        for label in self.elements:
            if not isinstance(label, str) or not label:
                raise PosetError(f"labels must be non-empty strings, got {label!r}")
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))
        known = set(self.elements)
        for a, b in self.strictly_less:
            if a not in known or b not in known:
                raise PosetError(f"relation {a} < {b} mentions an unknown label")
            if a == b:
                raise PosetError(f"relation {a} < {a} is reflexive")
            if (b, a) in self.strictly_less:
                raise PosetError(f"both {a} < {b} and {b} < {a}")
        for (a, b), (c, d) in itertools.product(self.strictly_less, repeat=2):
            if b == c and (a, d) not in self.strictly_less:
                raise PosetError(f"not transitive: {a} < {b} < {d} but {a} < {d} is missing")

    @classmethod
    def from_covers(cls, elements: Iterable[str], covers: Iterable[Tuple[str, str]] = ()) -> "Poset":
        """Build a poset from Hasse edges ``(a, b)`` meaning ``a < b``."""
        labels = list(elements)
        graph = nx.DiGraph()
        graph.add_nodes_from(labels)
        for a, b in covers:
            if a not in graph or b not in graph:
                raise PosetError(f"cover {a} < {b} mentions an unknown label")
            if a == b:
                raise PosetError(f"cover {a} < {a} is reflexive")
            graph.add_edge(a, b)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = nx.find_cycle(graph)
            raise PosetError("covers contain a cycle: " + " < ".join(a for a, _ in cycle))
        closure = nx.transitive_closure_dag(graph)
        return cls(elements=tuple(labels), strictly_less=frozenset(closure.edges()))

    @property
    def size(self) -> int:
        return len(self.elements)

    def _graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from(self.strictly_less)
        return graph

    def _require(self, label: str) -> None:
        if label not in self.elements:
            raise PosetError(f"unknown element {label!r}")

    def less(self, a: str, b: str) -> bool:
        return (a, b) in self.strictly_less

    def up_set(self, i: str) -> "AncestralSet":
        self._require(i)
        return AncestralSet(self, frozenset(b for a, b in self.strictly_less if a == i))

    def down_set(self, i: str) -> FrozenSet[str]:
        self._require(i)
        return frozenset(a for a, b in self.strictly_less if b == i)

    def is_ancestral(self, subset: Iterable[str]) -> bool:
        members = set(subset)
        for label in members:
            self._require(label)
        return all(b in members for a, b in self.strictly_less if a in members)

    def ancestral(self, subset: Iterable[str]) -> "AncestralSet":
        return AncestralSet(self, frozenset(subset))

    def whole(self) -> "AncestralSet":
        return AncestralSet(self, frozenset(self.elements))

    def minimal_elements(self) -> List[str]:
        has_lower = {b for _, b in self.strictly_less}
        return [label for label in self.elements if label not in has_lower]

    def maximal_elements(self) -> List[str]:
        has_upper = {a for a, _ in self.strictly_less}
        return [label for label in self.elements if label not in has_upper]

    def incomparable(self, i: str, j: str) -> bool:
        self._require(i)
        self._require(j)
        if i == j:
            raise PosetError(f"incomparability needs two distinct elements, got {i!r} twice")
        return not self.less(i, j) and not self.less(j, i)

    def is_chain(self) -> bool:
        return all(not self.incomparable(a, b) for a, b in itertools.combinations(self.elements, 2))

    def is_antichain(self) -> bool:
        return not self.strictly_less

    def in_order(self, labels: Iterable[str]) -> List[str]:
        members = set(labels)
        return [label for label in self.elements if label in members]

    def restrict(self, subset: Iterable[str]) -> "Poset":
        members = set(subset)
        for label in members:
            self._require(label)
        pairs = frozenset((a, b) for a, b in self.strictly_less if a in members and b in members)
        return Poset(elements=tuple(members), strictly_less=pairs)

    def hasse_edges(self) -> List[Tuple[str, str]]:
        reduced = nx.transitive_reduction(self._graph())
        return sorted(reduced.edges())

    def linear_extension(self) -> List[str]:
        """Every element after all the elements above it."""
        return list(nx.lexicographical_topological_sort(self._graph().reverse(copy=True)))

    def ancestral_subsets(self) -> Iterator["AncestralSet"]:
        """Every upward-closed subset, generated from its antichain of minimal members."""
        graph = self._graph()
        seen = set()
        for antichain in nx.antichains(graph):
            members = set(antichain)
            for label in antichain:
                members |= nx.descendants(graph, label)
            key = frozenset(members)
            if key not in seen:
                seen.add(key)
                yield AncestralSet(self, key)

    def classify_small(self) -> Classification:
        return classify_small(self)

    def describe(self) -> str:
        edges = self.hasse_edges()
        relations = ", ".join(f"{a} < {b}" for a, b in edges) or "no relations"
        return f"{{{' '.join(self.elements)}}} with {relations}"


@dataclass(frozen=True)
class AncestralSet:
    poset: Poset = field(repr=False)
    members: FrozenSet[str]

    def __post_init__(self) -> None:
        if not self.poset.is_ancestral(self.members):
            raise PosetError(f"{sorted(self.members)} is not ancestral")

    def __contains__(self, label: object) -> bool:
        return label in self.members

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels())

    def __len__(self) -> int:
        return len(self.members)

    def labels(self) -> List[str]:
        return self.poset.in_order(self.members)

    def union(self, other: "AncestralSet") -> "AncestralSet":
        return AncestralSet(self.poset, self.members | other.members)

    def intersection(self, other: "AncestralSet") -> "AncestralSet":
        return AncestralSet(self.poset, self.members & other.members)

    def without(self, label: str) -> "AncestralSet":
        """Drop a minimal member; the rest stays upward closed."""
        return AncestralSet(self.poset, self.members - {label})


def up_set(poset: Poset, i: str) -> AncestralSet:
    return poset.up_set(i)


def is_ancestral(poset: Poset, subset: Iterable[str]) -> bool:
    return poset.is_ancestral(subset)


def minimal_elements(poset: Poset) -> List[str]:
    return poset.minimal_elements()


def incomparable(poset: Poset, i: str, j: str) -> bool:
    return poset.incomparable(i, j)


def is_chain(poset: Poset) -> bool:
    return poset.is_chain()


def is_antichain(poset: Poset) -> bool:
    return poset.is_antichain()


def classify_small(poset: Poset) -> Classification:
    """Name the shape of a 2- or 3-element poset, with the roles i, j, k."""
    labels = poset.elements
    pairs = sorted(poset.strictly_less)
    comparable = len(pairs)
    if len(labels) == 2:
        if comparable:
            (low, high), = pairs
            return Classification(SmallShape.CHAIN, {"i": low, "j": high})
        return Classification(SmallShape.ANTICHAIN, {"i": labels[0], "j": labels[1]})
    if len(labels) != 3:
        return Classification(SmallShape.NOT_SMALL)
    if comparable == 0:
        return Classification(SmallShape.ANTICHAIN, dict(zip("ijk", labels)))
    if comparable == 3:
        order = sorted(labels, key=lambda label: len(poset.down_set(label)))
        return Classification(SmallShape.CHAIN, dict(zip("ijk", order)))
    if comparable == 1:
        (low, high), = pairs
        (isolated,) = [label for label in labels if label not in (low, high)]
        return Classification(SmallShape.WRDI, {"i": low, "j": isolated, "k": high})
    (a, b), (c, d) = pairs
    if a == c:
        uppers = sorted((b, d))
        return Classification(SmallShape.TRIANGLE, {"i": a, "j": uppers[0], "k": uppers[1]})
    lowers = sorted((a, c))
    return Classification(SmallShape.PYRAMID, {"i": lowers[0], "j": lowers[1], "k": b})


def all_posets(labels: Sequence[str]) -> Iterator[Poset]:
    """Every strict partial order on ``labels``; brute force, meant for tiny label sets."""
    candidates = [pair for pair in itertools.permutations(labels, 2)]
    for mask in range(1 << len(candidates)):
        chosen = frozenset(p for bit, p in enumerate(candidates) if mask >> bit & 1)
        try:
            yield Poset(elements=tuple(labels), strictly_less=chosen)
        except PosetError:
            continue


def parse_relation_chain(text: str) -> List[Tuple[str, str]]:
    """``a < b < c`` -> [(a, b), (b, c)]."""
    parts = [part.strip() for part in text.split("<")]
    if len(parts) < 2 or any(not part for part in parts):
        raise PosetError(f"expected 'a < b', got {text!r}")
    for part in parts:
        if len(part.split()) != 1:
            raise PosetError(f"label {part!r} contains whitespace")
    return list(zip(parts, parts[1:]))

