"""Finite permutations and generated permutation groups.

Points are the dense integers ``0..n-1`` and permutations act on the right:
``(a * b)(p) == b(a(p))``.  A :class:`PermGroupHandle` keeps its generators
and builds a stabilizer chain (deterministic Schreier-Sims, first moved
point as the next base point) the first time an order or membership query
needs it.
"""
from __future__ import annotations

import itertools
import logging
import math
import re
import threading
from dataclasses import dataclass, field
from functools import cached_property
from random import Random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DeskGuardExceeded, DomainMismatch

logger = logging.getLogger(__name__)

CYCLE_RE = re.compile(r"\(([^()]*)\)")
POINT_SEP_RE = re.compile(r"[\s,]+")


@dataclass(frozen=True)
class Permutation:
    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.images:
            raise DomainMismatch("a permutation needs at least one point")
        if sorted(self.images) != list(range(len(self.images))):
            raise DomainMismatch(f"not a bijection on 0..{len(self.images) - 1}: {self.images}")

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> "Permutation":
        perm = object.__new__(cls)
        object.__setattr__(perm, "images", images)
        return perm

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, exponent: int) -> "Permutation":
        base = self if exponent >= 0 else self.inverse()
        result = identity(self.degree)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __str__(self) -> str:
        return format_cycles(self)

    def inverse(self) -> "Permutation":
        return self._inverse

    @cached_property
    def _inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for point, image in enumerate(self.images):
            inv[image] = point
        return Permutation._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(point == image for point, image in enumerate(self.images))

    def first_moved_point(self) -> Optional[int]:
        for point, image in enumerate(self.images):
            if point != image:
                return point
        return None

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = set()
        out: List[Tuple[int, ...]] = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            out.append(tuple(cycle))
        return out

    def cycle_type(self) -> Tuple[int, ...]:
        return tuple(sorted((len(cycle) for cycle in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(*self.cycle_type())


def identity(degree: int) -> Permutation:
    if degree < 1:
        raise DomainMismatch("degree must be at least 1")
    return Permutation._trusted(tuple(range(degree)))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` first, then ``b``."""
    if a.degree != b.degree:
        raise DomainMismatch(f"cannot compose degree {a.degree} with degree {b.degree}")
    return Permutation._trusted(tuple(map(b.images.__getitem__, a.images)))


def invert(g: Permutation) -> Permutation:
    return g.inverse()


def cycle(degree: int, points: Sequence[int]) -> Permutation:
    images = list(range(degree))
    if len(set(points)) != len(points):
        raise DomainMismatch(f"repeated point in cycle {tuple(points)}")
    for point in points:
        if not 0 <= point < degree:
            raise DomainMismatch(f"point {point} outside 0..{degree - 1}")
    for a, b in zip(points, points[1:]):
        images[a] = b
    if points:
        images[points[-1]] = points[0]
    return Permutation._trusted(tuple(images))


def transposition(degree: int, a: int = 0, b: int = 1) -> Permutation:
    return cycle(degree, (a, b))


def sign(g: Permutation) -> int:
    """Parity as an element of C_2: 0 for even, 1 for odd."""
    return sum(len(c) - 1 for c in g.cycles()) % 2


def format_cycles(g: Permutation) -> str:
    parts = ["(" + " ".join(str(p) for p in c) + ")" for c in g.cycles()]
    return "".join(parts) if parts else "()"


def parse_cycles(text: str, degree: Optional[int] = None) -> Permutation:
    """Parse cycle notation such as ``(0 1)(2 3)``; ``()`` is the identity.

    Cycles are multiplied left to right.  Without ``degree`` the smallest
    degree covering every mentioned point is used.
    """
    stripped = text.strip()
    if not stripped:
        raise DomainMismatch("empty permutation text")
    leftover = CYCLE_RE.sub("", stripped).strip()
    if leftover:
        raise DomainMismatch(f"could not parse permutation {text!r}")
    cycles: List[List[int]] = []
    for match in CYCLE_RE.finditer(stripped):
        body = match.group(1).strip()
        if not body:
            continue
        try:
            cycles.append([int(token) for token in POINT_SEP_RE.split(body) if token])
        except ValueError as exc:
            raise DomainMismatch(f"could not parse permutation {text!r}") from exc
    needed = max((max(c) for c in cycles), default=0) + 1
    if degree is None:
        degree = needed
    elif needed > degree:
        raise DomainMismatch(f"{text!r} moves points outside 0..{degree - 1}")
    result = identity(degree)
    for c in cycles:
        result = result * cycle(degree, c)
    return result


@dataclass
class _Level:
    point: int
    transversal: Dict[int, Permutation] = field(default_factory=dict)
    inverses: Dict[int, Permutation] = field(default_factory=dict)

    @classmethod
    def build(cls, point: int, generators: Sequence[Permutation], degree: int) -> "_Level":
        level = cls(point=point)
        start = identity(degree)
        level.transversal[point] = start
        level.inverses[point] = start
        queue = [point]
        while queue:
            current = queue.pop()
            rep = level.transversal[current]
            for gen in generators:
                image = gen.images[current]
                if image not in level.transversal:
                    word = rep * gen
                    level.transversal[image] = word
                    level.inverses[image] = word.inverse()
                    queue.append(image)
        return level


class StabilizerChain:
    """Base, strong generators and one transversal per base point."""

    def __init__(self, degree: int, generators: Sequence[Permutation]) -> None:
        self.degree = degree
        self.base: List[int] = []
        self.strong: List[Permutation] = []
        self.levels: List[_Level] = []
        self._schreier_sims(generators)

    def _level_generators(self, depth: int) -> List[Permutation]:
        fixed = self.base[:depth]
        return [s for s in self.strong if all(s.images[b] == b for b in fixed)]

    def _schreier_sims(self, generators: Sequence[Permutation]) -> None:
        self.strong = [g for g in generators if not g.is_identity()]
        for g in self.strong:
            if all(g.images[b] == b for b in self.base):
                self.base.append(g.first_moved_point())  # type: ignore[arg-type]
        self.levels = [
            _Level.build(self.base[d], self._level_generators(d), self.degree)
            for d in range(len(self.base))
        ]
        depth = len(self.base) - 1
        while depth >= 0:
            grown = self._close_level(depth)
            depth = grown if grown is not None else depth - 1

    def _close_level(self, depth: int) -> Optional[int]:
        """Sift every Schreier generator at ``depth``.

        Returns the deeper level that received a new strong generator, or
        None when the level is closed.
        """
        level = self.levels[depth]
        gens = self._level_generators(depth)
        for point, rep in list(level.transversal.items()):
            for gen in gens:
                image = gen.images[point]
                schreier = rep * gen * level.inverses[image]
                residue, stop = self.sift(schreier, depth + 1)
                if residue.is_identity():
                    continue
                self.strong.append(residue)
                if stop == len(self.base):
                    self.base.append(residue.first_moved_point())  # type: ignore[arg-type]
                    self.levels.append(_Level(point=self.base[-1]))
                for d in range(depth + 1, stop + 1):
                    self.levels[d] = _Level.build(self.base[d], self._level_generators(d), self.degree)
                return stop
        return None

    def sift(self, g: Permutation, start: int = 0) -> Tuple[Permutation, int]:
        for depth in range(start, len(self.levels)):
            level = self.levels[depth]
            image = g.images[level.point]
            inverse = level.inverses.get(image)
            if inverse is None:
                return g, depth
            g = g * inverse
        return g, len(self.levels)

    def order(self) -> int:
        result = 1
        for level in self.levels:
            result *= len(level.transversal)
        return result

    def random_element(self, rng: Random) -> Permutation:
        g = identity(self.degree)
        for level in reversed(self.levels):
            g = g * rng.choice(list(level.transversal.values()))
        return g


class PermGroupHandle:
    """A permutation group given by generators, with a lazily built chain."""

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()) -> None:
        if degree < 1:
            raise DomainMismatch("degree must be at least 1")
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise DomainMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = gens
        self._chain: Optional[StabilizerChain] = None
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermGroupHandle(degree={self.degree}, generators=[{gens}])"

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(self.degree, self.generators)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DomainMismatch(f"element of degree {g.degree} tested in a group of degree {self.degree}")
        residue, _ = self.chain.sift(g)
        return residue.is_identity()

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def identity(self) -> Permutation:
        return identity(self.degree)

    def orbit(self, point: int) -> List[int]:
        seen = {point}
        queue = [point]
        while queue:
            current = queue.pop()
            for g in self.generators:
                image = g.images[current]
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
        return sorted(seen)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def is_symmetric(self) -> bool:
        return self.order() == math.factorial(self.degree)

    def elements(self, limit: int = 10_000) -> List[Permutation]:
        """Every element, in breadth-first order from the identity."""
        size = self.order()
        if size > limit:
            raise DeskGuardExceeded("group order", size, limit)
        start = self.identity()
        seen = {start}
        out = [start]
        frontier = [start]
        while frontier:
            nxt: List[Permutation] = []
            for g in frontier:
                for gen in self.generators:
                    h = g * gen
                    if h not in seen:
                        seen.add(h)
                        out.append(h)
                        nxt.append(h)
            frontier = nxt
        return out

    def random_element(self, rng: Random) -> Permutation:
        return self.chain.random_element(rng)

    def random_word(self, rng: Random, length: int = 32) -> Permutation:
        g = self.identity()
        if not self.generators:
            return g
        for _ in range(length):
            g = g * rng.choice(self.generators)
        return g

    def with_generators(self, extra: Iterable[Permutation]) -> "PermGroupHandle":
        return PermGroupHandle(self.degree, self.generators + tuple(extra))

    def normal_closure(self, elements: Iterable[Permutation]) -> "PermGroupHandle":
        """Smallest subgroup normalised by this group containing ``elements``."""
        closure = PermGroupHandle(self.degree, [g for g in elements if not g.is_identity()])
        queue = list(closure.generators)
        while queue:
            x = queue.pop()
            for g in self.generators:
                conj = g.inverse() * x * g
                if not closure.contains(conj):
                    closure = closure.with_generators([conj])
                    queue.append(conj)
        return closure

    def derived_subgroup(self) -> "PermGroupHandle":
        commutators = [
            a.inverse() * b.inverse() * a * b
            for a, b in itertools.combinations(self.generators, 2)
        ]
        return self.normal_closure(commutators)


def symmetric_group(n: int) -> PermGroupHandle:
    if n < 1:
        raise DomainMismatch("the symmetric group needs at least one point")
    if n == 1:
        return PermGroupHandle(1)
    gens = [transposition(n, 0, 1)]
    if n > 2:
        gens.append(cycle(n, list(range(n))))
    return PermGroupHandle(n, gens)


def alternating_group(n: int) -> PermGroupHandle:
    if n < 1:
        raise DomainMismatch("the alternating group needs at least one point")
    return PermGroupHandle(n, [cycle(n, (0, 1, k)) for k in range(2, n)])


def group_order(group: PermGroupHandle) -> int:
    return group.order()


def contains(group: PermGroupHandle, g: Permutation) -> bool:
    return group.contains(g)


def is_transitive(group: PermGroupHandle) -> bool:
    return group.is_transitive()


def equals_group(a: PermGroupHandle, b: PermGroupHandle) -> bool:
    if a.degree != b.degree:
        raise DomainMismatch(f"groups of degree {a.degree} and {b.degree} are not comparable")
    return a.order() == b.order() and all(b.contains(g) for g in a.generators)


def generates(generators: Sequence[Permutation], degree: int, target_order: int) -> bool:
    return PermGroupHandle(degree, generators).order() == target_order


def _prime_factors(n: int) -> List[int]:
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def abelian_quotient_rank(group: PermGroupHandle) -> int:
    """d(G/G'), the generator count of the abelianisation.

    For each prime p the index of G'G^p in G is p^r with r the p-rank of
    G/G'; the abelianisation needs max_p r generators.
    """
    order = group.order()
    derived = group.derived_subgroup()
    quotient = order // derived.order()
    rank = 0
    for p in _prime_factors(quotient):
        powered = derived.with_generators(g ** p for g in group.generators)
        index = order // powered.order()
        r = 0
        while index > 1:
            index //= p
            r += 1
        rank = max(rank, r)
    return rank


def conjugacy_class_representatives(group: PermGroupHandle, elements: Sequence[Permutation]) -> List[Permutation]:
    seen = set()
    reps: List[Permutation] = []
    for g in elements:
        if g in seen:
            continue
        reps.append(g)
        seen.add(g)
        queue = [g]
        while queue:
            x = queue.pop()
            for s in group.generators:
                y = s.inverse() * x * s
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return reps


def min_generators_exact(
    group: PermGroupHandle,
    max_k: int,
    *,
    rng: Optional[Random] = None,
    exhaustive_order: int = 10_000,
    randomized_order: int = 1_000_000,
    search_budget: int = 2_000,
    word_length: int = 32,
) -> Optional[int]:
    """Smallest k <= max_k such that some k elements generate ``group``.

    Sizes below the abelian-quotient rank are ruled out without search.
    Each remaining size is first tried with ``search_budget`` random draws;
    when the group is small enough to enumerate, a failed random search is
    followed by an exhaustive one (first element up to conjugacy), so the
    answer is exact there.  Returns None when nothing up to ``max_k`` works.
    """
    order = group.order()
    if order > randomized_order:
        raise DeskGuardExceeded("group order", order, randomized_order)
    if order == 1:
        return 0
    rng = rng or Random(0)
    lower = abelian_quotient_rank(group)
    elements: Optional[List[Permutation]] = None
    if order <= exhaustive_order:
        elements = [g for g in group.elements(limit=exhaustive_order) if not g.is_identity()]

    def draw() -> Permutation:
        if elements is not None:
            return rng.choice(elements)
        return group.random_word(rng, word_length)

    for k in range(max(1, lower), max_k + 1):
        if k == 1:
            pool = elements if elements is not None else [draw() for _ in range(search_budget)]
            if any(g.order() == order for g in pool):
                return 1
            continue
        for _ in range(search_budget):
            if generates([draw() for _ in range(k)], group.degree, order):
                logger.debug("[oracle] k=%d found by random draws", k)
                return k
        if elements is None:
            logger.warning("[oracle] k=%d not found within %d draws; absence is not proved", k, search_budget)
            continue
        if _exhaustive_search(group, k, elements, order):
            return k
    return None


def _exhaustive_search(group: PermGroupHandle, k: int, elements: List[Permutation], order: int) -> bool:
    reps = conjugacy_class_representatives(group, elements)
    for rep in reps:
        for rest in itertools.combinations(elements, k - 1):
            if generates((rep,) + rest, group.degree, order):
                return True
    return False
