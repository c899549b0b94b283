"""The sign quotient F -> C_2^I and the rank certificate for d(F) >= |I|.

Bit i of an element is the parity of the product of all entries of its
i-table.  Multiplication reindexes the second factor's table by a
permutation of Δ_{A(i)}, which leaves that parity unchanged, so the map is
a homomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

import galois
import numpy as np

from ..core import GwpElement, GwpGroup
from ..errors import HypothesisViolation
from ..permgroup import sign

GF2 = galois.GF(2)


@dataclass(frozen=True)
class SignVector:
    labels: Tuple[str, ...]
    bits: Tuple[int, ...]

    def __xor__(self, other: "SignVector") -> "SignVector":
        if self.labels != other.labels:
            raise HypothesisViolation("sign vectors over different index sets")
        return SignVector(self.labels, tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(self.labels, self.bits))

    def is_zero(self) -> bool:
        return not any(self.bits)


def require_symmetric(group: GwpGroup) -> None:
    if not group.has_symmetric_factors():
        odd = [i for i in group.labels if not group.factors[i].is_symmetric()]
        raise HypothesisViolation(f"the sign quotient needs symmetric factors; not symmetric at {', '.join(odd)}")


def sign_quotient(f: GwpElement) -> SignVector:
    group = f.group
    require_symmetric(group)
    bits = []
    for table in f.tables:
        parity = 0
        for perm in table:
            parity ^= sign(perm)
        bits.append(parity)
    return SignVector(group.labels, tuple(bits))


def sign_matrix(generators: Sequence[GwpElement], labels: Sequence[str]) -> galois.FieldArray:
    rows = [list(sign_quotient(g).bits) for g in generators]
    return GF2(np.array(rows, dtype=int).reshape(len(rows), len(labels)))


def sign_rank(generators: Sequence[GwpElement], labels: Sequence[str]) -> int:
    if not generators or not labels:
        return 0
    return int(np.linalg.matrix_rank(sign_matrix(generators, labels)))


def rank_of_vectors(vectors: Iterable[Sequence[int]], width: int) -> int:
    rows = [list(v) for v in vectors]
    if not rows or width == 0:
        return 0
    return int(np.linalg.matrix_rank(GF2(np.array(rows, dtype=int).reshape(len(rows), width))))


def lower_bound_certificate(generators: Sequence[GwpElement], group: GwpGroup | None = None) -> bool:
    """True iff the sign vectors of ``generators`` span C_2^I."""
    if group is None:
        if not generators:
            return False
        group = generators[0].group
    require_symmetric(group)
    return sign_rank(generators, group.labels) == len(group.labels)
