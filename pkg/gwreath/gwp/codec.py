"""Text form of product elements.

One entry per line (or per ``;`` in the one-line form)::

    a [0 1] (0 1)
    b [] (0 2 1)

i.e. index label, the tuple of Δ_{A(i)} in brackets (empty for a maximal
index) and the permutation in cycle notation.  ``format_element`` lists
every table entry; ``compact=True`` drops identity entries and writes the
identity element as ``1``.  The parser accepts both forms; entries not
mentioned are the identity.
"""
from __future__ import annotations

import re
from typing import Dict, List, Tuple

from .core import GwpElement, GwpGroup
from .errors import DomainMismatch, SpecParseError
from .permgroup import Permutation, format_cycles, parse_cycles

ENTRY_RE = re.compile(r"^(?P<label>[^\s\[\]]+)\s*\[(?P<tuple>[^\]]*)\]\s*(?P<perm>.+)$")
IDENTITY_TOKEN = "1"


def format_element(f: GwpElement, *, compact: bool = False, separator: str = "\n") -> str:
    group = f.group
    lines: List[str] = []
    for i in group.labels:
        for omega, perm in zip(group.up_tuples(i), f.table(i)):
            if compact and perm.is_identity():
                continue
            lines.append(f"{i} [{' '.join(str(c) for c in omega)}] {format_cycles(perm)}")
    if not lines:
        return IDENTITY_TOKEN
    return separator.join(lines)


def format_point(delta: Tuple[int, ...]) -> str:
    return "(" + ",".join(str(c) for c in delta) + ")"


def parse_element(group: GwpGroup, text: str) -> GwpElement:
    chunks = [chunk.strip() for line in text.splitlines() for chunk in line.split(";")]
    entries: Dict[str, Dict[Tuple[int, ...], Permutation]] = {}
    for number, chunk in enumerate((c for c in chunks if c), start=1):
        if chunk == IDENTITY_TOKEN:
            continue
        match = ENTRY_RE.match(chunk)
        if match is None:
            raise SpecParseError(number, f"expected 'label [tuple] cycles', got {chunk!r}")
        label = match.group("label")
        if label not in group.domains:
            raise SpecParseError(number, f"unknown index {label!r}")
        try:
            omega = tuple(int(token) for token in match.group("tuple").split())
            perm = parse_cycles(match.group("perm"), group.domains[label])
            group.rank(label, omega)
        except (ValueError, DomainMismatch) as exc:
            raise SpecParseError(number, str(exc)) from exc
        if any(not 0 <= c < group.domains[j] for c, j in zip(omega, group.up[label])):
            raise SpecParseError(number, f"tuple {omega} is outside Δ_A({label})")
        table = entries.setdefault(label, {})
        if omega in table:
            raise SpecParseError(number, f"entry {label} {list(omega)} given twice")
        table[omega] = perm
    try:
        return group.element(entries)
    except DomainMismatch as exc:
        raise SpecParseError(0, str(exc)) from exc
