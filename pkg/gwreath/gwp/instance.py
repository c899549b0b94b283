from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .core import GwpGroup
from .errors import DomainMismatch, PosetError, SpecParseError
from .permgroup import PermGroupHandle, Permutation, parse_cycles
from .poset import Poset, parse_relation_chain
from .settings import DATA_DIR

logger = logging.getLogger(__name__)

CORPUS_DIR = DATA_DIR / "corpus"
SPEC_SUFFIX = ".gwp"
DEFAULT_DOMAIN = 2
GENERATOR_SEP_RE = re.compile(r"(?<=\))\s*,\s*")


@dataclass(frozen=True)
class InstanceSpec:
    name: str
    poset: Poset
    domains: Dict[str, int]
    # label -> explicit generators; labels left out use the symmetric group
    generators: Dict[str, Tuple[Permutation, ...]] = field(default_factory=dict)

    @property
    def symmetric(self) -> bool:
        return not self.generators

    def build(self, max_delta: int = 5_000) -> GwpGroup:
        factors = {
            label: PermGroupHandle(self.domains[label], gens)
            for label, gens in self.generators.items()
        }
        return GwpGroup(self.poset, self.domains, factors, name=self.name, max_delta=max_delta)


def _split_directive(line: str) -> Tuple[str, str]:
    key, sep, rest = line.partition(":")
    if not sep:
        raise ValueError(f"expected 'key: value', got {line!r}")
    return key.strip().lower(), rest.strip()


def parse_instance(text: str, name: str = "") -> InstanceSpec:
    elements: Optional[List[str]] = None
    covers: List[Tuple[str, str]] = []
    domains: Dict[str, Tuple[int, int]] = {}
    factor_lines: Dict[str, Tuple[int, str]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            key, value = _split_directive(line)
        except ValueError as exc:
            raise SpecParseError(line_no, str(exc)) from exc
        if key == "name":
            name = value or name
        elif key == "elements":
            if elements is not None:
                raise SpecParseError(line_no, "'elements' given twice")
            elements = value.split()
            if not elements:
                raise SpecParseError(line_no, "'elements' needs at least one label")
        elif key == "cover":
            try:
                covers.extend(parse_relation_chain(value))
            except PosetError as exc:
                raise SpecParseError(line_no, str(exc)) from exc
        elif key == "domain":
            parts = value.split()
            if len(parts) != 2:
                raise SpecParseError(line_no, f"expected 'domain: <label> <size>', got {value!r}")
            try:
                size = int(parts[1])
            except ValueError as exc:
                raise SpecParseError(line_no, f"domain size {parts[1]!r} is not an integer") from exc
            if size < 1:
                raise SpecParseError(line_no, f"domain size must be at least 1, got {size}")
            if parts[0] in domains:
                raise SpecParseError(line_no, f"domain of {parts[0]!r} given twice")
            domains[parts[0]] = (line_no, size)
        elif key == "factor":
            label, _, rest = value.partition(" ")
            if not label or not rest.strip():
                raise SpecParseError(line_no, f"expected 'factor: <label> symmetric|<cycles>', got {value!r}")
            factor_lines[label] = (line_no, rest.strip())
        else:
            raise SpecParseError(line_no, f"unknown directive {key!r}")
    if elements is None:
        raise SpecParseError(0, "missing 'elements' line")
    known = set(elements)
    for label, (line_no, _) in list(domains.items()) + list(factor_lines.items()):
        if label not in known:
            raise SpecParseError(line_no, f"unknown element {label!r}")
    try:
        poset = Poset.from_covers(elements, covers)
    except PosetError as exc:
        raise SpecParseError(0, str(exc)) from exc
    sizes = {label: domains[label][1] if label in domains else DEFAULT_DOMAIN for label in elements}
    generators: Dict[str, Tuple[Permutation, ...]] = {}
    for label, (line_no, rest) in factor_lines.items():
        if rest.lower() == "symmetric":
            continue
        try:
            gens = tuple(parse_cycles(chunk, sizes[label]) for chunk in GENERATOR_SEP_RE.split(rest) if chunk.strip())
        except DomainMismatch as exc:
            raise SpecParseError(line_no, str(exc)) from exc
        generators[label] = gens
    return InstanceSpec(name=name or "instance", poset=poset, domains=sizes, generators=generators)


def load_instance(path: Path) -> InstanceSpec:
    text = path.read_text(encoding="utf-8")
    return parse_instance(text, name=path.stem)


def load_corpus(directory: Path = CORPUS_DIR) -> List[InstanceSpec]:
    if not directory.is_dir():
        raise SpecParseError(0, f"corpus directory not found: {directory}")
    specs = [load_instance(path) for path in sorted(directory.glob(f"*{SPEC_SUFFIX}"))]
    logger.info("[corpus] dir=%s instances=%d", directory, len(specs))
    return specs
