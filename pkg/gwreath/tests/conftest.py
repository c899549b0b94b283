from __future__ import annotations

import logging
from random import Random
from typing import Callable

import pytest

from gwp.core import GwpGroup
from gwp.instance import CORPUS_DIR, load_instance, parse_instance
from gwp.settings import DeskSettings


@pytest.fixture(autouse=True)
def _isolate_env(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in DeskSettings.model_fields:
        monkeypatch.delenv(f"GWP_{name.upper()}", raising=False)
    monkeypatch.delenv("GWP_POLICY", raising=False)


@pytest.fixture(autouse=True)
def _reset_logging():
    yield
    root = logging.getLogger("gwp")
    root.handlers.clear()
    root.propagate = True
    root.setLevel(logging.NOTSET)


@pytest.fixture
def rng() -> Random:
    return Random(7)


@pytest.fixture
def desk_settings() -> DeskSettings:
    return DeskSettings(sample_size=20, axiom_samples=200)


@pytest.fixture
def corpus_group() -> Callable[[str], GwpGroup]:
    def load(name: str) -> GwpGroup:
        return load_instance(CORPUS_DIR / f"{name}.gwp").build()

    return load


@pytest.fixture
def build() -> Callable[..., GwpGroup]:
    def make(text: str, name: str = "inline") -> GwpGroup:
        return parse_instance(text, name=name).build()

    return make


@pytest.fixture
def chain2(corpus_group) -> GwpGroup:
    return corpus_group("chain2")


@pytest.fixture
def chain3(corpus_group) -> GwpGroup:
    return corpus_group("chain3")


@pytest.fixture
def antichain22(corpus_group) -> GwpGroup:
    return corpus_group("antichain22")


@pytest.fixture
def antichain23(corpus_group) -> GwpGroup:
    return corpus_group("antichain23")


@pytest.fixture
def pyramid(corpus_group) -> GwpGroup:
    return corpus_group("pyramid")


@pytest.fixture
def triangle(corpus_group) -> GwpGroup:
    return corpus_group("triangle")


@pytest.fixture
def wrdi(corpus_group) -> GwpGroup:
    return corpus_group("wrdi")


@pytest.fixture
def intransitive(corpus_group) -> GwpGroup:
    return corpus_group("intransitive")
