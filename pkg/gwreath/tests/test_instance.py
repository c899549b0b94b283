from __future__ import annotations

import pytest

from gwp.errors import SpecParseError
from gwp.instance import CORPUS_DIR, load_corpus, parse_instance
from gwp.permgroup import parse_cycles

PYRAMID = """
# i and j below k
name: desk
elements: i j k
cover: i < k
cover: j < k   # second cover
domain: k 3
"""


def test_parse_full_instance():
    spec = parse_instance(PYRAMID)
    assert spec.name == "desk"
    assert spec.poset.elements == ("i", "j", "k")
    assert spec.poset.less("j", "k")
    assert spec.domains == {"i": 2, "j": 2, "k": 3}
    assert spec.symmetric
    assert spec.build().theoretical_order() == 2 ** 3 * 2 ** 3 * 6


def test_chained_covers_and_default_name():
    spec = parse_instance("elements: a b c\ncover: a < b < c\n", name="fallback")
    assert spec.name == "fallback"
    assert spec.poset.is_chain()


def test_explicit_factor_generators():
    spec = parse_instance("elements: a\ndomain: a 4\nfactor: a (0 1), (2 3)\n")
    assert spec.generators["a"] == (parse_cycles("(0 1)", 4), parse_cycles("(2 3)", 4))
    assert not spec.symmetric
    group = spec.build()
    assert group.factors["a"].order() == 4
    assert not group.is_transitive()


def test_factor_symmetric_keyword():
    spec = parse_instance("elements: a\ndomain: a 3\nfactor: a symmetric\n")
    assert spec.symmetric
    assert spec.build().theoretical_order() == 6


@pytest.mark.parametrize(
    "text, line_no",
    [
        ("elements: a\nbogus line\n", 2),
        ("elements: a\nelements: b\n", 2),
        ("elements: a b\ncover: a <\n", 2),
        ("elements: a\ndomain: a x\n", 2),
        ("elements: a\ndomain: a 0\n", 2),
        ("elements: a\n\ndomain: z 2\n", 3),
        ("elements: a\ndomain: a 2\ndomain: a 3\n", 3),
        ("elements: a\nfactor: a (0 5)\n", 2),
        ("elements: a\nfactor: a\n", 2),
        ("elements: a\ncolour: red\n", 2),
        ("cover: a < b\n", 0),
        ("elements: a b\ncover: a < b\ncover: b < a\n", 0),
    ],
)
def test_parse_errors_carry_line_numbers(text, line_no):
    with pytest.raises(SpecParseError) as info:
        parse_instance(text)
    assert info.value.line_no == line_no


def test_load_corpus_is_sorted_by_file_name():
    specs = load_corpus()
    names = [spec.name for spec in specs]
    assert names == sorted(names)
    assert {"chain2", "pyramid", "triangle", "wrdi", "intransitive", "twochains"} <= set(names)


def test_missing_corpus_directory(tmp_path):
    with pytest.raises(SpecParseError):
        load_corpus(tmp_path / "nowhere")
    assert load_corpus(tmp_path) == []
    assert CORPUS_DIR.is_dir()
