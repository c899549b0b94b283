from __future__ import annotations

from random import Random

import pytest

from gwp import core
from gwp.core import GwpGroup
from gwp.errors import DeskGuardExceeded, DomainMismatch, PosetError
from gwp.permgroup import identity, parse_cycles, transposition
from gwp.poset import Poset

SWAP = transposition(2)
ID2 = identity(2)


@pytest.mark.parametrize(
    "name, order, delta",
    [
        ("chain2", 8, 4),
        ("antichain22", 4, 4),
        ("antichain23", 12, 6),
        ("pyramid", 32, 8),
        ("triangle", 64, 8),
        ("wrdi", 16, 8),
        ("chain3", 128, 8),
        ("twochains", 64, 16),
        ("intransitive", 8, 6),
    ],
)
def test_theoretical_order_and_delta(corpus_group, name, order, delta):
    group = corpus_group(name)
    assert group.theoretical_order() == order
    assert core.theoretical_order(group) == order
    assert group.delta_size == delta
    assert group.closure_order(group.plant(i, w, s) for i in group.labels for w in group.up_tuples(i)
                               for s in group.factors[i].generators) == order


def test_table_layout(chain2, triangle):
    assert chain2.table_sizes == {"a": 2, "b": 1}
    assert chain2.up_tuples("a") == [(0,), (1,)]
    assert chain2.up_tuples("b") == [()]
    assert triangle.up["i"] == ("j", "k")
    assert triangle.rank("i", (1, 0)) == 2
    assert triangle.anchor("i") == (0, 0)
    with pytest.raises(DomainMismatch):
        triangle.rank("i", (1,))


def test_action_on_points(chain2):
    f = chain2.plant("a", (0,), SWAP)
    h = chain2.element({"b": SWAP})
    assert chain2.act((0, 0), f) == (1, 0)
    assert chain2.act((0, 1), f) == (0, 1)
    assert chain2.act((0, 0), chain2.multiply(f, h)) == (1, 1)
    assert chain2.act((0, 0), chain2.multiply(h, f)) == (0, 1)


def test_multiplication_reindexes_the_second_table(chain2):
    f = chain2.plant("a", (0,), SWAP)
    h = chain2.element({"b": SWAP})
    assert chain2.multiply(f, h).table("a") == (SWAP, ID2)
    assert chain2.multiply(h, f).table("a") == (ID2, SWAP)
    assert chain2.multiply(f, h) != chain2.multiply(h, f)


def test_group_laws_exhaustively(chain2):
    elements = chain2.elements()
    z = chain2.identity()
    assert len(set(elements)) == 8
    for f in elements:
        inverse = chain2.invert(f)
        assert chain2.multiply(f, inverse) == z
        assert chain2.multiply(inverse, f) == z
        assert f.inverse() == inverse
        for h in elements:
            for delta in chain2.points():
                assert chain2.act(delta, f * h) == chain2.act(chain2.act(delta, f), h)


def test_inverse_on_deeper_chain(chain3):
    rng = Random(1)
    for _ in range(30):
        f = chain3.random_element(rng)
        assert chain3.multiply(f, chain3.invert(f)).is_identity()


def test_conjugate_and_power(pyramid):
    rng = Random(2)
    f, h = pyramid.random_element(rng), pyramid.random_element(rng)
    assert pyramid.conjugate(h, f) == pyramid.multiply(pyramid.multiply(pyramid.invert(f), h), f)
    order = pyramid.as_permutation(f).order()
    assert pyramid.power(f, order).is_identity()
    assert pyramid.power(f, -1) == pyramid.invert(f)


def test_element_builders(chain2):
    constant = chain2.element({"a": SWAP})
    assert constant.table("a") == (SWAP, SWAP)
    listed = chain2.element({"a": [ID2, SWAP]})
    assert listed.value("a", (1,)) == SWAP
    assert listed.table_map("a") == {(0,): ID2, (1,): SWAP}
    with pytest.raises(DomainMismatch):
        chain2.element({"a": [SWAP]})
    with pytest.raises(PosetError):
        chain2.element({"z": SWAP})


def test_element_validates_factor_membership(intransitive):
    with pytest.raises(DomainMismatch):
        intransitive.element({"a": parse_cycles("(0 2)", 3)})
    assert not intransitive.is_transitive()
    assert not intransitive.has_symmetric_factors()


def test_elements_from_other_groups_are_rejected(chain2, antichain22):
    with pytest.raises(DomainMismatch):
        chain2.multiply(chain2.identity(), antichain22.identity())


def test_bad_points(chain2):
    with pytest.raises(DomainMismatch):
        chain2.act((0, 2), chain2.identity())
    with pytest.raises(DomainMismatch):
        chain2.act((0,), chain2.identity())


def test_projection_and_restriction(chain3):
    assert chain3.restrict(["a", "b", "c"]) is chain3
    top = chain3.restrict(["b", "c"])
    assert top is chain3.restrict(["c", "b"])
    assert top.theoretical_order() == 8
    with pytest.raises(PosetError):
        chain3.restrict(["a"])
    rng = Random(4)
    for _ in range(20):
        f = chain3.random_element(rng)
        fJ = chain3.project_element(f, ["b", "c"])
        assert fJ.group is top
        for delta in chain3.points():
            image = chain3.act(delta, f)
            assert top.act(chain3.project_point(delta, ["b", "c"]), fJ) == chain3.project_point(image, ["b", "c"])


def test_act_on_requires_ancestral_subset(chain3):
    with pytest.raises(PosetError):
        chain3.act_on((0,), chain3.identity(), ["a"])
    f = chain3.element({"c": SWAP})
    assert chain3.act_on((0, 0), f, ["b", "c"]) == (0, 1)


def test_equiv(chain2):
    assert chain2.equiv((0, 1), (1, 1), ["b"])
    assert not chain2.equiv((0, 0), (0, 1), ["b"])
    assert core.equiv_J(chain2, (0, 1), (1, 1), ["b"])


def test_lift_and_kernel(chain3):
    top = chain3.restrict(["b", "c"])
    g = top.element({"b": [SWAP, ID2], "c": SWAP})
    lifted = chain3.lift(g)
    assert lifted.table("a") == (ID2,) * 4
    assert chain3.project_element(lifted, ["b", "c"]) == g
    kernel = chain3.kernel_of_projection(["b", "c"], ["c"])
    assert kernel(top.element({"b": [SWAP, ID2]}))
    assert not kernel(g)
    with pytest.raises(PosetError):
        chain3.kernel_of_projection(["c"], ["b", "c"])


def test_faithful_image(pyramid):
    elements = pyramid.elements()
    images = {pyramid.as_permutation(f) for f in elements}
    assert len(images) == len(elements) == 32


def test_guards():
    poset = Poset.from_covers(["a", "b"], [("a", "b")])
    group = GwpGroup(poset, {"a": 3, "b": 3}, max_delta=5)
    with pytest.raises(DeskGuardExceeded):
        group.as_permutation(group.identity())
    with pytest.raises(DeskGuardExceeded):
        group.elements(limit=100)


def test_constructor_checks():
    poset = Poset.from_covers(["a", "b"])
    with pytest.raises(PosetError):
        GwpGroup(poset, {"a": 2})
    with pytest.raises(DomainMismatch):
        GwpGroup(poset, {"a": 2, "b": 0})


def test_module_wrappers(chain2):
    f = chain2.plant("a", (1,), SWAP)
    h = chain2.element({"b": SWAP})
    assert core.multiply(f, h) == chain2.multiply(f, h)
    assert core.invert(f) == chain2.invert(f)
    assert core.act((1, 1), f) == (0, 1)
    assert core.identity(chain2).is_identity()
    assert core.project_element(h, ["b"]).table("b") == (SWAP,)
    assert core.project_point(chain2, (1, 0), ["b"]) == (0,)
    assert core.as_permutation(h).order() == 2
