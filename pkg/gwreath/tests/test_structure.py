from __future__ import annotations

import itertools
from random import Random

import pytest

from gwp.errors import HypothesisViolation
from gwp.permgroup import identity, symmetric_group, transposition
from gwp.structure import (
    FactorTuple,
    StandaloneWreath,
    SubgroupKind,
    SubgroupSpec,
    antichain_decompose,
    chain_decompose,
    conj_action,
    conjugate_generation_check,
    decompose,
    decomposition_tree,
    direct_pair_check,
    factor_semidirect,
    generating_set_D,
    generating_set_H,
    members,
    semidirect_witness,
    theta,
    theta_inverse,
    wreath_witness,
)
from gwp.structure.decompose import shape_notes
from gwp.structure.subgroups import subgroup_specs

SWAP = transposition(2)


@pytest.mark.parametrize(
    "spec, order",
    [
        (SubgroupSpec(SubgroupKind.H, i="a"), 4),
        (SubgroupSpec(SubgroupKind.H, i="b"), 2),
        (SubgroupSpec(SubgroupKind.L, i="a"), 2),
        (SubgroupSpec(SubgroupKind.L, i="b"), 4),
        (SubgroupSpec(SubgroupKind.D, i="a"), 2),
        (SubgroupSpec(SubgroupKind.D, i="a", anchor=(1,)), 2),
        (SubgroupSpec(SubgroupKind.DBAR, J=frozenset({"b"})), 2),
        (SubgroupSpec(SubgroupKind.HJ, i="b", J=frozenset({"b"})), 2),
        (SubgroupSpec(SubgroupKind.DJ, i="b", J=frozenset({"b"})), 2),
    ],
)
def test_subgroup_orders_on_chain(chain2, spec, order):
    sub = members(spec, chain2)
    assert sub.closure_order() == order
    assert len(sub.elements()) == order
    assert all(sub.contains(g) for g in sub.generators)


def test_subgroup_spec_errors(chain2):
    with pytest.raises(HypothesisViolation):
        members(SubgroupSpec(SubgroupKind.DBAR, J=frozenset({"a"})), chain2)
    with pytest.raises(HypothesisViolation):
        members(SubgroupSpec(SubgroupKind.H), chain2)
    with pytest.raises(HypothesisViolation):
        members(SubgroupSpec(SubgroupKind.HJ, i="a", J=frozenset({"b"})), chain2)
    with pytest.raises(HypothesisViolation):
        members(SubgroupSpec(SubgroupKind.D, i="a", anchor=(5,)), chain2)


def test_subgroup_catalogue(pyramid):
    specs = subgroup_specs(pyramid)
    kinds = {spec.kind for spec in specs}
    assert kinds == set(SubgroupKind)
    assert SubgroupSpec(SubgroupKind.DBAR, J=frozenset({"k"})) in specs
    assert SubgroupSpec(SubgroupKind.H, i="i").describe() == "H(i)"


def test_theta_round_trip_and_homomorphism(chain2):
    h_sub = members(SubgroupSpec(SubgroupKind.H, i="a"), chain2)
    elements = h_sub.elements()
    for f, g in itertools.product(elements, repeat=2):
        assert theta_inverse(chain2, theta("a", f)) == f
        assert theta("a", chain2.multiply(f, g)) == theta("a", f).compose(theta("a", g))
    with pytest.raises(HypothesisViolation):
        theta("a", chain2.element({"b": SWAP}))


def test_conjugation_action_matches_conjugation(pyramid):
    rng = Random(11)
    h_sub = members(SubgroupSpec(SubgroupKind.H, i="i"), pyramid)
    for _ in range(20):
        h = theta_inverse(pyramid, FactorTuple("i", tuple(rng.choice([SWAP, identity(2)]) for _ in range(2))))
        f = pyramid.random_element(rng)
        fbar = pyramid.element({"j": f.table("j"), "k": f.table("k")})
        conjugate = pyramid.conjugate(h, fbar)
        assert h_sub.contains(conjugate)
        assert theta("i", conjugate) == conj_action(pyramid, theta("i", h), fbar)
        top = pyramid.project_element(fbar, ["j", "k"])
        assert conj_action(pyramid, theta("i", h), top) == theta("i", conjugate)


def test_factor_semidirect(wrdi):
    rng = Random(3)
    h_sub = members(SubgroupSpec(SubgroupKind.H, i="i"), wrdi)
    for _ in range(20):
        f = wrdi.random_element(rng)
        h, fbar = factor_semidirect(wrdi, "i", f)
        assert h_sub.contains(h)
        assert fbar.is_trivial_on(["i"])
        assert wrdi.multiply(h, fbar) == f
    with pytest.raises(HypothesisViolation):
        factor_semidirect(wrdi, "k", wrdi.identity())


@pytest.mark.parametrize("name", ["chain2", "pyramid", "triangle", "wrdi", "antichain23"])
def test_semidirect_witness(corpus_group, name):
    group = corpus_group(name)
    i = group.poset.minimal_elements()[0]
    witness = semidirect_witness(group, i, rng=Random(0))
    assert witness.ok
    assert witness.node.kind == "semidirect"
    assert witness.node.order == group.theoretical_order()


@pytest.mark.parametrize("name", ["chain2", "chain3", "pyramid", "triangle", "wrdi", "intransitive"])
def test_wreath_witness(corpus_group, name):
    group = corpus_group(name)
    for i in group.poset.minimal_elements():
        witness = wreath_witness(group, i, rng=Random(0), samples=30)
        assert witness.ok, [c for c in witness.checks if not c.passed]


def test_wreath_witness_notes(chain2, wrdi):
    witness = wreath_witness(chain2, "a")
    assert any(check.name == "faithful_top" for check in witness.checks)
    assert any("unique minimal" in note for note in witness.notes)
    isolated = wreath_witness(wrdi, "j")
    assert isolated.node.kind == "direct"
    assert any("incomparable" in note for note in isolated.notes)
    with pytest.raises(HypothesisViolation):
        wreath_witness(chain2, "b")


def test_standalone_wreath_product():
    wreath = StandaloneWreath(symmetric_group(2), 2, symmetric_group(2), [0, 1])
    assert wreath.order() == 8
    a = ((SWAP, identity(2)), identity(2))
    b = ((identity(2), identity(2)), SWAP)
    assert wreath.multiply(a, b) == ((SWAP, identity(2)), SWAP)
    assert wreath.multiply(b, a) == ((identity(2), SWAP), SWAP)
    assert wreath.contains(wreath.identity())


def test_chain_and_antichain_decompositions(chain3, antichain23, pyramid):
    assert chain_decompose(chain3).ok
    assert chain_decompose(chain3).node.label == "S_2 ≀ (S_2 ≀ (S_2))"
    assert antichain_decompose(antichain23).ok
    assert antichain_decompose(antichain23).node.label == "S_2 × S_3"
    with pytest.raises(HypothesisViolation):
        chain_decompose(pyramid)
    with pytest.raises(HypothesisViolation):
        antichain_decompose(chain3)


def test_direct_pair(pyramid, chain2):
    assert direct_pair_check(pyramid, "i", "j").passed
    with pytest.raises(HypothesisViolation):
        direct_pair_check(chain2, "a", "b")


def test_generating_sets(triangle, intransitive):
    assert triangle.closure_order(generating_set_H(triangle)) == 64
    assert triangle.closure_order(generating_set_D(triangle)) == 64
    assert intransitive.closure_order(generating_set_H(intransitive)) == 8
    with pytest.raises(HypothesisViolation):
        generating_set_D(intransitive)


def test_conjugate_generation(chain2, pyramid, antichain22):
    assert conjugate_generation_check(chain2, "a")
    assert conjugate_generation_check(pyramid, "i")
    assert conjugate_generation_check(antichain22, "a")


def test_decomposition_tree_and_notes(chain3, pyramid, triangle, wrdi):
    assert decomposition_tree(chain3).order == 128
    assert shape_notes(pyramid) == ["pyramid: F ≅ (S_2 × S_2) ≀_Δ[k] S_2"]
    assert shape_notes(triangle)[0].startswith("triangle:")
    assert shape_notes(wrdi)[0].startswith("wrdi:")
    assert shape_notes(chain3) == []


@pytest.mark.parametrize("name", ["chain2", "antichain22", "pyramid", "triangle", "wrdi", "twochains"])
def test_decompose_reports(corpus_group, name):
    group = corpus_group(name)
    report = decompose(group, rng=Random(0), samples=30)
    assert report.ok
    assert report.tree.order == group.theoretical_order()
    assert report.instance == name
