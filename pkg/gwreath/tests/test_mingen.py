from __future__ import annotations

import itertools
import math
from random import Random

import pytest

from gwp.core import GwpGroup
from gwp.errors import BudgetExhausted, HypothesisViolation
from gwp.mingen import (
    BuildStats,
    build_minimal_gens,
    certify,
    gaschutz_lift,
    lower_bound_certificate,
    pair_generators_for_minimals,
    pyramid_generators,
    sign_quotient,
    sign_rank,
)
from gwp.mingen.builders import even_partner
from gwp.mingen.certify import unit_vectors_hit
from gwp.permgroup import PermGroupHandle, sign, transposition
from gwp.poset import all_posets
from gwp.settings import DeskSettings


@pytest.mark.parametrize("l", [2, 3, 4, 5, 6])
def test_even_partner_generates_with_a_transposition(l):
    alpha = even_partner(l)
    assert sign(alpha) == 0
    assert PermGroupHandle(l, [transposition(l), alpha]).order() == math.factorial(l)


def test_sign_quotient_is_a_homomorphism(triangle, rng):
    for _ in range(30):
        f, g = triangle.random_element(rng), triangle.random_element(rng)
        assert sign_quotient(triangle.multiply(f, g)) == sign_quotient(f) ^ sign_quotient(g)
    assert sign_quotient(triangle.identity()).is_zero()


def test_sign_quotient_needs_symmetric_factors(intransitive):
    with pytest.raises(HypothesisViolation):
        sign_quotient(intransitive.identity())


def test_unit_vectors(pyramid, antichain23):
    assert unit_vectors_hit(pyramid)
    assert unit_vectors_hit(antichain23)
    planted = pyramid.plant("k", (), transposition(2))
    assert sign_quotient(planted).as_dict() == {"i": 0, "j": 0, "k": 1}


def test_pyramid_generators(pyramid):
    x, y, z = pyramid_generators(pyramid, rng=Random(0))
    assert pyramid.closure_order([x, y, z]) == 32
    assert sign_rank([x, y, z], pyramid.labels) == 3
    assert lower_bound_certificate([x, y, z])
    for pair in itertools.combinations([x, y, z], 2):
        assert pyramid.closure_order(pair) < 32


def test_pyramid_generators_with_larger_domains(build):
    group = build("elements: i j k\ncover: i < k\ncover: j < k\ndomain: i 3\n", name="pyramid3")
    gens = pyramid_generators(group, rng=Random(1))
    assert group.closure_order(gens) == group.theoretical_order()


def test_pyramid_generators_reject_other_shapes(chain3, pyramid):
    with pytest.raises(HypothesisViolation):
        pyramid_generators(chain3)
    with pytest.raises(BudgetExhausted):
        pyramid_generators(pyramid, budget=0)


def test_pair_generators(antichain23, chain2):
    stats = BuildStats()
    pair = pair_generators_for_minimals(antichain23, "a", "b", stats=stats)
    assert antichain23.closure_order(pair) == 12
    assert stats.pair_attempts >= 1
    with pytest.raises(HypothesisViolation):
        pair_generators_for_minimals(chain2, "a", "b")
    with pytest.raises(HypothesisViolation):
        pair_generators_for_minimals(antichain23, "a", "a")


def test_pair_generators_for_factors_too_large_to_list(build):
    group = build("elements: a b\ndomain: a 8\n", name="antichain82")
    assert group.factors["a"].order() > 10_000
    pair = pair_generators_for_minimals(group, "a", "b", rng=Random(0))
    assert group.closure_order(pair) == math.factorial(8) * 2


def test_pyramid_generators_for_factors_too_large_to_list(build):
    group = build("elements: i j k\ncover: i < k\ncover: j < k\ndomain: j 8\n", name="pyramid282")
    gens = pyramid_generators(group, rng=Random(0))
    assert len(gens) == 3
    assert group.closure_order(gens) == group.theoretical_order()


def test_generator_searches_draw_without_listing(pyramid, antichain23):
    gens = pyramid_generators(pyramid, rng=Random(0), max_enum=1)
    assert pyramid.closure_order(gens) == 32
    pair = pair_generators_for_minimals(antichain23, "a", "b", rng=Random(0), max_enum=1)
    assert antichain23.closure_order(pair) == 12


def test_certify_with_a_large_factor(build):
    report = certify(build("elements: a b\ndomain: a 8\n", name="antichain82"), DeskSettings())
    assert report.certified, report.notes
    assert not report.oracle_ran


def test_gaschutz_lift(chain2):
    top = chain2.restrict(["b"])
    quotient_gens = [top.element({"b": transposition(2)})]
    gens = gaschutz_lift(chain2, "a", quotient_gens, rng=Random(4))
    assert len(gens) == 2
    assert chain2.closure_order(gens) == 8
    with pytest.raises(BudgetExhausted):
        gaschutz_lift(chain2, "a", quotient_gens, rng=Random(4), budget=0)


@pytest.mark.parametrize("name", ["chain2", "chain3", "antichain22", "triangle", "wrdi", "twochains"])
def test_build_minimal_gens(corpus_group, name):
    group = corpus_group(name)
    stats = BuildStats()
    gens = build_minimal_gens(group, rng=Random(0), stats=stats)
    assert len(gens) == len(group.labels)
    assert group.closure_order(gens) == group.theoretical_order()
    assert stats.steps


def test_build_minimal_gens_single_index(build):
    group = build("elements: a\ndomain: a 4\n")
    gens = build_minimal_gens(group)
    assert group.closure_order(gens) == 24


def test_build_needs_two_points(build):
    with pytest.raises(HypothesisViolation):
        build_minimal_gens(build("elements: a b\ndomain: b 1\n"))


@pytest.mark.parametrize("name", ["chain2", "antichain22", "antichain23", "pyramid", "triangle", "wrdi", "twochains"])
def test_certify_corpus(corpus_group, name):
    report = certify(corpus_group(name), DeskSettings())
    assert report.certified, report.notes
    assert report.index_count == len(report.witness_generators)
    assert report.sign_rank == report.index_count
    assert report.oracle_ran
    assert report.oracle_d == report.index_count
    assert report.notes[0].startswith("construction:")


def test_certify_skips_oracle_above_guard(chain3):
    report = certify(chain3, DeskSettings(max_enum=100))
    assert report.certified
    assert not report.oracle_ran
    assert any("oracle skipped" in note for note in report.notes)


def test_certify_is_reproducible(triangle):
    first = certify(triangle, seed=5)
    second = certify(triangle, seed=5)
    assert first.witness_generators == second.witness_generators
    assert first.seed == 5


def test_certify_hypotheses(build, intransitive):
    with pytest.raises(HypothesisViolation):
        certify(build("elements: a\ndomain: a 3\n"))
    with pytest.raises(HypothesisViolation):
        certify(intransitive)


SMALL_POSETS = [
    (poset, dict(zip(poset.elements, sizes)))
    for labels in (("a", "b"), ("a", "b", "c"))
    for poset in all_posets(labels)
    for sizes in itertools.product((2, 3), repeat=len(labels))
]


@pytest.mark.parametrize(
    "poset, domains",
    SMALL_POSETS,
    ids=[f"{poset.describe()}|{domains}" for poset, domains in SMALL_POSETS],
)
def test_certify_every_small_poset(poset, domains):
    report = certify(GwpGroup(poset, domains, name="small"), DeskSettings())
    assert report.certified, report.notes
    if report.oracle_ran:
        assert report.oracle_d == len(domains)
