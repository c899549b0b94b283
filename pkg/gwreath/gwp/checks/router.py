from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from ..core import GwpGroup
from ..errors import DeskGuardExceeded, HypothesisViolation
from ..reports import CheckOutcome
from . import lemmas
from .lemmas import CheckContext, SuiteResult

logger = logging.getLogger(__name__)

CheckDetectFn = Callable[[GwpGroup], Optional[str]]
CheckCallFn = Callable[[GwpGroup, CheckContext], SuiteResult]


@dataclass(frozen=True)
class CheckSpec:
    name: str
    lemma: str
    description: str
    scope: str
    needs_symmetric: bool = False


def _always(group: GwpGroup) -> Optional[str]:
    return None


def _two_minimal(group: GwpGroup) -> Optional[str]:
    if len(group.poset.minimal_elements()) < 2:
        return "fewer than two minimal elements"
    return None


def _transitive(group: GwpGroup) -> Optional[str]:
    odd = [i for i in group.labels if not group.factors[i].is_transitive()]
    return f"intransitive factor at {', '.join(odd)}" if odd else None


def _symmetric(group: GwpGroup) -> Optional[str]:
    odd = [i for i in group.labels if not group.factors[i].is_symmetric()]
    if odd:
        return f"non-symmetric factor at {', '.join(odd)}"
    small = [i for i in group.labels if group.domains[i] < 2]
    return f"one-point domain at {', '.join(small)}" if small else None


def _entry(call: CheckCallFn, spec: CheckSpec, detect: CheckDetectFn = _always) -> Dict[str, Any]:
    return {"detect": detect, "call": call, "spec": spec}


_CHECK_REGISTRY: Dict[str, Dict[str, Any]] = {
    "identity": _entry(
        lemmas.check_identity,
        CheckSpec("identity", "z fixes Δ and is neutral", "The identity element and its projections.", "laws"),
    ),
    "group_axioms": _entry(
        lemmas.check_group_axioms,
        CheckSpec("group_axioms", "F is a group", "Associativity and two-sided inverses.", "laws"),
    ),
    "action_law": _entry(
        lemmas.check_action_law,
        CheckSpec("action_law", "δ(fh) = (δf)h", "F acts on Δ on the right.", "laws"),
    ),
    "faithfulness": _entry(
        lemmas.check_faithfulness,
        CheckSpec("faithfulness", "F embeds in Sym(Δ)", "Distinct elements act as distinct permutations.", "laws"),
    ),
    "relation_preserve": _entry(
        lemmas.check_relation_preserve,
        CheckSpec("relation_preserve", "∼_J is F-invariant", "Elements preserve every ∼_J for ancestral J.", "projection"),
    ),
    "projection": _entry(
        lemmas.check_projection,
        CheckSpec("projection", "(δf)_J = δ_J f_J", "Projection to F_J commutes with the action, nests, and multiplies.", "projection"),
    ),
    "kernels": _entry(
        lemmas.check_kernels,
        CheckSpec("kernels", "ker(F_J -> F_K) = N_K^J", "Kernel predicates match projection to the identity.", "projection"),
    ),
    "order_identity": _entry(
        lemmas.check_order_identity,
        CheckSpec("order_identity", "|F| = ∏ |G_i|^|Δ_A(i)|", "Counted order against the product formula.", "projection"),
    ),
    "transitivity": _entry(
        lemmas.check_transitivity,
        CheckSpec("transitivity", "F transitive iff every G_i is", "Orbit of the faithful image against factor transitivity.", "projection"),
    ),
    "barf_iso": _entry(
        lemmas.check_barf_iso,
        CheckSpec("barf_iso", "F̄_J ≅ F_J", "Projection restricted to F̄_J is an isomorphism onto F_J.", "structure"),
    ),
    "theta": _entry(
        lemmas.check_theta,
        CheckSpec("theta", "θ_i: H_i ≅ G_i^Δ_A(i)", "θ_i is a bijective homomorphism.", "structure"),
    ),
    "equivariance": _entry(
        lemmas.check_equivariance,
        CheckSpec("equivariance", "(h^f)θ_i = (hθ_i)^f", "Conjugation by F̄_J matches the action on tuples.", "structure"),
    ),
    "normality": _entry(
        lemmas.check_normality,
        CheckSpec("normality", "H_i normal in F", "Conjugates of H_i stay in H_i for minimal i.", "structure"),
    ),
    "h_direct": _entry(
        lemmas.check_h_direct,
        CheckSpec("h_direct", "⟨H_i, H_j⟩ = H_i × H_j", "Distinct minimal elements give commuting H_i.", "structure"),
        _two_minimal,
    ),
    "semidirect": _entry(
        lemmas.check_semidirect,
        CheckSpec("semidirect", "F = H_i ⋊ F̄_J", "Orders, intersection, normality and factorization.", "structure"),
    ),
    "subgroup_closure": _entry(
        lemmas.check_subgroup_closure,
        CheckSpec("subgroup_closure", "generators span the predicate set", "Every catalogued subgroup against its order formula.", "structure"),
    ),
    "wreath": _entry(
        lemmas.check_wreath,
        CheckSpec("wreath", "F ≅ G_i ≀ F_J", "Wreath witness at each minimal index, plus chain and antichain forms.", "structure"),
    ),
    "d_conjugates": _entry(
        lemmas.check_d_conjugates,
        CheckSpec("d_conjugates", "H_i = ⟨D_i^f : f ∈ F̄_J⟩", "Conjugates of D_i generate H_i.", "generation"),
        _transitive,
    ),
    "h_generation": _entry(
        lemmas.check_h_generation,
        CheckSpec("h_generation", "F = ⟨H_i⟩", "The H_i together generate F.", "generation"),
    ),
    "d_generation": _entry(
        lemmas.check_d_generation,
        CheckSpec("d_generation", "F = ⟨D_i⟩", "The D_i generate F for any choice of anchors.", "generation"),
        _transitive,
    ),
    "sign_quotient": _entry(
        lemmas.check_sign_quotient,
        CheckSpec("sign_quotient", "F ->> C_2^I", "The sign map is a surjective homomorphism.", "signs", needs_symmetric=True),
        _symmetric,
    ),
    "lower_bound_rank": _entry(
        lemmas.check_lower_bound_rank,
        CheckSpec("lower_bound_rank", "d(F) >= |I|", "Random sets of |I| - 1 elements never reach full sign rank.", "signs", needs_symmetric=True),
        _symmetric,
    ),
}


def check_names() -> List[str]:
    return sorted(_CHECK_REGISTRY.keys())


def scope_names() -> List[str]:
    return sorted({entry["spec"].scope for entry in _CHECK_REGISTRY.values()})


def check_metadata() -> List[Dict[str, Any]]:
    specs: List[CheckSpec] = [entry["spec"] for entry in _CHECK_REGISTRY.values()]
    return [asdict(spec) for spec in sorted(specs, key=lambda item: item.name)]


def resolve_scope(scope: Optional[Iterable[str]] = None) -> List[str]:
    """Check names selected by a mix of scope and check names; everything when empty."""
    requested = [item for item in (scope or []) if item and item != "all"]
    if not requested:
        return list(_CHECK_REGISTRY.keys())
    selected: List[str] = []
    for item in requested:
        if item in _CHECK_REGISTRY:
            names = [item]
        else:
            names = [name for name, entry in _CHECK_REGISTRY.items() if entry["spec"].scope == item]
        if not names:
            raise ValueError(f"Unknown check or scope: {item}")
        selected.extend(name for name in names if name not in selected)
    return selected


def run_check(name: str, group: GwpGroup, ctx: CheckContext) -> CheckOutcome:
    entry = _CHECK_REGISTRY.get(name)
    if not entry:
        raise ValueError(f"Unknown check: {name}")
    spec: CheckSpec = entry["spec"]
    reason = entry["detect"](group)
    if reason:
        outcome = CheckOutcome(name=name, lemma=spec.lemma, status="skipped", detail=reason)
    else:
        try:
            ok, detail, cases = entry["call"](group, ctx)
            outcome = CheckOutcome(
                name=name, lemma=spec.lemma, status="pass" if ok else "fail", detail=detail, cases=cases
            )
        except (DeskGuardExceeded, HypothesisViolation) as exc:
            outcome = CheckOutcome(name=name, lemma=spec.lemma, status="skipped", detail=str(exc))
    log = logger.warning if outcome.status == "fail" else logger.debug
    log("[check] call=%s instance=%s status=%s %s", name, group.name or "F", outcome.status, outcome.detail)
    return outcome


def run_checks(group: GwpGroup, ctx: CheckContext, names: Optional[Sequence[str]] = None) -> List[CheckOutcome]:
    return [run_check(name, group, ctx) for name in (names or list(_CHECK_REGISTRY.keys()))]
