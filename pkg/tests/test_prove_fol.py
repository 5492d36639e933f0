"""Internal resolution prover: the family conjectures, saturation, timeout
behavior, and refutation tracing."""

import pytest

from dolkit.errors import UnsupportedFeature
from dolkit.kernel import Sentence
from dolkit.logics import parse_fof_formula
from dolkit.mappings import get_mapping, translate_theory
from dolkit.prove import GRACE_SECONDS, prove_fol_internal
from dolkit.prove.status import ProofStatus


def F(text: str, label: str | None = None) -> Sentence:
    return Sentence("FOL", parse_fof_formula(text), label)


@pytest.fixture(scope="module")
def family_fol(request):
    """The CQbase background translated to first-order form."""
    from dolkit.dolparse import RepoConfig, parse_document
    from dolkit.structure import Env, extract_obligations
    from conftest import FIXTURES

    repo = RepoConfig.from_file(FIXTURES / "repo.json")
    doc = parse_document((FIXTURES / "family.dol").read_text())
    env = Env(doc, repo)
    obligations = extract_obligations(doc, env)
    mapping = get_mapping("dl2fol")
    background, _ = translate_theory(mapping, obligations[0].theory)
    conjectures = {
        ob.name: mapping.map_sentence(ob.conjecture) for ob in obligations
    }
    return background, conjectures


def test_chris_is_a_father(family_fol):
    background, conjectures = family_fol
    attempt = prove_fol_internal(background.sentences, conjectures["chrisFather"], 10)
    assert attempt.status is ProofStatus.THM
    assert attempt.used_axioms  # the refutation traces back to real axioms


def test_chris_is_not_female(family_fol):
    background, conjectures = family_fol
    attempt = prove_fol_internal(background.sentences, conjectures["chrisFemale"], 10)
    assert attempt.status is ProofStatus.THM


def test_saturation_gives_countersatisfiable():
    attempt = prove_fol_internal([F("![X]: p(X)", "ax")], F("q(a)"), 5)
    assert attempt.status is ProofStatus.CSA


def test_equality_is_unsupported():
    eq = Sentence("FOL", parse_fof_formula("a = b", allow_equality=True))
    with pytest.raises(UnsupportedFeature):
        prove_fol_internal([eq], F("p"), 5)


def test_hard_instance_times_out_within_grace():
    # an infinite saturation: every element has a successor and the relation
    # is transitive, so clause terms grow without bound
    axioms = [
        F("![X]: ?[Y]: bigger(Y, X)", "succ"),
        F("![X,Y,Z]: ((bigger(X,Y) & bigger(Y,Z)) => bigger(X,Z))", "trans"),
        F("bigger(b, a)", "seed"),
    ]
    attempt = prove_fol_internal(axioms, F("q(a)"), 1)
    assert attempt.status is ProofStatus.TMO
    assert attempt.wall_time <= 1 + GRACE_SECONDS


def test_used_axioms_exclude_untouched_facts():
    axioms = [
        F("p(a)", "needed"),
        F("![X]: (p(X) => r(X))", "rule"),
        F("q(b)", "noise"),
    ]
    attempt = prove_fol_internal(axioms, F("r(a)"), 5)
    assert attempt.status is ProofStatus.THM
    assert attempt.used_axioms == ("needed", "rule")


def test_existential_conjecture_needs_witness():
    attempt = prove_fol_internal([F("p(a)", "fact")], F("?[X]: p(X)"), 5)
    assert attempt.status is ProofStatus.THM


def test_forall_conjecture_over_single_fact_is_csa():
    attempt = prove_fol_internal([F("p(a)", "fact")], F("![X]: p(X)"), 5)
    assert attempt.status is ProofStatus.CSA
