"""DPLL prover against the truth-table oracle."""

import random
import time

from dolkit.kernel import Sentence
from dolkit.logics import parse_prop
from dolkit.prove import prove_prop
from dolkit.prove.status import ProofStatus

from conftest import gen_prop_theory, tt_entails


def S(text: str, label: str | None = None) -> Sentence:
    return Sentence("Prop", parse_prop(text), label)


def test_modus_ponens_is_a_theorem():
    attempt = prove_prop([S("p", "a1"), S("p impl q", "a2")], S("q"), 5)
    assert attempt.status is ProofStatus.THM
    assert set(attempt.used_axioms) <= {"a1", "a2"}


def test_unconstrained_atom_is_countersatisfiable():
    attempt = prove_prop([], S("p"), 5)
    assert attempt.status is ProofStatus.CSA


def test_zero_budget_times_out():
    attempt = prove_prop([S("p")], S("p"), 0)
    assert attempt.status is ProofStatus.TMO


def test_tautology_without_axioms():
    assert prove_prop([], S("p or not p"), 5).status is ProofStatus.THM


def test_contradictory_axioms_prove_anything():
    attempt = prove_prop([S("p", "a"), S("not p", "b")], S("q"), 5)
    assert attempt.status is ProofStatus.THM


def test_agreement_with_truth_table_oracle():
    rng = random.Random(303)
    start = time.monotonic()
    for _ in range(150):
        axioms, conjecture = gen_prop_theory(rng)
        expected = tt_entails([a.ast for a in axioms], conjecture.ast)
        attempt = prove_prop(axioms, conjecture, 10)
        assert attempt.status is not ProofStatus.TMO
        assert (attempt.status is ProofStatus.THM) == expected
    assert time.monotonic() - start < 20


def test_used_axioms_subset_of_provided():
    axioms = [S("p", "a1"), S("q", "a2"), S("p impl r", "a3")]
    attempt = prove_prop(axioms, S("r"), 5)
    assert attempt.status is ProofStatus.THM
    assert set(attempt.used_axioms) <= {"a1", "a2", "a3"}
