"""Registry, concrete mappings, path search, and translation faithfulness."""

import random

import pytest

from dolkit.errors import LogicMismatch, NoPath
from dolkit.kernel import Kind, Role, Sentence, Signature, Symbol, Theory
from dolkit.logics import parse_fof_formula, parse_prop, print_fol
from dolkit.logics.simpledl import SimpleDlLogic
from dolkit.mappings import (
    NEQ,
    Accuracy,
    Category,
    Direction,
    MappingMeta,
    Shape,
    common_target,
    compose_meta,
    find_path,
    get_mapping,
    registry_list,
    translate_theory,
)
from dolkit.prove.fol_prover import prove_fol_internal
from dolkit.prove.status import ProofStatus

from conftest import gen_prop_ast, tt_entails


class TestRegistry:
    def test_logics_listing(self):
        assert [e.id for e in registry_list(Category.LOGIC)] == ["FOL", "Prop", "SimpleDL"]

    def test_mappings_listing(self):
        assert [e.id for e in registry_list(Category.MAPPING)] == [
            "dl2fol",
            "fol2prop",
            "prop2fol",
        ]

    def test_builtin_serializations(self):
        ids = [e.id for e in registry_list(Category.SERIALIZATION)]
        assert ids == ["manchester", "prop-text", "tptp-fof"]


class TestAccuracyMetadata:
    def test_upward_closure(self):
        meta = MappingMeta(
            "m", "A", "B", Direction.TRANSLATION, Shape.PLAIN, frozenset({Accuracy.SUBLOGIC})
        )
        assert {Accuracy.SUBLOGIC, Accuracy.EMBEDDING, Accuracy.FAITHFUL} <= meta.accuracy

    def test_declared_accuracies(self):
        assert Accuracy.SUBLOGIC in get_mapping("prop2fol").meta.accuracy
        assert Accuracy.FAITHFUL in get_mapping("dl2fol").meta.accuracy
        assert Accuracy.SUBLOGIC not in get_mapping("dl2fol").meta.accuracy
        assert get_mapping("fol2prop").meta.accuracy == frozenset()

    def test_compose_meta(self):
        composed = compose_meta(get_mapping("prop2fol").meta, get_mapping("fol2prop").meta)
        assert composed.direction is Direction.PROJECTION
        assert composed.accuracy == frozenset()
        assert composed.source_logic == "Prop" and composed.target_logic == "Prop"

    def test_compose_meta_shape_contagion(self):
        theoroidal = get_mapping("dl2fol").meta
        plain = get_mapping("fol2prop").meta
        assert compose_meta(theoroidal, plain).shape is Shape.SIMPLE_THEOROIDAL

    def test_compose_meta_endpoint_check(self):
        with pytest.raises(LogicMismatch):
            compose_meta(get_mapping("prop2fol").meta, get_mapping("prop2fol").meta)


class TestFindPath:
    def test_dl_to_fol_faithful(self):
        assert [m.meta.id for m in find_path("SimpleDL", "FOL", Accuracy.FAITHFUL)] == ["dl2fol"]

    def test_reflexive(self):
        assert find_path("FOL", "FOL") == []

    def test_no_inverse_registered(self):
        with pytest.raises(NoPath):
            find_path("FOL", "SimpleDL")

    def test_projection_reachable_without_accuracy(self):
        assert [m.meta.id for m in find_path("FOL", "Prop")] == ["fol2prop"]
        with pytest.raises(NoPath):
            find_path("FOL", "Prop", Accuracy.FAITHFUL)


class TestCommonTarget:
    def test_prop_and_dl_meet_in_fol(self):
        target, pa, pb = common_target("Prop", "SimpleDL")
        assert target == "FOL"
        assert [m.meta.id for m in pa] == ["prop2fol"]
        assert [m.meta.id for m in pb] == ["dl2fol"]

    def test_same_logic(self):
        assert common_target("FOL", "FOL") == ("FOL", [], [])

    def test_dl_and_fol(self):
        target, pa, pb = common_target("SimpleDL", "FOL")
        assert target == "FOL"
        assert [m.meta.id for m in pa] == ["dl2fol"] and pb == []


def _prop_theory(texts: list[str]) -> Theory:
    sentences = tuple(
        Sentence("Prop", parse_prop(t), f"ax{i + 1}", Role.AXIOM) for i, t in enumerate(texts)
    )
    symbols = frozenset().union(
        *(
            frozenset(
                Symbol("", v.name, Kind.PROP_VAR)
                for v in _prop_vars(s.ast)
            )
            for s in sentences
        )
    )
    return Theory("t", Signature("Prop", symbols), sentences)


def _prop_vars(ast):
    from dolkit.logics import prop as P

    out = []
    stack = [ast]
    while stack:
        node = stack.pop()
        if isinstance(node, P.PVar):
            out.append(node)
        elif isinstance(node, P.PNot):
            stack.append(node.body)
        elif isinstance(node, P.PBin):
            stack.extend([node.left, node.right])
    return out


class TestTranslateTheory:
    def test_prop_to_fol_nullary_encoding(self):
        t = _prop_theory(["p", "p impl q"])
        ft, dropped = translate_theory(get_mapping("prop2fol"), t)
        assert dropped == []
        assert ft.logic_id == "FOL"
        assert {(s.name, s.arity) for s in ft.signature.symbols} == {("p", 0), ("q", 0)}
        assert [print_fol(s.ast) for s in ft.sentences] == ["p", "(p => q)"]

    def test_dl_to_fol_standard_translation(self):
        from dolkit.kernel import validate_theory

        logic = SimpleDlLogic()
        t = logic.parse_theory("Class: Female SubClassOf: not Male", "t")
        ft, dropped = translate_theory(get_mapping("dl2fol"), t)
        assert dropped == []
        [s] = ft.sentences
        assert print_fol(s.ast) == "![X]: (q_Female(X) => ~q_Male(X))"
        validate_theory(ft)  # sentence images stay inside the mapped signature

    def test_dl_to_fol_restrictions_and_characteristics(self):
        from dolkit.kernel import validate_theory

        logic = SimpleDlLogic()
        t = logic.parse_theory(
            "Class: A SubClassOf: p some B "
            "Class: C SubClassOf: p only D "
            "ObjectProperty: p Characteristics: Transitive "
            "ObjectProperty: q InverseOf: p "
            "ObjectProperty: q SubPropertyOf: p",
            "t",
        )
        ft, _ = translate_theory(get_mapping("dl2fol"), t)
        texts = [print_fol(s.ast) for s in ft.sentences]
        assert "![X]: (q_A(X) => ?[Y]: (p(X, Y) & q_B(Y)))" in texts
        assert "![X]: (q_C(X) => ![Y]: (p(X, Y) => q_D(Y)))" in texts
        assert "![X]: ![Y]: ![Z]: ((p(X, Y) & p(Y, Z)) => p(X, Z))" in texts
        assert "![X]: ![Y]: (q(X, Y) <=> p(Y, X))" in texts
        assert "![X]: ![Y]: (q(X, Y) => p(X, Y))" in texts
        validate_theory(ft)

    def test_fol_to_prop_projection_drops_quantified(self):
        sentences = (
            Sentence("FOL", parse_fof_formula("(p & q)"), "ax1", Role.AXIOM),
            Sentence("FOL", parse_fof_formula("![X]: r(X)"), "ax2", Role.AXIOM),
        )
        symbols = frozenset(
            {
                Symbol("", "p", Kind.PREDICATE, 0),
                Symbol("", "q", Kind.PREDICATE, 0),
                Symbol("", "r", Kind.PREDICATE, 1),
            }
        )
        t = Theory("t", Signature("FOL", symbols), sentences)
        pt, dropped = translate_theory(get_mapping("fol2prop"), t)
        assert [s.label for s in pt.sentences] == ["ax1"]
        assert pt.sentences[0].ast == parse_prop("p and q")
        assert [s.label for s in dropped] == ["ax2"]
        assert {s.name for s in pt.signature.symbols} == {"p", "q"}

    def test_logic_mismatch(self):
        t = _prop_theory(["p"])
        with pytest.raises(LogicMismatch):
            translate_theory(get_mapping("dl2fol"), t)

    def test_lifted_tautology_prints_as_tptp(self):
        from dolkit.logics import print_tptp

        lifted = get_mapping("prop2fol").map_sentence(
            Sentence("Prop", parse_prop("p or not p"), "t", Role.AXIOM)
        )
        assert print_tptp(lifted, "t", "axiom") == "fof(t, axiom, (p | ~p))."


class TestDl2FolInfrastructure:
    def test_scenario_symbols_are_exactly_the_images_plus_neq(self, family_env):
        base = family_env.load_iri(
            "https://example.org/family/familyRelations"
        )
        scenario = family_env.load_iri(
            "https://example.org/family/scenario"
        )
        from dolkit.kernel import signature_union

        sig = signature_union(base.signature, scenario.signature)
        t = Theory("cq", sig, base.sentences + scenario.sentences)
        ft, _ = translate_theory(get_mapping("dl2fol"), t)
        expected = set()
        for s in sig.symbols:
            if s.kind is Kind.CLASS:
                expected.add(Symbol(s.origin, s.name, Kind.PREDICATE, 1))
            elif s.kind is Kind.OBJECT_PROPERTY:
                expected.add(Symbol(s.origin, s.name, Kind.PREDICATE, 2))
            else:
                expected.add(s)
        expected.add(NEQ)
        assert ft.signature.symbols == frozenset(expected)

    def test_neq_facts_cover_ordered_pairs(self):
        logic = SimpleDlLogic()
        t = logic.parse_theory(
            "Individual: a Types: C Individual: b Types: C Individual: c Types: C", "t"
        )
        ft, _ = translate_theory(get_mapping("dl2fol"), t)
        neq_facts = [s for s in ft.sentences if s.label and s.label.startswith("neq_")]
        assert len(neq_facts) == 6  # 3 individuals, ordered pairs

    def test_no_infrastructure_below_two_individuals(self):
        logic = SimpleDlLogic()
        t = logic.parse_theory("Individual: a Types: C", "t")
        ft, _ = translate_theory(get_mapping("dl2fol"), t)
        assert all(not (s.label or "").startswith("neq_") for s in ft.sentences)
        assert NEQ not in ft.signature.symbols


class TestProp2FolFaithfulness:
    def test_truth_table_agrees_with_fol_prover_on_translations(self):
        rng = random.Random(29)
        prop2fol = get_mapping("prop2fol")
        timeouts = 0
        for _ in range(40):
            n_vars = rng.randint(1, 8)
            variables = [f"v{i}" for i in range(n_vars)]
            axioms = [
                Sentence("Prop", gen_prop_ast(rng, variables, 3), f"ax{i}", Role.AXIOM)
                for i in range(rng.randint(0, 6))
            ]
            conjecture = Sentence("Prop", gen_prop_ast(rng, variables, 3), "c", Role.CONJECTURE)
            expected = tt_entails([a.ast for a in axioms], conjecture.ast)
            fol_axioms = [prop2fol.map_sentence(a) for a in axioms]
            fol_conj = prop2fol.map_sentence(conjecture)
            attempt = prove_fol_internal(fol_axioms, fol_conj, 5)
            if attempt.status is ProofStatus.TMO:
                timeouts += 1
                continue
            assert (attempt.status is ProofStatus.THM) == expected
        assert timeouts <= 2
