"""Manchester-subset parser and printer."""

import pytest

from dolkit.errors import ParseError, UndeclaredPrefix, UnknownConstruct
from dolkit.kernel import Kind
from dolkit.logics import parse_dl_frame, parse_dl_frames, print_dl_sentence
from dolkit.logics.simpledl import (
    ClassAssertion,
    ClsAnd,
    ClsName,
    ClsNot,
    ClsOnly,
    ClsOr,
    ClsSome,
    EquivalentClasses,
    IndName,
    PropertyAssertion,
    PropName,
    SimpleDlLogic,
    SubClassOf,
)

from conftest import FIXTURES


def test_facts_assertion():
    assert parse_dl_frame("Individual: Dora Facts: child_of Chris", origin="f1") == [
        PropertyAssertion(
            PropName("f1", "child_of"), IndName("f1", "Dora"), IndName("f1", "Chris")
        )
    ]


def test_negated_type():
    assert parse_dl_frame("Individual: Chris Types: not Female", origin="f1") == [
        ClassAssertion(ClsNot(ClsName("f1", "Female")), IndName("f1", "Chris"))
    ]


def test_minimal_frame():
    assert parse_dl_frame("Class: A SubClassOf: B") == [
        SubClassOf(ClsName("", "A"), ClsName("", "B"))
    ]


def test_expression_precedence():
    [ast] = parse_dl_frame("Class: F EquivalentTo: Male and parent_of some Person or X")
    assert ast == EquivalentClasses(
        ClsName("", "F"),
        ClsOr(
            ClsAnd(ClsName("", "Male"), ClsSome(PropName("", "parent_of"), ClsName("", "Person"))),
            ClsName("", "X"),
        ),
    )


def test_only_restriction_and_parens():
    [ast] = parse_dl_frame("Class: A SubClassOf: p only (B or C)")
    assert ast == SubClassOf(
        ClsName("", "A"), ClsOnly(PropName("", "p"), ClsOr(ClsName("", "B"), ClsName("", "C")))
    )


def test_comma_lists_make_one_sentence_each():
    sentences = parse_dl_frame(
        "Individual: Amy Types: Female Facts: parent_of Berta, parent_of Chris"
    )
    assert len(sentences) == 3


def test_declarations_contribute_symbols():
    sentences, declared = parse_dl_frames("Class: Lonely")
    assert sentences == []
    assert declared == frozenset({__import__('dolkit').kernel.Symbol("", "Lonely", Kind.CLASS)})


def test_symbol_kinds_stay_in_the_dl_vocabulary(family_env):
    t = family_env.load_iri("https://example.org/family/familyRelations")
    kinds = {s.kind for s in t.signature.symbols}
    assert kinds <= {Kind.CLASS, Kind.INDIVIDUAL, Kind.OBJECT_PROPERTY}


class TestUnknownConstructs:
    @pytest.mark.parametrize(
        "text",
        [
            "Class: A DisjointUnionOf: B, C",
            "ObjectProperty: p Domain: A",
            "ObjectProperty: p Characteristics: Functional",
            "Class: A SubClassOf: p min 2 B",
            "DataProperty: age",
            "Individual: i SameAs: j",
        ],
    )
    def test_recognized_but_unsupported(self, text):
        with pytest.raises(UnknownConstruct):
            parse_dl_frame(text)

    def test_plain_garbage_is_a_syntax_error(self):
        with pytest.raises(ParseError):
            parse_dl_frame("Klass: A")


def test_prefix_resolution_and_iri_names():
    prefixes = {"f1": "http://x/"}
    [ast] = parse_dl_frame("Individual: <http://x/Chris> Types: f1:Father", prefixes=prefixes)
    assert ast == ClassAssertion(
        ClsName("http://x/", "Father"), IndName("http://x/", "Chris")
    )


def test_undeclared_prefix():
    with pytest.raises(UndeclaredPrefix):
        parse_dl_frame("Individual: f9:Chris Types: Father")


def test_round_trip_of_fixture_sentences():
    logic = SimpleDlLogic()
    for path in [
        FIXTURES / "family" / "familyRelations.omn",
        FIXTURES / "family" / "scenario.omn",
        FIXTURES / "dolce" / "DOLCE-Lite.owl",
        FIXTURES / "bfo" / "1.1.omn",
        FIXTURES / "gfo" / "gfo.owl",
    ]:
        sentences, _ = parse_dl_frames(path.read_text())
        for ast in sentences:
            printed = print_dl_sentence(ast)
            assert parse_dl_frame(printed) == [ast], printed


def test_round_trip_with_prefix_compaction():
    prefixes = {"f1": "http://x/"}
    [ast] = parse_dl_frame("Class: f1:A SubClassOf: f1:B and not f1:C", prefixes=prefixes)
    printed = print_dl_sentence(ast, prefixes)
    assert printed == "Class: f1:A SubClassOf: f1:B and not f1:C"
    assert parse_dl_frame(printed, prefixes=prefixes) == [ast]


def _gen_expr(rng, depth):
    if depth <= 0 or rng.random() < 0.35:
        return ClsName("", rng.choice(["A", "B", "C", "D"]))
    roll = rng.random()
    if roll < 0.2:
        return ClsNot(_gen_expr(rng, depth - 1))
    if roll < 0.4:
        return ClsSome(PropName("", rng.choice(["p", "q"])), _gen_expr(rng, depth - 1))
    if roll < 0.5:
        return ClsOnly(PropName("", rng.choice(["p", "q"])), _gen_expr(rng, depth - 1))
    ctor = ClsAnd if roll < 0.75 else ClsOr
    return ctor(_gen_expr(rng, depth - 1), _gen_expr(rng, depth - 1))


def test_round_trip_on_generated_sentences():
    import random

    from dolkit.logics.simpledl import (
        DisjointClasses,
        InverseProperties,
        SubPropertyOf,
        TransitiveProperty,
    )

    rng = random.Random(31)
    for _ in range(300):
        roll = rng.random()
        if roll < 0.25:
            ast = SubClassOf(ClsName("", "S"), _gen_expr(rng, 3))
        elif roll < 0.4:
            ast = EquivalentClasses(ClsName("", "S"), _gen_expr(rng, 3))
        elif roll < 0.5:
            ast = DisjointClasses(ClsName("", "S"), _gen_expr(rng, 3))
        elif roll < 0.65:
            ast = ClassAssertion(_gen_expr(rng, 2), IndName("", "i"))
        elif roll < 0.75:
            ast = PropertyAssertion(PropName("", "p"), IndName("", "i"), IndName("", "j"))
        elif roll < 0.85:
            ast = SubPropertyOf(PropName("", "p"), PropName("", "q"))
        elif roll < 0.95:
            ast = InverseProperties(PropName("", "p"), PropName("", "q"))
        else:
            ast = TransitiveProperty(PropName("", "p"))
        printed = print_dl_sentence(ast)
        assert parse_dl_frame(printed) == [ast], printed


def test_theory_printing_includes_declarations():
    logic = SimpleDlLogic()
    t = logic.parse_theory("Class: Lonely Class: A SubClassOf: B", "t")
    text = logic.print_theory(t)
    reparsed = logic.parse_theory(text, "t")
    assert reparsed.signature == t.signature
    assert [s.ast for s in reparsed.sentences] == [s.ast for s in t.sentences]
