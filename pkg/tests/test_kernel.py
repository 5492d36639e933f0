"""Kernel: symbols, signatures, morphisms, theories, and the category laws."""

import random

import pytest

from dolkit.errors import InvalidTheory, KindClash, MismatchedEndpoints, SymbolNotInSource
from dolkit.kernel import (
    Kind,
    Role,
    Sentence,
    Signature,
    SignatureMorphism,
    Symbol,
    Theory,
    compose,
    identity,
    signature_union,
    symbols_of,
    translate_sentence,
    validate_theory,
)
from dolkit.logics import parse_dl_frames, parse_fof_formula, parse_prop
from dolkit.logics.simpledl import ClsName, SubClassOf
from dolkit.structure import Env


def psym(name: str) -> Symbol:
    return Symbol("", name, Kind.PROP_VAR, 0)


def psig(*names: str) -> Signature:
    return Signature("Prop", frozenset(psym(n) for n in names))


class TestIdentity:
    def test_single_class(self):
        sig = Signature("SimpleDL", frozenset([Symbol("", "C", Kind.CLASS)]))
        m = identity(sig)
        assert m.source == sig and m.target == sig
        assert m.apply(Symbol("", "C", Kind.CLASS)) == Symbol("", "C", Kind.CLASS)

    def test_empty_signature(self):
        m = identity(Signature("Prop"))
        assert m.mapping == {}

    def test_fixture_signature_fixed_pointwise(self, alignments_doc, repo):
        env = Env(alignments_doc, repo)
        dolce = env.load_iri("http://www.loa-cnr.it/ontologies/DOLCE-Lite.owl")
        m = identity(dolce.signature)
        assert all(m.apply(s) == s for s in dolce.signature.symbols)


class TestCompose:
    def test_left_identity(self):
        src, tgt = psig("a"), psig("b")
        m = SignatureMorphism(src, tgt, {psym("a"): psym("b")})
        assert compose(identity(src), m) == m

    def test_pointwise(self):
        a, b, c = psig("a"), psig("b"), psig("c")
        m = SignatureMorphism(a, b, {psym("a"): psym("b")})
        n = SignatureMorphism(b, c, {psym("b"): psym("c")})
        assert compose(m, n).mapping == {psym("a"): psym("c")}

    def test_mismatched_endpoints(self):
        a, b = psig("a"), psig("b")
        m = SignatureMorphism(a, b, {psym("a"): psym("b")})
        with pytest.raises(MismatchedEndpoints):
            compose(m, m)

    def test_alignment_induced_then_identity(self, alignments_env):
        # the endurant -> Presential bridge morphism composed with the
        # identity keeps the image intact
        from dolkit.structure import build_diagram

        doc = alignments_env.document
        d2g = next(a for a in doc.alignment_defs() if a.name == "DolceLite2GFO")
        diagram = build_diagram([d2g], alignments_env)
        to_gfo = next(e for e in diagram.edges if e.target == "gfo.owl")
        composed = compose(to_gfo.morphism, identity(to_gfo.morphism.target))
        assert composed == to_gfo.morphism
        bridge_endurant = next(
            s for s in to_gfo.morphism.source.symbols if s.name == "endurant"
        )
        assert composed.apply(bridge_endurant).name == "Presential"


class TestTranslateSentence:
    def test_identity_is_noop(self):
        ast = parse_prop("p and q")
        s = Sentence("Prop", ast, "s")
        sig = psig("p", "q")
        assert translate_sentence(identity(sig), s) == s

    def test_dl_substitution(self):
        asts, _ = parse_dl_frames("Class: endurant SubClassOf: endurant")
        s = Sentence("SimpleDL", asts[0], "ax")
        old = Symbol("", "endurant", Kind.CLASS)
        new = Symbol("", "Presential", Kind.CLASS)
        sig_a = Signature("SimpleDL", frozenset([old]))
        sig_b = Signature("SimpleDL", frozenset([new]))
        out = translate_sentence(SignatureMorphism(sig_a, sig_b, {old: new}), s)
        assert out.ast == SubClassOf(ClsName("", "Presential"), ClsName("", "Presential"))
        assert out.label == "ax" and out.role is Role.AXIOM

    def test_prop_collapse(self):
        s = Sentence("Prop", parse_prop("p and q"))
        m = SignatureMorphism(
            psig("p", "q"), psig("r"), {psym("p"): psym("r"), psym("q"): psym("r")}
        )
        assert translate_sentence(m, s).ast == parse_prop("r and r")

    def test_symbol_without_image(self):
        s = Sentence("Prop", parse_prop("p and q"))
        sig = psig("p")
        m = identity(sig)
        with pytest.raises(SymbolNotInSource):
            translate_sentence(m, s)


class TestSymbolsOf:
    def test_dl_assertion(self):
        asts, _ = parse_dl_frames("Individual: Chris Types: Father", origin="f1")
        syms = symbols_of(Sentence("SimpleDL", asts[0]))
        assert syms == frozenset(
            {Symbol("f1", "Chris", Kind.INDIVIDUAL), Symbol("f1", "Father", Kind.CLASS)}
        )

    def test_prop_constant_has_no_symbols(self):
        assert symbols_of(Sentence("Prop", parse_prop("true"))) == frozenset()

    def test_fol_predicate_arity(self):
        ast = parse_fof_formula("![X]: parent_of(X, X)")
        assert symbols_of(Sentence("FOL", ast)) == frozenset(
            {Symbol("", "parent_of", Kind.PREDICATE, 2)}
        )


class TestSignatureUnion:
    def test_neutral_element(self):
        sig = psig("p", "q")
        assert signature_union(sig, Signature("Prop")) == sig

    def test_idempotent_overlap(self):
        a = Signature("SimpleDL", frozenset([Symbol("", "C", Kind.CLASS)]))
        b = Signature(
            "SimpleDL",
            frozenset([Symbol("", "C", Kind.CLASS), Symbol("", "D", Kind.CLASS)]),
        )
        assert signature_union(a, b).symbols == b.symbols

    def test_kind_clash(self):
        a = Signature("SimpleDL", frozenset([Symbol("", "C", Kind.CLASS)]))
        b = Signature("SimpleDL", frozenset([Symbol("", "C", Kind.INDIVIDUAL)]))
        with pytest.raises(KindClash):
            signature_union(a, b)

    def test_set_laws_on_generated_signatures(self):
        rng = random.Random(7)
        pool = [f"s{i}" for i in range(8)]
        for _ in range(100):
            a = psig(*rng.sample(pool, rng.randint(0, 5)))
            b = psig(*rng.sample(pool, rng.randint(0, 5)))
            c = psig(*rng.sample(pool, rng.randint(0, 5)))
            assert signature_union(a, b) == signature_union(b, a)
            assert signature_union(signature_union(a, b), c) == signature_union(
                a, signature_union(b, c)
            )
            assert signature_union(a, a) == a


def _random_morphism(rng, src: Signature, tgt_names: list[str]) -> SignatureMorphism:
    tgt_syms = [psym(n) for n in tgt_names]
    mapping = {s: rng.choice(tgt_syms) for s in src.symbols}
    image = frozenset(mapping.values()) | frozenset(tgt_syms)
    return SignatureMorphism(src, Signature("Prop", image), mapping)


class TestCategoryLaws:
    def test_identity_associativity_and_translation_commute(self):
        rng = random.Random(11)
        for _ in range(200):
            a_names = [f"a{i}" for i in range(rng.randint(1, 5))]
            src = psig(*a_names)
            m = _random_morphism(rng, src, [f"b{i}" for i in range(rng.randint(1, 4))])
            n = _random_morphism(
                rng, m.target, [f"c{i}" for i in range(rng.randint(1, 4))]
            )
            p = _random_morphism(
                rng, n.target, [f"d{i}" for i in range(rng.randint(1, 4))]
            )
            assert compose(identity(src), m) == m
            assert compose(m, identity(m.target)) == m
            assert compose(compose(m, n), p) == compose(m, compose(n, p))
            from conftest import gen_prop_ast

            ast = gen_prop_ast(rng, a_names, 3)
            s = Sentence("Prop", ast)
            translated = translate_sentence(m, s)
            assert symbols_of(translated) == frozenset(
                m.apply(x) for x in symbols_of(s)
            )


class TestTheoryValidation:
    def test_valid_theory_passes(self):
        s = Sentence("Prop", parse_prop("p impl q"), "ax1")
        t = Theory("t", psig("p", "q"), (s,))
        validate_theory(t)

    def test_symbol_outside_signature(self):
        s = Sentence("Prop", parse_prop("p impl q"), "ax1")
        with pytest.raises(InvalidTheory):
            validate_theory(Theory("t", psig("p"), (s,)))

    def test_duplicate_labels(self):
        a = Sentence("Prop", parse_prop("p"), "ax")
        b = Sentence("Prop", parse_prop("q"), "ax")
        with pytest.raises(InvalidTheory):
            validate_theory(Theory("t", psig("p", "q"), (a, b)))

    def test_flattened_fixture_theories_validate(self, family_doc, repo):
        env = Env(family_doc, repo)
        for item in family_doc.ontology_defs():
            from dolkit.structure import flatten_definition

            validate_theory(flatten_definition(item, env))
