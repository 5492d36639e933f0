"""Logic/language/serialization registry and concrete logic mappings.

Three mappings are built in: prop2fol and dl2fol (translations into the
first-order fragment) and fol2prop (the forgetful projection that keeps only
nullary predicates). Mapping metadata records the translation/projection and
plain/theoroidal dichotomies plus declared accuracy, and path search over the
mapping graph backs heterogeneous unions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from .errors import LogicMismatch, NoCommonTarget, NoPath, UnknownLogic
from .kernel import (
    Kind,
    Role,
    Sentence,
    Signature,
    Symbol,
    Theory,
    registered_logic_ids,
)
from .logics import fol, prop, simpledl


class Direction(Enum):
    TRANSLATION = "Translation"
    PROJECTION = "Projection"


class Shape(Enum):
    PLAIN = "Plain"
    SIMPLE_THEOROIDAL = "SimpleTheoroidal"


class Accuracy(Enum):
    SUBLOGIC = "Sublogic"
    EMBEDDING = "Embedding"
    FAITHFUL = "Faithful"
    EXACT = "Exact"
    WEAKLY_EXACT = "WeaklyExact"


# declared accuracy is upward-closed along the implication chain
_IMPLIES = {
    Accuracy.SUBLOGIC: (Accuracy.EMBEDDING,),
    Accuracy.EMBEDDING: (Accuracy.FAITHFUL,),
    Accuracy.EXACT: (Accuracy.FAITHFUL,),
    Accuracy.WEAKLY_EXACT: (Accuracy.FAITHFUL,),
}


def _close_accuracy(declared: frozenset[Accuracy]) -> frozenset[Accuracy]:
    out = set(declared)
    frontier = list(declared)
    while frontier:
        for implied in _IMPLIES.get(frontier.pop(), ()):
            if implied not in out:
                out.add(implied)
                frontier.append(implied)
    return frozenset(out)


@dataclass(frozen=True)
class MappingMeta:
    id: str
    source_logic: str
    target_logic: str
    direction: Direction
    shape: Shape
    accuracy: frozenset[Accuracy] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "accuracy", _close_accuracy(frozenset(self.accuracy)))

    def accuracy_names(self) -> list[str]:
        return sorted(a.value for a in self.accuracy)


class LogicMapping:
    """A mapping between logics: a signature-to-theory map plus a partial
    sentence map (total for translations, possibly undefined for projections)."""

    meta: MappingMeta

    def map_signature(self, sig: Signature) -> Theory:
        raise NotImplementedError

    def map_sentence(self, sentence: Sentence) -> Sentence | None:
        raise NotImplementedError


def compose_meta(first: MappingMeta, second: MappingMeta) -> MappingMeta:
    """Metadata of a mapping composition: accuracy intersects, projection and
    theoroidal shape are contagious."""
    if first.target_logic != second.source_logic:
        raise LogicMismatch(
            f"cannot compose {first.id} ({first.target_logic}) with "
            f"{second.id} ({second.source_logic})"
        )
    direction = (
        Direction.PROJECTION
        if Direction.PROJECTION in (first.direction, second.direction)
        else Direction.TRANSLATION
    )
    shape = (
        Shape.SIMPLE_THEOROIDAL
        if Shape.SIMPLE_THEOROIDAL in (first.shape, second.shape)
        else Shape.PLAIN
    )
    return MappingMeta(
        f"{first.id};{second.id}",
        first.source_logic,
        second.target_logic,
        direction,
        shape,
        first.accuracy & second.accuracy,
    )


def translate_theory(m: LogicMapping, t: Theory) -> tuple[Theory, list[Sentence]]:
    """Translate a theory along a mapping.

    Returns the translated theory (infrastructure axioms first, then the
    defined sentence images in order) and the list of dropped sentences
    (empty for translations).
    """
    if t.logic_id != m.meta.source_logic:
        raise LogicMismatch(
            f"theory {t.name!r} is in {t.logic_id}, mapping {m.meta.id} expects "
            f"{m.meta.source_logic}"
        )
    infra = m.map_signature(t.signature)
    sentences: list[Sentence] = list(infra.sentences)
    dropped: list[Sentence] = []
    used_labels = {s.label for s in sentences if s.label is not None}
    for s in t.sentences:
        image = m.map_sentence(s)
        if image is None:
            dropped.append(s)
            continue
        label = image.label
        if label is not None and label in used_labels:
            k = 2
            while f"{label}_{k}" in used_labels:
                k += 1
            label = f"{label}_{k}"
            image = image.with_label(label)
        if label is not None:
            used_labels.add(label)
        sentences.append(image)
    return Theory(t.name, infra.signature, tuple(sentences)), dropped


def translate_along(path: list["LogicMapping"], t: Theory) -> tuple[Theory, list[Sentence]]:
    """Fold translate_theory over a mapping path; dropped sentences are
    collected in source-theory terms of the stage that dropped them."""
    dropped_all: list[Sentence] = []
    for m in path:
        t, dropped = translate_theory(m, t)
        dropped_all.extend(dropped)
    return t, dropped_all


# -- prop2fol --------------------------------------------------------------------


def _prop_symbol_image(sym: Symbol) -> Symbol:
    return Symbol(sym.origin, sym.name, Kind.PREDICATE, 0)


def _prop2fol_ast(ast) -> object:
    if isinstance(ast, prop.PTrue):
        return fol.FTrue()
    if isinstance(ast, prop.PFalse):
        return fol.FFalse()
    if isinstance(ast, prop.PVar):
        return fol.FAtom(ast.origin, ast.name, ())
    if isinstance(ast, prop.PNot):
        return fol.FNot(_prop2fol_ast(ast.body))
    if isinstance(ast, prop.PBin):
        return fol.FBin(ast.op, _prop2fol_ast(ast.left), _prop2fol_ast(ast.right))
    raise TypeError(f"not a propositional ast: {ast!r}")


class Prop2Fol(LogicMapping):
    meta = MappingMeta(
        "prop2fol",
        "Prop",
        "FOL",
        Direction.TRANSLATION,
        Shape.PLAIN,
        frozenset({Accuracy.SUBLOGIC, Accuracy.EMBEDDING, Accuracy.FAITHFUL}),
    )

    def map_signature(self, sig: Signature) -> Theory:
        symbols = frozenset(_prop_symbol_image(s) for s in sig.symbols)
        return Theory("", Signature("FOL", symbols), ())

    def map_sentence(self, sentence: Sentence) -> Sentence | None:
        return Sentence(
            "FOL", _prop2fol_ast(sentence.ast), sentence.label, sentence.role
        )


# -- dl2fol ----------------------------------------------------------------------

NEQ = Symbol("", "neq", Kind.PREDICATE, 2)


def _dl_symbol_image(sym: Symbol) -> Symbol:
    if sym.kind is Kind.CLASS:
        return Symbol(sym.origin, sym.name, Kind.PREDICATE, 1)
    if sym.kind in (Kind.OBJECT_PROPERTY, Kind.DATA_PROPERTY):
        return Symbol(sym.origin, sym.name, Kind.PREDICATE, 2)
    if sym.kind is Kind.INDIVIDUAL:
        return sym
    raise LogicMismatch(f"dl2fol cannot map a {sym.kind.value} symbol")


class _FreshVars:
    _POOL = ("X", "Y", "Z")

    def __init__(self) -> None:
        self.count = 0

    def take(self) -> str:
        name = (
            self._POOL[self.count]
            if self.count < len(self._POOL)
            else f"X{self.count - len(self._POOL) + 1}"
        )
        self.count += 1
        return name


def _cls_to_fol(expr, term, vars: _FreshVars):
    if isinstance(expr, simpledl.ClsName):
        return fol.FAtom(expr.origin, expr.name, (term,))
    if isinstance(expr, simpledl.ClsNot):
        return fol.FNot(_cls_to_fol(expr.body, term, vars))
    if isinstance(expr, simpledl.ClsAnd):
        return fol.FBin(
            "and", _cls_to_fol(expr.left, term, vars), _cls_to_fol(expr.right, term, vars)
        )
    if isinstance(expr, simpledl.ClsOr):
        return fol.FBin(
            "or", _cls_to_fol(expr.left, term, vars), _cls_to_fol(expr.right, term, vars)
        )
    if isinstance(expr, simpledl.ClsSome):
        v = vars.take()
        link = fol.FAtom(expr.prop.origin, expr.prop.name, (term, fol.FVar(v)))
        return fol.FQuant(
            "exists", v, fol.FBin("and", link, _cls_to_fol(expr.filler, fol.FVar(v), vars))
        )
    if isinstance(expr, simpledl.ClsOnly):
        v = vars.take()
        link = fol.FAtom(expr.prop.origin, expr.prop.name, (term, fol.FVar(v)))
        return fol.FQuant(
            "forall", v, fol.FBin("impl", link, _cls_to_fol(expr.filler, fol.FVar(v), vars))
        )
    raise TypeError(f"not a class expression: {expr!r}")


def _binary(p: simpledl.PropName, x, y) -> fol.FAtom:
    return fol.FAtom(p.origin, p.name, (x, y))


def _dl2fol_ast(ast) -> object:
    vars = _FreshVars()
    if isinstance(ast, simpledl.SubClassOf):
        x = vars.take()
        return fol.FQuant(
            "forall",
            x,
            fol.FBin(
                "impl",
                _cls_to_fol(ast.sub, fol.FVar(x), vars),
                _cls_to_fol(ast.sup, fol.FVar(x), vars),
            ),
        )
    if isinstance(ast, simpledl.EquivalentClasses):
        x = vars.take()
        return fol.FQuant(
            "forall",
            x,
            fol.FBin(
                "iff",
                _cls_to_fol(ast.left, fol.FVar(x), vars),
                _cls_to_fol(ast.right, fol.FVar(x), vars),
            ),
        )
    if isinstance(ast, simpledl.DisjointClasses):
        x = vars.take()
        return fol.FQuant(
            "forall",
            x,
            fol.FBin(
                "impl",
                _cls_to_fol(ast.left, fol.FVar(x), vars),
                fol.FNot(_cls_to_fol(ast.right, fol.FVar(x), vars)),
            ),
        )
    if isinstance(ast, simpledl.ClassAssertion):
        return _cls_to_fol(ast.cls, fol.FConst(ast.individual.origin, ast.individual.name), vars)
    if isinstance(ast, simpledl.PropertyAssertion):
        return _binary(
            ast.prop,
            fol.FConst(ast.subject.origin, ast.subject.name),
            fol.FConst(ast.obj.origin, ast.obj.name),
        )
    if isinstance(ast, simpledl.SubPropertyOf):
        x, y = vars.take(), vars.take()
        return fol.forall(
            [x, y],
            fol.FBin(
                "impl",
                _binary(ast.sub, fol.FVar(x), fol.FVar(y)),
                _binary(ast.sup, fol.FVar(x), fol.FVar(y)),
            ),
        )
    if isinstance(ast, simpledl.InverseProperties):
        x, y = vars.take(), vars.take()
        return fol.forall(
            [x, y],
            fol.FBin(
                "iff",
                _binary(ast.left, fol.FVar(x), fol.FVar(y)),
                _binary(ast.right, fol.FVar(y), fol.FVar(x)),
            ),
        )
    if isinstance(ast, simpledl.TransitiveProperty):
        x, y, z = vars.take(), vars.take(), vars.take()
        body = fol.FBin(
            "impl",
            fol.FBin(
                "and",
                _binary(ast.prop, fol.FVar(x), fol.FVar(y)),
                _binary(ast.prop, fol.FVar(y), fol.FVar(z)),
            ),
            _binary(ast.prop, fol.FVar(x), fol.FVar(z)),
        )
        return fol.forall([x, y, z], body)
    raise TypeError(f"not a DL sentence: {ast!r}")


class Dl2Fol(LogicMapping):
    """The standard translation, plus unique-name infrastructure: a generated
    binary predicate `neq` with a ground fact per ordered pair of distinct
    individuals (first-order here is equality-free, so rules needing
    inequality consume these facts)."""

    meta = MappingMeta(
        "dl2fol",
        "SimpleDL",
        "FOL",
        Direction.TRANSLATION,
        Shape.SIMPLE_THEOROIDAL,
        frozenset({Accuracy.EMBEDDING, Accuracy.FAITHFUL}),
    )

    def map_signature(self, sig: Signature) -> Theory:
        symbols = {_dl_symbol_image(s) for s in sig.symbols}
        individuals = sorted(
            (s for s in sig.symbols if s.kind is Kind.INDIVIDUAL), key=Symbol.sort_key
        )
        sentences: list[Sentence] = []
        if len(individuals) >= 2:
            symbols.add(NEQ)
            k = 0
            for i in individuals:
                for j in individuals:
                    if i == j:
                        continue
                    k += 1
                    atom = fol.FAtom(
                        NEQ.origin,
                        NEQ.name,
                        (fol.FConst(i.origin, i.name), fol.FConst(j.origin, j.name)),
                    )
                    sentences.append(Sentence("FOL", atom, f"neq_{k}", Role.AXIOM))
        return Theory("", Signature("FOL", frozenset(symbols)), tuple(sentences))

    def map_sentence(self, sentence: Sentence) -> Sentence | None:
        return Sentence("FOL", _dl2fol_ast(sentence.ast), sentence.label, sentence.role)


# -- fol2prop --------------------------------------------------------------------


def _fol2prop_ast(ast):
    """Propositional image of a FOL formula, or None when the formula uses
    quantifiers, equality, or predicates of arity > 0."""
    if isinstance(ast, fol.FTrue):
        return prop.PTrue()
    if isinstance(ast, fol.FFalse):
        return prop.PFalse()
    if isinstance(ast, fol.FAtom):
        if ast.args:
            return None
        return prop.PVar(ast.origin, ast.name)
    if isinstance(ast, fol.FNot):
        body = _fol2prop_ast(ast.body)
        return None if body is None else prop.PNot(body)
    if isinstance(ast, fol.FBin):
        left = _fol2prop_ast(ast.left)
        right = _fol2prop_ast(ast.right)
        if left is None or right is None:
            return None
        return prop.PBin(ast.op, left, right)
    return None  # quantifiers, equality


class Fol2Prop(LogicMapping):
    meta = MappingMeta(
        "fol2prop", "FOL", "Prop", Direction.PROJECTION, Shape.PLAIN, frozenset()
    )

    def map_signature(self, sig: Signature) -> Theory:
        symbols = frozenset(
            Symbol(s.origin, s.name, Kind.PROP_VAR, 0)
            for s in sig.symbols
            if s.kind is Kind.PREDICATE and s.arity == 0
        )
        return Theory("", Signature("Prop", symbols), ())

    def map_sentence(self, sentence: Sentence) -> Sentence | None:
        image = _fol2prop_ast(sentence.ast)
        if image is None:
            return None
        return Sentence("Prop", image, sentence.label, sentence.role)


# -- registry --------------------------------------------------------------------


class Category(Enum):
    ONTOLOGY_LANGUAGE = "OntologyLanguage"
    LOGIC = "Logic"
    SERIALIZATION = "Serialization"
    MAPPING = "Mapping"


@dataclass(frozen=True)
class RegistryEntry:
    category: Category
    id: str
    attributes: tuple[tuple[str, str], ...] = ()

    def attr(self, key: str) -> str | None:
        for k, v in self.attributes:
            if k == key:
                return v
        return None


_MAPPINGS: dict[str, LogicMapping] = {}
_ENTRIES: list[RegistryEntry] = []


def register_mapping(m: LogicMapping) -> None:
    _MAPPINGS[m.meta.id] = m
    _ENTRIES.append(
        RegistryEntry(
            Category.MAPPING,
            m.meta.id,
            (
                ("source", m.meta.source_logic),
                ("target", m.meta.target_logic),
                ("direction", m.meta.direction.value),
                ("shape", m.meta.shape.value),
                ("accuracy", ",".join(m.meta.accuracy_names())),
            ),
        )
    )


def get_mapping(mapping_id: str) -> LogicMapping:
    try:
        return _MAPPINGS[mapping_id]
    except KeyError:
        raise NoPath(f"no registered mapping {mapping_id!r}") from None


def _register_builtins() -> None:
    for logic_id in registered_logic_ids():
        _ENTRIES.append(RegistryEntry(Category.LOGIC, logic_id))
    _ENTRIES.extend(
        [
            RegistryEntry(
                Category.ONTOLOGY_LANGUAGE, "OWL", (("supported-by", "SimpleDL"),)
            ),
            RegistryEntry(
                Category.ONTOLOGY_LANGUAGE, "Propositional", (("supported-by", "Prop"),)
            ),
            RegistryEntry(Category.ONTOLOGY_LANGUAGE, "TPTP", (("supported-by", "FOL"),)),
            RegistryEntry(
                Category.SERIALIZATION,
                "manchester",
                (("serialization-of", "OWL"), ("extensions", ".omn .owl")),
            ),
            RegistryEntry(
                Category.SERIALIZATION,
                "tptp-fof",
                (("serialization-of", "TPTP"), ("extensions", ".p .fof")),
            ),
            RegistryEntry(
                Category.SERIALIZATION,
                "prop-text",
                (("serialization-of", "Propositional"), ("extensions", ".prop")),
            ),
        ]
    )
    for mapping in (Dl2Fol(), Fol2Prop(), Prop2Fol()):
        register_mapping(mapping)


_register_builtins()


def registry_list(category: Category) -> list[RegistryEntry]:
    return sorted((e for e in _ENTRIES if e.category is category), key=lambda e: e.id)


def logic_for_language(name: str) -> str:
    """Resolve a `logic` declaration: either a logic id or a language name."""
    if name in registered_logic_ids():
        return name
    for entry in registry_list(Category.ONTOLOGY_LANGUAGE):
        if entry.id == name:
            supported = entry.attr("supported-by")
            if supported:
                return supported
    raise UnknownLogic(f"unknown logic or language {name!r}")


def logic_for_extension(ext: str) -> str | None:
    return {
        ".omn": "SimpleDL",
        ".owl": "SimpleDL",
        ".p": "FOL",
        ".fof": "FOL",
        ".prop": "Prop",
    }.get(ext)


def extensions_for_logic(logic_id: str) -> tuple[str, ...]:
    return {
        "SimpleDL": (".omn", ".owl"),
        "FOL": (".p", ".fof"),
        "Prop": (".prop",),
    }.get(logic_id, ())


# -- path search -----------------------------------------------------------------


def _edges(translations_only: bool, required: Accuracy | None) -> list[LogicMapping]:
    out = []
    for mid in sorted(_MAPPINGS):
        m = _MAPPINGS[mid]
        if translations_only and m.meta.direction is not Direction.TRANSLATION:
            continue
        if required is not None and required not in m.meta.accuracy:
            continue
        out.append(m)
    return out


def _all_paths(
    start: str, goal: str, edges: list[LogicMapping]
) -> list[list[LogicMapping]]:
    paths: list[list[LogicMapping]] = []

    def walk(at: str, seen: frozenset[str], acc: list[LogicMapping]) -> None:
        if at == goal:
            paths.append(list(acc))
            return
        for e in edges:
            if e.meta.source_logic == at and e.meta.target_logic not in seen:
                acc.append(e)
                walk(e.meta.target_logic, seen | {e.meta.target_logic}, acc)
                acc.pop()

    walk(start, frozenset({start}), [])
    return paths


def find_path(
    from_logic: str,
    to_logic: str,
    required_accuracy: Accuracy | None = None,
    translations_only: bool = False,
) -> list[LogicMapping]:
    """Shortest mapping path whose every edge declares the required accuracy;
    ties break lexicographically on mapping ids. Empty when from == to."""
    for logic_id in (from_logic, to_logic):
        if logic_id not in registered_logic_ids():
            raise UnknownLogic(f"unknown logic {logic_id!r}")
    if from_logic == to_logic:
        return []
    paths = _all_paths(from_logic, to_logic, _edges(translations_only, required_accuracy))
    if not paths:
        detail = f" with accuracy {required_accuracy.value}" if required_accuracy else ""
        raise NoPath(f"no mapping path from {from_logic} to {to_logic}{detail}")
    return min(paths, key=lambda p: (len(p), tuple(m.meta.id for m in p)))


def common_target(logic_a: str, logic_b: str) -> tuple[str, list[LogicMapping], list[LogicMapping]]:
    """A logic reachable from both via translations, minimizing total path
    length; ties break lexicographically on the target logic id."""
    candidates: list[tuple[int, str, list[LogicMapping], list[LogicMapping]]] = []
    for target in registered_logic_ids():
        try:
            pa = find_path(logic_a, target, translations_only=True)
            pb = find_path(logic_b, target, translations_only=True)
        except (NoPath, UnknownLogic):
            continue
        candidates.append((len(pa) + len(pb), target, pa, pb))
    if not candidates:
        raise NoCommonTarget(f"no common translation target for {logic_a} and {logic_b}")
    candidates.sort(key=lambda c: (c[0], c[1]))
    _, target, pa, pb = candidates[0]
    return target, pa, pb
