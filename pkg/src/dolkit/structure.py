"""Semantics of DOL structuring: flattening expressions to theories,
alignment diagrams, colimit-based combination, proof-obligation extraction,
and the development graph.

Flattening resolves references through the repository config, unions
same-logic operands, and routes heterogeneous unions through the mapping
graph's common target. Combination quotients the disjoint union of the
aligned signatures by the equivalence closure the alignments induce.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum

from .dolparse import (
    AlignmentDef,
    And,
    Basic,
    Combine,
    CorrName,
    DolDocument,
    OntologyDef,
    OntologyExpr,
    Ref,
    Relation,
    RepoConfig,
    Then,
    resolve_reference,
)
from .errors import (
    DolkitError,
    EmptyCombine,
    HeterogeneousAlignment,
    KindMismatch,
    NewSymbolInConjecture,
    UnresolvedCorrespondence,
    UnresolvedIri,
)
from .kernel import (
    Kind,
    Role,
    Sentence,
    Signature,
    SignatureMorphism,
    Symbol,
    Theory,
    get_logic,
    signature_union,
    symbols_of,
    translate_sentence,
)
from .logics import fol, prop, simpledl
from .mappings import common_target, find_path, translate_along


class Env:
    """Analysis context: the parsed document, the repository config, and a
    cache so shared bases flatten to one Theory object."""

    def __init__(self, document: DolDocument, repo: RepoConfig, origin: str = ""):
        self.document = document
        self.repo = repo
        self.origin = origin
        self.prefixes = document.prefix_map
        self._by_name: dict[str, Theory] = {}
        self._by_iri: dict[str, Theory] = {}
        self._iri_nodes: dict[str, str] = {}  # iri -> graph/diagram node id
        self._expr_nodes: dict[OntologyExpr, tuple[str, Theory]] = {}
        self._node_ids: set[str] = set()
        self._cq_mode: dict[str, bool] = {}
        # a definition that is exactly one IRI reference names that file's node
        for item in document.ontology_defs():
            if isinstance(item.expr, Ref) and item.expr.iri is not None:
                self._iri_nodes.setdefault(item.expr.iri, item.name)
                self._node_ids.add(item.name)

    def definition(self, name: str):
        item = self.document.definitions().get(name)
        if item is None:
            raise UnresolvedIri(f"undefined reference {name!r}")
        return item

    def node_id_for_iri(self, iri: str) -> str:
        """Stable display node id for a file-backed theory."""
        existing = self._iri_nodes.get(iri)
        if existing is not None:
            return existing
        base = iri.rstrip("/").rsplit("/", 1)[-1] or iri
        node_id = base
        k = 2
        while node_id in self._node_ids:
            node_id = f"{base}_{k}"
            k += 1
        self._iri_nodes[iri] = node_id
        self._node_ids.add(node_id)
        return node_id

    def load_iri(self, iri: str) -> Theory:
        cached = self._by_iri.get(iri)
        if cached is None:
            text, logic_id, origin = resolve_reference(iri, self.repo)
            name = self.node_id_for_iri(iri)
            logic = get_logic(logic_id)
            cached = logic.parse_theory(
                text, name, origin=origin, prefixes=self.prefixes, label_base=name
            )
            self._by_iri[iri] = cached
        return cached


def _merge_sentences(groups: list[tuple[Sentence, ...]]) -> tuple[Sentence, ...]:
    """Order-preserving structural union; colliding labels get a numeric
    suffix so theory invariants hold."""
    seen_keys: set = set()
    used_labels: set[str] = set()
    merged: list[Sentence] = []
    for group in groups:
        for s in group:
            key = (s.logic_id, s.ast, s.role)
            if key in seen_keys:
                continue
            seen_keys.add(key)
            label = s.label
            if label is not None and label in used_labels:
                k = 2
                while f"{label}_{k}" in used_labels:
                    k += 1
                label = f"{label}_{k}"
                s = s.with_label(label)
            if label is not None:
                used_labels.add(label)
            merged.append(s)
    return tuple(merged)


def _union(name: str, theories: list[Theory]) -> Theory:
    sig = theories[0].signature
    for t in theories[1:]:
        sig = signature_union(sig, t.signature)
    return Theory(name, sig, _merge_sentences([t.sentences for t in theories]))


def _to_common_logic(name: str, theories: list[Theory]) -> list[Theory]:
    """Translate a mixed-logic batch into a common target logic."""
    logic_ids: list[str] = []
    for t in theories:
        if t.logic_id not in logic_ids:
            logic_ids.append(t.logic_id)
    target = logic_ids[0]
    for other in logic_ids[1:]:
        target, _, _ = common_target(target, other)
    out = []
    for t in theories:
        path = find_path(t.logic_id, target, translations_only=True)
        translated, _ = translate_along(path, t)
        out.append(translated)
    return out


def flatten(expr: OntologyExpr, env: Env, name: str = "") -> Theory:
    """Resolve an ontology expression to a theory."""
    if isinstance(expr, Ref):
        if expr.iri is None:
            item = env.definition(expr.written)
            if isinstance(item, AlignmentDef):
                raise UnresolvedIri(f"{expr.written!r} names an alignment, not an ontology")
            t = flatten_definition(item, env)
        else:
            t = env.load_iri(expr.iri)
        return dataclasses.replace(t, name=name) if name and name != t.name else t
    if isinstance(expr, Basic):
        logic = get_logic(expr.logic_id)
        return logic.parse_theory(
            expr.text,
            name or "fragment",
            origin=env.origin,
            prefixes=env.prefixes,
            label_base=name or "fragment",
        )
    if isinstance(expr, And):
        parts = [flatten(op, env) for op in expr.operands]
        if len({t.logic_id for t in parts}) > 1:
            parts = _to_common_logic(name, parts)
        return _union(name or "union", parts)
    if isinstance(expr, Then):
        return _flatten_then(expr, env, name)[0]
    if isinstance(expr, Combine):
        return combine(list(expr.alignments), env, name or "combine")
    raise TypeError(f"not an ontology expression: {expr!r}")


def _flatten_then(expr: Then, env: Env, name: str) -> tuple[Theory, bool]:
    """Flatten a `then` extension; returns the theory and whether the
    extension was treated as competency-question conjectures.

    An extension that introduces no symbols beyond its base is a set of
    conjectures (proof obligations); one that declares new symbols is an
    ordinary extension.
    """
    base = flatten(expr.base, env, name="")
    ext = flatten(expr.extension, env, name=name or "extension")
    cq_mode = (
        ext.logic_id == base.logic_id
        and ext.signature.symbols <= base.signature.symbols
    )
    if cq_mode:
        ext = dataclasses.replace(
            ext, sentences=tuple(s.with_role(Role.CONJECTURE) for s in ext.sentences)
        )
        merged = Theory(
            name or "extension",
            base.signature,
            _merge_sentences([base.sentences, ext.sentences]),
        )
    else:
        merged = _union(name or "extension", [base, ext])
    return merged, cq_mode


def flatten_definition(item: OntologyDef, env: Env) -> Theory:
    cached = env._by_name.get(item.name)
    if cached is None:
        if isinstance(item.expr, Then):
            cached, cq = _flatten_then(item.expr, env, item.name)
            env._cq_mode[item.name] = cq
        else:
            cached = flatten(item.expr, env, item.name)
        env._by_name[item.name] = cached
    return cached


def validate_document(doc: DolDocument, env: Env) -> None:
    """Document-level analysis pass: every definition flattens and every
    alignment correspondence resolves to same-kind symbols."""
    for item in doc.ontology_defs():
        flatten_definition(item, env)
    if doc.alignment_defs():
        resolve_alignments(doc.alignment_defs(), env)


# -- alignment diagrams and colimits ------------------------------------------------


@dataclass(frozen=True)
class DiagramEdge:
    source: str
    target: str
    morphism: SignatureMorphism


@dataclass(frozen=True)
class Diagram:
    nodes: tuple[tuple[str, Signature], ...]
    edges: tuple[DiagramEdge, ...]

    def node_map(self) -> dict[str, Signature]:
        return dict(self.nodes)

    def __post_init__(self) -> None:
        sigs = self.node_map()
        for e in self.edges:
            if e.source not in sigs or e.target not in sigs:
                raise DolkitError(f"diagram edge {e.source}->{e.target} misses a node")
            if e.morphism.source != sigs[e.source] or e.morphism.target != sigs[e.target]:
                raise DolkitError(
                    f"diagram edge {e.source}->{e.target} morphism endpoints do not "
                    "match the node signatures"
                )


def _resolve_corr_name(cname: CorrName, theory: Theory, side: str) -> Symbol:
    if cname.origin is None:
        candidates = theory.signature.by_local_name(cname.name)
    else:
        candidates = theory.signature.by_qualified(cname.origin, cname.name)
    if not candidates:
        raise UnresolvedCorrespondence(cname.display, side, f"theory {theory.name!r}")
    if len(candidates) > 1:
        kinds = ", ".join(c.kind.value for c in candidates)
        raise UnresolvedCorrespondence(
            cname.display, side, f"ambiguous in {theory.name!r} (kinds: {kinds})"
        )
    return candidates[0]


def _expr_display(expr: OntologyExpr) -> str:
    if isinstance(expr, Ref):
        return expr.display
    if isinstance(expr, And):
        return "_and_".join(_expr_display(op) for op in expr.operands)
    if isinstance(expr, Combine):
        return "combine_" + "_".join(expr.alignments)
    if isinstance(expr, Then):
        return _expr_display(expr.base) + "_then"
    return "fragment"


def _side_theory(expr: OntologyExpr, env: Env) -> tuple[str, Theory]:
    """Flatten an alignment side and give it a stable diagram node id;
    repeated occurrences of the same side share one node and theory."""
    if isinstance(expr, Ref) and expr.iri is not None:
        return env.node_id_for_iri(expr.iri), env.load_iri(expr.iri)
    if isinstance(expr, Ref):
        return expr.written, flatten(expr, env, expr.written)
    cached = env._expr_nodes.get(expr)
    if cached is None:
        base = _expr_display(expr)
        node_id = base
        k = 2
        while node_id in env._node_ids:
            node_id = f"{base}_{k}"
            k += 1
        env._node_ids.add(node_id)
        cached = (node_id, flatten(expr, env, node_id))
        env._expr_nodes[expr] = cached
    return cached


@dataclass(frozen=True)
class ResolvedCorrespondence:
    alignment: str
    left_node: str
    right_node: str
    left: Symbol
    right: Symbol
    relation: Relation


def resolve_alignments(
    alignments: list[AlignmentDef], env: Env
) -> tuple[dict[str, Theory], list[ResolvedCorrespondence]]:
    """Flatten all sides and resolve every correspondence to symbols."""
    theories: dict[str, Theory] = {}
    resolved: list[ResolvedCorrespondence] = []
    logic_ids: set[str] = set()
    for a in alignments:
        left_id, left_t = _side_theory(a.left, env)
        right_id, right_t = _side_theory(a.right, env)
        theories.setdefault(left_id, left_t)
        theories.setdefault(right_id, right_t)
        logic_ids.update({left_t.logic_id, right_t.logic_id})
        if len(logic_ids) > 1:
            raise HeterogeneousAlignment(
                f"alignment {a.name!r} relates theories in different logics: "
                + ", ".join(sorted(logic_ids))
            )
        for corr in a.correspondences:
            ls = _resolve_corr_name(corr.left, left_t, "left")
            rs = _resolve_corr_name(corr.right, right_t, "right")
            if ls.kind != rs.kind or ls.arity != rs.arity:
                raise KindMismatch(
                    f"{a.name}: {ls!r} and {rs!r} have different kinds"
                )
            resolved.append(
                ResolvedCorrespondence(a.name, left_id, right_id, ls, rs, corr.relation)
            )
    return theories, resolved


def build_diagram(alignments: list[AlignmentDef], env: Env) -> Diagram:
    """One node per distinct aligned theory plus one bridge node per
    alignment holding a symbol for each equivalence correspondence, with
    morphisms into both sides. Subsumption rows contribute no bridge symbols."""
    theories, resolved = resolve_alignments(alignments, env)
    nodes: list[tuple[str, Signature]] = [
        (node_id, t.signature) for node_id, t in theories.items()
    ]
    edges: list[DiagramEdge] = []
    for a in alignments:
        rows = [r for r in resolved if r.alignment == a.name and r.relation is Relation.EQUIVALENT]
        bridge_symbols: dict[Symbol, tuple[Symbol, Symbol]] = {}
        for r in rows:
            bridge_sym = Symbol(a.name, r.left.name, r.left.kind, r.left.arity)
            k = 2
            while bridge_sym in bridge_symbols:
                bridge_sym = Symbol(a.name, f"{r.left.name}_{k}", r.left.kind, r.left.arity)
                k += 1
            bridge_symbols[bridge_sym] = (r.left, r.right)
        logic_id = nodes[0][1].logic_id if nodes else "SimpleDL"
        bridge_sig = Signature(logic_id, frozenset(bridge_symbols))
        bridge_id = a.name
        nodes.append((bridge_id, bridge_sig))
        # side lookups are cached, so this re-resolution is cheap
        left_id, _ = _side_theory(a.left, env)
        right_id, _ = _side_theory(a.right, env)
        left_map = {b: lr[0] for b, lr in bridge_symbols.items()}
        right_map = {b: lr[1] for b, lr in bridge_symbols.items()}
        edges.append(
            DiagramEdge(
                bridge_id,
                left_id,
                SignatureMorphism(bridge_sig, theories[left_id].signature, left_map),
            )
        )
        edges.append(
            DiagramEdge(
                bridge_id,
                right_id,
                SignatureMorphism(bridge_sig, theories[right_id].signature, right_map),
            )
        )
    return Diagram(tuple(nodes), tuple(edges))


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def colimit(d: Diagram) -> tuple[Signature, dict[str, SignatureMorphism]]:
    """Colimit of a same-logic signature diagram.

    The colimit signature is the quotient of the disjoint union of node
    symbols by the equivalence closure of all edge-induced identifications;
    the returned injections commute with every diagram edge.
    """
    sigs = dict(d.nodes)
    logic_ids = {sig.logic_id for _, sig in d.nodes}
    if len(logic_ids) > 1:
        raise HeterogeneousAlignment(
            "colimit over nodes in different logics: " + ", ".join(sorted(logic_ids))
        )
    logic_id = next(iter(logic_ids)) if logic_ids else "SimpleDL"
    uf = _UnionFind()
    items: list[tuple[str, Symbol]] = [
        (node_id, sym)
        for node_id, sig in d.nodes
        for sym in sorted(sig.symbols, key=Symbol.sort_key)
    ]
    for item in items:
        uf.find(item)
    for e in d.edges:
        for sym in sorted(e.morphism.source.symbols, key=Symbol.sort_key):
            uf.union((e.source, sym), (e.target, e.morphism.apply(sym)))
    classes: dict[object, list[tuple[str, Symbol]]] = {}
    for item in items:
        classes.setdefault(uf.find(item), []).append(item)
    # name representatives deterministically; members keep diagram order
    node_order = {node_id: i for i, (node_id, _) in enumerate(d.nodes)}
    taken: set[tuple[str, Kind, int]] = set()
    rep_of: dict[object, Symbol] = {}
    for root in sorted(classes, key=lambda r: min((node_order[n], s.sort_key()) for n, s in classes[r])):
        members = sorted(classes[root], key=lambda m: (node_order[m[0]], m[1].sort_key()))
        kinds = {(s.kind, s.arity) for _, s in members}
        if len(kinds) > 1:
            named = ", ".join(repr(s) for _, s in members)
            raise KindMismatch(f"merged symbols have different kinds: {named}")
        kind, arity = next(iter(kinds))
        locals_ = sorted({s.name for _, s in members})
        if len(members) == 1:
            rep = members[0][1]
        else:
            local = locals_[0] if len(locals_) == 1 else "__".join(locals_)
            origin = next(s.origin for _, s in members if s.name == locals_[0])
            rep = Symbol(origin, local, kind, arity)
        k = 2
        base_name = rep.name
        while (rep.qualified, rep.kind, rep.arity) in taken:
            rep = Symbol(rep.origin, f"{base_name}_{k}", kind, arity)
            k += 1
        taken.add((rep.qualified, rep.kind, rep.arity))
        rep_of[root] = rep
    colimit_sig = Signature(logic_id, frozenset(rep_of.values()))
    injections: dict[str, SignatureMorphism] = {}
    for node_id, sig in d.nodes:
        mapping = {sym: rep_of[uf.find((node_id, sym))] for sym in sig.symbols}
        injections[node_id] = SignatureMorphism(sig, colimit_sig, mapping)
    return colimit_sig, injections


def _subsumption_sentence(
    logic_id: str, left: Symbol, right: Symbol, label: str
) -> Sentence:
    """The kind-appropriate subsumption: SubClassOf for classes,
    SubPropertyOf for object properties, implication for predicates."""
    if logic_id == "SimpleDL":
        if left.kind is Kind.CLASS:
            ast = simpledl.SubClassOf(
                simpledl.ClsName(left.origin, left.name),
                simpledl.ClsName(right.origin, right.name),
            )
        elif left.kind is Kind.OBJECT_PROPERTY:
            ast = simpledl.SubPropertyOf(
                simpledl.PropName(left.origin, left.name),
                simpledl.PropName(right.origin, right.name),
            )
        else:
            raise KindMismatch(
                f"subsumption between {left.kind.value} symbols is not expressible"
            )
        return Sentence(logic_id, ast, label, Role.AXIOM)
    if logic_id == "Prop":
        ast = prop.PBin(
            "impl", prop.PVar(left.origin, left.name), prop.PVar(right.origin, right.name)
        )
        return Sentence(logic_id, ast, label, Role.AXIOM)
    if logic_id == "FOL":
        variables = [f"X{i}" for i in range(1, left.arity + 1)]
        args = tuple(fol.FVar(v) for v in variables)
        body = fol.FBin(
            "impl",
            fol.FAtom(left.origin, left.name, args),
            fol.FAtom(right.origin, right.name, args),
        )
        return Sentence(logic_id, fol.forall(variables, body), label, Role.AXIOM)
    raise KindMismatch(f"subsumption not supported in logic {logic_id}")


@dataclass(frozen=True)
class CombineResult:
    theory: Theory
    diagram: Diagram
    injections: dict[str, SignatureMorphism]

    def merged_classes(self) -> list[tuple[Symbol, list[tuple[str, Symbol]]]]:
        """Equivalence classes of the combination, largest first; each entry
        is (representative, [(node_id, member), ...])."""
        classes: dict[Symbol, list[tuple[str, Symbol]]] = {}
        for node_id, sig in self.diagram.nodes:
            inj = self.injections[node_id]
            for sym in sorted(sig.symbols, key=Symbol.sort_key):
                classes.setdefault(inj.apply(sym), []).append((node_id, sym))
        return sorted(
            classes.items(), key=lambda kv: (-len(kv[1]), kv[0].sort_key())
        )


def combine_details(alignment_names: list[str], env: Env, name: str = "combine") -> CombineResult:
    """Colimit-based combination of the theories the named alignments relate:
    every node's sentences translate along its injection, and each
    subsumption correspondence adds one generated sentence."""
    if not alignment_names:
        raise EmptyCombine("combine needs at least one alignment")
    defs = env.document.definitions()
    alignments: list[AlignmentDef] = []
    for a_name in alignment_names:
        item = defs.get(a_name)
        if not isinstance(item, AlignmentDef):
            raise UnresolvedIri(f"{a_name!r} is not a declared alignment")
        alignments.append(item)
    theories, resolved = resolve_alignments(alignments, env)
    diagram = build_diagram(alignments, env)
    colimit_sig, injections = colimit(diagram)
    groups: list[tuple[Sentence, ...]] = []
    for node_id, t in theories.items():
        inj = injections[node_id]
        groups.append(tuple(translate_sentence(inj, s) for s in t.sentences))
    generated: list[Sentence] = []
    counter: dict[str, int] = {}
    for r in resolved:
        if r.relation is not Relation.LEFT_SUBSUMED:
            continue
        counter[r.alignment] = counter.get(r.alignment, 0) + 1
        label = f"{r.alignment}_sub_{counter[r.alignment]}"
        left_img = injections[r.left_node].apply(r.left)
        right_img = injections[r.right_node].apply(r.right)
        generated.append(
            _subsumption_sentence(colimit_sig.logic_id, left_img, right_img, label)
        )
    groups.append(tuple(generated))
    theory = Theory(name, colimit_sig, _merge_sentences(groups))
    return CombineResult(theory, diagram, injections)


def combine(alignment_names: list[str], env: Env, name: str = "combine") -> Theory:
    return combine_details(alignment_names, env, name).theory


# -- proof obligations ---------------------------------------------------------------


@dataclass(frozen=True)
class ProofObligation:
    name: str
    theory: Theory
    conjecture: Sentence

    def __post_init__(self) -> None:
        missing = symbols_of(self.conjecture) - self.theory.signature.symbols
        if missing:
            names = ", ".join(repr(m) for m in sorted(missing, key=Symbol.sort_key))
            raise NewSymbolInConjecture(
                f"obligation {self.name!r} conjecture uses new symbols: {names}"
            )


def extract_obligations(doc: DolDocument, env: Env) -> list[ProofObligation]:
    """Each `ontology N = Base then { fragment }` whose fragment introduces no
    new symbols yields one obligation per fragment sentence (named N, or N_k
    when the fragment has several)."""
    obligations: list[ProofObligation] = []
    for item in doc.ontology_defs():
        if not isinstance(item.expr, Then):
            continue
        flatten_definition(item, env)  # fills the CQ-mode cache
        if not env._cq_mode.get(item.name, False):
            continue
        base = flatten(item.expr.base, env)
        ext = flatten(item.expr.extension, env, name=item.name)
        conjectures = [s.with_role(Role.CONJECTURE) for s in ext.sentences]
        for k, s in enumerate(conjectures, 1):
            ob_name = item.name if len(conjectures) == 1 else f"{item.name}_{k}"
            obligations.append(ProofObligation(ob_name, base, s.with_label(ob_name)))
    return obligations


# -- development graph ---------------------------------------------------------------


class LinkType(Enum):
    IMPORT = "Import"
    ALIGNMENT_SIDE = "AlignmentSide"
    COMBINE_INJECTION = "CombineInjection"
    OBLIGATION_OF = "ObligationOf"


@dataclass(frozen=True)
class DevLink:
    source: str
    target: str
    type: LinkType


@dataclass(frozen=True)
class DevGraph:
    nodes: tuple[str, ...]
    links: tuple[DevLink, ...]


def dev_graph(doc: DolDocument, env: Env) -> DevGraph:
    nodes: list[str] = []
    links: list[DevLink] = []

    def add_node(node_id: str) -> str:
        if node_id not in nodes:
            nodes.append(node_id)
        return node_id

    def ref_node(expr: Ref) -> str:
        if expr.iri is not None:
            return add_node(env.node_id_for_iri(expr.iri))
        return add_node(expr.written)

    def operand_nodes(expr: OntologyExpr) -> list[str]:
        if isinstance(expr, Ref):
            return [ref_node(expr)]
        if isinstance(expr, And):
            out: list[str] = []
            for op in expr.operands:
                out.extend(operand_nodes(op))
            return out
        return []

    for item in doc.items:
        if isinstance(item, OntologyDef):
            add_node(item.name)
            expr = item.expr
            if isinstance(expr, Then):
                flatten_definition(item, env)
                cq = env._cq_mode.get(item.name, False)
                link_type = LinkType.OBLIGATION_OF if cq else LinkType.IMPORT
                for base_node in operand_nodes(expr.base):
                    if cq:
                        links.append(DevLink(item.name, base_node, link_type))
                    else:
                        links.append(DevLink(base_node, item.name, link_type))
            elif isinstance(expr, And):
                for op_node in operand_nodes(expr):
                    if op_node != item.name:
                        links.append(DevLink(op_node, item.name, LinkType.IMPORT))
            elif isinstance(expr, Combine):
                defs = doc.definitions()
                seen: list[str] = []
                for a_name in expr.alignments:
                    a = defs[a_name]
                    assert isinstance(a, AlignmentDef)
                    for side in (a.left, a.right):
                        if isinstance(side, Ref):
                            side_node = ref_node(side)
                            if side_node not in seen:
                                seen.append(side_node)
                                links.append(
                                    DevLink(side_node, item.name, LinkType.COMBINE_INJECTION)
                                )
            elif isinstance(expr, Ref) and expr.iri is None:
                links.append(DevLink(ref_node(expr), item.name, LinkType.IMPORT))
            # a def that just names a file is itself that file's node
        elif isinstance(item, AlignmentDef):
            add_node(item.name)
            for side in (item.left, item.right):
                if isinstance(side, Ref):
                    links.append(DevLink(ref_node(side), item.name, LinkType.ALIGNMENT_SIDE))
    return DevGraph(tuple(nodes), tuple(links))


def validate_acyclic(graph: DevGraph) -> None:
    """Import/CombineInjection edges must form a DAG."""
    adjacency: dict[str, list[str]] = {}
    for link in graph.links:
        if link.type in (LinkType.IMPORT, LinkType.COMBINE_INJECTION):
            adjacency.setdefault(link.source, []).append(link.target)
    state: dict[str, int] = {}

    def visit(node: str) -> None:
        state[node] = 1
        for nxt in adjacency.get(node, ()):
            if state.get(nxt) == 1:
                raise DolkitError(f"import cycle through {nxt!r}")
            if state.get(nxt) is None:
                visit(nxt)
        state[node] = 2

    for node in graph.nodes:
        if state.get(node) is None:
            visit(node)


def graph_to_dot(graph: DevGraph) -> str:
    lines = ["digraph dolkit {"]
    for node in graph.nodes:
        lines.append(f'    "{node}";')
    for link in graph.links:
        lines.append(f'    "{link.source}" -> "{link.target}" [label="{link.type.value}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(graph: DevGraph) -> dict:
    return {
        "nodes": [{"id": n} for n in graph.nodes],
        "links": [
            {"source": l.source, "target": l.target, "type": l.type.value}
            for l in graph.links
        ],
    }
