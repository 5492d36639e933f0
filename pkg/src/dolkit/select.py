"""Axiom selection for proof attempts: manual by-name selection and a
prover-independent SInE heuristic.

SInE triggering: a symbol s triggers an axiom A when s occurs in A and either
occ(s) <= generality_threshold or occ(s) <= tolerance * min occurrence count
over A's symbols, where occ counts the axiom sentences a symbol appears in
(per-sentence presence, not occurrence multiplicity). Selection starts from
the conjecture's symbols and closes under triggering, bounded by the round
depth (0 = run to fixpoint). Symbol-free axioms are always selected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownAxiomName
from .kernel import Sentence, Symbol, Theory, symbols_of


@dataclass(frozen=True)
class SineParams:
    tolerance: float = 1.0
    depth: int = 0
    generality_threshold: int = 0

    def __post_init__(self) -> None:
        if self.tolerance < 1:
            raise ValueError("tolerance must be >= 1")
        if self.depth < 0:
            raise ValueError("depth must be non-negative")
        if self.generality_threshold < 0:
            raise ValueError("generality threshold must be non-negative")


@dataclass(frozen=True)
class Selection:
    chosen: tuple[Sentence, ...]
    strict_subset: bool

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label or "" for s in self.chosen)


def full_selection(t: Theory) -> Selection:
    return Selection(t.axioms, False)


def occurrences(t: Theory) -> dict[Symbol, int]:
    """occ(s) = number of axiom sentences of t in which s occurs at least once."""
    counts: dict[Symbol, int] = {}
    for axiom in t.axioms:
        for sym in symbols_of(axiom):
            counts[sym] = counts.get(sym, 0) + 1
    return counts


def sine_select_from_symbols(
    t: Theory, seed: frozenset[Symbol], p: SineParams
) -> Selection:
    """SInE closure seeded with an arbitrary symbol set (the union of the
    selected conjectures' symbols when one configuration covers several)."""
    axioms = t.axioms
    occ = occurrences(t)
    axiom_symbols = [symbols_of(a) for a in axioms]
    tolerance = Fraction(p.tolerance).limit_denominator(10**6)

    def triggers(sym: Symbol, idx: int) -> bool:
        syms = axiom_symbols[idx]
        if sym not in syms:
            return False
        if occ[sym] <= p.generality_threshold:
            return True
        least = min(occ[s] for s in syms)
        return occ[sym] <= tolerance * least

    chosen_idx: set[int] = {i for i, syms in enumerate(axiom_symbols) if not syms}
    known: set[Symbol] = set(seed)
    rounds = 0
    while True:
        rounds += 1
        newly: set[int] = set()
        for i in range(len(axioms)):
            if i in chosen_idx:
                continue
            if any(triggers(sym, i) for sym in known):
                newly.add(i)
        if not newly:
            break
        chosen_idx |= newly
        for i in newly:
            known |= axiom_symbols[i]
        if p.depth and rounds >= p.depth:
            break
    chosen = tuple(a for i, a in enumerate(axioms) if i in chosen_idx)
    return Selection(chosen, len(chosen) < len(axioms))


def sine_select(t: Theory, conjecture: Sentence, p: SineParams) -> Selection:
    return sine_select_from_symbols(t, symbols_of(conjecture), p)


def manual_select(t: Theory, names: list[str]) -> Selection:
    wanted = set(names)
    known = {a.label for a in t.axioms if a.label is not None}
    for name in names:
        if name not in known:
            raise UnknownAxiomName(name)
    chosen = tuple(a for a in t.axioms if a.label in wanted)
    return Selection(chosen, len(chosen) < len(t.axioms))
