"""dolkit: a DOL-subset toolkit.

Parses a subset of the Distributed Ontology Language, represents logical
theories and signature morphisms over three registered logics, combines
aligned ontologies via colimits, extracts proof obligations from
competency-question documents, selects axioms (manually or with a SInE
heuristic), and discharges obligations with internal or external provers
under SZS status semantics.
"""

from . import logics as _logics  # noqa: F401  (registers the built-in logics)
from .kernel import (
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

__version__ = "0.1.0"

__all__ = [
    "Kind",
    "Role",
    "Sentence",
    "Signature",
    "SignatureMorphism",
    "Symbol",
    "Theory",
    "compose",
    "identity",
    "signature_union",
    "symbols_of",
    "translate_sentence",
    "validate_theory",
    "__version__",
]
