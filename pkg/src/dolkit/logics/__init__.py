"""Concrete logics: Propositional, first-order (TPTP FOF), and SimpleDL."""

from ..kernel import register_logic
from .fol import (
    FolLogic,
    parse_fof_document,
    parse_fof_formula,
    print_fol,
    print_tptp,
    sanitize_tptp_name,
)
from .prop import PropLogic, parse_prop, print_prop
from .simpledl import SimpleDlLogic, parse_dl_frame, parse_dl_frames, print_dl_sentence

PROP = PropLogic()
FOL = FolLogic()
SIMPLE_DL = SimpleDlLogic()

register_logic(PROP)
register_logic(FOL)
register_logic(SIMPLE_DL)

__all__ = [
    "PROP",
    "FOL",
    "SIMPLE_DL",
    "PropLogic",
    "FolLogic",
    "SimpleDlLogic",
    "parse_prop",
    "print_prop",
    "parse_fof_document",
    "parse_fof_formula",
    "print_fol",
    "print_tptp",
    "sanitize_tptp_name",
    "parse_dl_frame",
    "parse_dl_frames",
    "print_dl_sentence",
]
