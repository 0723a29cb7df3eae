"""MiniJif: a static information-flow checker with decentralized security labels."""

from .checker import TrustConfig, check_program
from .diagnostics import Diagnostic
from .interp import evaluate_program
from .labels import (
    ConfPolicy,
    EMPTY,
    IntegPolicy,
    Label,
    SemLabel,
    equivalent,
    flows_to,
    interpret_conf,
    interpret_integ,
    interpret_label,
    join,
    label_to_text,
    meet,
)
from .parser import ParseError, parse_label, parse_program
from .pretty import pretty_print
from .principals import (
    BOTTOM,
    Named,
    PrincipalHierarchy,
    TOP,
    acts_for,
    add_delegation,
    all_principals,
    declare_principal,
)

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "ConfPolicy",
    "Diagnostic",
    "EMPTY",
    "IntegPolicy",
    "Label",
    "Named",
    "ParseError",
    "PrincipalHierarchy",
    "SemLabel",
    "TOP",
    "TrustConfig",
    "acts_for",
    "add_delegation",
    "all_principals",
    "check_program",
    "declare_principal",
    "equivalent",
    "evaluate_program",
    "flows_to",
    "interpret_conf",
    "interpret_integ",
    "interpret_label",
    "join",
    "label_to_text",
    "meet",
    "parse_label",
    "parse_program",
    "pretty_print",
]
