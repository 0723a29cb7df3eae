"""Checker diagnostics: stable codes, human rendering, and JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .span import Span

# Stable catalog; codes are part of the external interface.
CATALOG = frozenset({
    "E-FLOW",          # explicit flow violation
    "E-FLOW-IMPLICIT", # flow violation caused by the program-counter label
    "E-PC-CALL",       # caller pc does not flow to the callee begin-label
    "E-PC-END",        # pc at a return does not flow to the end-label
    "E-DECL-FROM",     # declassified expression does not match the from-label
    "E-DECL-AUTH",     # missing authority for a declassified policy owner
    "E-DECL-INTEG",    # declassification strengthens integrity
    "E-AUTH-CLAIM",    # method claims authority its class was not granted
    "E-UNDEF",         # unknown name (variable, field, class, principal)
    "E-TYPE",          # type mismatch or conflicting declaration
    "E-ARITY",         # wrong number of arguments
    "E-UNKNOWN-METHOD",# unknown method or builtin
    "E-UNSUPPORTED",   # recognized but unsupported feature (label variables)
})


@dataclass(frozen=True)
class Diagnostic:
    code: str
    span: Span
    message: str
    from_label: Optional[str] = None  # pretty-printed
    to_label: Optional[str] = None

    def __post_init__(self) -> None:
        if self.code not in CATALOG:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    def sort_key(self) -> tuple:
        return (self.span.file, self.span.start, self.span.end, self.code, self.message)


def render_human(d: Diagnostic) -> str:
    line = f"{d.span}: error {d.code}: {d.message}"
    if d.from_label is not None and d.to_label is not None:
        line += f"\n    from label: {d.from_label}\n    to label:   {d.to_label}"
    return line


def to_json_obj(d: Diagnostic) -> dict:
    return {
        "code": d.code,
        "span": {
            "file": d.span.file,
            "start": list(d.span.start),
            "end": list(d.span.end),
        },
        "from": d.from_label,
        "to": d.to_label,
        "message": d.message,
    }


def render_json(diagnostics: list[Diagnostic]) -> str:
    return json.dumps([to_json_obj(d) for d in diagnostics], indent=2)
