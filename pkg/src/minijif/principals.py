"""Principals and the acts-for delegation hierarchy.

The hierarchy is a closed world: the universe is exactly the declared
principals plus the distinguished top (``*``) and bottom (``_``) principals.
All values are immutable; operations return new hierarchies.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import cached_property

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class InvalidIdentifier(ValueError):
    """Raised when a principal name violates the identifier grammar."""


class UnknownPrincipal(ValueError):
    """Raised when a delegation endpoint is neither declared nor top/bottom."""


@dataclass(frozen=True)
class Named:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "*"


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "_"


PrincipalId = Named | Top | Bottom

TOP = Top()
BOTTOM = Bottom()


def principal_sort_key(p: PrincipalId) -> tuple[int, str]:
    """Named principals alphabetically, then top, then bottom."""
    if isinstance(p, Named):
        return (0, p.name)
    if isinstance(p, Top):
        return (1, "")
    return (2, "")


def _check_name(name: str) -> None:
    if not IDENT_RE.match(name or ""):
        raise InvalidIdentifier(f"invalid principal name: {name!r}")


@dataclass(frozen=True)
class PrincipalHierarchy:
    """Declared principals plus delegation edges (superior acts for inferior)."""

    declared: frozenset[Named] = field(default_factory=frozenset)
    delegations: frozenset[tuple[PrincipalId, PrincipalId]] = field(default_factory=frozenset)

    @cached_property
    def _universe(self) -> frozenset[PrincipalId]:
        return frozenset(self.declared) | {TOP, BOTTOM}

    @cached_property
    def _reach(self) -> dict[PrincipalId, frozenset[PrincipalId]]:
        # Transitive closure over explicit edges plus the top/bottom axiom
        # edges; exotic declarations such as p >= * are honored transitively,
        # otherwise the relation would not stay a preorder.
        universe = set(self._universe)
        adj: dict[PrincipalId, set[PrincipalId]] = {p: {BOTTOM} for p in universe}
        adj[TOP] |= universe
        for sup, inf in self.delegations:
            adj[sup].add(inf)
        closure: dict[PrincipalId, frozenset[PrincipalId]] = {}
        for start in universe:
            seen = {start}
            todo = [start]
            while todo:
                for nxt in adj[todo.pop()]:
                    if nxt not in seen:
                        seen.add(nxt)
                        todo.append(nxt)
            closure[start] = frozenset(seen)
        return closure

    def all_principals(self) -> frozenset[PrincipalId]:
        return self._universe

    def declare(self, name: str) -> "PrincipalHierarchy":
        """Add a named principal; idempotent on re-declaration."""
        _check_name(name)
        return replace(self, declared=self.declared | {Named(name)})

    def delegate(self, superior: PrincipalId, inferior: PrincipalId) -> "PrincipalHierarchy":
        """Record that ``superior`` acts for ``inferior``. The relation only grows."""
        for p in (superior, inferior):
            if isinstance(p, Named) and p not in self.declared:
                raise UnknownPrincipal(f"undeclared principal: {p.name}")
        return replace(self, delegations=self.delegations | {(superior, inferior)})

    def acts_for(self, p: PrincipalId, q: PrincipalId) -> bool:
        """Total query: reflexive-transitive delegation with top/bottom axioms."""
        if p == q or isinstance(p, Top) or isinstance(q, Bottom):
            return True
        reach = self._reach.get(p)
        return reach is not None and q in reach


def declare_principal(h: PrincipalHierarchy, name: str) -> PrincipalHierarchy:
    return h.declare(name)


def add_delegation(
    h: PrincipalHierarchy, superior: PrincipalId, inferior: PrincipalId
) -> PrincipalHierarchy:
    return h.delegate(superior, inferior)


def acts_for(h: PrincipalHierarchy, p: PrincipalId, q: PrincipalId) -> bool:
    return h.acts_for(p, q)


def all_principals(h: PrincipalHierarchy) -> frozenset[PrincipalId]:
    return h.all_principals()


class HierarchyParseError(ValueError):
    """Malformed line in the hierarchy text format."""


_PR_TOKEN = {"*": TOP, "_": BOTTOM}


def principal_from_token(tok: str) -> PrincipalId:
    """`*` is top, `_` is bottom, anything else must be an identifier."""
    if tok in _PR_TOKEN:
        return _PR_TOKEN[tok]
    _check_name(tok)
    return Named(tok)


def parse_hierarchy(text: str) -> PrincipalHierarchy:
    """Parse the line-oriented format: ``principal <name>`` and
    ``actsfor <superior> >= <inferior>`` lines, ``#`` comments."""
    h = PrincipalHierarchy()
    edges: list[tuple[int, PrincipalId, PrincipalId]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "principal" and len(parts) == 2:
            try:
                h = h.declare(parts[1])
            except InvalidIdentifier as exc:
                raise HierarchyParseError(f"line {lineno}: {exc}") from exc
        elif parts[0] == "actsfor" and len(parts) == 4 and parts[2] == ">=":
            try:
                edges.append((lineno, principal_from_token(parts[1]), principal_from_token(parts[3])))
            except InvalidIdentifier as exc:
                raise HierarchyParseError(f"line {lineno}: {exc}") from exc
        else:
            raise HierarchyParseError(f"line {lineno}: cannot parse {line!r}")
    # declarations first, so actsfor lines may precede their principals
    for lineno, sup, inf in edges:
        try:
            h = h.delegate(sup, inf)
        except UnknownPrincipal as exc:
            raise HierarchyParseError(f"line {lineno}: {exc}") from exc
    return h


def format_hierarchy(h: PrincipalHierarchy) -> str:
    lines = [f"principal {p.name}" for p in sorted(h.declared, key=principal_sort_key)]
    lines += [
        f"actsfor {sup} >= {inf}"
        for sup, inf in sorted(h.delegations, key=lambda e: (principal_sort_key(e[0]), principal_sort_key(e[1])))
    ]
    return "\n".join(lines) + ("\n" if lines else "")
