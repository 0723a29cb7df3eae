"""Source positions shared by the lexer, parser, and diagnostics."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    """Half-open source region; line/column are 1-based, end is exclusive."""

    file: str
    start: tuple[int, int]
    end: tuple[int, int]

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"span start {self.start} after end {self.end}")

    def cover(self, other: "Span") -> "Span":
        """Smallest span containing both operands (same file)."""
        return Span(self.file, min(self.start, other.start), max(self.end, other.end))

    def contains(self, other: "Span") -> bool:
        return self.start <= other.start and other.end <= self.end

    def __str__(self) -> str:
        return f"{self.file}:{self.start[0]}:{self.start[1]}"
