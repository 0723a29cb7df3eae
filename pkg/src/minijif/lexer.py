"""Tokenizer for MiniJif source and label syntax."""

from __future__ import annotations

from dataclasses import dataclass

from .span import Span

KEYWORDS = {
    "principal", "actsfor", "class", "authority", "where", "meet", "to",
    "declassify", "new", "if", "else", "while", "return", "true", "false",
    "int", "boolean", "String", "void",
}

# longest match first
SYMBOLS = [
    "->", "<-", "&&", "||", "==", "!=", "<=", ">=",
    "{", "}", "[", "]", "(", ")", ";", ",", ".", ":",
    "=", "<", ">", "+", "-", "*", "/", "_",
]

ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


class LexError(Exception):
    def __init__(self, span: Span, message: str):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.message = message


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, INT, STRING, EOF, a keyword, or a symbol
    text: str
    span: Span
    value: object = None  # decoded payload for INT/STRING


def tokenize(source: str, file: str = "<string>") -> list[Token]:
    tokens: list[Token] = []
    line, col, i = 1, 1, 0
    n = len(source)

    def span_from(l0: int, c0: int) -> Span:
        return Span(file, (l0, c0), (line, col))

    def is_letter(c: str) -> bool:
        return "a" <= c <= "z" or "A" <= c <= "Z"

    def is_digit(c: str) -> bool:
        return "0" <= c <= "9"

    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
                col += 1
            continue
        l0, c0 = line, col
        if is_digit(ch):
            j = i
            while j < n and is_digit(source[j]):
                j += 1
            text = source[i:j]
            col += j - i
            i = j
            tokens.append(Token("INT", text, span_from(l0, c0), int(text)))
            continue
        if is_letter(ch):
            j = i
            while j < n and (is_letter(source[j]) or is_digit(source[j]) or source[j] == "_"):
                j += 1
            text = source[i:j]
            col += j - i
            i = j
            kind = text if text in KEYWORDS else "IDENT"
            tokens.append(Token(kind, text, span_from(l0, c0)))
            continue
        if ch == '"':
            j = i + 1
            chars: list[str] = []
            while True:
                if j >= n or source[j] == "\n":
                    col += j - i
                    raise LexError(span_from(l0, c0), "unterminated string literal")
                c = source[j]
                if c == '"':
                    j += 1
                    break
                if c == "\\":
                    if j + 1 >= n or source[j + 1] not in ESCAPES:
                        col += j - i + 1
                        raise LexError(span_from(l0, c0), "bad string escape")
                    chars.append(ESCAPES[source[j + 1]])
                    j += 2
                else:
                    chars.append(c)
                    j += 1
            text = source[i:j]
            col += j - i
            i = j
            tokens.append(Token("STRING", text, span_from(l0, c0), "".join(chars)))
            continue
        for sym in SYMBOLS:
            if source.startswith(sym, i):
                i += len(sym)
                col += len(sym)
                tokens.append(Token(sym, sym, span_from(l0, c0)))
                break
        else:
            col += 1
            raise LexError(span_from(l0, c0), f"unexpected character {ch!r}")

    tokens.append(Token("EOF", "", Span(file, (line, col), (line, col))))
    return tokens
