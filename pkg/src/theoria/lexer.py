"""Tokenizer for formulas and theory files.

Declared operator symbols (e.g. "⊕") become operator tokens; the lexer is
handed the set of symbols in force and matches the longest one first.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

from .errors import FormulaSyntaxError


@dataclass(frozen=True)
class SourceSpan:
    file: str
    start: int
    end: int  # code points, start <= end

    def __post_init__(self):
        assert self.start <= self.end

    def __str__(self):
        return f"{self.file}:{self.start}-{self.end}"


@dataclass(frozen=True)
class Token:
    type: str  # "ident" | "number" | "op" | "eof"
    text: str
    span: SourceSpan


_PUNCT = {
    "⊤", "⊥", "¬", "∧", "∨", "⇒", "⇔", "∀", "∃", "=", "≠", "∈", "⊆",
    "↦", "‥", "÷", "∅", "ℙ", "×", "∪", "∩", "ℤ", "·", "+", "*",
    "(", ")", "{", "}", ",", ";", ":", ".", "−", "-", "/", "|",
}

_ASCII_ALIASES = {"-": "−", "/": "÷"}


def _is_ident_start(ch: str) -> bool:
    return ch == "_" or unicodedata.category(ch).startswith("L")


def _is_ident_part(ch: str) -> bool:
    return ch == "_" or ch == "'" or ch.isdigit() or unicodedata.category(ch).startswith("L")


def tokenize(text: str, symbols=(), file: str = "<string>") -> list:
    """Tokenize `text`; `symbols` are extra operator tokens, longest-first."""
    symbols = sorted(symbols, key=len, reverse=True)
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        hit = next(
            (s for s in symbols if text.startswith(s, i)), None
        )
        if hit is not None:
            toks.append(Token("op", hit, SourceSpan(file, i, i + len(hit))))
            i += len(hit)
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("number", text[i:j], SourceSpan(file, i, j)))
            i = j
            continue
        if ch in ("ℤ", "ℙ"):  # letters to unicodedata, operators to us
            toks.append(Token("op", ch, SourceSpan(file, i, i + 1)))
            i += 1
            continue
        if _is_ident_start(ch):
            j = i
            while j < n and _is_ident_part(text[j]):
                j += 1
            toks.append(Token("ident", text[i:j], SourceSpan(file, i, j)))
            i = j
            continue
        if ch in _PUNCT:
            toks.append(
                Token("op", _ASCII_ALIASES.get(ch, ch), SourceSpan(file, i, i + 1))
            )
            i += 1
            continue
        raise FormulaSyntaxError(
            f"unexpected character {ch!r}", SourceSpan(file, i, i + 1)
        )
    toks.append(Token("eof", "", SourceSpan(file, n, n)))
    return toks
