"""Emoji-aware segmentation of text into Word, Emoji, Punctuation and Other tokens.

Emoji recognition is a greedy longest-match scan over the catalog's exact key
set, so a valid sequence is never split into fragments and no invalid sequence
is ever produced.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import unicode_core as uc
from .emoji_catalog import EmojiCatalog, EmojiEntry

APOSTROPHES = frozenset({"'", "’"})
MAX_CLITIC_LETTERS = 3

# Combining marks that belong to emoji sequences and must never be absorbed
# into a preceding word: text/emoji presentation selectors, keycap enclosure.
_EMOJI_MARKS = frozenset({"\ufe0e", "\ufe0f", "\u20e3"})


class TokenKind(str, enum.Enum):
    WORD = "Word"
    EMOJI = "Emoji"
    TRANSLITERATED = "TransliteratedEmoji"
    PUNCTUATION = "Punctuation"
    OTHER = "Other"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Token:
    text: str
    kind: TokenKind
    span: tuple[int, int]
    orig: str | None = None

    def __post_init__(self):
        if not self.text:
            raise ValueError("token text must be non-empty")
        if self.span[1] <= self.span[0]:
            raise ValueError(f"empty span {self.span}")
        if self.orig is not None and self.orig == self.text:
            raise ValueError("orig must differ from text")

    @property
    def source(self) -> str:
        """The token's pre-transformation form."""
        return self.orig if self.orig is not None else self.text


@dataclass(frozen=True)
class TokenDefinition:
    """Which scalars may compose a word token."""

    letter_categories: frozenset = frozenset({"Lu", "Ll", "Lt", "Lm", "Lo"})
    number_categories: frozenset = frozenset({"Nd"})
    user_appended: frozenset = frozenset({"^", "{", "}"})
    clitic_split: bool = True
    # Combining marks extend the preceding token instead of standing alone, so
    # a decomposed "é" stays inside its word.
    attach_marks: bool = True

    def __post_init__(self):
        for name in ("letter_categories", "number_categories", "user_appended"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        bad = [c for c in self.user_appended if len(c) != 1 or uc.is_whitespace(c)]
        if bad:
            raise ValueError(f"user_appended must be single non-whitespace scalars: {bad!r}")

    def is_word_char(self, ch: str) -> bool:
        if ch in self.user_appended:
            return True
        gc = uc.category(ch)
        return gc in self.letter_categories or gc in self.number_categories

    def is_letter(self, ch: str) -> bool:
        return uc.category(ch) in self.letter_categories

    def is_attachable_mark(self, ch: str) -> bool:
        return (self.attach_marks and ch not in _EMOJI_MARKS
                and uc.category(ch) in ("Mn", "Mc", "Me"))


DEFAULT_TOKEN_DEFINITION = TokenDefinition()


def segment_emojis(text: str, catalog: EmojiCatalog) -> list[tuple[tuple[int, int], EmojiEntry]]:
    """Greedy longest-match scan; spans are scalar indices [start, end)."""
    out = []
    i, n = 0, len(text)
    limit = catalog.max_len
    while i < n:
        if not catalog._may_start(text[i]):
            i += 1
            continue
        best = 0
        j = i + 1
        while j <= n and j - i <= limit:
            piece = text[i:j]
            if not catalog._is_prefix(piece):
                break
            if piece in catalog:
                best = j
            j += 1
        if best:
            out.append(((i, best), catalog.lookup(text[i:best])))
            i = best
        else:
            i += 1
    return out


def retokenise(text: str, catalog: EmojiCatalog) -> str:
    """Isolate every emoji match with a single U+0020 where it touches non-whitespace."""
    cuts = set()
    n = len(text)
    for (start, end), _ in segment_emojis(text, catalog):
        if start > 0 and not uc.is_whitespace(text[start - 1]):
            cuts.add(start)
        if end < n and not uc.is_whitespace(text[end]):
            cuts.add(end)
    if not cuts:
        return text
    parts = []
    prev = 0
    for pos in sorted(cuts):
        parts.append(text[prev:pos])
        prev = pos
    parts.append(text[prev:])
    return " ".join(parts)


def utf8_offsets(text: str) -> list[int]:
    """offsets[i] is the UTF-8 byte offset of scalar i; offsets[len(text)] is the byte length."""
    offsets = [0] * (len(text) + 1)
    acc = 0
    for i, ch in enumerate(text):
        acc += len(ch.encode("utf-8")) if ch >= "\x80" else 1
        offsets[i + 1] = acc
    return offsets


def _clitic_cut(word: str, td: TokenDefinition) -> int:
    """Index of the apostrophe that starts a trailing clitic, or -1."""
    for k in range(len(word) - 1, 0, -1):
        if word[k] in APOSTROPHES:
            tail = [c for c in word[k + 1:] if not td.is_attachable_mark(c)]
            if 1 <= len(tail) <= MAX_CLITIC_LETTERS and all(td.is_letter(c) for c in tail):
                return k
            return -1
    return -1


def tokenize(text: str, catalog: EmojiCatalog,
             td: TokenDefinition = DEFAULT_TOKEN_DEFINITION,
             clitic_start: bool = False) -> list[Token]:
    """Split ``text`` into tokens with UTF-8 byte spans into ``text``.

    ``clitic_start`` marks ``text`` as the continuation of a split word, so a
    leading apostrophe belongs to the first word (re-tokenizing a clitic).
    """
    matches = {span[0]: (span[1], entry) for span, entry in segment_emojis(text, catalog)}
    offs = utf8_offsets(text)
    tokens: list[Token] = []
    i, n = 0, len(text)

    def emit(start, end, kind):
        tokens.append(Token(text[start:end], kind, (offs[start], offs[end])))

    while i < n:
        hit = matches.get(i)
        if hit is not None:
            emit(i, hit[0], TokenKind.EMOJI)
            i = hit[0]
            continue
        ch = text[i]
        if uc.is_whitespace(ch):
            i += 1
            continue
        if td.is_word_char(ch) or (
                clitic_start and i == 0 and ch in APOSTROPHES and n > 1
                and 1 not in matches and td.is_word_char(text[1])):
            j = i + 1
            while j < n and j not in matches:
                c = text[j]
                if td.is_word_char(c) or td.is_attachable_mark(c):
                    j += 1
                elif (c in APOSTROPHES and j + 1 < n and j + 1 not in matches
                        and td.is_word_char(text[j + 1])):
                    j += 1
                else:
                    break
            cut = _clitic_cut(text[i:j], td) if td.clitic_split else -1
            if cut > 0:
                emit(i, i + cut, TokenKind.WORD)
                emit(i + cut, j, TokenKind.WORD)
            else:
                emit(i, j, TokenKind.WORD)
            i = j
            continue
        kind = TokenKind.PUNCTUATION if uc.category(ch).startswith("P") else TokenKind.OTHER
        j = i + 1
        while j < n and j not in matches and td.is_attachable_mark(text[j]):
            j += 1
        emit(i, j, kind)
        i = j
    return tokens
