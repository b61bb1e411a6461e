"""Two-way mapping between emoji and brace-delimited, caret-joined CLDR labels.

``🛼`` becomes ``{roller^skate}``: every maximal run of characters other than
ASCII letters and digits in the CLDR short name collapses to one joiner, and
the result is wrapped in the open/close delimiters.  Labels are pure ASCII, so
they are fixed points of every normalization form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from . import unicode_core as uc
from .emoji_catalog import EmojiCatalog, EmojiEntry
from .tokenizer import Token, TokenKind


class TransliterationError(ValueError):
    """A name that cannot be turned into a label."""


class UnknownLabelError(LookupError):
    pass


class AmbiguousLabelError(LookupError):
    pass


class InternalInconsistencyError(RuntimeError):
    """An Emoji token whose text is not a catalog key."""


class DelimiterCollisionError(ValueError):
    """Raw text already contains a label delimiter."""


@dataclass(frozen=True)
class Delimiters:
    open: str = "{"
    close: str = "}"
    joiner: str = "^"

    def __post_init__(self):
        chars = (self.open, self.close, self.joiner)
        for ch in chars:
            if len(ch) != 1 or ch.isascii() and ch.isalnum() or uc.is_whitespace(ch):
                raise ValueError(f"delimiter must be one non-alphanumeric, non-space scalar: {ch!r}")
        if len(set(chars)) != 3:
            raise ValueError(f"delimiters must be distinct: {chars!r}")

    def chars(self) -> frozenset:
        return frozenset((self.open, self.close, self.joiner))

    @classmethod
    def parse(cls, spec: str) -> "Delimiters":
        """Parse a three-character string such as ``{}^`` (open, close, joiner)."""
        if len(spec) != 3:
            raise ValueError(f"expected three delimiter characters, got {spec!r}")
        return cls(spec[0], spec[1], spec[2])


DEFAULT_DELIMITERS = Delimiters()

_NON_ALNUM_RUN = re.compile(r"[^A-Za-z0-9]+")


def _fold_to_ascii(name: str) -> str:
    # Accented letters keep their NFKD base letter ("ã" -> "a").
    decomposed = uc.normalize(name, "NFKD")
    return "".join(c for c in decomposed if not uc.category(c).startswith("M"))


def _spell_symbol_tail(name: str) -> str:
    """Replace a trailing word made only of symbols by its character names.

    Without this "keycap: #" and "keycap: *" would both reduce to ``keycap``.
    """
    head, sep, last = name.rpartition(" ")
    if not last or _NON_ALNUM_RUN.fullmatch(_fold_to_ascii(last)) is None or not sep:
        return name
    spelled = " ".join(uc.name(c).lower() or f"u {ord(c):04x}" for c in last)
    return f"{head} {spelled}"


def label_body(cldr_name: str, joiner: str = "^") -> str:
    text = _fold_to_ascii(_spell_symbol_tail(cldr_name))
    return _NON_ALNUM_RUN.sub(joiner, text).strip(joiner)


def transliterate(entry: EmojiEntry, delims: Delimiters = DEFAULT_DELIMITERS) -> str:
    body = label_body(entry.cldr_name, delims.joiner)
    if not body:
        raise TransliterationError(f"name {entry.cldr_name!r} of {entry.hex()} yields an empty label")
    return f"{delims.open}{body}{delims.close}"


def build_label_index(catalog: EmojiCatalog,
                      delims: Delimiters = DEFAULT_DELIMITERS) -> dict[str, list[EmojiEntry]]:
    """Map each label to the distinct-set entries producing it (more than one = collision)."""
    index: dict[str, list[EmojiEntry]] = {}
    for entry in catalog.distinct:
        index.setdefault(transliterate(entry, delims), []).append(entry)
    return index


def label_collisions(catalog: EmojiCatalog,
                     delims: Delimiters = DEFAULT_DELIMITERS) -> dict[str, list[EmojiEntry]]:
    index = catalog.label_index if delims == DEFAULT_DELIMITERS else build_label_index(catalog, delims)
    return {label: entries for label, entries in index.items() if len(entries) > 1}


def assert_no_collisions(catalog: EmojiCatalog, delims: Delimiters = DEFAULT_DELIMITERS) -> None:
    clashes = label_collisions(catalog, delims)
    if clashes:
        detail = "; ".join(f"{label}: " + ", ".join(e.hex() for e in entries)
                           for label, entries in sorted(clashes.items()))
        raise AmbiguousLabelError(f"{len(clashes)} label collision(s): {detail}")


def detransliterate(label: str, catalog: EmojiCatalog,
                    delims: Delimiters = DEFAULT_DELIMITERS) -> EmojiEntry:
    index = catalog.label_index if delims == DEFAULT_DELIMITERS else build_label_index(catalog, delims)
    entries = index.get(label)
    if not entries:
        raise UnknownLabelError(f"unknown emoji label {label!r}")
    if len(entries) > 1:
        names = ", ".join(f"{e.hex()} ({e.cldr_name})" for e in entries)
        raise AmbiguousLabelError(f"label {label!r} is shared by {names}")
    return entries[0]


def transliterate_tokens(tokens: list[Token], catalog: EmojiCatalog,
                         delims: Delimiters = DEFAULT_DELIMITERS) -> list[Token]:
    out = []
    for tok in tokens:
        if tok.kind is not TokenKind.EMOJI:
            out.append(tok)
            continue
        entry = catalog.lookup(tok.text)
        if entry is None:
            raise InternalInconsistencyError(f"Emoji token {tok.text!r} is not in the catalog")
        out.append(replace(tok, text=transliterate(entry, delims),
                           kind=TokenKind.TRANSLITERATED, orig=tok.text))
    return out


def find_delimiters(text: str, delims: Delimiters = DEFAULT_DELIMITERS) -> list[int]:
    """Scalar offsets of delimiter characters already present in raw text."""
    chars = delims.chars()
    return [i for i, ch in enumerate(text) if ch in chars]


def check_delimiters(text: str, delims: Delimiters = DEFAULT_DELIMITERS, source: str = "") -> None:
    hits = find_delimiters(text, delims)
    if hits:
        where = f"{source}: " if source else ""
        raise DelimiterCollisionError(
            f"{where}label delimiter {text[hits[0]]!r} occurs in source text at offset {hits[0]} "
            f"({len(hits)} occurrence(s)); choose others with --translit-delims")
