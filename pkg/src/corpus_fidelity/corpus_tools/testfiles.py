"""Generators for the emoji and homoglyph test corpora.

Each file has one item per line, preceded by a fixed label word and a tab.
A tool that tokenizes correctly reports every item as a type of frequency 1
and the label word with frequency equal to the line count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .. import unicode_core as uc
from ..emoji_catalog import EmojiCatalog

EMOJI_LABEL = "emoji"
HOMOGLYPH_LABEL = "character"
HOMOGLYPH_SCRIPTS = frozenset({"Latin", "Common"})

# Figures the generated homoglyph files are measured against.
REFERENCE_RAW_LINES = 8160
REFERENCE_NFKC_TOKENS = 8644
REFERENCE_NFKC_TYPES = 5850


def gen_emoji_testfile(catalog: EmojiCatalog) -> str:
    """One ``emoji<TAB>sequence`` line per distinct catalog emoji, codepoint order."""
    keys = sorted(e.codepoints for e in catalog.distinct)
    return "".join(f"{EMOJI_LABEL}\t{k}\n" for k in keys)


@lru_cache(maxsize=4)
def _homoglyph_candidates(scripts: frozenset) -> tuple[str, ...]:
    out = []
    for cp in range(uc.MAX_CODEPOINT + 1):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        if uc.is_printable(cp) and uc.script(cp) in scripts:
            out.append(chr(cp))
    return tuple(out)


def homoglyph_scalars(exclude_emoji: EmojiCatalog | None = None,
                      scripts=HOMOGLYPH_SCRIPTS) -> list[str]:
    """Printable scalars of the given scripts, optionally minus single-scalar emoji keys."""
    chars = _homoglyph_candidates(frozenset(scripts))
    if exclude_emoji is not None:
        chars = tuple(c for c in chars if c not in exclude_emoji)
    return list(chars)


def gen_homoglyph_testfile(normalized: bool = False, exclude_emoji: EmojiCatalog | None = None,
                           form=uc.NormalizationForm.NFKC) -> str:
    lines = []
    for c in homoglyph_scalars(exclude_emoji):
        item = uc.normalize(c, form) if normalized else c
        lines.append(f"{HOMOGLYPH_LABEL}\t{item}\n")
    return "".join(lines)


@dataclass(frozen=True)
class TestFileStats:
    lines: int
    tokens: int
    types: int


def testfile_stats(text: str, label: str = HOMOGLYPH_LABEL) -> TestFileStats:
    """Count items character by character, ignoring the label column.

    A normalized item such as "(a)" contributes three tokens.
    """
    lines = tokens = 0
    types = set()
    for line in text.splitlines():
        head, sep, item = line.partition("\t")
        if not sep or head != label:
            raise ValueError(f"not a {label} test-file line: {line!r}")
        lines += 1
        chars = [c for c in item if not uc.is_whitespace(c)]
        tokens += len(chars)
        types.update(chars)
    return TestFileStats(lines, tokens, len(types))


@dataclass(frozen=True)
class DeltaRow:
    cp: int
    name: str
    category: str
    script: str
    block: str
    nfkc: str
    reason: str


def explain_delta(catalog: EmojiCatalog) -> tuple[dict, list[DeltaRow]]:
    """Itemize the generated homoglyph set against the reference counts.

    Every scalar the rule admits that is also a single-scalar emoji key is
    listed as an interpretation-dependent inclusion; the summary reports how
    far each variant lands from the reference figures.
    """
    literal = homoglyph_scalars()
    filtered = set(homoglyph_scalars(catalog))
    rows = []
    for c in literal:
        if c in filtered:
            continue
        rec = uc.char_record(c)
        rows.append(DeltaRow(rec.cp, rec.name, rec.general_category, rec.script, rec.block,
                             uc.normalize(c, "NFKC"), "single-scalar emoji key"))
    summary = {}
    for variant, excl in (("literal", None), ("exclude_emoji", catalog)):
        raw = gen_homoglyph_testfile(False, excl)
        norm = testfile_stats(gen_homoglyph_testfile(True, excl))
        summary[variant] = {
            "raw_lines": raw.count("\n"),
            "nfkc_tokens": norm.tokens,
            "nfkc_types": norm.types,
            "delta_raw_lines": raw.count("\n") - REFERENCE_RAW_LINES,
            "delta_nfkc_tokens": norm.tokens - REFERENCE_NFKC_TOKENS,
            "delta_nfkc_types": norm.types - REFERENCE_NFKC_TYPES,
        }
    return summary, rows
