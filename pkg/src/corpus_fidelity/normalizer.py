"""Per-token homoglyph normalization and the end-to-end preprocessing pipeline.

Order matters: emojis are isolated and transliterated before any
normalization runs, so compatibility mappings (e.g. U+2122 -> "TM") can never
reach an emoji.  Each token that is not already in normal form is normalized
on its own and tokenized again, since one token may expand to several.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import asdict, dataclass, field, replace

from . import unicode_core as uc
from .emoji_catalog import EmojiCatalog
from .tokenizer import (APOSTROPHES, DEFAULT_TOKEN_DEFINITION, Token, TokenDefinition, TokenKind,
                        retokenise, tokenize)
from .transliterator import (DEFAULT_DELIMITERS, Delimiters, check_delimiters,
                             transliterate_tokens)

log = logging.getLogger(__name__)

EMPTY_SENTINEL = "∅"
EMOJI_KINDS = frozenset({TokenKind.EMOJI, TokenKind.TRANSLITERATED})
DEFAULT_COUNTED_KINDS = frozenset(
    {TokenKind.WORD, TokenKind.EMOJI, TokenKind.TRANSLITERATED, TokenKind.OTHER})


@dataclass(frozen=True)
class NormalizationRecord:
    orig: str
    normalized_tokens: tuple[str, ...]
    span: tuple[int, int]

    @property
    def dropped(self) -> bool:
        """True when normalization left nothing but whitespace or nothing at all."""
        return self.normalized_tokens == (EMPTY_SENTINEL,)

    @property
    def token_count(self) -> int:
        return 0 if self.dropped else len(self.normalized_tokens)


@dataclass(frozen=True)
class DocStats:
    n_tokens: int = 0
    n_types: int = 0
    n_emojis: int = 0
    n_homoglyph_scalars: int = 0
    n_nfkc_normalized_tokens: int = 0


@dataclass(frozen=True)
class PipelineConfig:
    token_definition: TokenDefinition = DEFAULT_TOKEN_DEFINITION
    translit: bool = True
    nfkc: bool = True
    form: uc.NormalizationForm = uc.NormalizationForm.NFKC
    case_fold: bool = True
    delimiters: Delimiters = DEFAULT_DELIMITERS
    # Refuse raw text that already contains label delimiters.
    check_delimiters: bool = True
    counted_kinds: frozenset = DEFAULT_COUNTED_KINDS

    def digest(self) -> str:
        """Stable short hash of every setting, for provenance headers."""
        data = asdict(self)
        canon = repr(sorted((k, _canon(v)) for k, v in data.items()))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


def _canon(value):
    if isinstance(value, dict):
        return sorted((k, _canon(v)) for k, v in value.items())
    if isinstance(value, (set, frozenset)):
        return sorted(str(v) for v in value)
    return str(value)


@dataclass
class PreprocessedDocument:
    doc_id: str
    text: str
    tokens: list[Token]
    records: list[NormalizationRecord] = field(default_factory=list)
    stats: DocStats = field(default_factory=DocStats)
    converted_line_endings: int = 0

    def line_breaks(self) -> list[int]:
        """Byte offsets of LF characters in ``text``."""
        data = self.text.encode("utf-8")
        return [i for i, b in enumerate(data) if b == 0x0A]


def homoglyph_scalars(text: str, form=uc.NormalizationForm.NFKC) -> list[str]:
    """Scalars whose single-scalar normalization differs from themselves."""
    return [c for c in text if not uc.is_normalized(c, form)]


def type_key(tok: Token, case_fold: bool = True) -> str:
    if case_fold and tok.kind is TokenKind.WORD:
        return tok.text.casefold()
    return tok.text


def compute_stats(tokens: list[Token], records: list[NormalizationRecord],
                  config: PipelineConfig = PipelineConfig()) -> DocStats:
    counted = [t for t in tokens if t.kind in config.counted_kinds]
    return DocStats(
        n_tokens=len(counted),
        n_types=len({type_key(t, config.case_fold) for t in counted}),
        n_emojis=sum(1 for t in tokens if t.kind in EMOJI_KINDS),
        n_homoglyph_scalars=sum(len(homoglyph_scalars(r.orig, config.form)) for r in records),
        n_nfkc_normalized_tokens=sum(r.token_count for r in records),
    )


def normalize_token(t: Token, catalog: EmojiCatalog,
                    td: TokenDefinition = DEFAULT_TOKEN_DEFINITION,
                    form=uc.NormalizationForm.NFKC,
                    config: PipelineConfig | None = None):
    """Return (tokens, record-or-None) for one Word/Punctuation/Other token."""
    if t.kind in EMOJI_KINDS:
        raise ValueError(f"{t.kind} tokens are never normalized: {t.text!r}")
    if uc.is_normalized(t.text, form):
        return [t], None
    source = t.source
    clitic = t.kind is TokenKind.WORD and t.text[0] in APOSTROPHES
    pieces = tokenize(uc.normalize(t.text, form), catalog, td, clitic_start=clitic)
    if config is not None and config.translit:
        pieces = transliterate_tokens(pieces, catalog, config.delimiters)
    # every piece points back to the whole original token
    out = [replace(p, span=t.span, orig=None if p.text == source else source) for p in pieces]
    if not out:
        log.warning("token %r normalizes to nothing and was dropped", source)
        return [], NormalizationRecord(source, (EMPTY_SENTINEL,), t.span)
    return out, NormalizationRecord(source, tuple(p.text for p in out), t.span)


def preprocess(text: str, catalog: EmojiCatalog, config: PipelineConfig = PipelineConfig(),
               doc_id: str = "", converted_line_endings: int = 0) -> PreprocessedDocument:
    if config.translit and config.check_delimiters:
        check_delimiters(text, config.delimiters, doc_id)
    td = config.token_definition
    ret = retokenise(text, catalog)
    tokens = tokenize(ret, catalog, td)
    if config.translit:
        tokens = transliterate_tokens(tokens, catalog, config.delimiters)
    records: list[NormalizationRecord] = []
    if config.nfkc:
        out: list[Token] = []
        for tok in tokens:
            if tok.kind in EMOJI_KINDS:
                out.append(tok)
                continue
            new, rec = normalize_token(tok, catalog, td, config.form, config)
            out.extend(new)
            if rec is not None:
                records.append(rec)
        tokens = out
    doc = PreprocessedDocument(doc_id, ret, tokens, records,
                               converted_line_endings=converted_line_endings)
    doc.stats = compute_stats(tokens, records, config)
    return doc
