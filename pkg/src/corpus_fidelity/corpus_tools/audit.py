"""Source-data inventory and fidelity audit of external wordlists.

The inventory records what the raw documents actually contain: emoji
occurrences, homoglyph scalars and the token/type totals this pipeline
produces.  The audit then checks an external tool's wordlist against it and
lists every emoji the tool lost and every emoji-bearing type it invented.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import asdict, dataclass, field

from .. import unicode_core as uc
from ..emoji_catalog import EmojiCatalog
from ..normalizer import EMOJI_KINDS, PipelineConfig, homoglyph_scalars, preprocess, type_key
from ..tokenizer import segment_emojis
from ..transliterator import transliterate
from .wordlist import Wordlist, wordlist

ZWJ = "\u200d"


def is_emoji_bearing_scalar(c: str) -> bool:
    """Scalars that only occur in emoji: pictographs and sequence glue."""
    cp = ord(c)
    return (uc.has_property(c, "Extended_Pictographic")
            or uc.has_property(c, "Regional_Indicator")
            or cp in (0x200D, 0xFE0E, 0xFE0F, 0x20E3)
            or 0x1F3FB <= cp <= 0x1F3FF  # skin tone modifiers
            or 0x1F9B0 <= cp <= 0x1F9B3  # hair components
            or 0xE0020 <= cp <= 0xE007F)  # tag characters


def is_emoji_bearing(text: str) -> bool:
    return any(is_emoji_bearing_scalar(c) for c in text)


@dataclass
class DocInventory:
    doc_id: str
    types: int
    tokens: int
    emojis: int
    homoglyphs: int
    nfkc_norm: int


@dataclass
class SourceInventory:
    emoji_types: Counter = field(default_factory=Counter)
    homoglyph_scalars: Counter = field(default_factory=Counter)
    nfkc_norm_token_count: int = 0
    n_types: int = 0
    n_tokens: int = 0
    # emoji-bearing tokens of the source that are not catalog sequences
    # (a lone ZWJ, a stray regional indicator); faithful tools keep them too
    orphan_types: Counter = field(default_factory=Counter)
    docs: list[DocInventory] = field(default_factory=list)
    config_digest: str = ""

    @property
    def n_emojis(self) -> int:
        return sum(self.emoji_types.values())

    @property
    def n_homoglyphs(self) -> int:
        return sum(self.homoglyph_scalars.values())

    def table_csv(self) -> str:
        """Per-document totals in the shape File,Types,Tokens,Emojis,Homoglyphs,NFKC-Norm."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["File", "Types", "Tokens", "Emojis", "Homoglyphs", "NFKC-Norm"])
        for d in self.docs:
            w.writerow([d.doc_id, d.types, d.tokens, d.emojis, d.homoglyphs, d.nfkc_norm])
        w.writerow(["Total", self.n_types, self.n_tokens, self.n_emojis, self.n_homoglyphs,
                    self.nfkc_norm_token_count])
        return buf.getvalue()

    def to_json(self) -> str:
        data = asdict(self)
        data["emoji_types"] = dict(sorted(self.emoji_types.items()))
        data["homoglyph_scalars"] = dict(sorted(self.homoglyph_scalars.items()))
        data["orphan_types"] = dict(sorted(self.orphan_types.items()))
        return json.dumps(data, ensure_ascii=False, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SourceInventory":
        data = json.loads(text)
        try:
            return cls(
                emoji_types=Counter(data["emoji_types"]),
                homoglyph_scalars=Counter(data["homoglyph_scalars"]),
                nfkc_norm_token_count=int(data["nfkc_norm_token_count"]),
                n_types=int(data["n_types"]),
                n_tokens=int(data["n_tokens"]),
                orphan_types=Counter(data.get("orphan_types", {})),
                docs=[DocInventory(**d) for d in data.get("docs", [])],
                config_digest=data.get("config_digest", ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"not an inventory file: {exc}") from None


def inventory(raw_docs, catalog: EmojiCatalog, config: PipelineConfig = PipelineConfig()) -> SourceInventory:
    """Inventory raw documents given as strings or (doc_id, text) pairs."""
    inv = SourceInventory(config_digest=config.digest())
    total = Wordlist(case_folded=config.case_fold, counted_kinds=config.counted_kinds)
    for n, item in enumerate(raw_docs):
        doc_id, text = item if isinstance(item, tuple) else (f"doc{n + 1}", item)
        matches = segment_emojis(text, catalog)
        emojis = Counter(entry.codepoints for _, entry in matches)
        covered = set()
        for (s, e), _ in matches:
            covered.update(range(s, e))
        outside = "".join(c for i, c in enumerate(text) if i not in covered)
        glyphs = Counter(homoglyph_scalars(outside, config.form))
        doc = preprocess(text, catalog, config, doc_id)
        wl = wordlist([doc], config.counted_kinds, config.case_fold)
        for tok in doc.tokens:
            if tok.kind not in EMOJI_KINDS and tok.kind in config.counted_kinds and is_emoji_bearing(tok.text):
                inv.orphan_types[type_key(tok, config.case_fold)] += 1
        inv.emoji_types.update(emojis)
        inv.homoglyph_scalars.update(glyphs)
        inv.nfkc_norm_token_count += doc.stats.n_nfkc_normalized_tokens
        inv.docs.append(DocInventory(doc_id, wl.n_types, wl.n_tokens, sum(emojis.values()),
                                     sum(glyphs.values()), doc.stats.n_nfkc_normalized_tokens))
        total = total.merge(wl)
    inv.n_types, inv.n_tokens = total.n_types, total.n_tokens
    return inv


@dataclass
class AuditReport:
    emoji_type_count: int
    # occurrences of the external emoji-bearing and label types
    emoji_token_count: int
    # emoji occurrences in the source data
    source_emoji_count: int
    unrecognised_emojis: list[str]
    invalid_emoji_types: list[str]
    missing_types: int
    missing_tokens: int

    @property
    def clean(self) -> bool:
        return not (self.unrecognised_emojis or self.invalid_emoji_types
                    or self.missing_types or self.missing_tokens)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["item", "codepoints", "value"])
        for key in ("emoji_type_count", "emoji_token_count", "source_emoji_count",
                    "missing_types", "missing_tokens"):
            w.writerow([key, "", getattr(self, key)])
        for e in self.unrecognised_emojis:
            w.writerow(["unrecognised_emoji", _hex(e), e])
        for t in self.invalid_emoji_types:
            w.writerow(["invalid_emoji_type", _hex(t), t])
        return buf.getvalue()

    def summary(self) -> str:
        return (f"emoji types {self.emoji_type_count}, emoji-type tokens {self.emoji_token_count}, "
                f"source emojis {self.source_emoji_count}, "
                f"unrecognised {len(self.unrecognised_emojis)}, "
                f"invalid {len(self.invalid_emoji_types)}, "
                f"missing types {self.missing_types}, missing tokens {self.missing_tokens}")


def _hex(s: str) -> str:
    return " ".join(f"U+{ord(c):04X}" for c in s)


def audit(inv: SourceInventory, external: Wordlist, catalog: EmojiCatalog,
          ignore_types=()) -> AuditReport:
    """Compare an external wordlist with the source inventory.

    An emoji counts as recognised when the external list has a type that
    contains it as a whole segment, or its label when the list was built from
    transliterated data.  An external emoji-bearing type is invalid unless it
    is exactly an emoji (or orphan component) of the source.
    """
    ext = external.without(ignore_types) if ignore_types else external
    labels = catalog.label_index
    bearing = {t: f for t, f in ext.entries.items() if is_emoji_bearing(t)}
    label_types = {t: f for t, f in ext.entries.items() if len(labels.get(t, ())) == 1}

    present = set()
    for t in bearing:
        present.update(entry.codepoints for _, entry in segment_emojis(t, catalog))
    unrecognised = []
    for e in sorted(inv.emoji_types):
        entry = catalog.lookup(e)
        if e in present:
            continue
        if entry is not None and transliterate(entry) in label_types:
            continue
        unrecognised.append(e)
    invalid = sorted(t for t in bearing if t not in inv.emoji_types and t not in inv.orphan_types)
    return AuditReport(
        emoji_type_count=len(bearing) + len(label_types),
        emoji_token_count=sum(bearing.values()) + sum(label_types.values()),
        source_emoji_count=inv.n_emojis,
        unrecognised_emojis=unrecognised,
        invalid_emoji_types=invalid,
        missing_types=inv.n_types - ext.n_types,
        missing_tokens=inv.n_tokens - ext.n_tokens,
    )


def reference_inventory(n_types: int, n_tokens: int) -> SourceInventory:
    """Inventory carrying only totals, e.g. the counts of a generated test file."""
    return SourceInventory(n_types=n_types, n_tokens=n_tokens)


def split_zwj_type(wl: Wordlist, seq: str, fused: bool = False) -> Wordlist:
    """Simulate a tool that breaks ``seq`` at its first ZWJ.

    By default the halves become two separate types.  With ``fused`` the ZWJ
    is dropped and the halves stay one type, the way a tool that strips
    format characters renders the fallback sequence.
    """
    if seq not in wl.entries or ZWJ not in seq:
        raise ValueError(f"{seq!r} is not a ZWJ type of the wordlist")
    k = seq.index(ZWJ)
    left, right = seq[:k], seq[k + 1:]
    freq = wl.entries[seq]
    entries = dict(wl.entries)
    del entries[seq]
    for part in ([left + right] if fused else [left, right]):
        if part:
            entries[part] = entries.get(part, 0) + freq
    return Wordlist(entries, wl.case_folded, wl.counted_kinds)
