"""Emoji inventory loaded from the Unicode ``emoji-test`` data file."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path

from . import unicode_core
from .unicode_core import NormalizationForm

EMOJI_VERSION = "15.1"
BUNDLED_FILE = f"emoji-test-{EMOJI_VERSION}.txt"

QUALIFICATIONS = ("fully-qualified", "minimally-qualified", "unqualified", "component")
# Statuses that make up the set of distinct emojis; the other two are variants
# of a fully-qualified sequence with missing presentation selectors.
DISTINCT_QUALIFICATIONS = frozenset({"fully-qualified", "component"})

_LINE_RE = re.compile(
    r"^(?P<cps>[0-9A-Fa-f]{4,6}(?: [0-9A-Fa-f]{4,6})*)\s*;\s*(?P<status>[a-z-]+)\s*"
    r"#\s*(?P<glyph>\S+)\s+E(?P<version>\d+\.\d+)\s+(?P<name>.+?)\s*$"
)


class CatalogError(ValueError):
    """Malformed or inconsistent emoji data."""


@dataclass(frozen=True)
class EmojiEntry:
    codepoints: str
    cldr_name: str
    qualification: str
    version: str
    group: str = ""
    subgroup: str = ""

    @property
    def is_distinct(self) -> bool:
        return self.qualification in DISTINCT_QUALIFICATIONS

    def hex(self) -> str:
        return " ".join(f"{ord(c):04X}" for c in self.codepoints)

    def to_line(self) -> str:
        """Render back to the emoji-test line format."""
        return (f"{self.hex()} ; {self.qualification} # {self.codepoints} "
                f"E{self.version} {self.cldr_name}")


class EmojiCatalog:
    """Immutable key -> entry mapping keyed by exact scalar sequence."""

    def __init__(self, entries: dict[str, EmojiEntry], source: str = "<memory>"):
        self._entries = dict(entries)
        self.source = source
        self.max_len = max((len(k) for k in self._entries), default=0)
        prefixes = set()
        for key in self._entries:
            for i in range(1, len(key) + 1):
                prefixes.add(key[:i])
        self._prefixes = frozenset(prefixes)
        self._first = frozenset(k[0] for k in self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, seq) -> bool:
        return seq in self._entries

    def __iter__(self):
        return iter(self._entries.values())

    @property
    def entries(self) -> dict[str, EmojiEntry]:
        return dict(self._entries)

    def keys(self):
        return self._entries.keys()

    def lookup(self, seq: str) -> EmojiEntry | None:
        return self._entries.get(seq)

    @cached_property
    def distinct(self) -> list[EmojiEntry]:
        """Fully-qualified and component entries, in file order."""
        return [e for e in self._entries.values() if e.is_distinct]

    @cached_property
    def label_index(self) -> dict[str, list[EmojiEntry]]:
        from .transliterator import build_label_index

        return build_label_index(self)

    def stats(self) -> dict[str, int]:
        counts = Counter(e.qualification for e in self._entries.values())
        out = {q: counts.get(q, 0) for q in QUALIFICATIONS}
        out["total_entries"] = len(self._entries)
        out["distinct_with_components"] = out["fully-qualified"] + out["component"]
        out["distinct_without_components"] = out["fully-qualified"]
        out["max_len"] = self.max_len
        return out

    def dump(self) -> str:
        return "".join(e.to_line() + "\n" for e in self._entries.values())

    # scanner support; see tokenizer.segment_emojis
    def _is_prefix(self, seq: str) -> bool:
        return seq in self._prefixes

    def _may_start(self, ch: str) -> bool:
        return ch in self._first


def load_catalog(emoji_test_data: str, source: str = "<memory>") -> EmojiCatalog:
    entries: dict[str, EmojiEntry] = {}
    group = subgroup = ""
    for lineno, raw in enumerate(emoji_test_data.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            header = line.lstrip("#").strip()
            if header.startswith("group:"):
                group = header[len("group:"):].strip()
            elif header.startswith("subgroup:"):
                subgroup = header[len("subgroup:"):].strip()
            continue
        m = _LINE_RE.match(line)
        if m is None or m.group("status") not in QUALIFICATIONS:
            raise CatalogError(f"{source}:{lineno}: malformed emoji-test line: {raw!r}")
        key = "".join(chr(int(h, 16)) for h in m.group("cps").split())
        if key in entries:
            raise CatalogError(f"{source}:{lineno}: duplicate sequence {m.group('cps')}")
        entries[key] = EmojiEntry(
            codepoints=key,
            cldr_name=m.group("name").lower(),
            qualification=m.group("status"),
            version=m.group("version"),
            group=group,
            subgroup=subgroup,
        )
    return EmojiCatalog(entries, source)


def load_catalog_file(path) -> EmojiCatalog:
    path = Path(path)
    return load_catalog(path.read_text(encoding="utf-8"), source=str(path))


@lru_cache(maxsize=1)
def default_catalog() -> EmojiCatalog:
    text = resources.files("corpus_fidelity").joinpath(f"data/{BUNDLED_FILE}").read_text(
        encoding="utf-8")
    return load_catalog(text, source=BUNDLED_FILE)


def lookup(catalog: EmojiCatalog, seq: str) -> EmojiEntry | None:
    return catalog.lookup(seq)


def nfkc_sensitive_entries(catalog: EmojiCatalog) -> list[EmojiEntry]:
    """Entries whose scalar sequence is not a fixed point of NFKC."""
    return [e for e in catalog
            if not unicode_core.is_normalized(e.codepoints, NormalizationForm.NFKC)]
