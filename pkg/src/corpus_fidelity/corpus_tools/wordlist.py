"""Type/token frequency lists and their CSV form."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field

from ..normalizer import DEFAULT_COUNTED_KINDS, PreprocessedDocument, type_key

CSV_HEADER = ("type", "frequency")


class WordlistFormatError(ValueError):
    pass


@dataclass
class Wordlist:
    entries: dict[str, int] = field(default_factory=dict)
    case_folded: bool = True
    counted_kinds: frozenset = DEFAULT_COUNTED_KINDS

    @property
    def n_types(self) -> int:
        return len(self.entries)

    @property
    def n_tokens(self) -> int:
        return sum(self.entries.values())

    def items(self) -> list[tuple[str, int]]:
        """Descending frequency, ties in codepoint order."""
        return sorted(self.entries.items(), key=lambda kv: (-kv[1], kv[0]))

    def merge(self, other: "Wordlist") -> "Wordlist":
        total = Counter(self.entries)
        total.update(other.entries)
        return Wordlist(dict(total), self.case_folded, self.counted_kinds)

    def without(self, types) -> "Wordlist":
        drop = set(types)
        return Wordlist({t: f for t, f in self.entries.items() if t not in drop},
                        self.case_folded, self.counted_kinds)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(self.items())
        return buf.getvalue()


def wordlist(docs, counted_kinds=DEFAULT_COUNTED_KINDS, case_folded: bool = True) -> Wordlist:
    counts: Counter = Counter()
    for doc in docs:
        doc: PreprocessedDocument
        counts.update(type_key(t, case_folded) for t in doc.tokens if t.kind in counted_kinds)
    return Wordlist(dict(counts), case_folded, frozenset(counted_kinds))


def parse_ingest_map(spec: str) -> tuple[str, str]:
    """``type_col:freq_col`` using header names or 0-based indices."""
    left, sep, right = spec.partition(":")
    if not sep or not left or not right:
        raise ValueError(f"--ingest-map expects TYPE_COL:FREQ_COL, got {spec!r}")
    return left, right


def _column(header: list[str], key: str) -> int:
    if key in header:
        return header.index(key)
    if key.isdigit() and int(key) < len(header):
        return int(key)
    raise WordlistFormatError(f"column {key!r} not in header {header!r}")


def read_wordlist_csv(text: str, ingest_map: tuple[str, str] | None = None,
                      case_folded: bool = True, source: str = "<csv>") -> Wordlist:
    """Parse an external wordlist; repeated types are summed."""
    if text.startswith("\ufeff"):
        text = text[1:]
    rows = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(rows)
    except StopIteration:
        raise WordlistFormatError(f"{source}: empty file") from None
    except csv.Error as exc:
        raise WordlistFormatError(f"{source}: row 1: {exc}") from None
    type_key_, freq_key = ingest_map or CSV_HEADER
    try:
        ti, fi = _column(header, type_key_), _column(header, freq_key)
    except WordlistFormatError as exc:
        raise WordlistFormatError(f"{source}: row 1: {exc}") from None
    counts: Counter = Counter()
    rowno = 1
    try:
        for rowno, row in enumerate(rows, 2):
            if not row:
                continue
            if len(row) <= max(ti, fi):
                raise WordlistFormatError(f"{source}: row {rowno}: expected {max(ti, fi) + 1} columns, got {len(row)}")
            typ, freq = row[ti], row[fi].strip()
            if not typ:
                raise WordlistFormatError(f"{source}: row {rowno}: empty type")
            if not freq.isdigit() or int(freq) < 1:
                raise WordlistFormatError(f"{source}: row {rowno}: bad frequency {freq!r}")
            counts[typ] += int(freq)
    except csv.Error as exc:
        raise WordlistFormatError(f"{source}: row {rowno + 1}: {exc}") from None
    return Wordlist(dict(counts), case_folded)
