"""Serialize preprocessed documents as plain text, XML or verticalized text."""

from __future__ import annotations

from bisect import bisect_right
from xml.sax.saxutils import escape

from .. import unicode_core as uc
from ..normalizer import PreprocessedDocument

FORMATS = ("txt", "xml", "vrt")
VRT_RESERVED_COLUMNS = 2  # pos, lemma; filled by an external tagger


def validate_doc_id(doc_id: str) -> None:
    bad = [c for c in doc_id if c == '"' or uc.category(c) == "Cc"]
    if bad:
        raise ValueError(f"doc id {doc_id!r} contains forbidden character(s) {bad!r}")


def _attr(value: str) -> str:
    return '"' + escape(value, {'"': "&quot;"}) + '"'


def _xml_text(value: str) -> str:
    # XML 1.0 has no way to carry C0 controls other than TAB/LF/CR
    for c in value:
        if c < " " and c not in "\t\n\r" or c in "\ufffe\uffff":
            raise ValueError(f"U+{ord(c):04X} cannot be written to XML 1.0; use vrt or txt")
    return escape(value)


def _lines(doc: PreprocessedDocument):
    """Group token indices by source line; tokens never span a line break."""
    breaks = doc.line_breaks()
    n_lines = len(breaks) + (0 if doc.text.endswith("\n") or not doc.text else 1)
    groups: list[list[int]] = [[] for _ in range(n_lines)]
    for i, tok in enumerate(doc.tokens):
        groups[bisect_right(breaks, tok.span[0])].append(i)
    return groups


def _runs(doc: PreprocessedDocument, indices: list[int]):
    """Yield (record-or-None, token indices); a record covers all tokens sharing its span."""
    by_span = {r.span: r for r in doc.records}
    i = 0
    while i < len(indices):
        tok = doc.tokens[indices[i]]
        rec = by_span.get(tok.span)
        if rec is None or rec.dropped:
            yield None, [indices[i]]
            i += 1
            continue
        j = i
        while j < len(indices) and doc.tokens[indices[j]].span == tok.span:
            j += 1
        yield rec, indices[i:j]
        i = j


def to_txt(doc: PreprocessedDocument) -> str:
    return "".join(" ".join(doc.tokens[i].text for i in line) + "\n" for line in _lines(doc))


def to_xml(doc: PreprocessedDocument) -> str:
    out = [f"<doc id={_attr(doc.doc_id)}>\n"]
    for line in _lines(doc):
        parts = []
        for rec, idx in _runs(doc, line):
            text = " ".join(_xml_text(doc.tokens[i].text) for i in idx)
            if rec is None:
                parts.append(text)
            else:
                _xml_text(rec.orig)
                parts.append(f"<norm orig={_attr(rec.orig)}>{text}</norm>")
        out.append(" ".join(parts) + "\n")
    out.append("</doc>\n")
    return "".join(out)


def to_vrt(doc: PreprocessedDocument) -> str:
    out = [f"<doc id={_attr(doc.doc_id)}>\n"]
    pad = "\t" * VRT_RESERVED_COLUMNS
    for tok in doc.tokens:
        # structural tags share the line namespace, so token columns are escaped
        orig = escape(tok.orig) if tok.orig is not None else "-"
        out.append(f"{escape(tok.text)}\t{orig}{pad}\n")
    out.append("</doc>\n")
    return "".join(out)


def write_output(doc: PreprocessedDocument, fmt: str) -> bytes:
    validate_doc_id(doc.doc_id)
    if fmt == "txt":
        text = to_txt(doc)
    elif fmt == "xml":
        text = to_xml(doc)
    elif fmt == "vrt":
        text = to_vrt(doc)
    else:
        raise ValueError(f"unknown output format {fmt!r}; expected one of {FORMATS}")
    return text.encode("utf-8")
