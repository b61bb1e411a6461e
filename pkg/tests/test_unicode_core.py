"""Character properties, normalization and UTF-8 ingestion."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus_fidelity import unicode_core as uc
from corpus_fidelity.unicode_core import NormalizationForm as F

scalars = st.characters(blacklist_categories=("Cs",))
texts = st.text(alphabet=scalars, max_size=30)


@pytest.mark.parametrize("cp, name, block, script", [
    (0x41, "LATIN CAPITAL LETTER A", "Basic Latin", "Latin"),
    (0x20AC, "EURO SIGN", "Currency Symbols", "Common"),
    (0xA3, "POUND SIGN", "Latin-1 Supplement", "Common"),
    (0x14B, "LATIN SMALL LETTER ENG", "Latin Extended-A", "Latin"),
])
def test_char_record_rows(cp, name, block, script):
    rec = uc.char_record(cp)
    assert (rec.name, rec.block, rec.script) == (name, block, script)
    assert rec.label == f"U+{cp:04X}"


def test_unassigned_codepoint():
    rec = uc.char_record(0x0378)
    assert rec.general_category == "Cn"
    assert rec.script == "Unknown"


def test_algorithmic_names():
    assert uc.name(0xAC00) == "HANGUL SYLLABLE GA"
    assert uc.name(0xD7A3) == "HANGUL SYLLABLE HIH"
    assert uc.name(0x4E00) == "CJK UNIFIED IDEOGRAPH-4E00"
    # 15.1 addition, absent from older tables
    assert uc.name(0x2EBF0) == "CJK UNIFIED IDEOGRAPH-2EBF0"
    assert uc.name(0x0) == ""


@pytest.mark.parametrize("cp", [0xD800, 0xDFFF, -1, 0x110000])
def test_char_record_rejects_non_scalars(cp):
    with pytest.raises(ValueError):
        uc.char_record(cp)


@pytest.mark.parametrize("cp, expected", [
    (0x41, True), (0x20, True), (0x200D, False), (0x2028, False), (0x2029, False),
    (0xA0, False), (0x3000, False), (0x0A, False), (0xE000, False), (0x0378, False),
    (0x1F6FC, True),
])
def test_is_printable(cp, expected):
    assert uc.is_printable(cp) is expected


def test_is_printable_matches_host_rule_for_shared_assignments():
    # the host rule only differs where its older tables lack an assignment
    import unicodedata

    for cp in range(0x3000):
        if unicodedata.category(chr(cp)) == uc.category(cp):
            assert uc.is_printable(cp) == chr(cp).isprintable(), hex(cp)


@pytest.mark.parametrize("form, src, expected", [
    (F.NFKC, "ﬁ", "fi"),
    (F.NFKC, "2⁵", "25"),
    (F.NFKC, "\u1e9b\u0323", "\u1e69"),
    (F.NFKD, "\u1e9b\u0323", "s\u0323\u0307"),
    (F.NFC, "\u1e9b\u0323", "\u1e9b\u0323"),
    (F.NFD, "\u1e9b\u0323", "\u017f\u0323\u0307"),
    (F.NFC, "e\u0301", "\u00e9"),
    (F.NFKC, "⒜", "(a)"),
    (F.NFKC, "™", "TM"),
    (F.NFKC, "ℓ", "l"),
    (F.NFKC, "ℒ", "L"),
    (F.NFC, "\u1100\u1161\u11a8", "\uac01"),
    (F.NFD, "\uac01", "\u1100\u1161\u11a8"),
    (F.NFC, "a\u0328\u0301", "\u0105\u0301"),
    (F.NFC, "\u0915\u093c", "\u0915\u093c"),  # composition exclusion
])
def test_normalize_vectors(form, src, expected):
    assert uc.normalize(src, form) == expected
    assert uc.normalize_slow(src, form) == expected


@pytest.mark.parametrize("text, expected", [("love", True), ("\ufb01", False), ("", True),
                                            ("e\u0301", False), ("\u00e9", True)])
def test_is_normalized_nfkc(text, expected):
    assert uc.is_normalized(text, F.NFKC) is expected


@settings(max_examples=300, deadline=None)
@given(texts, st.sampled_from(list(F)))
def test_idempotent(text, form):
    once = uc.normalize(text, form)
    assert uc.normalize(once, form) == once
    assert uc.is_normalized(once, form)
    assert uc.is_normalized(text, form) == (once == text)


@settings(max_examples=300, deadline=None)
@given(texts)
def test_nfc_of_nfd(text):
    assert uc.normalize(uc.normalize(text, F.NFD), F.NFC) == uc.normalize(text, F.NFC)


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet=st.characters(max_codepoint=0x7F), max_size=40), st.sampled_from(list(F)))
def test_ascii_is_stable(text, form):
    assert uc.normalize(text, form) == text


@settings(max_examples=300, deadline=None)
@given(texts, st.sampled_from(list(F)))
def test_quick_check_agrees_with_full_algorithm(text, form):
    assert uc.normalize(text, form) == uc.normalize_slow(text, form)


def test_cross_check_against_independent_database():
    udp = pytest.importorskip("unicodedataplus")
    if udp.unidata_version != uc.UNICODE_VERSION:
        pytest.skip(f"oracle has Unicode {udp.unidata_version}")
    mismatches = []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        c = chr(cp)
        gc = uc.category(cp)
        if udp.category(c) != gc or udp.script(c) != uc.script(cp):
            mismatches.append(cp)
        # the oracle reports No_Block for unassigned code points inside a block
        elif gc != "Cn" and udp.block(c) != uc.block(cp):
            mismatches.append(cp)
        elif udp.combining(c) != uc.combining_class(cp):
            mismatches.append(cp)
        # ...and has no algorithmic Tangut names
        elif udp.name(c, "") != uc.name(cp) and not uc.name(cp).startswith("TANGUT IDEOGRAPH-"):
            mismatches.append(cp)
        elif cp % 7 == 0 and udp.normalize("NFKC", c) != uc.normalize(c, "NFKC"):
            mismatches.append(cp)
    assert mismatches == []


def test_decode_strict_and_lossy():
    with pytest.raises(uc.DecodeError, match="byte 1"):
        uc.decode_utf8(b"a\xffb")
    d = uc.decode_utf8(b"a\xffb", lossy=True)
    assert d.text == "a�b" and d.replaced_bytes


def test_decode_folds_line_endings():
    d = uc.decode_utf8(b"a\r\nb\rc\n")
    assert d.text == "a\nb\nc\n"
    assert d.converted_line_endings == 2
    assert uc.decode_utf8(b"x\n").converted_line_endings == 0


def test_decode_rejects_encoded_surrogates():
    with pytest.raises(uc.DecodeError):
        uc.decode_utf8("\ud800".encode("utf-8", "surrogatepass"))



def test_scalars_outside_part1_are_stable():
    # NormalizationTest Part 1 lists every scalar that changes under some form;
    # all other scalars must be left alone by all four forms
    import gzip
    from pathlib import Path

    listed = set()
    part = None
    path = Path(__file__).parent / "data" / "NormalizationTest-15.1.0.txt.gz"
    with gzip.open(path, "rt", encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("@Part"):
                part = line.split()[0]
            elif part == "@Part1" and line.strip() and not line.startswith("#"):
                listed.add(int(line.split(";")[0], 16))
    assert len(listed) > 10000
    changed = []
    for cp in range(uc.MAX_CODEPOINT + 1):
        if cp in listed or 0xD800 <= cp <= 0xDFFF:
            continue
        c = chr(cp)
        if any(uc.normalize(c, f) != c for f in ("NFC", "NFD", "NFKC", "NFKD")):
            changed.append(f"U+{cp:04X}")
    assert changed == []
