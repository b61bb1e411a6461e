"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v``.
"""

from __future__ import annotations

import gzip
from importlib import resources
import random
import time
from pathlib import Path

import pytest

from corpus_fidelity import unicode_core as uc
from corpus_fidelity.corpus_tools.audit import audit, inventory, split_zwj_type
from corpus_fidelity.corpus_tools.testfiles import (REFERENCE_NFKC_TOKENS, REFERENCE_NFKC_TYPES,
                                                    REFERENCE_RAW_LINES, explain_delta,
                                                    gen_emoji_testfile, gen_homoglyph_testfile,
                                                    homoglyph_scalars)
from corpus_fidelity.corpus_tools.testfiles import testfile_stats as file_stats
from corpus_fidelity.corpus_tools.wordlist import wordlist
from corpus_fidelity.corpus_tools.writers import to_txt
from corpus_fidelity.emoji_catalog import BUNDLED_FILE, default_catalog, load_catalog, nfkc_sensitive_entries
from corpus_fidelity.normalizer import PipelineConfig, preprocess
from corpus_fidelity.tokenizer import TokenKind, tokenize
from corpus_fidelity.transliterator import detransliterate, label_collisions, transliterate

NORMALIZATION_TEST = Path(__file__).parent / "data" / "NormalizationTest-15.1.0.txt.gz"


def _fresh_catalog():
    """Parse the bundled data file anew, bypassing the cached default."""
    text = resources.files("corpus_fidelity").joinpath(f"data/{BUNDLED_FILE}").read_text(encoding="utf-8")
    return load_catalog(text, source=BUNDLED_FILE)


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    return emit


def _scalars(field: str) -> str:
    return "".join(chr(int(h, 16)) for h in field.split())


def _hex(s: str) -> str:
    return " ".join(f"U+{ord(c):04X}" for c in s)


# 1 -------------------------------------------------------------------------

def test_criterion_01_normalization_conformance(report):
    rows = []
    with gzip.open(NORMALIZATION_TEST, "rt", encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line or line.startswith("@"):
                continue
            rows.append([_scalars(f) for f in line.split(";")[:5]])
    n = uc.normalize
    failures = []
    start = time.perf_counter()
    for c1, c2, c3, c4, c5 in rows:
        ok = (all(n(x, "NFC") == c2 for x in (c1, c2, c3))
              and all(n(x, "NFC") == c4 for x in (c4, c5))
              and all(n(x, "NFD") == c3 for x in (c1, c2, c3))
              and all(n(x, "NFD") == c5 for x in (c4, c5))
              and all(n(x, "NFKC") == c4 for x in (c1, c2, c3, c4, c5))
              and all(n(x, "NFKD") == c5 for x in (c1, c2, c3, c4, c5)))
        if not ok:
            failures.append(_hex(c1))
    elapsed = time.perf_counter() - start
    passed = not failures and elapsed < 10 and len(rows) > 18000
    report(1, passed, f"{len(rows)} lines, {len(failures)} failures, {elapsed:.2f} s (limit 10 s)")
    assert not failures, failures[:10]
    assert elapsed < 10


# 2 -------------------------------------------------------------------------

def test_criterion_02_normalization_vectors(report):
    long_s = "ẛ\u0323"
    checks = {
        "NFKC(U+FB01)": (uc.normalize("ﬁ", "NFKC"), "fi"),
        "NFKC(U+0032 U+2075)": (uc.normalize("2⁵", "NFKC"), "25"),
        "NFKD(U+1E9B U+0323)": (uc.normalize(long_s, "NFKD"), "ſ\u0323\u0307"),
        "NFKC(U+1E9B U+0323)": (uc.normalize(long_s, "NFKC"), "ṩ"),
    }
    bad = {k: (_hex(got), _hex(want)) for k, (got, want) in checks.items() if got != want}
    detail = "all four vectors equal" if not bad else "; ".join(
        f"{k} = {got}, expected {want}" for k, (got, want) in bad.items())
    report(2, not bad, detail)
    assert not bad


# 3 -------------------------------------------------------------------------

def test_criterion_03_catalog_size(report):
    cat = _fresh_catalog()
    stats = cat.stats()
    distinct = len(cat.distinct)
    # convention: fully-qualified sequences plus the components
    convention = stats["fully-qualified"] + stats["component"]
    ok = distinct == 3782 and convention == distinct
    report(3, ok, f"{distinct} distinct (fully-qualified {stats['fully-qualified']} + "
                  f"component {stats['component']}); {len(cat)} entries in the file")
    assert distinct == 3782
    assert convention == distinct


# 4 -------------------------------------------------------------------------

def test_criterion_04_frequency_one(report):
    cat = default_catalog()
    doc = preprocess(gen_emoji_testfile(cat), cat)
    wl = wordlist([doc])
    labels = {k: v for k, v in wl.entries.items() if k != "emoji"}
    expected = {transliterate(e) for e in cat.distinct}
    ok = (wl.entries.get("emoji") == 3782 and set(labels) == expected
          and all(v == 1 for v in labels.values()))
    report(4, ok, f"'emoji' x{wl.entries.get('emoji')}, {len(labels)} labels, "
                  f"{sum(v != 1 for v in labels.values())} with frequency != 1")
    assert wl.entries["emoji"] == 3782
    assert set(labels) == expected
    assert all(v == 1 for v in labels.values())


# 5 -------------------------------------------------------------------------

def test_criterion_05_homoglyph_testfiles(report):
    raw_lines = gen_homoglyph_testfile().count("\n")
    norm = file_stats(gen_homoglyph_testfile(normalized=True))
    got = (raw_lines, norm.tokens, norm.types)
    want = (REFERENCE_RAW_LINES, REFERENCE_NFKC_TOKENS, REFERENCE_NFKC_TYPES)
    summary, rows = explain_delta(default_catalog())
    ex = summary["exclude_emoji"]
    detail = (f"raw lines {raw_lines}, NFKC tokens {norm.tokens}, NFKC types {norm.types}; "
              f"expected {want[0]}/{want[1]}/{want[2]}. Itemized: {len(rows)} single-scalar "
              f"emoji keys admitted by the rule; without them "
              f"{ex['raw_lines']}/{ex['nfkc_tokens']}/{ex['nfkc_types']}")
    report(5, got == want, detail)
    # every itemized scalar is justified by its UCD record
    assert all(r.script in ("Latin", "Common") for r in rows)
    assert len(homoglyph_scalars()) - len(homoglyph_scalars(default_catalog())) == len(rows)
    assert got == want


# 6 -------------------------------------------------------------------------

ZWJ_CASES = {
    "\U0001F3F3\ufe0f\u200d⚧\ufe0f": ["⚧", "\U0001F3F3\ufe0f", "\U0001F3FC"],
    "\U0001F426\u200d⬛": ["⚧", "\U0001F3F3\ufe0f", "\U0001F3FC", "\U0001F635"],
    "\U0001F635\u200d\U0001F4AB": ["\U0001F635", "\U0001F3FC"],
}


def test_criterion_06_zwj_integrity(report):
    cat = default_catalog()
    failures = []
    for text, fragments in ZWJ_CASES.items():
        for toks in (tokenize(text, cat),
                     preprocess(text, cat, PipelineConfig(translit=False)).tokens,
                     preprocess(f"a {text} b", cat, PipelineConfig(translit=False)).tokens[1:2]):
            if [(t.text, t.kind) for t in toks] != [(text, TokenKind.EMOJI)]:
                failures.append(_hex(text))
            if {t.text for t in toks} & set(fragments):
                failures.append(_hex(text) + " fragment")
    report(6, not failures, f"{len(ZWJ_CASES)} sequences, failures: {failures or 'none'}")
    assert not failures


# 7 -------------------------------------------------------------------------

def test_criterion_07_pipeline_goldens(report):
    cat = default_catalog()
    skate = to_txt(preprocess("\U0001F6FC\U0001F6FCdown", cat)).rstrip("\n")
    bold = "".join(chr(0x1D400 + ord(c) - 65) for c in "PRESIDENT") + "\u2019" + chr(0x1D412)
    president = [t.text for t in preprocess(bold, cat).tokens]
    ex2 = ("No matter what, love is \U0001D543\U0001D546\U0001D54D\U0001D53C! "
           "\U0001F1F7\U0001F1FA\U0001F1FA\U0001F1F8")
    wl = wordlist([preprocess(ex2, cat)])
    checks = [skate == "{roller^skate} {roller^skate} down",
              president == ["PRESIDENT", "\u2019S"],
              (wl.n_tokens, wl.n_types) == (8, 7)]
    report(7, all(checks), f"skate {skate!r}; clitic {president}; mixed sentence "
                           f"{wl.n_tokens} tokens / {wl.n_types} types")
    assert all(checks)


# 8 -------------------------------------------------------------------------

def test_criterion_08_chloe_merge(report):
    cat = default_catalog()
    decomposed, precomposed = "Chloe\u0301", "Chloé"
    words = [decomposed] * 11 + [precomposed] * 256
    random.Random(8).shuffle(words)
    text = "\n".join(f"{w} posted a photo" for w in words)
    wl = wordlist([preprocess(text, cat)])
    chloe = {k: v for k, v in wl.entries.items() if k.startswith("chlo")}
    ok = chloe == {"chloé": 267}
    report(8, ok, f"types {chloe}")
    assert ok


# 9 -------------------------------------------------------------------------

def test_criterion_09_nfkc_sensitive(report):
    entries = nfkc_sensitive_entries(default_catalog())
    bases = {e.codepoints.replace("\ufe0f", "") for e in entries}
    keys = {e.codepoints for e in entries}
    ok = len(entries) == 31 and len(bases) == 22 and "™" in bases
    report(9, ok, f"{len(entries)} entries, {len(bases)} distinct base emojis, "
                  f"U+2122 {'present' if '™' in keys else 'absent'}")
    assert len(entries) == 31
    assert len(bases) == 22
    assert "™" in keys


# 10 ------------------------------------------------------------------------

def test_criterion_10_round_trip(report):
    start = time.perf_counter()
    cat = _fresh_catalog()
    collisions = label_collisions(cat)
    wrong = [e.hex() for e in cat.distinct if detransliterate(transliterate(e), cat) != e]
    elapsed = time.perf_counter() - start
    ok = not wrong and not collisions and len(cat.distinct) == 3782 and elapsed < 5
    report(10, ok, f"{len(cat.distinct)} entries, {len(wrong)} mismatches, "
                   f"{len(collisions)} collisions, {elapsed:.2f} s (limit 5 s)")
    assert not wrong and not collisions
    assert elapsed < 5


# 11 ------------------------------------------------------------------------

def _random_documents(n: int, seed: int = 11):
    cat = default_catalog()
    rng = random.Random(seed)
    keys = sorted(cat.keys())
    zwj = [k for k in keys if "\u200d" in k]
    glyphs = [c for c in homoglyph_scalars() if not uc.is_normalized(c, "NFKC")
              and c not in "{}^"]
    ascii_words = ["no", "matter", "what", "love", "is", "The", "PRESIDENT'S", "don't", "42"]
    for _ in range(n):
        items = []
        for _ in range(rng.randint(1, 12)):
            kind = rng.random()
            if kind < 0.35:
                items.append(rng.choice(keys))
            elif kind < 0.5:
                items.append(rng.choice(zwj))
            elif kind < 0.75:
                items.append("".join(rng.choices(glyphs, k=rng.randint(1, 4))))
            else:
                items.append(rng.choice(ascii_words))
        seps = [rng.choice([" ", " ", "", "\n", ", "]) for _ in items]
        yield "".join(i + s for i, s in zip(items, seps))


def test_criterion_11_self_audit_fixpoint(report):
    cat = default_catalog()
    unclean, wrong_mutations, injected = [], [], 0
    plain = PipelineConfig(translit=False)
    for i, text in enumerate(_random_documents(1000)):
        for cfg in (PipelineConfig(), plain):
            inv = inventory([text], cat, cfg)
            rep = audit(inv, wordlist([preprocess(text, cat, cfg)], cfg.counted_kinds, cfg.case_fold), cat)
            if not rep.clean:
                unclean.append((i, rep.summary()))
        # defect injection: split every ZWJ sequence type of the document
        inv = inventory([text], cat, plain)
        wl = wordlist([preprocess(text, cat, plain)], plain.counted_kinds, plain.case_fold)
        seqs = sorted(t for t in wl.entries if "\u200d" in t and t in inv.emoji_types)
        mutated = wl
        for seq in seqs:
            mutated = split_zwj_type(mutated, seq, fused=True)
        injected += len(seqs)
        rep = audit(inv, mutated, cat)
        expected = sorted(s.replace("\u200d", "", 1) for s in seqs)
        if rep.invalid_emoji_types != expected:
            wrong_mutations.append((i, rep.invalid_emoji_types, expected))
    ok = not unclean and not wrong_mutations and injected > 0
    report(11, ok, f"1000 documents x 2 configs, {len(unclean)} unclean self-audits; "
                   f"{injected} injected splits, {len(wrong_mutations)} documents with "
                   f"invalid entries != one per split")
    assert not unclean, unclean[:5]
    assert not wrong_mutations, wrong_mutations[:5]
    assert injected > 0
