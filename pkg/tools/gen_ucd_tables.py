#!/usr/bin/env python3
"""Generate the bundled Unicode Character Database tables.

Reads a UCD release and writes the compact table file loaded at runtime by
``corpus_fidelity.unicode_core``, plus the NormalizationTest conformance data
used by the test suite.

Two input layouts are accepted:

* the plain-text UCD directory as published by the Unicode Consortium
  (``UnicodeData.txt``, ``Scripts.txt``, ``Blocks.txt``, ``PropList.txt``,
  ``DerivedNormalizationProps.txt``, ``NormalizationTest.txt`` and
  ``emoji/emoji-data.txt``);
* the same files converted to JSON by the ``ucd-full`` npm package.

Usage::

    python tools/gen_ucd_tables.py /path/to/ucd --version 15.1.0
"""

from __future__ import annotations

import argparse
import gzip
import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DEFAULT_TABLES = ROOT / "src" / "corpus_fidelity" / "data"
DEFAULT_TESTDATA = ROOT / "tests" / "data"

# Ranges in UnicodeData whose names are derived from the code point.
ALGORITHMIC_PREFIXES = {
    "CJK Ideograph": "CJK UNIFIED IDEOGRAPH-",
    "Tangut Ideograph": "TANGUT IDEOGRAPH-",
}

KEEP_PROPS = {
    "PropList": {"White_Space", "Regional_Indicator", "Variation_Selector", "Join_Control"},
    "emoji-data": {"Extended_Pictographic", "Emoji_Component", "Emoji_Modifier", "Emoji"},
    "DerivedNormalizationProps": {
        "Full_Composition_Exclusion", "NFC_QC", "NFD_QC", "NFKC_QC", "NFKD_QC",
    },
}


class UCDSource:
    """Uniform access to a UCD release in either layout."""

    def __init__(self, root: Path):
        self.root = root
        self.json = (root / "UnicodeData.json").exists()
        if not self.json and not (root / "UnicodeData.txt").exists():
            raise SystemExit(f"no UnicodeData.txt or UnicodeData.json under {root}")

    def _load_json(self, stem: str):
        path = self.root / f"{stem}.json"
        return json.loads(path.read_text(encoding="utf-8"))[Path(stem).name]

    def _lines(self, stem: str):
        path = self.root / f"{stem}.txt"
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                yield line

    def unicode_data(self):
        """Yield (cp, name, category, ccc, decomposition) rows."""
        if self.json:
            for e in self._load_json("UnicodeData"):
                yield (int(e["codepoint"], 16), e["name"], e["category"],
                       int(e["canonicalCombiningClass"]),
                       e.get("characterDecompositionMapping", ""))
        else:
            for line in self._lines("UnicodeData"):
                f = line.split(";")
                yield int(f[0], 16), f[1], f[2], int(f[3]), f[5]

    def ranges(self, stem: str):
        """Yield (start, end, fields) from a range-keyed property file."""
        if self.json:
            for e in self._load_json(stem):
                rng = e["range"]
                start = int(rng[0], 16)
                end = int(rng[-1], 16)
                fields = [v for k, v in e.items() if k != "range"]
                yield start, end, fields
        else:
            for line in self._lines(stem):
                parts = [p.strip() for p in line.split(";")]
                lo, _, hi = parts[0].partition("..")
                yield int(lo, 16), int(hi or lo, 16), parts[1:]

    def normalization_test(self):
        """Yield either ('@PartN', None) markers or (None, five-column tuple)."""
        if self.json:
            for e in self._load_json("NormalizationTest"):
                src = e["sourceSequence"]
                if src and src[0].startswith("@"):
                    yield src[0], None
                    continue
                cols = [e[k] for k in ("sourceSequence", "NFCSequence", "NFDSequence",
                                       "NFKCSequence", "NFKDSequence")]
                yield None, tuple(" ".join(c) for c in cols)
        else:
            path = self.root / "NormalizationTest.txt"
            for line in path.read_text(encoding="utf-8").splitlines():
                body = line.split("#", 1)[0].strip()
                if not body:
                    continue
                if body.startswith("@"):
                    yield body.split()[0], None
                    continue
                yield None, tuple(c.strip() for c in body.split(";")[:5])


def merge_ranges(items):
    """Collapse sorted (start, end, value) triples with adjacent equal values."""
    out = []
    for start, end, value in sorted(items):
        if out and out[-1][1] + 1 == start and out[-1][2] == value:
            out[-1][1] = end
        else:
            out.append([start, end, value])
    return out


def build_tables(src: UCDSource, version: str) -> dict:
    categories, names, ccc, decomp, named_ranges = [], {}, {}, {}, []
    pending = None
    for cp, name, cat, cls, dm in src.unicode_data():
        if name.endswith(", First>"):
            pending = (cp, name[1:-len(", First>")])
            continue
        if name.endswith(", Last>"):
            first, label = pending
            pending = None
            categories.append((first, cp, cat))
            for key, prefix in ALGORITHMIC_PREFIXES.items():
                if label.startswith(key):
                    named_ranges.append([first, cp, prefix])
            continue
        categories.append((cp, cp, cat))
        if not name.startswith("<"):
            names[cp] = name
        if cls:
            ccc[cp] = cls
        if dm:
            tag = ""
            m = re.match(r"<(\w+)>\s*(.*)", dm)
            if m:
                tag, dm = m.group(1), m.group(2)
            decomp[cp] = [tag, [int(x, 16) for x in dm.split()]]

    scripts = merge_ranges((s, e, f[0]) for s, e, f in src.ranges("Scripts"))
    blocks = merge_ranges((s, e, f[0]) for s, e, f in src.ranges("Blocks"))

    props: dict[str, list] = {}
    for stem, keep in (("PropList", KEEP_PROPS["PropList"]),
                       ("emoji/emoji-data", KEEP_PROPS["emoji-data"]),
                       ("DerivedNormalizationProps", KEEP_PROPS["DerivedNormalizationProps"])):
        for s, e, f in src.ranges(stem):
            if f[0] not in keep:
                continue
            value = f[1] if len(f) > 1 else True
            props.setdefault(f[0], []).append((s, e, value))
    props = {k: merge_ranges(v) for k, v in sorted(props.items())}

    return {
        "version": version,
        "categories": merge_ranges(categories),
        "names": {f"{cp:04X}": n for cp, n in sorted(names.items())},
        "named_ranges": named_ranges,
        "ccc": {f"{cp:04X}": c for cp, c in sorted(ccc.items())},
        "decompositions": {f"{cp:04X}": v for cp, v in sorted(decomp.items())},
        "scripts": scripts,
        "blocks": blocks,
        "properties": props,
    }


def write_normalization_test(src: UCDSource, dest: Path, version: str) -> int:
    lines = [f"# NormalizationTest-{version}.txt (regenerated by tools/gen_ucd_tables.py)"]
    n = 0
    for marker, cols in src.normalization_test():
        if marker:
            lines.append(marker)
        else:
            lines.append(";".join(cols) + ";")
            n += 1
    # mtime=0 keeps the artifact byte-stable across regenerations
    with open(dest, "wb") as raw, gzip.GzipFile(fileobj=raw, mode="wb", mtime=0) as fh:
        fh.write(("\n".join(lines) + "\n").encode("utf-8"))
    return n


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("ucd_dir", type=Path)
    ap.add_argument("--version", required=True, help="Unicode version, e.g. 15.1.0")
    ap.add_argument("--tables-dir", type=Path, default=DEFAULT_TABLES)
    ap.add_argument("--testdata-dir", type=Path, default=DEFAULT_TESTDATA)
    args = ap.parse_args(argv)

    src = UCDSource(args.ucd_dir)
    tables = build_tables(src, args.version)
    out = args.tables_dir / f"ucd-{args.version}.json.gz"
    payload = json.dumps(tables, separators=(",", ":"), ensure_ascii=True).encode()
    with open(out, "wb") as raw, gzip.GzipFile(fileobj=raw, mode="wb", mtime=0) as fh:
        fh.write(payload)
    print(f"wrote {out} ({len(tables['names'])} names, "
          f"{len(tables['decompositions'])} decompositions)", file=sys.stderr)

    args.testdata_dir.mkdir(parents=True, exist_ok=True)
    nt = args.testdata_dir / f"NormalizationTest-{args.version}.txt.gz"
    n = write_normalization_test(src, nt, args.version)
    print(f"wrote {nt} ({n} test lines)", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
