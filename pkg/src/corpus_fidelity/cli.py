"""Command-line interface.

Data goes to standard output (or ``-o``); summaries and diagnostics go to
standard error.  Exit status is 0 on success, 1 for bad input or usage and 2
when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from pathlib import Path

from . import __version__
from . import unicode_core as uc
from .config import ConfigError, parse_config_text, pipeline_config
from .corpus_tools import (FORMATS, SourceInventory, WordlistFormatError, audit, explain_delta,
                           gen_emoji_testfile, gen_homoglyph_testfile, inventory,
                           read_wordlist_csv, reference_inventory, testfile_stats, wordlist,
                           write_output)
from .corpus_tools.testfiles import HOMOGLYPH_LABEL
from .corpus_tools.wordlist import parse_ingest_map
from .emoji_catalog import CatalogError, EmojiCatalog, default_catalog, load_catalog_file, nfkc_sensitive_entries
from .normalizer import PipelineConfig, PreprocessedDocument, compute_stats, preprocess
from .tokenizer import Token, TokenKind, segment_emojis, utf8_offsets
from .transliterator import (DEFAULT_DELIMITERS, AmbiguousLabelError, DelimiterCollisionError,
                             Delimiters, InternalInconsistencyError, TransliterationError,
                             assert_no_collisions, build_label_index, transliterate)

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2

INPUT_ERRORS = (uc.DecodeError, OSError, WordlistFormatError, CatalogError, ConfigError,
                DelimiterCollisionError, TransliterationError, ValueError)
INTERNAL_ERRORS = (InternalInconsistencyError, AmbiguousLabelError, AssertionError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors (exit 1), not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# --- output helpers ---------------------------------------------------------

def _color_enabled(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _note(message: str, ok: bool = True) -> None:
    if _color_enabled(sys.stderr):
        code = "32" if ok else "33"
        message = f"\x1b[{code}m{message}\x1b[0m"
    print(message, file=sys.stderr)


def _provenance(command: str, config: PipelineConfig, catalog: EmojiCatalog) -> dict:
    return {
        "tool": "corpus-fidelity",
        "version": __version__,
        "unicode_version": uc.UNICODE_VERSION,
        "emoji_data": catalog.source,
        "config_hash": config.digest(),
        "command": command,
    }


def _emit(data: bytes | str, out: str | None, prov: dict) -> None:
    """Write data to ``out`` (plus a provenance sidecar) or to stdout."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        Path(f"{path}.provenance.json").write_text(
            json.dumps(prov, sort_keys=True) + "\n", encoding="utf-8")
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        print("# provenance " + json.dumps(prov, sort_keys=True), file=sys.stderr)


# --- inputs -----------------------------------------------------------------

def collect_inputs(paths) -> list[tuple[str, Path]]:
    """Expand directories; files inside a directory come in codepoint order of relative path."""
    out = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            files = [f for f in path.rglob("*") if f.is_file()]
            for f in sorted(files, key=lambda f: f.relative_to(path).as_posix()):
                out.append((f.relative_to(path).as_posix(), f))
        elif path.is_file():
            out.append((path.name, path))
        else:
            raise FileNotFoundError(f"no such file or directory: {p}")
    return out


@lru_cache(maxsize=4)
def _load_catalog(path: str | None) -> EmojiCatalog:
    catalog = default_catalog() if path is None else load_catalog_file(path)
    assert_no_collisions(catalog)
    return catalog


def _read(path: Path, lossy: bool) -> uc.DecodedText:
    try:
        return uc.decode_utf8(path.read_bytes(), lossy=lossy)
    except uc.DecodeError as exc:
        raise uc.DecodeError(f"{path}: {exc}") from None


def _process_one(job):
    """Worker: decode and preprocess one file.  Must stay picklable."""
    doc_id, path, lossy, config, catalog_path, fmt = job
    catalog = _load_catalog(catalog_path)
    decoded = _read(Path(path), lossy)
    doc = preprocess(decoded.text, catalog, config, doc_id, decoded.converted_line_endings)
    rendered = write_output(doc, fmt) if fmt else b""
    return doc, rendered, decoded.replaced_bytes


def _run_jobs(jobs, n_workers: int):
    if n_workers <= 1 or len(jobs) <= 1:
        return [_process_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        # map preserves submission order, so output is scheduling independent
        return list(pool.map(_process_one, jobs))


# --- settings ---------------------------------------------------------------

_TOGGLES = ("translit", "nfkc", "case_fold", "clitic_split")


def _settings(args) -> dict:
    settings = {}
    if args.config:
        settings.update(parse_config_text(Path(args.config).read_text(encoding="utf-8"),
                                          source=args.config))
    for key in _TOGGLES + ("lossy",):
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    for key in ("translit_delims", "emoji_data", "form"):
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if getattr(args, "jobs", None) is not None:
        settings["jobs"] = args.jobs
    if getattr(args, "format", None) is not None:
        settings["format"] = args.format
    return settings


def _common(args):
    settings = _settings(args)
    config = pipeline_config(settings)
    catalog = _load_catalog(settings.get("emoji_data"))
    return settings, config, catalog


# --- subcommands ------------------------------------------------------------

def cmd_preprocess(args) -> int:
    settings, config, catalog = _common(args)
    fmt = settings.get("format", "txt")
    if fmt not in FORMATS:
        raise ValueError(f"--format must be one of {', '.join(FORMATS)} for preprocess")
    inputs = collect_inputs(args.inputs)
    jobs = [(doc_id, str(p), settings.get("lossy", False), config, settings.get("emoji_data"), fmt)
            for doc_id, p in inputs]
    results = _run_jobs(jobs, settings.get("jobs", 1))
    prov = _provenance("preprocess", config, catalog)
    if args.output and Path(args.output).is_dir():
        for doc, rendered, _ in results:
            _emit(rendered, str(Path(args.output) / f"{doc.doc_id}.{fmt}"), prov)
    else:
        _emit(b"".join(r for _, r, _ in results), args.output, prov)
    _summarize_docs([d for d, _, _ in results], [x for _, _, x in results])
    return EXIT_OK


def _summarize_docs(docs: list[PreprocessedDocument], lossy_flags) -> None:
    for doc, replaced in zip(docs, lossy_flags):
        s = doc.stats
        extra = f", {doc.converted_line_endings} line endings converted" if doc.converted_line_endings else ""
        extra += ", invalid bytes replaced" if replaced else ""
        _note(f"{doc.doc_id}: {s.n_tokens} tokens, {s.n_types} types, {s.n_emojis} emojis, "
              f"{s.n_homoglyph_scalars} homoglyphs, {s.n_nfkc_normalized_tokens} NFKC-normalized{extra}",
              ok=not replaced)


def tokens_from_preprocessed(text: str, catalog: EmojiCatalog,
                             delims: Delimiters = DEFAULT_DELIMITERS) -> list[Token]:
    """Re-read txt output: whitespace-separated tokens, kinds inferred from form."""
    labels = build_label_index(catalog, delims)
    offs = utf8_offsets(text)
    tokens = []
    pos = 0
    for chunk in text.split():
        start = text.index(chunk, pos)
        pos = start + len(chunk)
        if chunk in catalog:
            kind = TokenKind.EMOJI
        elif chunk in labels:
            kind = TokenKind.TRANSLITERATED
        elif all(uc.category(c).startswith("P") for c in chunk):
            kind = TokenKind.PUNCTUATION
        elif any(uc.category(c)[0] in "LN" for c in chunk):
            kind = TokenKind.WORD
        else:
            kind = TokenKind.OTHER
        tokens.append(Token(chunk, kind, (offs[start], offs[pos])))
    return tokens


def cmd_wordlist(args) -> int:
    settings, config, catalog = _common(args)
    inputs = collect_inputs(args.inputs)
    if args.preprocessed:
        docs = []
        for doc_id, p in inputs:
            decoded = _read(p, settings.get("lossy", False))
            toks = tokens_from_preprocessed(decoded.text, catalog, config.delimiters)
            docs.append(PreprocessedDocument(doc_id, decoded.text, toks,
                                             stats=compute_stats(toks, [], config)))
    else:
        jobs = [(doc_id, str(p), settings.get("lossy", False), config, settings.get("emoji_data"), None)
                for doc_id, p in inputs]
        docs = [d for d, _, _ in _run_jobs(jobs, settings.get("jobs", 1))]
    wl = wordlist(docs, config.counted_kinds, config.case_fold)
    _emit(wl.to_csv(), args.output, _provenance("wordlist", config, catalog))
    _note(f"{wl.n_tokens} tokens, {wl.n_types} types")
    return EXIT_OK


def cmd_testgen(args) -> int:
    settings, config, catalog = _common(args)
    prov = _provenance(f"testgen {args.kind}", config, catalog)
    if args.kind == "emoji":
        text = gen_emoji_testfile(catalog)
        _emit(text, args.output, prov)
        _note(f"{text.count(chr(10))} emoji lines")
        return EXIT_OK
    exclude = catalog if args.exclude_emoji else None
    if args.explain_delta:
        summary, rows = explain_delta(catalog)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["codepoint", "name", "category", "script", "block", "nfkc", "reason"])
        for r in rows:
            w.writerow([f"U+{r.cp:04X}", r.name, r.category, r.script, r.block,
                        " ".join(f"U+{ord(c):04X}" for c in r.nfkc), r.reason])
        _emit(buf.getvalue(), args.output, prov)
        for variant, counts in summary.items():
            _note(f"{variant}: " + ", ".join(f"{k} {v}" for k, v in counts.items()), ok=False)
        return EXIT_OK
    text = gen_homoglyph_testfile(args.normalized, exclude, config.form)
    _emit(text, args.output, prov)
    st = testfile_stats(text)
    _note(f"{st.lines} lines, {st.tokens} character tokens, {st.types} types")
    return EXIT_OK


def cmd_inventory(args) -> int:
    settings, config, catalog = _common(args)
    docs = []
    for doc_id, p in collect_inputs(args.inputs):
        decoded = _read(p, settings.get("lossy", False))
        docs.append((doc_id, decoded.text))
    inv = inventory(docs, catalog, config)
    prov = _provenance("inventory", config, catalog)
    _emit(inv.table_csv(), args.output, prov)
    if args.save:
        Path(args.save).write_text(inv.to_json(), encoding="utf-8")
    _note(f"{len(docs)} documents, {inv.n_tokens} tokens, {inv.n_types} types, "
          f"{inv.n_emojis} emojis, {inv.n_homoglyphs} homoglyphs")
    return EXIT_OK


def _testfile_inventory(kind: str, catalog: EmojiCatalog, config: PipelineConfig):
    if kind == "emoji":
        return inventory([("emoji-test", gen_emoji_testfile(catalog))], catalog, config), ()
    st = testfile_stats(gen_homoglyph_testfile(kind == "homoglyph-nfkc"))
    return reference_inventory(st.types, st.tokens), (HOMOGLYPH_LABEL,)


def cmd_audit(args) -> int:
    settings, config, catalog = _common(args)
    if args.inventory:
        inv = SourceInventory.from_json(Path(args.inventory).read_text(encoding="utf-8"))
        ignore = ()
    else:
        inv, ignore = _testfile_inventory(args.testfile, catalog, config)
    ingest = parse_ingest_map(args.ingest_map) if args.ingest_map else None
    ext = read_wordlist_csv(Path(args.wordlist).read_text(encoding="utf-8"), ingest,
                            source=args.wordlist)
    ignore = tuple(ignore) + tuple(args.ignore_type or ())
    report = audit(inv, ext, catalog, ignore_types=ignore)
    _emit(report.to_csv(), args.output, _provenance("audit", config, catalog))
    _note(report.summary(), ok=report.clean)
    return EXIT_OK


def cmd_inspect(args) -> int:
    settings, config, catalog = _common(args)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["Glyph", "Codepoint", "Block", "Script", "Character name", "Category", "NFKC"])
    for c in args.text:
        rec = uc.char_record(c)
        nfkc = uc.normalize(c, "NFKC")
        w.writerow([c, rec.label, rec.block, rec.script, rec.name, rec.general_category,
                    "" if nfkc == c else " ".join(f"U+{ord(x):04X}" for x in nfkc)])
    w.writerow([])
    w.writerow(["Emoji", "Codepoints", "Start", "End", "CLDR name", "Qualification", "Label"])
    for (s, e), entry in segment_emojis(args.text, catalog):
        w.writerow([entry.codepoints, entry.hex(), s, e, entry.cldr_name, entry.qualification,
                    transliterate(entry, config.delimiters)])
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_catalog(args) -> int:
    settings, config, catalog = _common(args)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if args.query == "stats":
        w.writerow(["statistic", "value"])
        for k, v in catalog.stats().items():
            w.writerow([k, v])
        w.writerow(["nfkc_sensitive", len(nfkc_sensitive_entries(catalog))])
    else:
        w.writerow(["codepoints", "qualification", "nfkc", "label"])
        for e in nfkc_sensitive_entries(catalog):
            w.writerow([e.hex(), e.qualification,
                        " ".join(f"{ord(c):04X}" for c in uc.normalize(e.codepoints, "NFKC")),
                        transliterate(e, config.delimiters)])
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("pipeline options")
    g.add_argument("--config", metavar="FILE", help="key = value settings file; flags override it")
    g.add_argument("--emoji-data", metavar="PATH", help="emoji-test.txt to use instead of the bundled one")
    for name, helptext in (("translit", "replace emojis by {caret^joined} labels"),
                           ("nfkc", "normalize homoglyph tokens"),
                           ("case-fold", "case-fold word types in wordlists"),
                           ("clitic-split", "split short apostrophe clitics off words")):
        g.add_argument(f"--{name}", dest=name.replace("-", "_"), default=None,
                       action=argparse.BooleanOptionalAction, help=f"{helptext} (default on)")
    g.add_argument("--lossy", action="store_true", default=None,
                   help="replace invalid UTF-8 with U+FFFD instead of failing")
    g.add_argument("--translit-delims", metavar="OCJ",
                   help="three label delimiter characters: open, close, joiner (default '{}^')")
    g.add_argument("--form", choices=[f.value for f in uc.NormalizationForm], default=None,
                   help="normalization form (default NFKC)")

    ap = _Parser(prog="corpus-fidelity", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version",
                    version=f"%(prog)s {__version__} (Unicode {uc.UNICODE_VERSION})")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("preprocess", parents=[common], help="preprocess files into a corpus")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", help="output file, or directory for one file per input")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--jobs", type=int, default=None, metavar="N")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("wordlist", parents=[common], help="type,frequency CSV for input files")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output")
    p.add_argument("--preprocessed", action="store_true",
                   help="inputs are txt output of 'preprocess'; do not run the pipeline again")
    p.add_argument("--jobs", type=int, default=None, metavar="N")
    p.set_defaults(func=cmd_wordlist)

    p = sub.add_parser("testgen", parents=[common], help="generate emoji or homoglyph test files")
    p.add_argument("kind", choices=("emoji", "homoglyph"))
    p.add_argument("--normalized", action="store_true", help="homoglyph file after normalization")
    p.add_argument("--exclude-emoji", action="store_true",
                   help="leave out scalars that are emojis on their own")
    p.add_argument("--explain-delta", action="store_true",
                   help="itemize the homoglyph set against the reference counts")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_testgen)

    p = sub.add_parser("inventory", parents=[common], help="source-data inventory table")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output")
    p.add_argument("--save", metavar="JSON", help="also save the full inventory for 'audit'")
    p.set_defaults(func=cmd_inventory)

    p = sub.add_parser("audit", parents=[common], help="audit an external wordlist")
    ref = p.add_mutually_exclusive_group(required=True)
    ref.add_argument("--inventory", metavar="JSON", help="inventory saved by 'inventory --save'")
    ref.add_argument("--testfile", choices=("emoji", "homoglyph", "homoglyph-nfkc"),
                     help="audit against a generated test file instead")
    p.add_argument("--wordlist", required=True, metavar="CSV")
    p.add_argument("--ingest-map", metavar="TYPE:FREQ", help="column names or indices to read")
    p.add_argument("--ignore-type", action="append", metavar="TYPE",
                   help="external type to leave out (repeatable)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("inspect", parents=[common], help="per-scalar dump and emoji segmentation")
    p.add_argument("text")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("catalog", parents=[common], help="emoji catalog queries")
    p.add_argument("query", choices=("stats", "nfkc-sensitive"))
    p.set_defaults(func=cmd_catalog)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", None) is not None and args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except INTERNAL_ERRORS as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:
        # --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except Exception as exc:  # noqa: BLE001 - anything unexpected is our bug
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
