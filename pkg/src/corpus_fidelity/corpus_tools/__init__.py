"""Wordlists, test-corpus generators, output writers and the fidelity audit."""

from .audit import (AuditReport, SourceInventory, audit, inventory, is_emoji_bearing,
                    reference_inventory, split_zwj_type)
from .testfiles import (explain_delta, gen_emoji_testfile, gen_homoglyph_testfile,
                        homoglyph_scalars, testfile_stats)
from .wordlist import Wordlist, WordlistFormatError, read_wordlist_csv, wordlist
from .writers import FORMATS, write_output

__all__ = [
    "AuditReport", "FORMATS", "SourceInventory", "Wordlist", "WordlistFormatError",
    "audit", "explain_delta", "gen_emoji_testfile", "gen_homoglyph_testfile",
    "homoglyph_scalars", "inventory", "is_emoji_bearing", "read_wordlist_csv",
    "reference_inventory", "split_zwj_type", "testfile_stats", "wordlist", "write_output",
]
