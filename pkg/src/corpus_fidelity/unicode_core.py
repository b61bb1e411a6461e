"""Codepoint-level Unicode services backed by bundled UCD 15.1 tables.

The tables are generated by ``tools/gen_ucd_tables.py`` and loaded lazily on
first use.  Everything here is a pure function of those immutable tables.
"""

from __future__ import annotations

import enum
import gzip
import json
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

UNICODE_VERSION = "15.1.0"
MAX_CODEPOINT = 0x10FFFF

_NON_PRINTABLE = frozenset({"Cc", "Cf", "Cs", "Co", "Cn", "Zl", "Zp"})

# Hangul syllable algorithm constants.
_S_BASE, _L_BASE, _V_BASE, _T_BASE = 0xAC00, 0x1100, 0x1161, 0x11A7
_L_COUNT, _V_COUNT, _T_COUNT = 19, 21, 28
_N_COUNT = _V_COUNT * _T_COUNT
_S_COUNT = _L_COUNT * _N_COUNT
_JAMO_L = "G GG N D DD R M B BB S SS  J JJ C K T P H".split(" ")
_JAMO_V = "A AE YA YAE EO E YEO YE O WA WAE OE YO U WEO WE WI YU EU YI I".split()
_JAMO_T = [""] + "G GG GS N NJ NH D L LG LM LB LS LT LP LH M B BS S SS NG J C K T P H".split()


class NormalizationForm(str, enum.Enum):
    NFD = "NFD"
    NFC = "NFC"
    NFKD = "NFKD"
    NFKC = "NFKC"

    @property
    def compat(self) -> bool:
        return self in (NormalizationForm.NFKD, NormalizationForm.NFKC)

    @property
    def composed(self) -> bool:
        return self in (NormalizationForm.NFC, NormalizationForm.NFKC)


@dataclass(frozen=True)
class CharRecord:
    cp: int
    general_category: str
    script: str
    block: str
    name: str

    @property
    def label(self) -> str:
        """U+XXXX notation."""
        return f"U+{self.cp:04X}"


class _RangeTable:
    """Sorted, non-overlapping [start, end] -> value lookup."""

    __slots__ = ("starts", "ends", "values", "default")

    def __init__(self, rows, default=None):
        self.starts = [r[0] for r in rows]
        self.ends = [r[1] for r in rows]
        self.values = [r[2] for r in rows]
        self.default = default

    def get(self, cp: int):
        i = bisect_right(self.starts, cp) - 1
        if i >= 0 and cp <= self.ends[i]:
            return self.values[i]
        return self.default

    def codepoints(self):
        for start, end, value in zip(self.starts, self.ends, self.values):
            if value:
                yield from range(start, end + 1)


class _UCD:
    def __init__(self, raw: dict):
        self.version = raw["version"]
        self.categories = _RangeTable(raw["categories"], "Cn")
        self.scripts = _RangeTable(raw["scripts"], "Unknown")
        self.blocks = _RangeTable(raw["blocks"], "No_Block")
        self.names = {int(k, 16): v for k, v in raw["names"].items()}
        self.named_ranges = _RangeTable(raw["named_ranges"])
        self.ccc = {int(k, 16): v for k, v in raw["ccc"].items()}
        props = raw["properties"]
        self.props = {k: _RangeTable(v, False) for k, v in props.items()}
        self.white_space = frozenset(chr(c) for c in self.props["White_Space"].codepoints())

        decomp = {int(k, 16): (tag, cps) for k, (tag, cps) in raw["decompositions"].items()}
        exclusions = self.props["Full_Composition_Exclusion"]
        self.canonical = {}
        self.compat = {}
        for cp in decomp:
            self.canonical_expand(cp, decomp)
            self.compat_expand(cp, decomp)
        self.compose_pairs = {}
        for cp, (tag, cps) in decomp.items():
            if not tag and len(cps) == 2 and not exclusions.get(cp):
                self.compose_pairs[(chr(cps[0]), chr(cps[1]))] = chr(cp)
        self.quick_check = {
            form: self.props[f"{form.value}_QC"] for form in NormalizationForm
        }

    def canonical_expand(self, cp, decomp) -> str:
        if cp in self.canonical:
            return self.canonical[cp]
        entry = decomp.get(cp)
        if entry is None or entry[0]:
            return chr(cp)
        out = "".join(self.canonical_expand(c, decomp) for c in entry[1])
        self.canonical[cp] = out
        return out

    def compat_expand(self, cp, decomp) -> str:
        if cp in self.compat:
            return self.compat[cp]
        entry = decomp.get(cp)
        if entry is None:
            return chr(cp)
        out = "".join(self.compat_expand(c, decomp) for c in entry[1])
        self.compat[cp] = out
        return out


@lru_cache(maxsize=1)
def _ucd() -> _UCD:
    blob = resources.files("corpus_fidelity").joinpath(f"data/ucd-{UNICODE_VERSION}.json.gz")
    with blob.open("rb") as fh:
        raw = json.loads(gzip.decompress(fh.read()))
    if raw["version"] != UNICODE_VERSION:
        raise RuntimeError(f"bundled UCD tables are {raw['version']}, expected {UNICODE_VERSION}")
    return _UCD(raw)


def _check_scalar(cp: int) -> None:
    if not 0 <= cp <= MAX_CODEPOINT or 0xD800 <= cp <= 0xDFFF:
        raise ValueError(f"not a Unicode scalar value: {cp:#x}")


def _as_cp(c) -> int:
    return c if isinstance(c, int) else ord(c)


def category(c) -> str:
    return _ucd().categories.get(_as_cp(c))


def script(c) -> str:
    return _ucd().scripts.get(_as_cp(c))


def block(c) -> str:
    return _ucd().blocks.get(_as_cp(c))


def name(c) -> str:
    """Character name, or '' for code points without one (controls, private use)."""
    cp = _as_cp(c)
    ucd = _ucd()
    n = ucd.names.get(cp)
    if n is not None:
        return n
    prefix = ucd.named_ranges.get(cp)
    if prefix:
        return f"{prefix}{cp:04X}"
    if _S_BASE <= cp < _S_BASE + _S_COUNT:
        s = cp - _S_BASE
        return ("HANGUL SYLLABLE " + _JAMO_L[s // _N_COUNT]
                + _JAMO_V[(s % _N_COUNT) // _T_COUNT] + _JAMO_T[s % _T_COUNT])
    return ""


def combining_class(c) -> int:
    return _ucd().ccc.get(_as_cp(c), 0)


def has_property(c, prop: str) -> bool:
    """Binary property lookup for the properties kept in the bundled tables."""
    return bool(_ucd().props[prop].get(_as_cp(c)))


def is_whitespace(c: str) -> bool:
    return c in _ucd().white_space


def char_record(cp) -> CharRecord:
    cp = _as_cp(cp)
    _check_scalar(cp)
    return CharRecord(cp, category(cp), script(cp), block(cp), name(cp))


def is_printable(cp) -> bool:
    """Printability rule: no controls, format, surrogate, private-use,
    unassigned or line/paragraph separators, and U+0020 is the only space."""
    cp = _as_cp(cp)
    gc = category(cp)
    if gc in _NON_PRINTABLE:
        return False
    return gc != "Zs" or cp == 0x20


# --- normalization ---------------------------------------------------------

def _decompose(text: str, compat: bool) -> str:
    ucd = _ucd()
    table = ucd.compat if compat else ucd.canonical
    out = []
    for ch in text:
        cp = ord(ch)
        if _S_BASE <= cp < _S_BASE + _S_COUNT:
            s = cp - _S_BASE
            out.append(chr(_L_BASE + s // _N_COUNT))
            out.append(chr(_V_BASE + (s % _N_COUNT) // _T_COUNT))
            if s % _T_COUNT:
                out.append(chr(_T_BASE + s % _T_COUNT))
        else:
            out.append(table.get(cp, ch))
    chars = list("".join(out))
    _reorder(chars, ucd.ccc)
    return "".join(chars)


def _reorder(chars: list, ccc: dict) -> None:
    """Canonical ordering: stable-sort each run of non-starters by class."""
    i, n = 0, len(chars)
    while i < n:
        if ccc.get(ord(chars[i]), 0) == 0:
            i += 1
            continue
        j = i
        while j < n and ccc.get(ord(chars[j]), 0) != 0:
            j += 1
        if j - i > 1:
            chars[i:j] = sorted(chars[i:j], key=lambda c: ccc.get(ord(c), 0))
        i = j


def _compose_pair(a: str, b: str, pairs: dict):
    la, lb = ord(a), ord(b)
    if _L_BASE <= la < _L_BASE + _L_COUNT and _V_BASE <= lb < _V_BASE + _V_COUNT:
        return chr(_S_BASE + ((la - _L_BASE) * _V_COUNT + (lb - _V_BASE)) * _T_COUNT)
    if (_S_BASE <= la < _S_BASE + _S_COUNT and (la - _S_BASE) % _T_COUNT == 0
            and _T_BASE < lb < _T_BASE + _T_COUNT):
        return chr(la + lb - _T_BASE)
    return pairs.get((a, b))


def _compose(text: str) -> str:
    if not text:
        return text
    ucd = _ucd()
    ccc, pairs = ucd.ccc, ucd.compose_pairs
    chars = list(text)
    starter_pos = 0
    starter = chars[0]
    last_class = ccc.get(ord(starter), 0)
    if last_class:
        # leading non-starter: nothing may compose with it
        last_class = 256
    comp_pos = 1
    for ch in chars[1:]:
        ch_class = ccc.get(ord(ch), 0)
        composite = _compose_pair(starter, ch, pairs)
        if composite is not None and (last_class < ch_class or last_class == 0):
            chars[starter_pos] = composite
            starter = composite
            continue
        if ch_class == 0:
            starter_pos = comp_pos
            starter = ch
        last_class = ch_class
        chars[comp_pos] = ch
        comp_pos += 1
    return "".join(chars[:comp_pos])


def _quick_check(text: str, form: NormalizationForm) -> str:
    """Return 'Y', 'N' or 'M' per the normalization quick-check algorithm."""
    ucd = _ucd()
    qc = ucd.quick_check[form]
    ccc = ucd.ccc
    last = 0
    result = "Y"
    for ch in text:
        cp = ord(ch)
        cls = ccc.get(cp, 0)
        if last > cls and cls != 0:
            return "N"
        flag = qc.get(cp)
        if flag == "N":
            return "N"
        if flag == "M":
            result = "M"
        last = cls
    return result


def normalize(text: str, form) -> str:
    form = NormalizationForm(form)
    if _quick_check(text, form) == "Y":
        return text
    out = _decompose(text, form.compat)
    return _compose(out) if form.composed else out


def is_normalized(text: str, form) -> bool:
    form = NormalizationForm(form)
    verdict = _quick_check(text, form)
    if verdict != "M":
        return verdict == "Y"
    return normalize_slow(text, form) == text


def normalize_slow(text: str, form) -> str:
    """Full decomposition/composition without the quick-check shortcut."""
    form = NormalizationForm(form)
    out = _decompose(text, form.compat)
    return _compose(out) if form.composed else out


# --- ingestion ---------------------------------------------------------------

@dataclass(frozen=True)
class DecodedText:
    text: str
    converted_line_endings: int
    replaced_bytes: bool = False


class DecodeError(ValueError):
    """Input bytes are not valid UTF-8."""


def decode_utf8(data: bytes, lossy: bool = False) -> DecodedText:
    """Strict UTF-8 decode with CR+LF / lone CR folded to LF.

    ``lossy`` substitutes U+FFFD for invalid sequences instead of raising.
    A leading BOM is kept; it is text like any other scalar.
    """
    try:
        text = data.decode("utf-8")
        replaced = False
    except UnicodeDecodeError as exc:
        if not lossy:
            raise DecodeError(
                f"invalid UTF-8 at byte {exc.start}: {data[exc.start:exc.end]!r}"
            ) from None
        text = data.decode("utf-8", errors="replace")
        replaced = True
    crlf = text.count("\r\n")
    lone_cr = text.count("\r") - crlf
    if crlf or lone_cr:
        text = text.replace("\r\n", "\n").replace("\r", "\n")
    return DecodedText(text, crlf + lone_cr, replaced)
