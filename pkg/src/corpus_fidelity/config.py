"""``key = value`` settings files and their mapping onto a PipelineConfig."""

from __future__ import annotations

from .normalizer import PipelineConfig
from .tokenizer import TokenDefinition
from .transliterator import Delimiters
from .unicode_core import NormalizationForm

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}

BOOL_KEYS = {"translit", "nfkc", "case_fold", "clitic_split", "lossy", "attach_marks",
             "check_delimiters"}
STR_KEYS = {"translit_delims", "form", "emoji_data", "format", "user_appended",
            "letter_categories", "number_categories"}
INT_KEYS = {"jobs"}
KNOWN_KEYS = BOOL_KEYS | STR_KEYS | INT_KEYS


class ConfigError(ValueError):
    pass


def parse_bool(value: str, where: str = "") -> bool:
    v = value.strip().lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ConfigError(f"{where}expected a boolean, got {value!r}")


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment line."""
    settings: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip().replace("-", "_"), value.strip()
        where = f"{source}:{lineno}: "
        if not sep or not key:
            raise ConfigError(f"{where}expected 'key = value', got {raw!r}")
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{where}unknown setting {key!r}")
        if key in BOOL_KEYS:
            settings[key] = parse_bool(value, where)
        elif key in INT_KEYS:
            if not value.isdigit() or int(value) < 1:
                raise ConfigError(f"{where}{key} must be a positive integer")
            settings[key] = int(value)
        else:
            settings[key] = value
    return settings


def _category_set(value: str) -> frozenset:
    cats = frozenset(v.strip() for v in value.split(",") if v.strip())
    bad = [c for c in cats if len(c) != 2 or not c[0].isupper()]
    if bad:
        raise ConfigError(f"not general category codes: {sorted(bad)}")
    return cats


def pipeline_config(settings: dict) -> PipelineConfig:
    """Build a PipelineConfig from parsed settings; absent keys keep defaults."""
    base = TokenDefinition()
    try:
        delims = Delimiters.parse(settings["translit_delims"]) if "translit_delims" in settings else Delimiters()
        # labels must stay single word tokens, so the delimiters are word characters
        td = TokenDefinition(
            letter_categories=(_category_set(settings["letter_categories"])
                               if "letter_categories" in settings else base.letter_categories),
            number_categories=(_category_set(settings["number_categories"])
                               if "number_categories" in settings else base.number_categories),
            user_appended=(frozenset(settings["user_appended"])
                           if "user_appended" in settings else delims.chars()),
            clitic_split=settings.get("clitic_split", base.clitic_split),
            attach_marks=settings.get("attach_marks", base.attach_marks),
        )
        form = NormalizationForm(settings.get("form", "NFKC").upper())
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    default = PipelineConfig()
    return PipelineConfig(
        token_definition=td,
        translit=settings.get("translit", default.translit),
        nfkc=settings.get("nfkc", default.nfkc),
        form=form,
        case_fold=settings.get("case_fold", default.case_fold),
        delimiters=delims,
        check_delimiters=settings.get("check_delimiters", default.check_delimiters),
    )
