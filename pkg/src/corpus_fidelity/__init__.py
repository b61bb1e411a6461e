"""Emoji- and homoglyph-aware corpus preprocessing and fidelity auditing."""

from .unicode_core import UNICODE_VERSION

__version__ = "0.1.0"
__all__ = ["UNICODE_VERSION", "__version__"]
