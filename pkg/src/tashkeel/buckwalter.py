"""Buckwalter romanization for the supported character set.

The mapping covers the 36 letter variants, the 8 diacritics, the space, and
the ASCII punctuation that is not itself claimed as a transliteration symbol
(that subset passes through unchanged in both directions). Anything outside
this set raises instead of passing silently, which keeps the two directions
exact inverses of each other.
"""

from __future__ import annotations

import string

from .alphabet import (
    DAMMA,
    DAMMATAN,
    FATHA,
    FATHATAN,
    KASRA,
    KASRATAN,
    SHADDA,
    SUKUN,
)
from .errors import TashkeelError

_LETTER_TO_ASCII = {
    "ء": "'",  # hamza
    "آ": "|",  # alef madda
    "أ": ">",  # alef hamza above
    "ؤ": "&",  # waw hamza
    "إ": "<",  # alef hamza below
    "ئ": "}",  # yeh hamza
    "ا": "A",
    "ب": "b",
    "ة": "p",  # teh marbuta
    "ت": "t",
    "ث": "v",
    "ج": "j",
    "ح": "H",
    "خ": "x",
    "د": "d",
    "ذ": "*",
    "ر": "r",
    "ز": "z",
    "س": "s",
    "ش": "$",
    "ص": "S",
    "ض": "D",
    "ط": "T",
    "ظ": "Z",
    "ع": "E",
    "غ": "g",
    "ف": "f",
    "ق": "q",
    "ك": "k",
    "ل": "l",
    "م": "m",
    "ن": "n",
    "ه": "h",
    "و": "w",
    "ى": "Y",  # alef maksura
    "ي": "y",
}

_MARK_TO_ASCII = {
    FATHATAN: "F",
    DAMMATAN: "N",
    KASRATAN: "K",
    FATHA: "a",
    DAMMA: "u",
    KASRA: "i",
    SHADDA: "~",
    SUKUN: "o",
}

_AR2BW = {**_LETTER_TO_ASCII, **_MARK_TO_ASCII, " ": " "}
_BW2AR = {v: k for k, v in _AR2BW.items()}

# Punctuation reserved by the transliteration itself (or by its common
# extensions: _ tatweel, ` dagger alif, { alef wasla) cannot pass through.
_RESERVED = set(_BW2AR) | {"_", "`", "{"}
for _ch in string.punctuation:
    if _ch not in _RESERVED:
        _AR2BW[_ch] = _ch
        _BW2AR[_ch] = _ch


class TransliterationError(TashkeelError):
    def __init__(self, char: str, position: int, direction: str):
        self.char = char
        self.position = position
        super().__init__(
            f"cannot transliterate {direction} U+{ord(char):04X} ({char!r}) "
            f"at position {position}"
        )


def to_buckwalter(text: str) -> str:
    """Transliterate Arabic text to its ASCII form."""
    out = []
    for i, ch in enumerate(text):
        try:
            out.append(_AR2BW[ch])
        except KeyError:
            raise TransliterationError(ch, i, "from Arabic") from None
    return "".join(out)


def from_buckwalter(text: str) -> str:
    """Transliterate ASCII Buckwalter text back to Arabic."""
    out = []
    for i, ch in enumerate(text):
        try:
            out.append(_BW2AR[ch])
        except KeyError:
            raise TransliterationError(ch, i, "from Buckwalter") from None
    return "".join(out)
