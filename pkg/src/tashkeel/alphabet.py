"""Arabic script tables: the letter and diacritic inventories, character
classification, and the rules for which diacritics may share a letter.

Everything else in the toolkit builds on the two closed sets below: the 36
letter variants (the two contiguous runs of the Arabic Unicode block around
the tatweel/diacritic gap) and the 8 basic diacritics.
"""

from __future__ import annotations

import enum
import unicodedata

# U+0621..U+063A and U+0641..U+064A, in codepoint order.
LETTER_TABLE = "ءآأؤإئابةتثجحخدذرزسشصضطظعغفقكلمنهوىي"
ARABIC_LETTERS = frozenset(LETTER_TABLE)

FATHATAN = "ً"
DAMMATAN = "ٌ"
KASRATAN = "ٍ"
FATHA = "َ"
DAMMA = "ُ"
KASRA = "ِ"
SHADDA = "ّ"
SUKUN = "ْ"

# Presentation order for the 8 marks; also the tie-break order used wherever a
# deterministic ordering over diacritics is needed.
MARK_ORDER = (FATHA, DAMMA, KASRA, FATHATAN, DAMMATAN, KASRATAN, SUKUN, SHADDA)
MARKS = frozenset(MARK_ORDER)

MARK_NAMES = {
    FATHA: "Fatha",
    DAMMA: "Damma",
    KASRA: "Kasra",
    FATHATAN: "Fathatan",
    DAMMATAN: "Dammatan",
    KASRATAN: "Kasratan",
    SUKUN: "Sukun",
    SHADDA: "Shadda",
}

ALEF = "ا"
KASHIDA = "ـ"

# Marks that may pair with Shadda on one letter. Sukun never pairs, and no
# mark repeats, so these six pairs plus the lone marks are the whole space of
# legal non-empty combinations.
SHADDA_PARTNERS = (FATHA, DAMMA, KASRA, FATHATAN, DAMMATAN, KASRATAN)

SHADDA_COMBOS = tuple(SHADDA + v for v in SHADDA_PARTNERS)

# All 15 legal combinations in canonical order: bare letter first, then the
# single marks, then the Shadda pairs (Shadda always serialized first).
COMBO_ORDER = ("",) + MARK_ORDER + SHADDA_COMBOS
LEGAL_COMBOS = frozenset(COMBO_ORDER)

_NEWLINES = frozenset("\n\r")
_ASCII_LETTERS = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")


class CharClass(enum.Enum):
    ARABIC_LETTER = "arabic_letter"
    DIACRITIC_MARK = "diacritic_mark"
    DIGIT = "digit"
    LATIN_LETTER = "latin_letter"
    KASHIDA = "kashida"
    WHITESPACE = "whitespace"
    NEWLINE = "newline"
    OTHER = "other"


def classify_char(ch: str) -> CharClass:
    """Classify one Unicode scalar. Total and deterministic: every scalar maps
    to exactly one class."""
    if ch in ARABIC_LETTERS:
        return CharClass.ARABIC_LETTER
    if ch in MARKS:
        return CharClass.DIACRITIC_MARK
    if ch == KASHIDA:
        return CharClass.KASHIDA
    if ch in _NEWLINES:
        return CharClass.NEWLINE
    if ch.isspace():
        return CharClass.WHITESPACE
    if ch in _ASCII_LETTERS:
        return CharClass.LATIN_LETTER
    if unicodedata.category(ch) == "Nd":
        return CharClass.DIGIT
    return CharClass.OTHER


def extend_combo(combo: str, mark: str) -> str | None:
    """Attach one more mark to a combo, or return None when the result would
    be illegal (third mark, repeated mark, or a pair without Shadda).

    The returned combo is canonical: Shadda precedes its vowel regardless of
    the order the marks arrived in.
    """
    if combo == "":
        return mark
    if len(combo) == 1:
        if combo == SHADDA and mark in SHADDA_PARTNERS:
            return SHADDA + mark
        if combo in SHADDA_PARTNERS and mark == SHADDA:
            return SHADDA + combo
    return None


def canonical_combo(marks) -> str:
    """Build the canonical combo string from an iterable of mark scalars.

    Raises ValueError on anything that is not a legal 0-, 1- or 2-mark
    combination.
    """
    combo = ""
    for mark in marks:
        if mark not in MARKS:
            raise ValueError(f"not a diacritic mark: {mark!r}")
        nxt = extend_combo(combo, mark)
        if nxt is None:
            raise ValueError(f"illegal mark sequence: {''.join(marks)!r}")
        combo = nxt
    return combo
