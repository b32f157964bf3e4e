"""Parsing raw text into an aligned letter/diacritic structure and back.

A parsed line is a sequence of ``DiacritizedChar`` values: one entry per
non-mark scalar, with every diacritic mark folded into the combo of the
Arabic letter it sits on. Marks that cannot be attached legally are reported
as anomalies and dropped from the structure, so the structure itself always
satisfies the combination rules.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

from .alphabet import (
    ARABIC_LETTERS,
    MARK_NAMES,
    MARKS,
    CharClass,
    classify_char,
    extend_combo,
)
from .errors import TashkeelError


class AnomalyKind(enum.Enum):
    ORPHAN_MARK = "orphan_mark"
    OVERLONG_COMBO = "overlong_combo"
    INVALID_COMBO = "invalid_combo"
    DETACHED_ENDING_MARK = "detached_ending_mark"


class Anomaly(NamedTuple):
    kind: AnomalyKind
    position: int  # index of the offending mark in the raw input
    detail: str
    letter_index: int | None = None  # parsed-char index of the letter being
    # marked, for anomalies raised while attaching to a letter


class DiacritizedChar(NamedTuple):
    base: str
    marks: str = ""


DiacritizedText = list[DiacritizedChar]


class BaseMismatchError(TashkeelError):
    """Reference and hypothesis disagree on the base character sequence."""

    def __init__(self, position: int, reference: str, hypothesis: str):
        self.position = position
        self.reference = reference
        self.hypothesis = hypothesis
        super().__init__(
            f"base text mismatch at position {position}: "
            f"reference {reference!r} vs hypothesis {hypothesis!r}"
        )


def parse(text: str) -> tuple[DiacritizedText, list[Anomaly]]:
    """Parse a raw line into diacritized characters plus anomalies.

    Attachment binds a mark to the immediately preceding Arabic letter; any
    intervening non-letter scalar breaks the attachment. A mark separated
    from a preceding letter only by (non-newline) whitespace is reported as a
    detached ending mark, anything else unattachable as an orphan. Marks that
    would build an illegal combination on their letter are reported as
    invalid/overlong and dropped.
    """
    chars: DiacritizedText = []
    anomalies: list[Anomaly] = []
    live_letter: int | None = None  # index into chars of the letter accepting marks
    gapped = False  # whitespace seen since live_letter

    for pos, ch in enumerate(text):
        cls = classify_char(ch)
        if cls is CharClass.DIACRITIC_MARK:
            name = MARK_NAMES[ch]
            if live_letter is not None and not gapped:
                current = chars[live_letter].marks
                extended = extend_combo(current, ch)
                if extended is None:
                    kind = (
                        AnomalyKind.OVERLONG_COMBO
                        if len(current) >= 2
                        else AnomalyKind.INVALID_COMBO
                    )
                    anomalies.append(
                        Anomaly(kind, pos, f"{name} cannot join combo", live_letter)
                    )
                else:
                    chars[live_letter] = chars[live_letter]._replace(marks=extended)
            elif live_letter is not None and gapped:
                anomalies.append(
                    Anomaly(
                        AnomalyKind.DETACHED_ENDING_MARK,
                        pos,
                        f"{name} separated from its letter by whitespace",
                    )
                )
            else:
                anomalies.append(
                    Anomaly(
                        AnomalyKind.ORPHAN_MARK,
                        pos,
                        f"{name} not preceded by an Arabic letter",
                    )
                )
            continue

        chars.append(DiacritizedChar(ch))
        if cls is CharClass.ARABIC_LETTER:
            live_letter = len(chars) - 1
            gapped = False
        elif cls is CharClass.WHITESPACE and live_letter is not None:
            gapped = True
        else:
            live_letter = None
            gapped = False

    return chars, anomalies


def serialize(chars: DiacritizedText) -> str:
    """Render parsed characters back to raw text in canonical mark order."""
    return "".join(c.base + c.marks for c in chars)


def strip_diacritics(text: str) -> str:
    """Remove every diacritic mark scalar; idempotent, everything else kept."""
    return "".join(ch for ch in text if ch not in MARKS)


def tokenize_words(chars: DiacritizedText) -> list[tuple[int, int]]:
    """Word spans as (start, end) indices into ``chars``.

    A word is a maximal run of Arabic letters; digits, Latin, punctuation and
    whitespace all separate words and never belong to one.
    """
    spans = []
    start = None
    for i, c in enumerate(chars):
        if c.base in ARABIC_LETTERS:
            if start is None:
                start = i
        elif start is not None:
            spans.append((start, i))
            start = None
    if start is not None:
        spans.append((start, len(chars)))
    return spans


def collapse_whitespace(chars: DiacritizedText) -> DiacritizedText:
    """Collapse whitespace runs to single spaces and trim both ends."""
    out: DiacritizedText = []
    pending_gap = False
    for c in chars:
        cls = classify_char(c.base)
        if cls is CharClass.WHITESPACE or cls is CharClass.NEWLINE:
            pending_gap = True
            continue
        if pending_gap and out:
            out.append(DiacritizedChar(" "))
        pending_gap = False
        out.append(c)
    return out


def align_chars(
    reference: DiacritizedText, hypothesis: DiacritizedText
) -> list[tuple[DiacritizedChar, DiacritizedChar]]:
    """Pair reference and hypothesis characters position by position.

    Both sides are whitespace-normalized first; the pairing succeeds only if
    the base character sequences are then identical. A divergence raises
    BaseMismatchError carrying the first differing position, which signals a
    hypothesis that mutated, duplicated or dropped input text.
    """
    ref = collapse_whitespace(reference)
    hyp = collapse_whitespace(hypothesis)
    for i in range(min(len(ref), len(hyp))):
        if ref[i].base != hyp[i].base:
            raise BaseMismatchError(i, ref[i].base, hyp[i].base)
    if len(ref) != len(hyp):
        pos = min(len(ref), len(hyp))
        raise BaseMismatchError(
            pos,
            ref[pos].base if pos < len(ref) else "<end>",
            hyp[pos].base if pos < len(hyp) else "<end>",
        )
    return list(zip(ref, hyp))


def align(
    reference: DiacritizedText, hypothesis: DiacritizedText
) -> list[tuple[str, str]]:
    """One (reference combo, hypothesis combo) pair per Arabic letter."""
    return [
        (r.marks, h.marks)
        for r, h in align_chars(reference, hypothesis)
        if r.base in ARABIC_LETTERS
    ]
