"""Corpus cleaning pipeline.

The pipeline runs ten steps in a fixed order; configuration can disable
steps but never reorder them:

  1. strip_markup                 drop angle-bracket tag syntax, keep content
  2. remove_urls                  drop scheme:// and www. tokens
  3. fix_ending_diacritics        reattach marks split off a word by spaces
  4. remove_misplaced_diacritics  drop marks not anchored to an Arabic letter
  5. collapse_multiple_diacritics keep the longest legal prefix of a mark run
  6. normalize_fathatan           move Fathatan written on an Alif onto the
                                  preceding letter (before-Alif convention)
  7. remove_latin                 drop ASCII letters (markup/URL leftovers)
  8. remove_kashida               drop the elongation character
  9. separate_numbers             put spaces around digit runs
 10. normalize_whitespace         collapse whitespace runs, trim the ends

The order matters: reattachment must run before misplaced-mark removal so
detached marks are repaired rather than destroyed, and Fathatan placement is
normalized only after mark runs are legal. Cleaning the output again is a
no-op, and no step ever deletes or reorders an Arabic letter.
"""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass, fields

from .alphabet import ALEF, FATHATAN, MARKS, SHADDA, CharClass, classify_char, extend_combo

# Tag and URL bodies must not swallow Arabic text: anything from the Arabic
# block inside the would-be match leaves the candidate intact.
_ARABIC_BLOCK = "؀-ۿ"
_TAG_RE = re.compile(rf"</?[A-Za-z][^{_ARABIC_BLOCK}<>\n]*>|<![^{_ARABIC_BLOCK}<>\n]*>")
_URL_RE = re.compile(
    rf"[A-Za-z][A-Za-z0-9+.\-]*://[^\s{_ARABIC_BLOCK}]*"
    rf"|(?:^|(?<=\s))www\.[^\s{_ARABIC_BLOCK}]*"
)
_DIGIT_RUN_RE = re.compile(r"\d+")
_WS_RUN_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class CleaningConfig:
    """Which pipeline steps run, plus the line-filter threshold.

    ``min_diacritic_ratio`` is the strict lower bound a line's
    marked-letters/letters ratio must exceed to pass the dataset filter.
    """

    strip_markup: bool = True
    remove_urls: bool = True
    fix_ending_diacritics: bool = True
    remove_misplaced_diacritics: bool = True
    collapse_multiple_diacritics: bool = True
    normalize_fathatan: bool = True
    remove_latin: bool = True
    remove_kashida: bool = True
    separate_numbers: bool = True
    normalize_whitespace: bool = True
    min_diacritic_ratio: float = 0.80


@dataclass
class CleaningReport:
    """Per-step counters of what the pipeline changed or removed.

    All counters are zero exactly when the output equals the input.
    """

    markup_tags_removed: int = 0
    urls_removed: int = 0
    ending_marks_reattached: int = 0
    misplaced_marks_removed: int = 0
    multi_marks_collapsed: int = 0
    fathatan_moved: int = 0
    latin_chars_removed: int = 0
    kashida_removed: int = 0
    numbers_separated: int = 0
    whitespace_runs_collapsed: int = 0

    def add(self, other: "CleaningReport") -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def all_zero(self) -> bool:
        return all(getattr(self, f.name) == 0 for f in fields(self))

    def to_dict(self) -> dict:
        return asdict(self)


def _strip_markup(text: str) -> tuple[str, int]:
    count = 0
    while True:
        text, n = _TAG_RE.subn("", text)
        if n == 0:
            return text, count
        count += n


def _remove_urls(text: str) -> tuple[str, int]:
    return _URL_RE.subn("", text)


def _fix_ending_marks(text: str) -> tuple[str, int]:
    out = []
    count = 0
    i = 0
    n = len(text)
    anchored = False  # output currently ends with a letter plus its marks
    while i < n:
        ch = text[i]
        cls = classify_char(ch)
        if cls is CharClass.WHITESPACE and anchored:
            j = i
            while j < n and classify_char(text[j]) is CharClass.WHITESPACE:
                j += 1
            if j < n and text[j] in MARKS:
                k = j
                while k < n and text[k] in MARKS:
                    k += 1
                count += k - j
                i = j  # drop the gap; the marks re-join their letter
                continue
        out.append(ch)
        if cls is CharClass.ARABIC_LETTER:
            anchored = True
        elif cls is not CharClass.DIACRITIC_MARK:
            anchored = False
        i += 1
    return "".join(out), count


def _remove_misplaced_marks(text: str) -> tuple[str, int]:
    out = []
    count = 0
    anchored = False
    for ch in text:
        cls = classify_char(ch)
        if cls is CharClass.DIACRITIC_MARK:
            if anchored:
                out.append(ch)
            else:
                count += 1
            continue
        out.append(ch)
        anchored = cls is CharClass.ARABIC_LETTER
    return "".join(out), count


def _collapse_mark_runs(text: str) -> tuple[str, int]:
    out = []
    count = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        out.append(ch)
        i += 1
        if classify_char(ch) is not CharClass.ARABIC_LETTER:
            continue
        j = i
        while j < n and text[j] in MARKS:
            j += 1
        run = text[i:j]
        if len(run) > 1:
            keep = 2 if extend_combo(run[0], run[1]) is not None else 1
            out.append(run[:keep])
            count += len(run) - keep
        else:
            out.append(run)
        i = j
    return "".join(out), count


def _normalize_fathatan(text: str) -> tuple[str, int]:
    """Rewrite Fathatan carried by an Alif onto the letter before the Alif.

    When that letter cannot legally take it (it already carries a vowel, or
    there is no letter), the Fathatan is dropped instead; both outcomes count
    as one fix. Loops until no Alif carries a Fathatan.
    """
    chars = list(text)
    count = 0
    changed = True
    while changed:
        changed = False
        i = 0
        n = len(chars)
        while i < n:
            if chars[i] == ALEF:
                j = i + 1
                while j < n and chars[j] in MARKS:
                    j += 1
                if FATHATAN in chars[i + 1 : j]:
                    k = chars.index(FATHATAN, i + 1, j)
                    p = i - 1
                    while p >= 0 and chars[p] in MARKS:
                        p -= 1
                    receiver_marks = chars[p + 1 : i]
                    movable = (
                        p >= 0
                        and classify_char(chars[p]) is CharClass.ARABIC_LETTER
                        and len(receiver_marks) <= 1
                        and all(m == SHADDA for m in receiver_marks)
                    )
                    del chars[k]
                    if movable:
                        chars.insert(i, FATHATAN)
                    count += 1
                    changed = True
                    break
            i += 1
    return "".join(chars), count


def _remove_latin(text: str) -> tuple[str, int]:
    out = [ch for ch in text if classify_char(ch) is not CharClass.LATIN_LETTER]
    return "".join(out), len(text) - len(out)


def _remove_kashida(text: str) -> tuple[str, int]:
    out = [ch for ch in text if classify_char(ch) is not CharClass.KASHIDA]
    return "".join(out), len(text) - len(out)


def _separate_numbers(text: str) -> tuple[str, int]:
    out = []
    count = 0
    last = 0
    for m in _DIGIT_RUN_RE.finditer(text):
        s, e = m.span()
        out.append(text[last:s])
        fixed = False
        if s > 0 and not text[s - 1].isspace():
            out.append(" ")
            fixed = True
        out.append(m.group())
        if e < len(text) and not text[e].isspace():
            out.append(" ")
            fixed = True
        if fixed:
            count += 1
        last = e
    out.append(text[last:])
    return "".join(out), count


def _normalize_whitespace(text: str) -> tuple[str, int]:
    out = []
    count = 0
    last = 0
    n = len(text)
    for m in _WS_RUN_RE.finditer(text):
        s, e = m.span()
        out.append(text[last:s])
        if s == 0 or e == n:
            rep = ""  # leading/trailing run: trim
        elif "\n" in m.group() or "\r" in m.group():
            rep = "\n"
        else:
            rep = " "
        if rep != m.group():
            count += 1
        out.append(rep)
        last = e
    out.append(text[last:])
    return "".join(out), count


def strip_markup(text: str) -> str:
    """Remove angle-bracket tag syntax, preserving the content between tags.

    An unbalanced '<' with no matching '>' is left intact, and candidates
    containing Arabic text are not treated as tags.
    """
    return _strip_markup(text)[0]


def remove_urls(text: str) -> str:
    """Remove scheme://... and www.-prefixed tokens up to the next whitespace."""
    return _remove_urls(text)[0]


def fix_ending_diacritics(text: str) -> str:
    """Re-join marks that were split off their word by whitespace.

    Only same-line gaps are repaired; a newline between letter and mark is
    not, so line-by-line cleaning matches whole-document cleaning.
    """
    return _fix_ending_marks(text)[0]


def remove_misplaced_diacritics(text: str) -> str:
    """Delete marks whose run is not anchored to an Arabic letter."""
    return _remove_misplaced_marks(text)[0]


def collapse_multiple_diacritics(text: str) -> str:
    """Reduce illegal mark runs on a letter to their longest legal prefix."""
    return _collapse_mark_runs(text)[0]


def normalize_fathatan(text: str) -> str:
    """Move Fathatan from an Alif onto the preceding letter (or drop it)."""
    return _normalize_fathatan(text)[0]


def remove_latin(text: str) -> str:
    """Delete ASCII letters scattered through the text."""
    return _remove_latin(text)[0]


def remove_kashida(text: str) -> str:
    """Delete the calligraphic elongation character."""
    return _remove_kashida(text)[0]


def separate_numbers(text: str) -> str:
    """Put a space on each side of every digit run not already at a boundary."""
    return _separate_numbers(text)[0]


def normalize_whitespace(text: str) -> str:
    """Collapse whitespace runs to one space (one newline when the run holds
    a newline) and trim leading/trailing whitespace."""
    return _normalize_whitespace(text)[0]


_PIPELINE = (
    ("strip_markup", _strip_markup, "markup_tags_removed"),
    ("remove_urls", _remove_urls, "urls_removed"),
    ("fix_ending_diacritics", _fix_ending_marks, "ending_marks_reattached"),
    ("remove_misplaced_diacritics", _remove_misplaced_marks, "misplaced_marks_removed"),
    ("collapse_multiple_diacritics", _collapse_mark_runs, "multi_marks_collapsed"),
    ("normalize_fathatan", _normalize_fathatan, "fathatan_moved"),
    ("remove_latin", _remove_latin, "latin_chars_removed"),
    ("remove_kashida", _remove_kashida, "kashida_removed"),
    ("separate_numbers", _separate_numbers, "numbers_separated"),
    ("normalize_whitespace", _normalize_whitespace, "whitespace_runs_collapsed"),
)


def clean(document: str, config: CleaningConfig | None = None) -> tuple[str, CleaningReport]:
    """Run the enabled pipeline steps in order over a document or a line."""
    if config is None:
        config = CleaningConfig()
    report = CleaningReport()
    for flag, step, counter in _PIPELINE:
        if not getattr(config, flag):
            continue
        document, n = step(document)
        setattr(report, counter, getattr(report, counter) + n)
    return document, report
