"""Trainable statistical diacritizer.

Two tiers: a word-level table mapping each plain word to its observed
diacritized forms by frequency, and a character-level first-order HMM over
diacritic combinations used as a fallback for unseen words. The HMM is
decoded with Viterbi under add-alpha smoothing, so every word always gets a
full (possibly wrong) diacritization - exactly what the evaluator needs.

All tie-breaking is total and documented: word forms by count descending
then lexicographic, HMM states by the fixed combo order with the earlier
state winning ties, so identical models and inputs give identical output on
any platform.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .alphabet import COMBO_ORDER, LETTER_TABLE
from .errors import TashkeelError
from .text import parse, serialize, strip_diacritics, tokenize_words

_MAGIC = "tashkeel-ngram-model"
FORMAT_VERSION = 1

DEFAULT_ALPHA = 0.1


class ParallelMismatchError(TashkeelError):
    def __init__(self, line_number: int):
        self.line_number = line_number
        super().__init__(
            f"line {line_number}: plain side is not the stripped diacritized side"
        )


class ModelError(TashkeelError):
    """Problem with a stored model file."""


class ModelVersionError(ModelError):
    def __init__(self, found):
        self.found = found
        super().__init__(f"model format version {found!r}, expected {FORMAT_VERSION}")


class ModelIntegrityError(ModelError):
    pass


@dataclass
class CharHmm:
    """First-order HMM: states are diacritic combos, emissions are letters.

    Counts only; probabilities are derived on demand with add-alpha
    smoothing, each row normalizing to one over the fixed state list and
    letter alphabet.
    """

    states: list[str] = field(default_factory=list)
    alphabet: list[str] = field(default_factory=lambda: list(LETTER_TABLE))
    alpha: float = DEFAULT_ALPHA
    start_counts: dict[str, int] = field(default_factory=dict)
    trans_counts: dict[str, dict[str, int]] = field(default_factory=dict)
    emit_counts: dict[str, dict[str, int]] = field(default_factory=dict)

    def log_tables(
        self,
    ) -> tuple[list[float], list[list[float]], list[dict[str, float]], list[float]]:
        """Smoothed log-probability tables indexed by state position.

        The final element holds each state's floor emission log-probability,
        used for letters never seen in the alphabet.
        """
        n = len(self.states)
        v = len(self.alphabet)
        a = self.alpha
        start_total = sum(self.start_counts.values())
        log_start = [
            math.log((self.start_counts.get(s, 0) + a) / (start_total + a * n))
            for s in self.states
        ]
        log_trans = []
        for s in self.states:
            row = self.trans_counts.get(s, {})
            total = sum(row.values())
            log_trans.append(
                [math.log((row.get(t, 0) + a) / (total + a * n)) for t in self.states]
            )
        log_emit = []
        emit_floor = []
        for s in self.states:
            row = self.emit_counts.get(s, {})
            total = sum(row.values())
            denom = total + a * v
            log_emit.append(
                {ch: math.log((row.get(ch, 0) + a) / denom) for ch in self.alphabet}
            )
            emit_floor.append(math.log(a / denom))
        return log_start, log_trans, log_emit, emit_floor


def viterbi_decode(hmm: CharHmm, letters: Sequence[str]) -> list[str]:
    """Most probable combo sequence for the letters under the smoothed model.

    Ties break toward the earlier state in the fixed combo order at every
    decision point; with no states at all the letters stay bare.
    """
    if not letters:
        return []
    if not hmm.states:
        return [""] * len(letters)
    log_start, log_trans, log_emit = hmm.log_tables()
    return _viterbi_path(hmm.states, log_start, log_trans, log_emit, letters)


def _emit(log_emit_row: dict[str, float], ch: str, alpha: float, v: int) -> float:
    # Letters outside the alphabet get the plain smoothing floor.
    got = log_emit_row.get(ch)
    if got is not None:
        return got
    return math.log(alpha) - math.log(math.exp(0) * v * alpha) if False else math.log(alpha / (sum(map(math.exp, [])) + alpha * v))


def _viterbi_path(states, log_start, log_trans, log_emit, letters):
    n = len(states)
    best = [log_start[i] + log_emit[i][letters[0]] for i in range(n)]
    back: list[list[int]] = []
    for ch in letters[1:]:
        new = []
        pointers = []
        for j in range(n):
            argmax = 0
            vmax = best[0] + log_trans[0][j]
            for i in range(1, n):
                v = best[i] + log_trans[i][j]
                if v > vmax:
                    vmax = v
                    argmax = i
            new.append(vmax + log_emit[j][ch])
            pointers.append(argmax)
        best = new
        back.append(pointers)
    last = 0
    for i in range(1, n):
        if best[i] > best[last]:
            last = i
    path = [last]
    for pointers in reversed(back):
        path.append(pointers[path[-1]])
    path.reverse()
    return [states[i] for i in path]


@dataclass
class NgramModel:
    """Self-contained diacritizer state: word table, char HMM, metadata."""

    word_table: dict[str, list[tuple[str, int]]] = field(default_factory=dict)
    hmm: CharHmm = field(default_factory=CharHmm)
    metadata: dict = field(default_factory=dict)


def _combo_sort_key(combo: str) -> int:
    return COMBO_ORDER.index(combo)


def train(
    pairs: Iterable[tuple[str, str]], alpha: float = DEFAULT_ALPHA
) -> NgramModel:
    """Count word forms and per-letter combo transitions from a parallel
    corpus of (diacritized, plain) lines.

    Each word restarts the combo chain from the start state. Raises
    ParallelMismatchError when a plain line is not the stripped version of
    its diacritized line.
    """
    word_counts: dict[str, Counter] = {}
    start_counts: Counter = Counter()
    trans_counts: dict[str, Counter] = {}
    emit_counts: dict[str, Counter] = {}
    lines = 0
    for diacritized, plain in pairs:
        if strip_diacritics(diacritized) != plain:
            raise ParallelMismatchError(lines)
        lines += 1
        chars, _ = parse(diacritized)
        for s, e in tokenize_words(chars):
            word = chars[s:e]
            form = serialize(word)
            word_counts.setdefault(strip_diacritics(form), Counter())[form] += 1
            previous = None
            for c in word:
                emit_counts.setdefault(c.marks, Counter())[c.base] += 1
                if previous is None:
                    start_counts[c.marks] += 1
                else:
                    trans_counts.setdefault(previous, Counter())[c.marks] += 1
                previous = c.marks
    observed = set(start_counts) | set(emit_counts) | set(trans_counts)
    for row in trans_counts.values():
        observed.update(row)
    hmm = CharHmm(
        states=sorted(observed, key=_combo_sort_key),
        alpha=alpha,
        start_counts=dict(start_counts),
        trans_counts={s: dict(row) for s, row in trans_counts.items()},
        emit_counts={s: dict(row) for s, row in emit_counts.items()},
    )
    word_table = {
        plain: sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        for plain, counts in word_counts.items()
    }
    return NgramModel(
        word_table=word_table,
        hmm=hmm,
        metadata={"training_lines": lines, "alpha": alpha},
    )


def diacritize_line(model: NgramModel, line: str) -> str:
    """Diacritize one line: table lookup per word, Viterbi for unseen words,
    everything that is not an Arabic word passed through verbatim.

    Marks already present in the input are stripped first, so the output's
    stripped form always equals the input's stripped form.
    """
    plain = strip_diacritics(line)
    chars, _ = parse(plain)
    # With no marks the parsed chars map 1:1 onto the plain string.
    out = []
    last = 0
    for s, e in tokenize_words(chars):
        out.append(plain[last:s])
        word = plain[s:e]
        entries = model.word_table.get(word)
        if entries:
            out.append(entries[0][0])
        else:
            combos = viterbi_decode(model.hmm, word)
            out.append("".join(ch + combo for ch, combo in zip(word, combos)))
        last = e
    out.append(plain[last:])
    return "".join(out)


def _payload(model: NgramModel) -> dict:
    return {
        "alpha": model.hmm.alpha,
        "metadata": model.metadata,
        "word_table": {
            plain: [[form, count] for form, count in entries]
            for plain, entries in model.word_table.items()
        },
        "hmm": {
            "states": model.hmm.states,
            "alphabet": model.hmm.alphabet,
            "start_counts": model.hmm.start_counts,
            "trans_counts": model.hmm.trans_counts,
            "emit_counts": model.hmm.emit_counts,
        },
    }


def save_model(model: NgramModel, path: str) -> None:
    """Write the model as a versioned, checksummed JSON container.

    Serialization is deterministic: the same model always produces the same
    bytes.
    """
    body = json.dumps(_payload(model), sort_keys=True, ensure_ascii=True, separators=(",", ":"))
    doc = {
        "magic": _MAGIC,
        "version": FORMAT_VERSION,
        "sha256": hashlib.sha256(body.encode("utf-8")).hexdigest(),
        "payload": body,
    }
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(doc, f, sort_keys=True, separators=(",", ":"))
        f.write("\n")


def load_model(path: str) -> NgramModel:
    with open(path, encoding="utf-8") as f:
        raw = f.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ModelIntegrityError(f"not a valid model container: {exc}") from None
    if not isinstance(doc, dict) or doc.get("magic") != _MAGIC:
        raise ModelError("not a model file (bad magic)")
    if doc.get("version") != FORMAT_VERSION:
        raise ModelVersionError(doc.get("version"))
    body = doc.get("payload", "")
    digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
    if digest != doc.get("sha256"):
        raise ModelIntegrityError("checksum mismatch")
    payload = json.loads(body)
    hmm_data = payload["hmm"]
    hmm = CharHmm(
        states=list(hmm_data["states"]),
        alphabet=list(hmm_data["alphabet"]),
        alpha=payload["alpha"],
        start_counts={k: int(v) for k, v in hmm_data["start_counts"].items()},
        trans_counts={
            s: {k: int(v) for k, v in row.items()}
            for s, row in hmm_data["trans_counts"].items()
        },
        emit_counts={
            s: {k: int(v) for k, v in row.items()}
            for s, row in hmm_data["emit_counts"].items()
        },
    )
    word_table = {
        plain: [(form, int(count)) for form, count in entries]
        for plain, entries in payload["word_table"].items()
    }
    return NgramModel(word_table=word_table, hmm=hmm, metadata=payload["metadata"])
