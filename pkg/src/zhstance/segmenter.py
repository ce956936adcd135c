"""Chinese word segmentation: prefix-dictionary DAG routing with an HMM fallback.

A sentence (a run of Chinese characters) is segmented by building the DAG
of all dictionary-consistent words and picking the max-log-probability
path. Runs of leftover single characters that are not dictionary words
themselves can be re-segmented by a four-state (B/M/E/S) character-tagging
HMM decoded with Viterbi, which recovers out-of-vocabulary words.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

NEG_INF = float("-inf")

STATES = ("B", "M", "E", "S")
# Word-position structure: B begins a multi-char word, M continues it,
# E ends it, S is a single-char word.
ALLOWED_TRANS = {
    "B": ("M", "E"),
    "M": ("M", "E"),
    "E": ("B", "S"),
    "S": ("B", "S"),
}
FINAL_STATES = ("E", "S")

DEFAULT_FLOOR_LOGP = math.log(1e-12)

_HAN_RUN = re.compile(r"[一-鿿]+")

TokenStream = list[str]


class LexiconError(ValueError):
    """Raised for malformed lexicon files or entries."""


class HmmModelError(ValueError):
    """Raised for malformed HMM parameter files."""


@dataclass(frozen=True)
class Lexicon:
    entries: dict[str, int]
    total: int
    prefix_set: frozenset[str]


@dataclass(frozen=True)
class HmmModel:
    start_logp: dict[str, float]
    trans_logp: dict[tuple[str, str], float]
    emit_logp: dict[str, dict[str, float]]
    floor_logp: float = DEFAULT_FLOOR_LOGP


def _prefixes(word: str):
    for i in range(1, len(word) + 1):
        yield word[:i]


def build_lexicon(entries: dict[str, int]) -> Lexicon:
    for word, freq in entries.items():
        if not word:
            raise LexiconError("empty word")
        if not isinstance(freq, int) or isinstance(freq, bool) or freq <= 0:
            raise LexiconError(f"word {word!r}: frequency must be a positive integer, got {freq!r}")
    prefix_set = frozenset(p for w in entries for p in _prefixes(w))
    return Lexicon(dict(entries), sum(entries.values()), prefix_set)


def load_lexicon(path) -> Lexicon:
    """Load a ``word freq [tag]`` lexicon file; the tag column is ignored."""
    entries: dict[str, int] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise LexiconError(f"line {lineno}: expected 'word freq [tag]'")
            word = parts[0]
            try:
                freq = int(parts[1])
            except ValueError:
                raise LexiconError(f"line {lineno}: non-numeric frequency {parts[1]!r}") from None
            if freq <= 0:
                raise LexiconError(f"line {lineno}: non-positive frequency for {word!r}")
            entries[word] = freq
    return build_lexicon(entries)


def add_word(lex: Lexicon, word: str, freq: int) -> Lexicon:
    """Return a new lexicon with the word inserted or its frequency replaced."""
    if not word:
        raise LexiconError("empty word")
    if freq <= 0:
        raise LexiconError(f"word {word!r}: frequency must be positive")
    entries = dict(lex.entries)
    entries[word] = freq
    return build_lexicon(entries)


def build_dag(sentence: str, lex: Lexicon) -> dict[int, list[int]]:
    """Map each start index i to the sorted end indices j of dictionary words
    sentence[i..j], always including j = i as the single-character fallback.

    Scanning from i stops as soon as the fragment leaves the prefix set.
    """
    dag: dict[int, list[int]] = {}
    n = len(sentence)
    for i in range(n):
        ends = []
        for j in range(i, n):
            frag = sentence[i:j + 1]
            if frag not in lex.prefix_set:
                break
            if frag in lex.entries:
                ends.append(j)
        if i not in ends:
            ends.insert(0, i)
        dag[i] = ends
    return dag


def _word_logp(word: str, lex: Lexicon, log_total: float) -> float:
    freq = lex.entries.get(word)
    if freq is None:
        return -log_total  # ln(1/total) floor for single-character fallbacks
    return math.log(freq) - log_total


def max_prob_route(sentence: str, dag: dict[int, list[int]], lex: Lexicon) -> TokenStream:
    """Best segmentation by right-to-left dynamic programming.

    route[i] = max over DAG edges (i, j) of logp(word i..j) + route[j+1].
    Score ties go to the longer word.
    """
    n = len(sentence)
    if n == 0:
        return []
    log_total = math.log(lex.total) if lex.total > 0 else 0.0
    best: dict[int, tuple[float, int]] = {n: (0.0, n)}
    for i in range(n - 1, -1, -1):
        choice = None
        for j in dag[i]:
            score = _word_logp(sentence[i:j + 1], lex, log_total) + best[j + 1][0]
            if choice is None or score > choice[0] or (score == choice[0] and j > choice[1]):
                choice = (score, j)
        best[i] = choice
    tokens = []
    i = 0
    while i < n:
        j = best[i][1]
        tokens.append(sentence[i:j + 1])
        i = j + 1
    return tokens


def route_score(sentence: str, dag: dict[int, list[int]], lex: Lexicon) -> float:
    """Log-probability of the best route (the DP's optimum value)."""
    n = len(sentence)
    log_total = math.log(lex.total) if lex.total > 0 else 0.0
    best = {n: 0.0}
    for i in range(n - 1, -1, -1):
        best[i] = max(
            _word_logp(sentence[i:j + 1], lex, log_total) + best[j + 1]
            for j in dag[i]
        )
    return best[0]


def load_hmm(path) -> HmmModel:
    """Load HMM parameters from JSON with keys start/trans/emit and optional
    floor; absent transitions are structural zeros."""
    with open(path, encoding="utf-8") as f:
        raw = json.load(f)
    for key in ("start", "trans", "emit"):
        if key not in raw:
            raise HmmModelError(f"missing {key!r} table")
    start = {}
    for state, logp in raw["start"].items():
        if state not in STATES:
            raise HmmModelError(f"unknown start state {state!r}")
        start[state] = float(logp)
    trans = {}
    for src, row in raw["trans"].items():
        if src not in STATES:
            raise HmmModelError(f"unknown transition source {src!r}")
        for dst, logp in row.items():
            if dst not in ALLOWED_TRANS[src]:
                raise HmmModelError(f"forbidden transition {src}->{dst}")
            trans[(src, dst)] = float(logp)
    emit = {s: {} for s in STATES}
    for state, row in raw["emit"].items():
        if state not in STATES:
            raise HmmModelError(f"unknown emission state {state!r}")
        emit[state] = {ch: float(lp) for ch, lp in row.items()}
    floor = float(raw.get("floor", DEFAULT_FLOOR_LOGP))
    return HmmModel(start, trans, emit, floor)


def viterbi(observations: str, hmm: HmmModel) -> list[str]:
    """Most probable B/M/E/S state sequence for a character sequence.

    Unseen emissions score floor_logp, absent transitions -inf, and the
    final state must be E or S. Ties prefer the earlier state in B<M<E<S
    order, both at backpointers and at the final state.
    """
    if not observations:
        raise ValueError("empty observation sequence")

    def emit(state: str, ch: str) -> float:
        return hmm.emit_logp.get(state, {}).get(ch, hmm.floor_logp)

    first = observations[0]
    delta = {s: hmm.start_logp.get(s, NEG_INF) + emit(s, first) for s in STATES}
    back: list[dict[str, str]] = []
    for ch in observations[1:]:
        new_delta = {}
        pointers = {}
        for state in STATES:
            best_score = NEG_INF
            best_prev = STATES[0]
            for prev in STATES:
                t = hmm.trans_logp.get((prev, state), NEG_INF)
                score = delta[prev] + t
                if score > best_score:
                    best_score = score
                    best_prev = prev
            new_delta[state] = best_score + emit(state, ch)
            pointers[state] = best_prev
        delta = new_delta
        back.append(pointers)

    last = max(FINAL_STATES, key=lambda s: (delta[s], -STATES.index(s)))
    path = [last]
    for pointers in reversed(back):
        path.append(pointers[path[-1]])
    path.reverse()
    return path


def hmm_segment(span: str, hmm: HmmModel) -> TokenStream:
    """Segment a span by Viterbi states: words end at E and S."""
    tokens = []
    start = 0
    for i, state in enumerate(viterbi(span, hmm)):
        if state in ("E", "S"):
            tokens.append(span[start:i + 1])
            start = i + 1
    if start < len(span):
        tokens.append(span[start:])  # decoder ended mid-word; keep the tail
    return tokens


def _cut_han(run: str, lex: Lexicon, hmm: HmmModel | None) -> TokenStream:
    tokens = max_prob_route(run, build_dag(run, lex), lex)
    if hmm is None:
        return tokens
    out: TokenStream = []
    buf: list[str] = []

    def flush():
        if len(buf) == 1:
            out.append(buf[0])
        elif len(buf) > 1:
            out.extend(hmm_segment("".join(buf), hmm))
        buf.clear()

    for tok in tokens:
        if len(tok) == 1 and tok not in lex.entries:
            buf.append(tok)
        else:
            flush()
            out.append(tok)
    flush()
    return out


def _cut_chunk(chunk: str, lex: Lexicon, hmm: HmmModel | None) -> TokenStream:
    tokens: TokenStream = []
    pos = 0
    for m in _HAN_RUN.finditer(chunk):
        if m.start() > pos:
            tokens.append(chunk[pos:m.start()])
        tokens.extend(_cut_han(m.group(), lex, hmm))
        pos = m.end()
    if pos < len(chunk):
        tokens.append(chunk[pos:])
    return tokens


def segment(text: str, lex: Lexicon, hmm: HmmModel | None = None, clean: bool = True) -> TokenStream:
    """Tokenize mixed text.

    Chinese runs go through the DAG router (plus the HMM fallback when a
    model is given); other runs are split on whitespace and kept as
    literal tokens. With clean on (the default), URL and @-mention chunks
    are dropped and ``#`` is stripped from hashtags before segmentation,
    since those are platform artifacts rather than lexical evidence.
    """
    tokens: TokenStream = []
    for chunk in text.split():
        if clean:
            if chunk.startswith(("http://", "https://")) or chunk.startswith("@"):
                continue
            if "#" in chunk:
                chunk = chunk.replace("#", "")
                if not chunk:
                    continue
        tokens.extend(_cut_chunk(chunk, lex, hmm))
    return tokens
