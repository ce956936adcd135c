"""TF-IDF document vectors and cosine similarity over sparse dicts.

A vectorizer is fit on a training corpus of token streams and then maps
any token stream to a sparse weight vector. Terms outside the fitted
vocabulary are dropped; weights of zero are never stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

TF_MODES = ("raw", "relative")


class VectorizerError(ValueError):
    """Raised for invalid vectorizer configuration or misuse."""


@dataclass(frozen=True)
class SparseVector:
    weights: dict[str, float]
    norm: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "norm", math.sqrt(sum(w * w for w in self.weights.values())))

    def __len__(self):
        return len(self.weights)

    def get(self, term: str) -> float:
        return self.weights.get(term, 0.0)


def dot(u: SparseVector, v: SparseVector) -> float:
    small, large = (u, v) if len(u) <= len(v) else (v, u)
    return sum(w * large.weights.get(t, 0.0) for t, w in small.weights.items())


def cosine_similarity(u: SparseVector, v: SparseVector) -> float:
    """dot(u, v) / (|u| * |v|), defined as 0.0 when either norm is zero."""
    if u.norm == 0.0 or v.norm == 0.0:
        return 0.0
    return dot(u, v) / (u.norm * v.norm)


def term_counts(tokens: list[str]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for tok in tokens:
        counts[tok] = counts.get(tok, 0) + 1
    return counts


@dataclass(frozen=True)
class TfidfVectorizer:
    document_frequency: dict[str, int]
    corpus_size: int
    tf_mode: str = "raw"
    log_base: float | None = None  # None means natural log

    def __post_init__(self):
        if self.tf_mode not in TF_MODES:
            raise VectorizerError(f"unknown tf_mode {self.tf_mode!r}")
        if self.log_base is not None and self.log_base <= 1.0:
            raise VectorizerError(f"log base must exceed 1, got {self.log_base!r}")
        if self.corpus_size < 1:
            raise VectorizerError("vectorizer fit on an empty corpus")

    @property
    def vocabulary(self) -> frozenset[str]:
        return frozenset(self.document_frequency)

    def idf(self, term: str) -> float:
        """log(corpus_size / document_frequency); 0 for unknown terms."""
        df = self.document_frequency.get(term)
        if df is None:
            return 0.0
        value = math.log(self.corpus_size / df)
        if self.log_base is not None:
            value /= math.log(self.log_base)
        return value

    def transform(self, tokens: list[str]) -> SparseVector:
        counts = term_counts(tokens)
        total = sum(counts.values())
        weights: dict[str, float] = {}
        for term, count in counts.items():
            if term not in self.document_frequency:
                continue
            tf = count / total if self.tf_mode == "relative" else float(count)
            w = tf * self.idf(term)
            if w != 0.0:
                weights[term] = w
        return SparseVector(weights)


def fit_vectorizer(
    documents: list[list[str]],
    tf_mode: str = "raw",
    log_base: float | None = None,
) -> TfidfVectorizer:
    """Collect document frequencies from the training token streams."""
    if not documents:
        raise VectorizerError("vectorizer fit on an empty corpus")
    df: dict[str, int] = {}
    for tokens in documents:
        for term in set(tokens):
            df[term] = df.get(term, 0) + 1
    return TfidfVectorizer(df, len(documents), tf_mode, log_base)
