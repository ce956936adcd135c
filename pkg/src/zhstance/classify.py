"""Stance predictors: cosine k-NN plus two reference baselines.

All predictors are pure functions over an immutable training snapshot and
return a Prediction carrying the chosen label, the consulted neighbors,
and the per-label vote tallies. Tie-breaks are content-based throughout,
so shuffling the training list never changes a prediction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .vectorize import SparseVector, cosine_similarity, term_counts

WEIGHTINGS = ("uniform", "inverse")
EPSILON = 1e-9

KnnExample = tuple[str, str, SparseVector]  # (account_id, label, vector)
SetExample = tuple[str, str, frozenset[str]]


class ClassifierError(ValueError):
    """Raised for invalid classifier arguments."""


@dataclass(frozen=True)
class Neighbor:
    account_id: str
    label: str
    similarity: float


@dataclass(frozen=True)
class Prediction:
    label: str
    neighbors: tuple[Neighbor, ...]
    votes: dict[str, float]


def vote_weight(similarity: float, weighting: str) -> float:
    """1 per neighbor, or 1/(1 - similarity + eps) to favor near neighbors."""
    if weighting == "uniform":
        return 1.0
    if weighting == "inverse":
        return 1.0 / (1.0 - similarity + EPSILON)
    raise ClassifierError(f"unknown weighting {weighting!r}")


def _check_k(k: int, train_size: int):
    if k < 1:
        raise ClassifierError(f"k must be at least 1, got {k}")
    if k > train_size:
        raise ClassifierError(f"k={k} exceeds training set size {train_size}")


def _vote(neighbors: list[Neighbor], weighting: str) -> Prediction:
    votes: dict[str, float] = {}
    sim_sum: dict[str, float] = {}
    for nb in neighbors:
        votes[nb.label] = votes.get(nb.label, 0.0) + vote_weight(nb.similarity, weighting)
        sim_sum[nb.label] = sim_sum.get(nb.label, 0.0) + nb.similarity
    top = max(votes.values())
    tied = [label for label, v in votes.items() if v == top]
    if len(tied) > 1:
        top_sim = max(sim_sum[label] for label in tied)
        tied = [label for label in tied if sim_sum[label] == top_sim]
    return Prediction(min(tied), tuple(neighbors), votes)


def knn_predict(
    query: SparseVector,
    train: list[KnnExample],
    k: int = 5,
    weighting: str = "uniform",
) -> Prediction:
    """Vote among the k training vectors most cosine-similar to the query.

    Similarity ties are broken by ascending account_id; vote ties by larger
    summed similarity, then by the lexicographically smaller label.
    """
    if weighting not in WEIGHTINGS:
        raise ClassifierError(f"unknown weighting {weighting!r}")
    _check_k(k, len(train))
    scored = sorted(
        (Neighbor(account_id, label, cosine_similarity(query, vec))
         for account_id, label, vec in train),
        key=lambda nb: (-nb.similarity, nb.account_id),
    )
    return _vote(scored[:k], weighting)


def baseline0_predict(train_labels: list[str]) -> Prediction:
    """Constant classifier: the training majority label, ties going to the
    lexicographically smaller label."""
    if not train_labels:
        raise ClassifierError("empty training labels")
    counts: dict[str, float] = {}
    for label in train_labels:
        counts[label] = counts.get(label, 0.0) + 1.0
    top = max(counts.values())
    winner = min(label for label, c in counts.items() if c == top)
    return Prediction(winner, (), counts)


def top_k_terms(tokens: list[str], n: int, stopwords: frozenset[str] = frozenset()) -> tuple[str, ...]:
    """The n most frequent terms, most frequent first; frequency ties break
    lexicographically. Short documents yield all their distinct terms."""
    if n < 1:
        raise ClassifierError(f"term-list size must be at least 1, got {n}")
    counts = term_counts([t for t in tokens if t not in stopwords])
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return tuple(term for term, _ in ranked[:n])


def baseline1_distance(a, b) -> int:
    """Number of terms appearing in exactly one of the two lists."""
    return len(frozenset(a) ^ frozenset(b))


def baseline1_predict(query_terms, train: list[SetExample], k: int = 5) -> Prediction:
    """Uniform vote among the k training accounts whose top-term lists are
    closest by symmetric difference (ties by ascending account_id).

    A distance d is recorded as similarity 1/(1 + d) so the shared vote
    tie-break still favors the closer neighbors.
    """
    _check_k(k, len(train))
    query_set = frozenset(query_terms)
    scored = sorted(
        ((len(query_set ^ frozenset(terms)), account_id, label)
         for account_id, label, terms in train),
        key=lambda t: (t[0], t[1]),
    )
    neighbors = [
        Neighbor(account_id, label, 1.0 / (1.0 + distance))
        for distance, account_id, label in scored[:k]
    ]
    return _vote(neighbors, "uniform")
