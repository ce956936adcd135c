"""Account-level tweet corpora: loading, validation, filtering, splitting.

The corpus file is UTF-8 JSON-lines, one account per line:

    {"account_id": str, "follower_count": int, "label": str|null,
     "tweets": [{"text": str, "timestamp": "RFC3339"}]}

An optional first line ``{"label_set": [...]}`` declares the allowed labels;
account labels outside a declared set are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date, datetime, timezone

from .rng import shuffled


class CorpusError(ValueError):
    """Raised for malformed corpus files or invariant violations."""


@dataclass(frozen=True)
class Tweet:
    text: str
    timestamp: datetime


@dataclass(frozen=True)
class AccountRecord:
    account_id: str
    follower_count: int
    label: str | None
    tweets: tuple[Tweet, ...]


@dataclass(frozen=True)
class Corpus:
    label_set: tuple[str, ...]
    accounts: tuple[AccountRecord, ...]

    def __len__(self) -> int:
        return len(self.accounts)

    @property
    def account_ids(self) -> list[str]:
        return [a.account_id for a in self.accounts]

    def by_id(self, account_id: str) -> AccountRecord:
        for a in self.accounts:
            if a.account_id == account_id:
                return a
        raise KeyError(account_id)


@dataclass(frozen=True)
class SplitSpec:
    test_ids: frozenset[str]
    folds: int
    seed: int


@dataclass(frozen=True)
class DateWindow:
    """Inclusive calendar-date range; timestamps are compared on their UTC date."""

    start: date
    end: date

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"window start {self.start} is after end {self.end}")

    def contains(self, ts: datetime) -> bool:
        d = ts.astimezone(timezone.utc).date()
        return self.start <= d <= self.end


def parse_timestamp(raw: str) -> datetime:
    """Parse an RFC3339 timestamp; naive values are taken as UTC."""
    if not isinstance(raw, str):
        raise ValueError(f"timestamp must be a string, got {type(raw).__name__}")
    text = raw.replace("Z", "+00:00") if raw.endswith("Z") else raw
    try:
        ts = datetime.fromisoformat(text)
    except ValueError as exc:
        raise ValueError(f"invalid timestamp {raw!r}") from exc
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts


def _parse_account(obj: dict, lineno: int, declared: tuple[str, ...] | None) -> AccountRecord:
    def fail(msg: str):
        raise CorpusError(f"line {lineno}: {msg}")

    if not isinstance(obj, dict):
        fail("account line is not a JSON object")
    account_id = obj.get("account_id")
    if not isinstance(account_id, str) or not account_id:
        fail("missing or empty account_id")
    followers = obj.get("follower_count")
    if not isinstance(followers, int) or isinstance(followers, bool) or followers < 0:
        fail(f"account {account_id!r}: follower_count must be a non-negative integer")
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        fail(f"account {account_id!r}: label must be a string or null")
    if label is not None and declared is not None and label not in declared:
        fail(f"account {account_id!r}: unknown label {label!r} (declared label_set: {list(declared)})")
    raw_tweets = obj.get("tweets", [])
    if not isinstance(raw_tweets, list):
        fail(f"account {account_id!r}: tweets must be a list")
    tweets = []
    for i, t in enumerate(raw_tweets):
        if not isinstance(t, dict):
            fail(f"account {account_id!r}: tweet {i} is not an object")
        text = t.get("text")
        if not isinstance(text, str) or not text.strip():
            fail(f"account {account_id!r}: tweet {i} has empty text")
        try:
            ts = parse_timestamp(t.get("timestamp"))
        except ValueError as exc:
            fail(f"account {account_id!r}: tweet {i}: {exc}")
        tweets.append(Tweet(text=text, timestamp=ts))
    return AccountRecord(account_id, followers, label, tuple(tweets))


def load_corpus(path) -> Corpus:
    """Load and validate a JSONL corpus file.

    Raises CorpusError with the offending line number for malformed lines,
    duplicate account ids, or labels outside a declared label set.
    """
    declared: tuple[str, ...] | None = None
    accounts: list[AccountRecord] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {lineno}: malformed JSON ({exc.msg})") from exc
            if lineno == 1 and isinstance(obj, dict) and "label_set" in obj and "account_id" not in obj:
                labels = obj["label_set"]
                if (not isinstance(labels, list) or not all(isinstance(x, str) for x in labels)
                        or len(set(labels)) != len(labels)):
                    raise CorpusError("line 1: label_set must be a list of distinct strings")
                declared = tuple(labels)
                continue
            record = _parse_account(obj, lineno, declared)
            if record.account_id in seen:
                raise CorpusError(f"line {lineno}: duplicate account_id {record.account_id!r}")
            seen.add(record.account_id)
            accounts.append(record)
    if declared is not None:
        label_set = declared
    else:
        label_set = tuple(sorted({a.label for a in accounts if a.label is not None}))
    return Corpus(label_set=label_set, accounts=tuple(accounts))


def filter_accounts(c: Corpus, min_followers: int, min_tweets: int, window: DateWindow) -> Corpus:
    """Keep accounts meeting the follower floor with enough in-window tweets.

    Kept accounts have their tweet lists restricted to the window.
    """
    kept = []
    for a in c.accounts:
        in_window = tuple(t for t in a.tweets if window.contains(t.timestamp))
        if a.follower_count >= min_followers and len(in_window) >= min_tweets:
            kept.append(AccountRecord(a.account_id, a.follower_count, a.label, in_window))
    return Corpus(label_set=c.label_set, accounts=tuple(kept))


def labeled_accounts(c: Corpus) -> Corpus:
    """Restrict to accounts that carry a label."""
    return Corpus(c.label_set, tuple(a for a in c.accounts if a.label is not None))


def split_corpus(c: Corpus, spec: SplitSpec) -> tuple[Corpus, Corpus]:
    """Partition into (non_test, test) by the spec's test_ids."""
    ids = set(c.account_ids)
    missing = sorted(spec.test_ids - ids)
    if missing:
        raise CorpusError(f"test ids not present in corpus: {missing}")
    for a in c.accounts:
        if a.account_id in spec.test_ids and a.label is None:
            raise CorpusError(f"test account {a.account_id!r} has no label")
    test = tuple(a for a in c.accounts if a.account_id in spec.test_ids)
    non_test = tuple(a for a in c.accounts if a.account_id not in spec.test_ids)
    return (Corpus(c.label_set, non_test), Corpus(c.label_set, test))


def kfold_splits(c: Corpus, k: int, seed: int) -> list[tuple[Corpus, Corpus]]:
    """Deterministic k-fold split: k (train, validation) pairs.

    Account ids are sorted, shuffled with the seeded SplitMix64 generator,
    and dealt round-robin into k folds. When every account is labeled the
    deal runs label group by label group (continuing the round-robin
    counter across groups), which stratifies folds by label while keeping
    overall fold sizes within one of each other.
    """
    if k < 2:
        raise CorpusError(f"folds must be >= 2, got {k}")
    if k > len(c):
        raise CorpusError(f"cannot make {k} folds from {len(c)} accounts")

    labels = {a.account_id: a.label for a in c.accounts}
    all_ids = sorted(labels)
    if all(v is not None for v in labels.values()):
        order = list(c.label_set) + sorted({v for v in labels.values()} - set(c.label_set))
        groups = [[i for i in all_ids if labels[i] == lab] for lab in order]
        groups = [g for g in groups if g]
    else:
        groups = [all_ids]

    fold_ids: list[set[str]] = [set() for _ in range(k)]
    counter = 0
    for group in groups:
        for account_id in shuffled(group, seed):
            fold_ids[counter % k].add(account_id)
            counter += 1

    pairs = []
    for fold in fold_ids:
        validation = tuple(a for a in c.accounts if a.account_id in fold)
        train = tuple(a for a in c.accounts if a.account_id not in fold)
        pairs.append((Corpus(c.label_set, train), Corpus(c.label_set, validation)))
    return pairs
