#!/usr/bin/env python3
"""Generate the synthetic fixture corpus and its expected test report.

Writes tests/fixtures/synthetic_corpus.jsonl (22 accounts, of which 20
survive the default filters), tests/fixtures/test_ids.txt, and
tests/fixtures/expected_test_report.json.

The corpus is built from fixed templates: two classes with disjoint
ten-word topic vocabularies, five noise words shared by every account
(so their IDF is zero), glue function words, one traditional-script
tweet per account, one tweet with URL/mention/hashtag clutter, and one
tweet shared verbatim by all accounts. Two extra accounts exist only to
be dropped by the default follower/tweet filters.

The expected report is computed with deliberately naive
re-implementations (greedy conversion, exhaustive segmentation search,
dense TF-IDF, full similarity sort), so the checked-in expectations are
independent of the package's optimized code paths. Review the printed
summary before committing regenerated fixtures.

Usage: python3 tools/gen_fixtures.py
"""

from __future__ import annotations

import json
import math
import re
from datetime import date, datetime, timedelta, timezone
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "src" / "zhstance" / "data"
FIXTURES = ROOT / "tests" / "fixtures"

LABELS = ["Beijing", "Democracy"]
BEIJING = ["统一", "稳定", "发展", "繁荣", "祖国", "复兴", "富强", "和谐", "团结", "爱国"]
DEMOCRACY = ["民主", "自由", "选举", "人权", "法治", "普选", "公义", "抗争", "罢工", "集会"]
NOISE = ["香港", "台湾", "新闻", "政府", "社会"]
GLUE = ["的", "很", "都", "是", "在", "也", "就"]
SHARED_TWEET = "今天中国的经济问题都是社会新闻"

TRAD = {
    "统一": "統一", "稳定": "穩定", "发展": "發展", "繁荣": "繁榮", "祖国": "祖國",
    "复兴": "復興", "富强": "富強", "和谐": "和諧", "团结": "團結", "爱国": "愛國",
    "选举": "選舉", "人权": "人權", "普选": "普選", "公义": "公義", "抗争": "抗爭",
    "罢工": "罷工", "集会": "集會", "台湾": "臺灣", "新闻": "新聞", "社会": "社會",
}

TEST_IDS = ["b02", "b07", "d03", "d08"]
WINDOW = (date(2021, 1, 1), date(2021, 4, 15))
HAN = re.compile(r"[一-鿿]+")


def trad(word: str) -> str:
    return TRAD.get(word, word)


def stamp(day: date, hour: int, index: int) -> str:
    if index % 3 == 2:
        return f"{day.isoformat()}T{hour:02d}:30:00+08:00"
    return f"{day.isoformat()}T{hour:02d}:30:00Z"


def account_tweets(words: list[str], i: int) -> list[dict]:
    base = date(2021, 1, 4) + timedelta(days=i)
    tweets = []
    for t in range(10):
        text = f"{NOISE[t % 5]}{GLUE[t % 7]}{words[t]}{GLUE[(t + 2) % 7]}{words[(t + 3) % 10]}"
        tweets.append({"text": text, "timestamp": stamp(base + timedelta(days=7 * t), 9 + t, t)})
    trad_text = (f"{trad(NOISE[(i + 1) % 5])}{GLUE[i % 7]}{trad(words[i % 10])}"
                 f"{GLUE[(i + 1) % 7]}{trad(words[(i + 4) % 10])}")
    tweets.append({"text": trad_text, "timestamp": stamp(base + timedelta(days=70), 8, 10)})
    rt_text = f"RT @friend{i} https://t.co/tk{i} #{words[i % 10]} 2021"
    tweets.append({"text": rt_text, "timestamp": stamp(base + timedelta(days=77), 12, 11)})
    tweets.append({"text": SHARED_TWEET, "timestamp": stamp(base + timedelta(days=84), 20, 12)})
    return tweets


def build_accounts() -> list[dict]:
    accounts = []
    for prefix, label, words in (("b", LABELS[0], BEIJING), ("d", LABELS[1], DEMOCRACY)):
        for i in range(1, 11):
            record = {
                "account_id": f"{prefix}{i:02d}",
                "follower_count": 12000 + 3700 * i + (8000 if prefix == "d" else 0),
                "label": label,
                "tweets": account_tweets(words, i),
            }
            if record["account_id"] == "b05":
                record["tweets"] += [
                    {"text": f"{NOISE[0]}{GLUE[0]}{BEIJING[0]}", "timestamp": "2020-12-20T10:00:00Z"},
                    {"text": f"{NOISE[1]}{GLUE[1]}{BEIJING[1]}", "timestamp": "2021-04-20T10:00:00Z"},
                ]
            accounts.append(record)
    accounts.append({
        "account_id": "x01",
        "follower_count": 900,  # below the default follower floor
        "label": LABELS[0],
        "tweets": account_tweets(BEIJING, 11),
    })
    accounts.append({
        "account_id": "x02",
        "follower_count": 50000,
        "label": LABELS[1],
        "tweets": account_tweets(DEMOCRACY, 12)[:3],  # too few in-window tweets
    })
    return accounts


# --- independent oracle implementations -------------------------------

def load_table(path: Path):
    phrase, chars = {}, {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        key, _, value = line.partition("\t")
        value = value.split(" ")[0]
        if len(key) == 1:
            chars[key] = value
        else:
            phrase[key] = value
    return phrase, chars, max(map(len, phrase), default=0)


def convert(text: str, phrase: dict, chars: dict, maxlen: int) -> str:
    out, i = [], 0
    while i < len(text):
        for width in range(min(maxlen, len(text) - i), 1, -1):
            hit = phrase.get(text[i:i + width])
            if hit is not None:
                out.append(hit)
                i += width
                break
        else:
            out.append(chars.get(text[i], text[i]))
            i += 1
    return "".join(out)


def load_lexicon(path: Path):
    entries = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        entries[parts[0]] = int(parts[1])
    return entries, sum(entries.values())


def best_cut(run: str, entries: dict, total: int) -> list[str]:
    """Exhaustive max-probability segmentation, ties to longer early words.

    Candidate tokens are dictionary words and single characters only; a
    multi-character stretch outside the dictionary is not a token.
    """
    n = len(run)
    log_total = math.log(total)

    def logp(w):
        return math.log(entries.get(w) or 1) - log_total

    best = None
    for mask in range(1 << (n - 1)) if n else [0]:
        cuts = [0] + [i + 1 for i in range(n - 1) if mask >> i & 1] + [n]
        tokens = [run[a:b] for a, b in zip(cuts, cuts[1:])]
        if any(len(t) > 1 and t not in entries for t in tokens):
            continue
        score = 0.0
        for tok in reversed(tokens):
            score = logp(tok) + score
        key = (score, tuple(len(t) for t in tokens))
        if best is None or key > best[0]:
            best = (key, tokens)
    return best[1]


def tokenize(text: str, entries: dict, total: int, table) -> list[str]:
    tokens = []
    for chunk in convert(text, *table).split():
        if chunk.startswith(("http://", "https://")) or chunk.startswith("@"):
            continue
        if "#" in chunk:
            chunk = chunk.replace("#", "")
            if not chunk:
                continue
        pos = 0
        for m in HAN.finditer(chunk):
            if m.start() > pos:
                tokens.append(chunk[pos:m.start()])
            tokens.extend(best_cut(m.group(), entries, total))
            pos = m.end()
        if pos < len(chunk):
            tokens.append(chunk[pos:])
    for tok in tokens:
        # every Chinese token must be a dictionary word: the fixture must
        # exercise neither OOV fallbacks nor HMM repair, which this oracle
        # does not reimplement
        assert not HAN.fullmatch(tok) or tok in entries, tok
    return tokens


def parse_ts(raw: str) -> datetime:
    ts = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    return ts if ts.tzinfo else ts.replace(tzinfo=timezone.utc)


def in_window(raw: str) -> bool:
    d = parse_ts(raw).astimezone(timezone.utc).date()
    return WINDOW[0] <= d <= WINDOW[1]


def filtered(accounts: list[dict]) -> list[dict]:
    kept = []
    for a in accounts:
        tweets = [t for t in a["tweets"] if in_window(t["timestamp"])]
        if a["follower_count"] >= 10000 and len(tweets) >= 10:
            kept.append({**a, "tweets": tweets})
    return kept


def expected_report(accounts: list[dict], entries: dict, total: int, table) -> dict:
    docs = {a["account_id"]: sum((tokenize(t["text"], entries, total, table)
                                  for t in a["tweets"]), []) for a in accounts}
    labels = {a["account_id"]: a["label"] for a in accounts}
    train_ids = sorted(i for i in docs if i not in TEST_IDS)
    counts = {i: {} for i in docs}
    for i, toks in docs.items():
        for tok in toks:
            counts[i][tok] = counts[i].get(tok, 0) + 1
    df = {}
    for i in train_ids:
        for term in set(docs[i]):
            df[term] = df.get(term, 0) + 1

    def vector(i):
        out = {}
        for term, c in counts[i].items():
            if term in df:
                w = c * math.log(len(train_ids) / df[term])
                if w != 0.0:
                    out[term] = w
        return out

    vecs = {i: vector(i) for i in docs}

    def cosine(u, v):
        nu = math.sqrt(sum(w * w for w in u.values()))
        nv = math.sqrt(sum(w * w for w in v.values()))
        if nu == 0.0 or nv == 0.0:
            return 0.0
        return sum(w * v.get(t, 0.0) for t, w in u.items()) / (nu * nv)

    predictions = []
    outputs = {}
    for qid in sorted(TEST_IDS):
        ranked = sorted(((-cosine(vecs[qid], vecs[t]), t) for t in train_ids))
        neighbors = [{"account_id": t, "label": labels[t], "similarity": -s}
                     for s, t in ranked[:5]]
        votes = {}
        for nb in neighbors:
            votes[nb["label"]] = votes.get(nb["label"], 0.0) + 1.0
        top = max(votes.values())
        tied = sorted(lab for lab, v in votes.items() if v == top)
        if len(tied) > 1:
            sim_sum = {lab: sum(nb["similarity"] for nb in neighbors if nb["label"] == lab)
                       for lab in tied}
            top_sim = max(sim_sum.values())
            tied = sorted(lab for lab in tied if sim_sum[lab] == top_sim)
        outputs[qid] = tied[0]
        predictions.append({"account_id": qid, "label": labels[qid], "predicted": tied[0],
                            "neighbors": neighbors, "votes": votes})

    index = {lab: n for n, lab in enumerate(LABELS)}
    confusion = [[0, 0], [0, 0]]
    for qid in TEST_IDS:
        confusion[index[labels[qid]]][index[outputs[qid]]] += 1
    per_label, support = {}, {}
    for lab in LABELS:
        p = index[lab]
        tp = confusion[p][p]
        fp = sum(confusion[q][p] for q in range(2) if q != p)
        fn = sum(confusion[p][q] for q in range(2) if q != p)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_label[lab] = {"precision": precision, "recall": recall, "f1": f1}
        support[lab] = sum(confusion[p])
    return {
        "label_set": LABELS,
        "confusion": confusion,
        "accuracy": sum(confusion[i][i] for i in range(2)) / len(TEST_IDS),
        "per_label": per_label,
        "support": support,
        "predictions": predictions,
    }


def main() -> int:
    table = load_table(DATA / "t2s.tsv")
    entries, total = load_lexicon(DATA / "lexicon.txt")
    for simp, tradform in TRAD.items():
        assert convert(tradform, *table) == simp, (tradform, simp)
        assert simp in entries, simp

    accounts = build_accounts()
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with open(FIXTURES / "synthetic_corpus.jsonl", "w", encoding="utf-8") as f:
        f.write(json.dumps({"label_set": LABELS}, ensure_ascii=False, sort_keys=True) + "\n")
        for a in accounts:
            f.write(json.dumps(a, ensure_ascii=False, sort_keys=True) + "\n")
    with open(FIXTURES / "test_ids.txt", "w", encoding="utf-8") as f:
        f.write("# held-out test accounts for the synthetic corpus\n")
        f.writelines(f"{i}\n" for i in TEST_IDS)

    kept = filtered(accounts)
    assert len(kept) == 20, [a["account_id"] for a in kept]
    report = expected_report(kept, entries, total, table)
    with open(FIXTURES / "expected_test_report.json", "w", encoding="utf-8") as f:
        json.dump(report, f, ensure_ascii=False, sort_keys=True, indent=2)
        f.write("\n")

    print("kept accounts:", len(kept))
    print("confusion:", report["confusion"])
    print("accuracy:", report["accuracy"])
    for p in report["predictions"]:
        neighbor_labels = [nb["label"] for nb in p["neighbors"]]
        sims = [round(nb["similarity"], 3) for nb in p["neighbors"]]
        print(f"{p['account_id']}: {p['label']} -> {p['predicted']}  neighbors {neighbor_labels} {sims}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
