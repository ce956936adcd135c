"""Command-line entry point.

Subcommands compose the library end to end:

    convert    traditional -> simplified text, line by line on stdin
    segment    tokenize stdin lines with the dictionary (and optional HMM)
    vectorize  dump per-account TF-IDF weights as JSON lines
    classify   train on a labeled corpus, classify a query corpus
    crossval   k-fold cross-validation over a labeled corpus
    test       train on the non-test accounts, score a held-out test set
    report     re-render a stored JSON report as human-readable tables

Configuration resolves defaults < --config file < flags; every report
embeds the resolved config, so any report is reproducible from its own
header. Exit status is 0 on success, 1 for validation errors, 2 for I/O
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import WEIGHTINGS
from .corpus import (
    AccountRecord,
    Corpus,
    SplitSpec,
    filter_accounts,
    labeled_accounts,
    load_corpus,
    split_corpus,
)
from .pipeline import MODELS, ConfigError, Pipeline, PipelineConfig, PipelineError
from .report import (
    crossval_report,
    dumps_report,
    format_crossval_payload,
    format_payload,
    format_test_payload,
    prediction_dict,
    test_report,
)
from .resources import BUNDLED_TABLE, bundled_path, load_resources
from .segmenter import load_hmm, load_lexicon, segment
from .vectorize import TF_MODES, fit_vectorizer
from .zh_convert import load_conversion_table, to_simplified

SUPPRESS = argparse.SUPPRESS


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the CLI contract reserves 2 for
    I/O problems, so usage errors are remapped to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _resource_flags(parser):
    parser.add_argument("--dict", default=SUPPRESS, metavar="PATH",
                        help="segmentation lexicon (bundled default)")
    parser.add_argument("--hmm", default=SUPPRESS, metavar="PATH",
                        help="HMM parameter JSON (bundled default)")
    parser.add_argument("--convert-table", default=SUPPRESS, metavar="PATH",
                        help="traditional-to-simplified table (bundled default)")
    parser.add_argument("--stopwords", default=SUPPRESS, metavar="PATH",
                        help="optional stopword list for top-term sets")


def _filter_flags(parser):
    parser.add_argument("--min-followers", type=int, default=SUPPRESS, metavar="N",
                        help="minimum follower count (default 10000)")
    parser.add_argument("--min-tweets", type=int, default=SUPPRESS, metavar="N",
                        help="minimum in-window tweet count (default 10)")
    parser.add_argument("--window-start", default=SUPPRESS, metavar="DATE",
                        help="first collection date, ISO format (default 2021-01-01)")
    parser.add_argument("--window-end", default=SUPPRESS, metavar="DATE",
                        help="last collection date, ISO format (default 2021-04-15)")


def _model_flags(parser):
    parser.add_argument("--model", choices=MODELS, default=SUPPRESS,
                        help="predictor (default knn)")
    parser.add_argument("--k", type=int, default=SUPPRESS,
                        help="neighbor count (default 5)")
    parser.add_argument("--weighting", choices=WEIGHTINGS, default=SUPPRESS,
                        help="k-NN vote weighting (default uniform)")
    parser.add_argument("--top-n", type=int, default=SUPPRESS, metavar="N",
                        help="term-list size for baseline1 (default 25)")
    parser.add_argument("--tf", choices=TF_MODES, default=SUPPRESS,
                        help="term-frequency variant (default raw)")


def _run_flags(parser):
    parser.add_argument("--corpus", default=SUPPRESS, metavar="PATH",
                        help="JSONL corpus file")
    parser.add_argument("--config", default=SUPPRESS, metavar="PATH",
                        help="JSON config file (same shape as the report's config echo)")
    parser.add_argument("--seed", type=int, default=SUPPRESS,
                        help="seed for the fold shuffle (default 0)")
    parser.add_argument("--output", default=SUPPRESS, metavar="PATH",
                        help="write JSON here instead of stdout")
    parser.add_argument("--no-clean", action="store_true", default=SUPPRESS,
                        help="keep URLs, mentions, and # characters")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zhstance",
                     description="Stance classification for Chinese-language Twitter accounts.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("convert", help="convert stdin to simplified characters")
    p.add_argument("--convert-table", default=SUPPRESS, metavar="PATH")
    p.set_defaults(handler=cmd_convert)

    p = sub.add_parser("segment", help="segment stdin lines into tokens")
    p.add_argument("--dict", required=True, metavar="PATH")
    p.add_argument("--hmm", default=SUPPRESS, metavar="PATH")
    p.add_argument("--no-clean", action="store_true", default=SUPPRESS)
    p.set_defaults(handler=cmd_segment)

    p = sub.add_parser("vectorize", help="dump per-account TF-IDF weights")
    for add in (_run_flags, _resource_flags, _filter_flags, _model_flags):
        add(p)
    p.set_defaults(handler=cmd_vectorize)

    p = sub.add_parser("classify", help="classify query accounts")
    for add in (_run_flags, _resource_flags, _filter_flags, _model_flags):
        add(p)
    p.add_argument("--queries", required=True, metavar="PATH",
                   help="JSONL corpus of accounts to classify")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("crossval", help="k-fold cross-validation")
    for add in (_run_flags, _resource_flags, _filter_flags, _model_flags):
        add(p)
    p.add_argument("--folds", type=int, default=SUPPRESS,
                   help="number of folds (default 5)")
    p.add_argument("--test-ids", default=SUPPRESS, metavar="PATH",
                   help="account ids to hold out entirely, one per line")
    p.set_defaults(handler=cmd_crossval)

    p = sub.add_parser("test", help="evaluate a held-out test set")
    for add in (_run_flags, _resource_flags, _filter_flags, _model_flags):
        add(p)
    p.add_argument("--test-ids", required=True, metavar="PATH",
                   help="test account ids, one per line")
    p.set_defaults(handler=cmd_test)

    p = sub.add_parser("report", help="render a stored JSON report")
    p.add_argument("path", metavar="REPORT.json")
    p.set_defaults(handler=cmd_report)

    return parser


def _flag_overrides(args) -> dict:
    overrides: dict = {}
    paths = {
        key: getattr(args, attr)
        for attr, key in (("corpus", "corpus"), ("dict", "dictionary"), ("hmm", "hmm"),
                          ("convert_table", "table"), ("stopwords", "stopwords"))
        if hasattr(args, attr)
    }
    if paths:
        overrides["paths"] = paths
    filters = {}
    for attr in ("min_followers", "min_tweets"):
        if hasattr(args, attr):
            filters[attr] = getattr(args, attr)
    window = {}
    if hasattr(args, "window_start"):
        window["start"] = args.window_start
    if hasattr(args, "window_end"):
        window["end"] = args.window_end
    if window:
        filters["window"] = window
    if filters:
        overrides["filters"] = filters
    model = {}
    if hasattr(args, "model"):
        model["kind"] = args.model
    for attr in ("k", "weighting", "top_n", "tf"):
        if hasattr(args, attr):
            model[attr] = getattr(args, attr)
    if model:
        overrides["model"] = model
    for attr in ("folds", "seed"):
        if hasattr(args, attr):
            overrides[attr] = getattr(args, attr)
    if getattr(args, "no_clean", False):
        overrides["clean"] = False
    return overrides


def _resolve_config(args) -> PipelineConfig:
    config = PipelineConfig()
    if hasattr(args, "config"):
        with open(args.config, encoding="utf-8") as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ConfigError("config file must contain a JSON object")
        config = config.merged(data)
    return config.merged(_flag_overrides(args))


def _load_pipeline(config: PipelineConfig) -> tuple[Pipeline, Corpus]:
    if config.corpus is None:
        raise ConfigError("a corpus path is required (--corpus or config file)")
    corpus = load_corpus(config.corpus)
    filtered = filter_accounts(corpus, config.min_followers, config.min_tweets, config.window)
    resources = load_resources(config.dictionary, config.hmm, config.table, config.stopwords)
    return Pipeline(resources, config), filtered


def _read_ids(path) -> frozenset[str]:
    ids = set()
    with open(path, encoding="utf-8") as f:
        for line in f:
            value = line.strip()
            if value and not value.startswith("#"):
                ids.add(value)
    if not ids:
        raise ConfigError(f"no account ids found in {path}")
    return frozenset(ids)


def _emit(args, text: str, human: str | None):
    output = getattr(args, "output", None)
    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text)
        if human:
            print(human)
    else:
        sys.stdout.write(text)


def cmd_convert(args) -> int:
    table = load_conversion_table(getattr(args, "convert_table", None) or bundled_path(BUNDLED_TABLE))
    for line in sys.stdin:
        print(to_simplified(line.rstrip("\n"), table))
    return 0


def cmd_segment(args) -> int:
    lex = load_lexicon(args.dict)
    hmm = load_hmm(args.hmm) if hasattr(args, "hmm") else None
    clean = not getattr(args, "no_clean", False)
    for line in sys.stdin:
        print(" ".join(segment(line.rstrip("\n"), lex, hmm, clean)))
    return 0


def cmd_vectorize(args) -> int:
    config = _resolve_config(args)
    pipe, corpus = _load_pipeline(config)
    docs = {a.account_id: pipe.account_tokens(a) for a in corpus.accounts}
    vectorizer = fit_vectorizer(list(docs.values()), tf_mode=config.tf)
    lines = [
        json.dumps({"account_id": account_id, "weights": vectorizer.transform(docs[account_id]).weights},
                   ensure_ascii=False, sort_keys=True)
        for account_id in sorted(docs)
    ]
    _emit(args, "\n".join(lines) + "\n", None)
    return 0


def cmd_classify(args) -> int:
    config = _resolve_config(args)
    pipe, corpus = _load_pipeline(config)
    train = labeled_accounts(corpus)
    if len(train) == 0:
        raise PipelineError("no labeled training accounts after filtering")
    queries = load_corpus(args.queries)
    # Query accounts are never dropped, but their tweets are still
    # restricted to the collection window for comparability.
    trimmed = Corpus(queries.label_set, tuple(
        AccountRecord(a.account_id, a.follower_count, a.label,
                      tuple(t for t in a.tweets if config.window.contains(t.timestamp)))
        for a in queries.accounts))
    preds, _ = pipe.predict(train, trimmed)
    lines = [json.dumps(prediction_dict(p), ensure_ascii=False, sort_keys=True) for p in preds]
    _emit(args, "\n".join(lines) + "\n", None)
    return 0


def cmd_crossval(args) -> int:
    config = _resolve_config(args)
    pipe, corpus = _load_pipeline(config)
    if hasattr(args, "test_ids"):
        corpus, _ = split_corpus(corpus, SplitSpec(_read_ids(args.test_ids), config.folds, config.seed))
    result = pipe.cross_validate(labeled_accounts(corpus))
    payload = crossval_report(result, config)
    _emit(args, dumps_report(payload), format_crossval_payload(payload))
    return 0


def cmd_test(args) -> int:
    config = _resolve_config(args)
    pipe, corpus = _load_pipeline(config)
    non_test, test = split_corpus(corpus, SplitSpec(_read_ids(args.test_ids), config.folds, config.seed))
    result = pipe.evaluate_test_set(labeled_accounts(non_test), test)
    payload = test_report(result, config)
    _emit(args, dumps_report(payload), format_test_payload(payload))
    return 0


def cmd_report(args) -> int:
    with open(args.path, encoding="utf-8") as f:
        payload = json.load(f)
    print(format_payload(payload))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
