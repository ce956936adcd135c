"""Bundled data files and resource loading.

The package ships a conversion table, a segmentation lexicon, and HMM
parameters under ``zhstance/data`` so the pipeline runs out of the box;
every path can be overridden to swap in full-size models.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources as importlib_resources
from pathlib import Path

from .segmenter import HmmModel, Lexicon, load_hmm, load_lexicon
from .zh_convert import ConversionTable, load_conversion_table

BUNDLED_TABLE = "t2s.tsv"
BUNDLED_LEXICON = "lexicon.txt"
BUNDLED_HMM = "hmm.json"


def bundled_path(name: str) -> Path:
    return Path(str(importlib_resources.files("zhstance").joinpath("data", name)))


def load_stopwords(path) -> frozenset[str]:
    """One stopword per line; blank lines and # comments are ignored."""
    words = set()
    with open(path, encoding="utf-8") as f:
        for line in f:
            word = line.strip()
            if word and not word.startswith("#"):
                words.add(word)
    return frozenset(words)


@dataclass(frozen=True)
class Resources:
    table: ConversionTable
    lexicon: Lexicon
    hmm: HmmModel | None
    stopwords: frozenset[str]


def load_resources(
    dictionary: str | None = None,
    hmm: str | None = None,
    table: str | None = None,
    stopwords: str | None = None,
) -> Resources:
    """Load the pipeline's models, falling back to the bundled data files."""
    return Resources(
        table=load_conversion_table(table or bundled_path(BUNDLED_TABLE)),
        lexicon=load_lexicon(dictionary or bundled_path(BUNDLED_LEXICON)),
        hmm=load_hmm(hmm or bundled_path(BUNDLED_HMM)),
        stopwords=load_stopwords(stopwords) if stopwords else frozenset(),
    )
