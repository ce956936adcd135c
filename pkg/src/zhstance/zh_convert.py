"""Traditional-to-simplified Chinese conversion via greedy longest match.

The mapping is a plain dictionary file, one ``traditional<TAB>simplified``
pair per line. Lines starting with ``#`` are comments. A key may list
several space-separated candidates on the right (as OpenCC dictionaries
do); only the first is used, so ambiguity resolution belongs to the table
author, not this engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class ConversionTableError(ValueError):
    """Raised for malformed conversion table files."""


@dataclass(frozen=True)
class ConversionTable:
    phrase_map: dict[str, str]
    char_map: dict[str, str]
    max_phrase_len: int = field(default=0)

    @staticmethod
    def from_pairs(pairs) -> "ConversionTable":
        phrase_map: dict[str, str] = {}
        char_map: dict[str, str] = {}
        for key, value in pairs:
            if len(key) == 1:
                char_map[key] = value
            else:
                phrase_map[key] = value
        max_len = max((len(k) for k in phrase_map), default=0)
        return ConversionTable(phrase_map, char_map, max_len)


def load_conversion_table(path) -> ConversionTable:
    """Load a tab-separated conversion table; single-character keys go to
    char_map, longer keys to phrase_map."""
    pairs = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            if "\t" not in line:
                raise ConversionTableError(f"line {lineno}: missing tab separator")
            key, _, value = line.partition("\t")
            value = value.split(" ")[0].strip()
            if not key or not value:
                raise ConversionTableError(f"line {lineno}: empty mapping side")
            pairs.append((key, value))
    return ConversionTable.from_pairs(pairs)


def to_simplified(text: str, table: ConversionTable) -> str:
    """Convert text with greedy longest match, left to right.

    At each position, phrase keys are tried from the longest down to two
    characters, then the single-character map; unmapped characters pass
    through unchanged.
    """
    out = []
    n = len(text)
    i = 0
    max_len = table.max_phrase_len
    while i < n:
        matched = False
        if max_len >= 2:
            for width in range(min(max_len, n - i), 1, -1):
                candidate = text[i:i + width]
                mapped = table.phrase_map.get(candidate)
                if mapped is not None:
                    out.append(mapped)
                    i += width
                    matched = True
                    break
        if not matched:
            ch = text[i]
            out.append(table.char_map.get(ch, ch))
            i += 1
    return "".join(out)
