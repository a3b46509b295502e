"""Unicode-aware cleaning of raw message text.

Strips punctuation, symbols (which covers emoji presentation forms),
digits and control characters; case-folds; collapses all whitespace to
single ASCII spaces. Only letters (L*), combining marks (M*) and single
spaces survive, so downstream character n-gram models see a small,
consistent alphabet.
"""
from __future__ import annotations

import unicodedata

# First letter of the Unicode general category decides a codepoint's fate:
# letters and marks are kept, everything else (P, S, N, C, Z) is dropped or,
# when whitespace, turned into a separator. Extended_Pictographic codepoints
# all carry S*, P* or Cn categories, so emoji fall out with the symbols.
_KEEP = ("L", "M")


def normalize(raw: str) -> str:
    """Clean ``raw`` down to case-folded letters, marks and single spaces.

    Whitespace of any kind becomes U+0020; runs of separators collapse; the
    result carries no leading or trailing space. Removals delete codepoints
    outright (``"2019-07-01"`` leaves nothing behind, ``"don't"`` becomes
    ``"dont"``). Empty output is valid. Idempotent.
    """
    folded = raw.casefold()
    kept: list[str] = []
    for ch in folded:
        if ch.isspace():
            kept.append(" ")
        elif unicodedata.category(ch)[0] in _KEEP:
            kept.append(ch)
    return " ".join("".join(kept).split())


def tokenize(normalized: str) -> list[str]:
    """Split normalized text on spaces. Empty input gives no tokens."""
    return normalized.split()
