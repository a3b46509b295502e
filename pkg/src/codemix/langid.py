"""Trainable character n-gram language identifier.

Each language gets a multinomial model over pooled character n-grams
(orders n_min..n_max, spaces counted as ordinary symbols) with additive
smoothing and a uniform prior. Texts are scored by mean per-gram log
probability, so short and long texts stay comparable, and scores are
turned into confidences with a softmax over the candidate languages.

Profiles are plain JSON documents on disk; saving is canonical so a
save -> load -> save round trip is byte-identical.
"""
from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from . import textnorm
from .errors import (
    EmptyCorpus,
    EmptyProfileSet,
    EmptyText,
    InvalidConfig,
    ProfileError,
)

PROFILE_VERSION = 1
PROFILE_SUFFIX = ".profile"

#: Reserved code for "undetermined"; never a trainable profile name.
UND = "und"

DEFAULT_N_MIN = 1
DEFAULT_N_MAX = 4
DEFAULT_ALPHA = 0.5
DEFAULT_MIN_CHARS = 3

_LANG_RE = re.compile(r"^[a-z]{2,8}$")


def _check_lang(lang: str) -> str:
    if not _LANG_RE.match(lang):
        raise InvalidConfig(
            f"language code must be 2-8 lowercase ASCII letters, got {lang!r}"
        )
    if lang == UND:
        raise InvalidConfig(f"{UND!r} is reserved for undetermined text")
    return lang


def _check_orders(n_min: int, n_max: int, alpha: float) -> None:
    if not (1 <= n_min <= n_max <= 6):
        raise InvalidConfig(f"need 1 <= n_min <= n_max <= 6, got {n_min}..{n_max}")
    if not alpha > 0:
        raise InvalidConfig(f"smoothing constant must be positive, got {alpha}")


def extract_ngrams(text: str, n_min: int, n_max: int) -> Counter[str]:
    """Count every contiguous codepoint n-gram of each order in [n_min, n_max]."""
    grams: Counter[str] = Counter()
    size = len(text)
    for n in range(n_min, n_max + 1):
        for i in range(size - n + 1):
            grams[text[i : i + n]] += 1
    return grams


@dataclass
class LanguageProfile:
    """Trained n-gram model for one language.

    counts maps each observed gram to its training count; total_per_order
    keeps the total gram count at every order so smoothed probabilities
    need no recounting. Immutable by convention once built.
    """

    lang: str
    n_min: int
    n_max: int
    alpha: float
    counts: dict[str, int]
    total_per_order: dict[int, int]
    version: int = PROFILE_VERSION

    # distinct grams per order, +1 slot for unseen grams; derived, not stored
    _vocab: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        vocab = {n: 1 for n in range(self.n_min, self.n_max + 1)}
        for gram in self.counts:
            vocab[len(gram)] += 1
        self._vocab = vocab

    def gram_log_prob(self, gram: str) -> float:
        """Additively smoothed log probability of one gram."""
        n = len(gram)
        numer = self.counts.get(gram, 0) + self.alpha
        denom = self.total_per_order.get(n, 0) + self.alpha * self._vocab[n]
        return math.log(numer / denom)


@dataclass(frozen=True)
class Prediction:
    """One language hypothesis for a piece of text."""

    lang: str
    avg_log_likelihood: float
    confidence: float


@dataclass
class ProfileSet:
    """Profiles for the candidate languages; order ranges must agree."""

    profiles: dict[str, LanguageProfile]

    def __post_init__(self) -> None:
        if not self.profiles:
            raise EmptyProfileSet("no language profiles given")
        ranges = {(p.n_min, p.n_max) for p in self.profiles.values()}
        if len(ranges) > 1:
            raise InvalidConfig(f"profiles disagree on n-gram orders: {sorted(ranges)}")
        for lang, profile in self.profiles.items():
            if lang != profile.lang:
                raise InvalidConfig(f"profile keyed {lang!r} claims lang {profile.lang!r}")

    @property
    def n_min(self) -> int:
        return next(iter(self.profiles.values())).n_min

    @property
    def n_max(self) -> int:
        return next(iter(self.profiles.values())).n_max


def train(
    lines: Iterable[str],
    lang: str,
    n_min: int = DEFAULT_N_MIN,
    n_max: int = DEFAULT_N_MAX,
    alpha: float = DEFAULT_ALPHA,
) -> LanguageProfile:
    """Build a LanguageProfile from raw training lines.

    Each line is normalized first; n-grams never cross line boundaries.
    Raises EmptyCorpus when every line normalizes to empty text and
    InvalidConfig for bad orders, smoothing or language code.
    """
    _check_lang(lang)
    _check_orders(n_min, n_max, alpha)

    counts: Counter[str] = Counter()
    for line in lines:
        normalized = textnorm.normalize(line)
        if normalized:
            counts.update(extract_ngrams(normalized, n_min, n_max))
    if not counts:
        raise EmptyCorpus(f"no usable text in training corpus for {lang!r}")

    totals = {n: 0 for n in range(n_min, n_max + 1)}
    for gram, c in counts.items():
        totals[len(gram)] += c
    return LanguageProfile(
        lang=lang,
        n_min=n_min,
        n_max=n_max,
        alpha=alpha,
        counts=dict(counts),
        total_per_order=totals,
    )


def score(text: str, profile: LanguageProfile) -> float:
    """Mean log probability of ``text``'s pooled n-grams under ``profile``.

    ``text`` must already be normalized. Raises EmptyText when no grams
    can be extracted.
    """
    grams = extract_ngrams(text, profile.n_min, profile.n_max)
    total = sum(grams.values())
    if total == 0:
        raise EmptyText("text yields no n-grams to score")
    acc = 0.0
    for gram, c in grams.items():
        acc += c * profile.gram_log_prob(gram)
    return acc / total


def identify(
    text: str,
    profiles: ProfileSet,
    min_chars: int = DEFAULT_MIN_CHARS,
) -> list[Prediction]:
    """Rank the candidate languages for ``text``.

    The text is normalized first. When fewer than ``min_chars`` non-space
    codepoints remain (or the text is too short to produce any gram), the
    single reserved prediction ("und", confidence 1) is returned instead of
    an unreliable guess. Otherwise every profile is scored and confidences
    are a softmax over the mean log likelihoods; ties rank by ascending
    language code.
    """
    normalized = textnorm.normalize(text)
    significant = len(normalized) - normalized.count(" ")
    if significant < max(min_chars, 1) or len(normalized) < profiles.n_min:
        return [Prediction(UND, 0.0, 1.0)]

    scored = [(lang, score(normalized, p)) for lang, p in profiles.profiles.items()]
    peak = max(s for _, s in scored)
    weights = [(lang, s, math.exp(s - peak)) for lang, s in scored]
    denom = sum(w for _, _, w in weights)
    predictions = [Prediction(lang, s, w / denom) for lang, s, w in weights]
    predictions.sort(key=lambda p: (-p.avg_log_likelihood, p.lang))
    return predictions


# --- profile persistence ---


def profile_to_json(profile: LanguageProfile) -> str:
    """Canonical JSON rendering; stable byte-for-byte across round trips."""
    doc = {
        "version": profile.version,
        "lang": profile.lang,
        "n_min": profile.n_min,
        "n_max": profile.n_max,
        "alpha": profile.alpha,
        "total_per_order": {str(n): t for n, t in profile.total_per_order.items()},
        "counts": profile.counts,
    }
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=1) + "\n"


def save_profile(profile: LanguageProfile, path: str | Path) -> None:
    Path(path).write_text(profile_to_json(profile), encoding="utf-8")


def load_profile(path: str | Path) -> LanguageProfile:
    """Read a profile file, checking version and count consistency."""
    raw = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ProfileError(f"{path}: expected a JSON object")

    version = doc.get("version")
    if version != PROFILE_VERSION:
        raise ProfileError(
            f"{path}: unsupported profile version {version!r}, expected {PROFILE_VERSION}"
        )
    try:
        lang = doc["lang"]
        n_min = int(doc["n_min"])
        n_max = int(doc["n_max"])
        alpha = float(doc["alpha"])
        totals = {int(n): int(t) for n, t in doc["total_per_order"].items()}
        counts = {str(g): int(c) for g, c in doc["counts"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ProfileError(f"{path}: malformed profile: {exc}") from exc

    try:
        _check_lang(lang)
        _check_orders(n_min, n_max, alpha)
    except InvalidConfig as exc:
        raise ProfileError(f"{path}: {exc}") from exc

    recomputed = {n: 0 for n in range(n_min, n_max + 1)}
    for gram, c in counts.items():
        if not n_min <= len(gram) <= n_max or c < 0:
            raise ProfileError(f"{path}: count table entry {gram!r}={c} out of bounds")
        recomputed[len(gram)] += c
    if recomputed != totals:
        raise ProfileError(f"{path}: per-order totals disagree with count table")

    return LanguageProfile(
        lang=lang,
        n_min=n_min,
        n_max=n_max,
        alpha=alpha,
        counts=counts,
        total_per_order=totals,
    )


def load_profile_set(directory: str | Path) -> ProfileSet:
    """Load every ``*.profile`` file under ``directory`` into a ProfileSet."""
    paths = sorted(Path(directory).glob(f"*{PROFILE_SUFFIX}"))
    profiles: dict[str, LanguageProfile] = {}
    for path in paths:
        profile = load_profile(path)
        if profile.lang in profiles:
            raise ProfileError(f"{path}: duplicate profile for {profile.lang!r}")
        profiles[profile.lang] = profile
    if not profiles:
        raise EmptyProfileSet(f"no {PROFILE_SUFFIX} files in {directory}")
    return ProfileSet(profiles)
