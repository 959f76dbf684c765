"""Word categorization by (gender, last letter).

Most endings have a single declension category, so nothing needs to be looked
up. Endings shared by several categories (``i``, ``ṛ``, ``n`` …) cannot be told
apart from the letters of the word, so those words must be listed in a lexicon
bucket keyed by gender and last letter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from vibhakti.errors import ParseError, UnknownCategory, UnknownWord, UnsupportedEnding, VibhaktiError
from vibhakti.phonology import PhonemeString, as_phonemes, render, tokenize
from vibhakti.rules import Category, RuleSet, data_path, format_category, load_xprime, normalize_gender, parse_category


@dataclass(frozen=True)
class LexiconEntry:
    word: PhonemeString
    gender: str
    category: Category


@dataclass(frozen=True)
class Lexicon:
    # (gender, last letter) -> {category: frozenset of words}
    buckets: Mapping[tuple[str, str], Mapping[Category, frozenset[str]]] = field(default_factory=dict)

    def lookup(self, word: str | PhonemeString, gender: str = "m") -> Category:
        ps = as_phonemes(word)
        bucket = self.buckets.get((normalize_gender(gender), ps.last.symbol), {})
        text = render(ps)
        for category, words in bucket.items():
            if text in words:
                return category
        raise KeyError(text)

    def entries(self) -> list[LexiconEntry]:
        out = []
        for (gender, _), bucket in self.buckets.items():
            for category, words in bucket.items():
                out.extend(LexiconEntry(tokenize(w), gender, category) for w in sorted(words))
        return out

    def __len__(self) -> int:
        return sum(len(words) for bucket in self.buckets.values() for words in bucket.values())


def _known_categories(xprime) -> dict[tuple[str, str], set[Category]]:
    known: dict[tuple[str, str], set[Category]] = {}
    for gender, letter, category in xprime:
        known.setdefault((gender, letter), set()).add(category)
    return known


def parse_lexicon(lines: Iterable[str], xprime, source: str = "<lexicon>") -> Lexicon:
    known = _known_categories(xprime)
    buckets: dict[tuple[str, str], dict[Category, set[str]]] = {}
    seen: dict[tuple[str, str], set[str]] = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(f"expected word<TAB>gender<TAB>category, got {line!r}", lineno, source)
        raw_word, raw_gender, raw_cat = (f.strip() for f in fields)
        try:
            word = tokenize(raw_word)
            gender = normalize_gender(raw_gender)
            category = parse_category(raw_cat)
        except (ValueError, VibhaktiError) as exc:
            raise ParseError(str(exc), lineno, source) from None
        if not word:
            raise ParseError("empty word", lineno, source)
        key = (gender, word.last.symbol)
        if category not in known.get(key, set()):
            raise UnknownCategory(
                f"no category {format_category(category)} for {gender}-ending {key[1]!r}",
                lineno, source,
            )
        text = render(word)
        if text in seen.setdefault(key, set()):
            raise ParseError(f"duplicate word {text!r}", lineno, source)
        seen[key].add(text)
        buckets.setdefault(key, {}).setdefault(category, set()).add(text)
    frozen = {k: {c: frozenset(ws) for c, ws in b.items()} for k, b in buckets.items()}
    return Lexicon(frozen)


def load_lexicon(source: str | Path | None = None, xprime=None) -> Lexicon:
    """Read a ``word<TAB>gender<TAB>category`` file; ``None`` loads the seed lexicon.

    Categories are validated against the x' table (*xprime*, shipped table by
    default), since that table lists every category an ending can have.
    """
    path = Path(source) if source is not None else data_path("lexicon.tsv")
    if xprime is None:
        xprime = load_xprime()
    elif isinstance(xprime, RuleSet):
        xprime = xprime.xprime
    try:
        text = path.read_text("utf-8")
    except OSError as exc:
        raise ParseError(str(exc), source=str(path)) from None
    return parse_lexicon(text.splitlines(), xprime, str(path))


def categorize(word: str | PhonemeString, gender: str, lex: Lexicon, rules: RuleSet) -> Category:
    """Resolve the declension category of *word*.

    Single-category endings never consult the lexicon. For shared endings the
    word must be listed; there is no letter-based fallback.
    """
    ps = as_phonemes(word)
    g = normalize_gender(gender)
    letter = ps.last.symbol
    candidates = rules.categories(g, letter)
    if not candidates:
        raise UnsupportedEnding(f"no masculine declension class ends in {letter!r} ({render(ps)})")
    if len(candidates) == 1:
        return candidates[0]
    try:
        return lex.lookup(ps, g)
    except KeyError:
        raise UnknownWord(
            f"{render(ps)!r}: ending {letter!r} has categories "
            f"{', '.join(format_category(c) for c in candidates)}; word not in lexicon"
        ) from None
