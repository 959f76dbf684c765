"""Inflection-aware search over IAST text files.

Text is scanned line by line with the same longest-match tokenizer used for
words. Any character outside the sound inventory (spaces, punctuation, digits,
Devanagari) acts as a separator, and a key only matches a contiguous run of
phonemes, so ``rāma`` does not match inside ``rāmau``.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

from vibhakti.errors import CorpusIOError
from vibhakti.generator import WORD_LABEL, InflectionResult, generate_full, generate_search_keys
from vibhakti.lexicon import Lexicon, categorize
from vibhakti.phonology import Phoneme, PhonemeString, as_phonemes, render, scan
from vibhakti.rules import Category, RuleSet


@dataclass(frozen=True)
class SearchKey:
    phonemes: PhonemeString
    formula: str = ""

    def __str__(self) -> str:
        return render(self.phonemes)


@dataclass(frozen=True, order=True)
class SearchMatch:
    file: str
    byte_offset: int
    line: int
    column: int
    matched_key: PhonemeString
    key_formula: str

    def to_record(self) -> dict:
        return {
            "file": self.file,
            "offset": self.byte_offset,
            "line": self.line,
            "column": self.column,
            "key": render(self.matched_key),
            "formula": self.key_formula,
        }

    def tsv(self) -> str:
        return "\t".join([self.file, str(self.byte_offset), str(self.line), str(self.column),
                          render(self.matched_key), self.key_formula])


KeysLike = Union[InflectionResult, Iterable[Union[str, PhonemeString, SearchKey, tuple]]]


def as_search_keys(keys: KeysLike) -> list[SearchKey]:
    """Accept an InflectionResult, plain words, or ``(word, formula)`` pairs."""
    if isinstance(keys, InflectionResult):
        pairs = zip(keys.forms, keys.provenance or [""] * len(keys.forms))
        return [SearchKey(f, label) for f, label in pairs]
    out = []
    for k in keys:
        if isinstance(k, SearchKey):
            out.append(k)
        elif isinstance(k, tuple) and not isinstance(k, PhonemeString):
            word, label = k
            out.append(SearchKey(as_phonemes(word), label))
        else:
            out.append(SearchKey(as_phonemes(k)))
    return out


class _KeyIndex:
    def __init__(self, keys: Sequence[SearchKey]):
        by_first: dict[str, list[tuple[tuple[str, ...], SearchKey]]] = {}
        seen = set()
        for key in keys:
            symbols = key.phonemes.symbols
            if not symbols or symbols in seen:
                continue
            seen.add(symbols)
            by_first.setdefault(symbols[0], []).append((symbols, key))
        # Longest first, so the first hit at an offset is the one reported.
        for bucket in by_first.values():
            bucket.sort(key=lambda item: -len(item[0]))
        self.by_first = by_first

    def longest_at(self, run: Sequence[str], i: int) -> SearchKey | None:
        for symbols, key in self.by_first.get(run[i], ()):
            if tuple(run[i:i + len(symbols)]) == symbols:
                return key
        return None


def _runs(line: str) -> list[list[tuple[int, int, Phoneme]]]:
    """Split a line into maximal phoneme runs of ``(char_pos, column, phoneme)``.

    Columns count phonemes and separator characters alike, starting at 1.
    """
    runs: list[list[tuple[int, int, Phoneme]]] = []
    current: list[tuple[int, int, Phoneme]] = []
    for column, (pos, phoneme, _) in enumerate(scan(line), 1):
        if phoneme is None:
            if current:
                runs.append(current)
                current = []
        else:
            current.append((pos, column, phoneme))
    if current:
        runs.append(current)
    return runs


def search_text(keys: KeysLike, text: str, name: str = "<text>",
                boundary: bool = False) -> list[SearchMatch]:
    """Search an in-memory text. Offsets are UTF-8 byte offsets into the NFC text."""
    index = _KeyIndex(as_search_keys(keys))
    matches = []
    byte_base = 0
    for lineno, raw_line in enumerate(unicodedata.normalize("NFC", text).split("\n"), 1):
        line = raw_line.rstrip("\r")
        for run in _runs(line):
            symbols = [p.symbol for _, _, p in run]
            starts = range(1) if boundary else range(len(run))
            for i in starts:
                key = index.longest_at(symbols, i)
                if key is None:
                    continue
                char_pos, column, _ = run[i]
                matches.append(SearchMatch(
                    file=name,
                    byte_offset=byte_base + len(line[:char_pos].encode("utf-8")),
                    line=lineno,
                    column=column,
                    matched_key=key.phonemes,
                    key_formula=key.formula,
                ))
        byte_base += len(raw_line.encode("utf-8")) + 1
    return matches


def search_corpus(keys: KeysLike, files: Iterable[str | Path],
                  boundary: bool = False) -> list[SearchMatch]:
    """Report every occurrence of any key in the given UTF-8 files.

    When several keys start at the same offset only the longest is reported.
    With ``boundary=True`` a match must start a phoneme run (line start or
    right after a separator). Results are sorted by (file, offset).
    """
    key_list = as_search_keys(keys)
    if not key_list:
        raise ValueError("at least one search key is required")
    matches: list[SearchMatch] = []
    for f in files:
        path = Path(f)
        try:
            text = path.read_bytes().decode("utf-8")
        except OSError as exc:
            raise CorpusIOError(str(f), exc.strerror or str(exc)) from None
        except UnicodeDecodeError as exc:
            raise CorpusIOError(str(f), f"not valid UTF-8 ({exc.reason} at byte {exc.start})") from None
        matches.extend(search_text(key_list, text, str(f), boundary))
    matches.sort(key=lambda m: (m.file, m.byte_offset))
    return matches


# -- recall ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class RecallRow:
    form: str
    formula: str
    hits: int
    keys: tuple[str, ...]


@dataclass(frozen=True)
class RecallReport:
    word: str
    key_mode: str
    keys: tuple[str, ...]
    rows: tuple[RecallRow, ...]

    @property
    def found(self) -> int:
        return sum(1 for r in self.rows if r.hits > 0)

    @property
    def recall(self) -> float:
        return self.found / len(self.rows) if self.rows else 1.0

    @property
    def complete(self) -> bool:
        return self.found == len(self.rows)

    @property
    def each_found_once(self) -> bool:
        return all(r.hits == 1 for r in self.rows)

    @property
    def missed(self) -> list[str]:
        return [r.form for r in self.rows if r.hits == 0]

    def __str__(self) -> str:
        lines = [f"{self.word} ({self.key_mode} keys: {', '.join(self.keys)}): "
                 f"{self.found}/{len(self.rows)} forms found"]
        for r in self.rows:
            status = "hit " if r.hits else "MISS"
            lines.append(f"  {status} {r.form:<14} {','.join(r.keys)}".rstrip())
        return "\n".join(lines)


def recall_check(word: str | PhonemeString, gender: str, category: Category | str,
                 rules: RuleSet, lex: Lexicon | None = None,
                 key_mode: str = "reduced") -> RecallReport:
    """Search a synthetic corpus holding each full form once, one per line.

    ``key_mode="reduced"`` uses the word plus the reduced-formula keys;
    ``key_mode="word"`` uses the bare word only, as a naive baseline.
    """
    X = as_phonemes(word)
    if category == "auto":
        category = categorize(X, gender, lex or Lexicon(), rules)
    full = generate_full(X, gender, category, rules)
    if key_mode == "reduced":
        keys = as_search_keys(generate_search_keys(X, gender, category, rules))
    elif key_mode == "word":
        keys = [SearchKey(X, WORD_LABEL)]
    else:
        raise ValueError(f"key_mode must be 'reduced' or 'word', got {key_mode!r}")
    corpus = "\n".join(full.strings())
    per_line: dict[int, list[str]] = {}
    for m in search_text(keys, corpus, "<recall>"):
        per_line.setdefault(m.line, []).append(render(m.matched_key))
    rows = tuple(
        RecallRow(form, formula, len(per_line.get(i, [])), tuple(per_line.get(i, [])))
        for i, (form, formula) in enumerate(zip(full.strings(), full.provenance), 1)
    )
    return RecallReport(render(X), key_mode, tuple(str(k) for k in keys), rows)
