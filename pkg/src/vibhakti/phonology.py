"""IAST sound inventory and the single-sound operations used by the declension formulas.

Words are handled as :class:`PhonemeString` values, tuples of :class:`Phoneme`.
Working at the phoneme level matters: ``ai`` is one vowel, not ``a`` + ``i``,
and ``kh`` is one consonant. Everything downstream (formula evaluation, corpus
matching) compares phonemes, never raw characters.

The inventory and both operation tables are read from ``data/inventory.tsv``.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Iterator

from vibhakti.errors import EmptyWord, InvalidCharacter, NotAMute, UndefinedOperation

VOWEL_OPS = ("dirgha", "guna", "vrddhi", "ayadi", "yan")
MUTE_OPS = ("soften", "harden", "nasalize")
KLASSES = ("vowel", "mute", "semivowel", "sibilant", "aspirateH", "anusvara", "visarga")


@dataclass(frozen=True)
class Phoneme:
    symbol: str
    klass: str
    row: int | None = None
    column: int | None = None

    @property
    def is_vowel(self) -> bool:
        return self.klass == "vowel"

    @property
    def is_mute(self) -> bool:
        return self.klass == "mute"

    def __str__(self) -> str:
        return self.symbol

    def __repr__(self) -> str:
        return f"Phoneme({self.symbol!r})"


class PhonemeString(tuple):
    """An immutable sequence of phonemes; ``str()`` renders it back to IAST."""

    def __new__(cls, phonemes: Iterable[Phoneme] = ()):
        return super().__new__(cls, phonemes)

    @classmethod
    def from_iast(cls, text: str) -> "PhonemeString":
        return tokenize(text)

    def __getitem__(self, index):
        result = super().__getitem__(index)
        if isinstance(index, slice):
            return PhonemeString(result)
        return result

    def __add__(self, other):
        return PhonemeString(tuple(self) + tuple(other))

    def __radd__(self, other):
        return PhonemeString(tuple(other) + tuple(self))

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(p.symbol for p in self)

    @property
    def last(self) -> Phoneme:
        if not self:
            raise EmptyWord("empty word has no last letter")
        return self[-1]

    def find_all(self, needle: "PhonemeString") -> Iterator[int]:
        """Yield every start index at which *needle* occurs contiguously."""
        n, m = len(self), len(needle)
        if m == 0:
            return
        for i in range(n - m + 1):
            if tuple.__getitem__(self, slice(i, i + m)) == tuple(needle):
                yield i

    def contains(self, needle: "PhonemeString") -> bool:
        return next(self.find_all(needle), None) is not None

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"PhonemeString({render(self)!r})"


# -- inventory ---------------------------------------------------------------


@dataclass(frozen=True)
class Inventory:
    phonemes: dict[str, Phoneme]
    vowel_table: dict[tuple[str, str], tuple[str, ...] | None]
    grid: dict[tuple[int, int], Phoneme]

    @property
    def max_symbol_length(self) -> int:
        return max(len(s) for s in self.phonemes)


def _cell(value: str) -> int | None:
    return None if value == "-" else int(value)


def parse_inventory(lines: Iterable[str]) -> Inventory:
    phonemes: dict[str, Phoneme] = {}
    table: dict[tuple[str, str], tuple[str, ...] | None] = {}
    raw_ops: dict[str, list[str]] = {}
    for line in lines:
        line = line.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        symbol, klass, row, column, *ops = line.split("\t")
        if klass not in KLASSES:
            raise ValueError(f"unknown phoneme class {klass!r} for {symbol!r}")
        phonemes[symbol] = Phoneme(symbol, klass, _cell(row), _cell(column))
        if klass == "vowel":
            raw_ops[symbol] = ops
    # Table cells are tokenized only once every symbol is known.
    for symbol, ops in raw_ops.items():
        for op, cell in zip(VOWEL_OPS, ops):
            table[(symbol, op)] = None if cell == "-" else _greedy(cell, phonemes)
    grid = {(p.row, p.column): p for p in phonemes.values() if p.is_mute}
    if len(grid) != 25:
        raise ValueError("mute grid must have 25 cells")
    return Inventory(phonemes, table, grid)


@lru_cache(maxsize=None)
def inventory() -> Inventory:
    text = (resources.files("vibhakti") / "data" / "inventory.tsv").read_text("utf-8")
    return parse_inventory(text.splitlines())


def phoneme(symbol: str) -> Phoneme:
    try:
        return inventory().phonemes[symbol]
    except KeyError:
        raise InvalidCharacter(symbol, 0) from None


def _greedy(text: str, phonemes: dict[str, Phoneme]) -> tuple[str, ...]:
    out = []
    i = 0
    while i < len(text):
        for size in (2, 1):
            chunk = text[i:i + size]
            if len(chunk) == size and chunk in phonemes:
                out.append(chunk)
                i += size
                break
        else:
            raise InvalidCharacter(text, i)
    return tuple(out)


# -- tokenize / render -----------------------------------------------------------


def scan(text: str) -> Iterator[tuple[int, Phoneme | None, int]]:
    """Longest-match scan yielding ``(start, phoneme_or_None, length)``.

    Characters outside the inventory come back as ``None`` with length 1, so
    callers can decide whether they are errors or separators.
    """
    table = inventory().phonemes
    width = inventory().max_symbol_length
    i = 0
    while i < len(text):
        for size in range(width, 0, -1):
            chunk = text[i:i + size]
            if len(chunk) == size and chunk in table:
                yield i, table[chunk], size
                i += size
                break
        else:
            yield i, None, 1
            i += 1


def tokenize(text: str) -> PhonemeString:
    """Split an NFC IAST string into phonemes by longest match.

    >>> tokenize("sakhāyau").symbols
    ('s', 'a', 'kh', 'ā', 'y', 'au')
    """
    text = unicodedata.normalize("NFC", text)
    out = []
    for pos, ph, _ in scan(text):
        if ph is None:
            raise InvalidCharacter(text, pos)
        out.append(ph)
    return PhonemeString(out)


def render(ps: Iterable[Phoneme]) -> str:
    return "".join(p.symbol for p in ps)


def as_phonemes(word: str | Iterable[Phoneme]) -> PhonemeString:
    if isinstance(word, PhonemeString):
        return word
    if isinstance(word, str):
        return tokenize(word)
    return PhonemeString(word)


# -- vowel operations --------------------------------------------------------------


def vowel_op(v: Phoneme, op: str) -> PhonemeString:
    """Look up the vowel-table cell for *op* applied to vowel *v*.

    The result is always a PhonemeString because some cells hold two sounds
    (guna of ṛ is ``ar``, ayadi of au is ``āv``).
    """
    if op not in VOWEL_OPS:
        raise ValueError(f"unknown vowel operation {op!r}")
    if not v.is_vowel:
        raise UndefinedOperation(op, v.symbol, "not a vowel")
    cell = inventory().vowel_table[(v.symbol, op)]
    if cell is None:
        raise UndefinedOperation(op, v.symbol)
    return PhonemeString(phoneme(s) for s in cell)


def dirgha(v: Phoneme) -> PhonemeString:
    return vowel_op(v, "dirgha")


def guna(v: Phoneme) -> PhonemeString:
    return vowel_op(v, "guna")


def vrddhi(v: Phoneme) -> PhonemeString:
    return vowel_op(v, "vrddhi")


def ayadi(v: Phoneme) -> PhonemeString:
    return vowel_op(v, "ayadi")


def yan(v: Phoneme) -> PhonemeString:
    return vowel_op(v, "yan")


# -- mute operations ----------------------------------------------------------------


def mute_op(c: Phoneme, op: str, row: int | None = None) -> Phoneme:
    """Move *c* within the stop grid.

    ``soften``/``harden``/``nasalize`` keep the row and jump to column 3/1/5;
    ``row_shift`` keeps the column and jumps to *row*.
    """
    if not c.is_mute:
        raise NotAMute(op, c.symbol, "not a mute consonant")
    grid = inventory().grid
    if op == "soften":
        return grid[(c.row, 3)]
    if op == "harden":
        return grid[(c.row, 1)]
    if op == "nasalize":
        return grid[(c.row, 5)]
    if op == "row_shift":
        if row not in (1, 2, 3, 4, 5):
            raise ValueError(f"row must be 1..5, got {row!r}")
        return grid[(row, c.column)]
    raise ValueError(f"unknown mute operation {op!r}")


def soften(c: Phoneme) -> Phoneme:
    return mute_op(c, "soften")


def harden(c: Phoneme) -> Phoneme:
    return mute_op(c, "harden")


def nasalize(c: Phoneme) -> Phoneme:
    return mute_op(c, "nasalize")


def row_shift(c: Phoneme, row: int) -> Phoneme:
    return mute_op(c, "row_shift", row)


# -- word-level operations ---------------------------------------------------------


def lopa(w: PhonemeString) -> PhonemeString:
    """Drop the final phoneme."""
    if not w:
        raise EmptyWord("cannot elide from an empty word")
    return PhonemeString(w[:-1])


NATVA_TRIGGERS = frozenset({"r", "ṛ", "ṝ", "ṣ"})
# Sounds that may stand between the trigger and n without blocking.
NATVA_INTERVENERS = frozenset(
    {"y", "v", "h", "ṃ", "k", "kh", "g", "gh", "ṅ", "p", "ph", "b", "bh", "m"}
)


def _may_intervene(p: Phoneme) -> bool:
    return p.is_vowel or p.symbol in NATVA_INTERVENERS


def natva(w: PhonemeString) -> PhonemeString:
    """Retroflex every n that follows r/ṛ/ṝ/ṣ across permitted sounds and precedes a vowel.

    >>> str(natva(tokenize("rāmena")))
    'rāmeṇa'
    """
    w = as_phonemes(w)
    out = list(w)
    retroflex_n = phoneme("ṇ")
    for j, p in enumerate(w):
        if p.symbol != "n" or j + 1 >= len(w) or not w[j + 1].is_vowel:
            continue
        for i in range(j - 1, -1, -1):
            q = w[i]
            if q.symbol in NATVA_TRIGGERS:
                out[j] = retroflex_n
                break
            if not _may_intervene(q):
                break
    return PhonemeString(out)
