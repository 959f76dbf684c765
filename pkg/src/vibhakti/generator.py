"""Formula evaluation and generation of full form sets and search keys."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

from vibhakti import phonology as ph
from vibhakti.errors import EmptyWord, UndefinedOperation
from vibhakti.lexicon import Lexicon, categorize
from vibhakti.phonology import PhonemeString, as_phonemes, render
from vibhakti.rules import (
    Category,
    Formula,
    Literal,
    OPCODES,
    RuleSet,
    StemRef,
    format_category,
    normalize_gender,
    stem,
)

WORD_LABEL = "X"


def _replace_last(w: PhonemeString, replacement: Iterable[ph.Phoneme]) -> PhonemeString:
    return PhonemeString(w[:-1]) + PhonemeString(replacement)


def apply_op(w: PhonemeString, code: str) -> PhonemeString:
    """Apply one chain operation to the final sound of *w* (or to all of *w* for natva)."""
    name = OPCODES[code]
    if name == "lopa":
        return ph.lopa(w)
    if name == "natva":
        return ph.natva(w)
    if not w:
        raise EmptyWord(f"operation {name!r} on an empty word")
    last = w[-1]
    if name in ph.VOWEL_OPS:
        return _replace_last(w, ph.vowel_op(last, name))
    if name == "row_shift":
        return _replace_last(w, [ph.row_shift(last, int(code))])
    return _replace_last(w, [ph.mute_op(last, name)])


def eval_formula(f: Formula, X: str | PhonemeString,
                 X_prime: str | PhonemeString | None = None) -> PhonemeString:
    """Evaluate *f* for the word *X* and its pre-transformed form *X_prime*.

    >>> from vibhakti.rules import parse_formula
    >>> str(eval_formula(parse_formula("(x + @19).y"), "hari", "hare"))
    'haryoḥ'
    """
    X = as_phonemes(X)
    if f.base.prime:
        if X_prime is None:
            raise ValueError(f"formula {f} needs x' but none was given")
        base = as_phonemes(X_prime)
    else:
        base = X
    for k, code in enumerate(f.base.ops):
        try:
            base = apply_op(base, code)
        except UndefinedOperation as exc:
            raise UndefinedOperation(
                exc.op, exc.symbol, f"formula {f}, operation {k + 1} ({code!r}), word {render(X)}"
            ) from None
    tail = PhonemeString()
    for atom in f.tail:
        if isinstance(atom, StemRef):
            tail = tail + stem(atom.index)
        else:
            tail = tail + ph.tokenize(atom.text)
    if f.closure == "y" and base and tail and base[-1].is_vowel and tail[0].is_vowel:
        try:
            base = _replace_last(base, ph.yan(base[-1]))
        except UndefinedOperation as exc:
            raise UndefinedOperation(exc.op, exc.symbol,
                                     f"junction closure of formula {f}, word {render(X)}") from None
    result = base + tail
    if f.closure == "c":
        result = ph.natva(result)
    return result


def compute_x_prime(X: str | PhonemeString, gender: str, category: Category,
                    rules: RuleSet) -> PhonemeString:
    X = as_phonemes(X)
    recipe = rules.recipe(gender, X.last.symbol, category)
    return eval_formula(recipe.formula, X)


@dataclass(frozen=True)
class InflectionResult:
    word: PhonemeString
    x_prime_form: PhonemeString
    forms: tuple[PhonemeString, ...]
    mode: str
    provenance: tuple[str, ...] = field(default=())

    def __iter__(self):
        return iter(self.forms)

    def __len__(self) -> int:
        return len(self.forms)

    def strings(self) -> list[str]:
        return [render(f) for f in self.forms]

    def to_record(self) -> dict:
        return {
            "word": render(self.word),
            "xPrime": render(self.x_prime_form),
            "mode": self.mode,
            "forms": self.strings(),
            "formulas": list(self.provenance),
        }


def _evaluate_all(formulas: Sequence[Formula], X: PhonemeString, X_prime: PhonemeString,
                  seed: Sequence[tuple[PhonemeString, str]] = (),
                  exclude: PhonemeString | None = None):
    forms: list[PhonemeString] = []
    labels: list[str] = []
    seen: set[tuple[str, ...]] = set()
    candidates = list(seed) + [(eval_formula(f, X, X_prime), str(f)) for f in formulas]
    for form, label in candidates:
        key = form.symbols
        if key in seen or (exclude is not None and key == exclude.symbols):
            continue
        seen.add(key)
        forms.append(form)
        labels.append(label)
    return tuple(forms), tuple(labels)


def generate_full(X: str | PhonemeString, gender: str, category: Category,
                  rules: RuleSet) -> InflectionResult:
    """Every distinct inflected form, in rule-file order, without the word itself."""
    X = as_phonemes(X)
    formulas = rules.full_formulas(gender, X.last.symbol, category)
    X_prime = compute_x_prime(X, gender, category, rules)
    forms, labels = _evaluate_all(formulas, X, X_prime, exclude=X)
    return InflectionResult(X, X_prime, forms, "full", labels)


def generate_search_keys(X: str | PhonemeString, gender: str, category: Category,
                         rules: RuleSet) -> InflectionResult:
    """The word itself followed by the distinct reduced-formula keys."""
    X = as_phonemes(X)
    formulas = rules.reduced_formulas(gender, X.last.symbol, category)
    X_prime = compute_x_prime(X, gender, category, rules)
    forms, labels = _evaluate_all(formulas, X, X_prime, seed=[(X, WORD_LABEL)])
    return InflectionResult(X, X_prime, forms, "reduced", labels)


def generate_inflections(word: str | PhonemeString, gender: str, rules: RuleSet,
                         lexicon: Lexicon | None = None, category: Category | str = "auto",
                         mode: str = "full") -> InflectionResult:
    """Run the whole pipeline: find the category (unless given), then generate."""
    X = as_phonemes(word)
    gender = normalize_gender(gender)
    if category == "auto":
        category = categorize(X, gender, lexicon or Lexicon(), rules)
    if mode == "full":
        return generate_full(X, gender, category, rules)
    if mode == "reduced":
        return generate_search_keys(X, gender, category, rules)
    raise ValueError(f"mode must be 'full' or 'reduced', got {mode!r}")


# -- reduction statistics ---------------------------------------------------------------

_CENT = Decimal("0.01")


def percent_reduction(full: int, reduced: int) -> Decimal:
    """``100 * (1 - reduced/full)`` rounded half-up to two decimals."""
    if full <= 0:
        raise ValueError("full count must be positive")
    value = Decimal(100) * (Decimal(1) - Decimal(reduced) / Decimal(full))
    return value.quantize(_CENT, rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class StatsRow:
    ending: str
    category: Category
    full: int | None
    reduced: int | None

    @property
    def complete(self) -> bool:
        return self.full is not None and self.reduced is not None

    @property
    def percent(self) -> Decimal | None:
        return percent_reduction(self.full, self.reduced) if self.complete else None

    def cells(self) -> list[str]:
        def show(v):
            return "n/a" if v is None else str(v)
        return [self.ending, format_category(self.category), show(self.full),
                show(self.reduced), show(self.percent)]


@dataclass(frozen=True)
class ReductionStats:
    rows: tuple[StatsRow, ...]
    flagged: tuple[StatsRow, ...]

    @property
    def total(self) -> StatsRow | None:
        if not self.rows:
            return None
        return StatsRow("Total", None, sum(r.full for r in self.rows),
                        sum(r.reduced for r in self.rows))

    def lookup(self, ending: str, category: Category) -> StatsRow:
        for row in self.rows + self.flagged:
            if row.ending == ending and row.category == category:
                return row
        raise KeyError((ending, category))


def reduction_stats(rules: RuleSet, gender: str = "m") -> ReductionStats:
    """Formula counts of the full and reduced lists per (ending, category).

    Pairs with only one of the two lists are returned in ``flagged``.
    """
    g = normalize_gender(gender)
    rows, flagged = [], []
    for gg, letter, category in rules.xprime:
        if gg != g:
            continue
        full = len(rules.full_formulas(g, letter, category)) if rules.has_full(g, letter, category) else None
        reduced = (len(rules.reduced_formulas(g, letter, category))
                   if rules.has_reduced(g, letter, category) else None)
        if full is None and reduced is None:
            continue
        row = StatsRow(letter, category, full, reduced)
        (rows if row.complete else flagged).append(row)
    return ReductionStats(tuple(rows), tuple(flagged))
