"""Stem index, the formula notation, and loading of rule files.

A formula names a base (the word ``x`` or its pre-transformed form ``x'``),
an optional chain of single-letter operations on the base's final sound, and a
``+``-joined tail of stem references (``@N``) and quoted literals. A closure
suffix after a parenthesised formula applies to the whole result::

    x' + @2
    (x.d + @7 + @20).c
    x.ll + "ñ"

Rule files are XML: ``Gender/LastLetter`` carries the formulas shared by every
category of that ending, and ``Category`` children carry the rest. The x'
recipes live in a separate TSV table.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Union

from vibhakti.errors import (
    FormulaSyntaxError,
    NoRecipe,
    NoRuleData,
    ParseError,
    StemIndexOutOfRange,
    UnknownOpCode,
    UnsupportedEnding,
    VibhaktiError,
    XmlError,
)
from vibhakti.phonology import PhonemeString, tokenize

# Stem index, 1-based.
STEMS = (
    "ḥ", "au", "aḥ", "āḥ", "am", "m", "n", "a", "ā", "bhyām",
    "bhiḥ", "aiḥ", "e", "āya", "uḥ", "bhyaḥ", "t", "yoḥ", "oḥ", "ām",
    "sya", "i", "nām", "su", "ṣu", "āy", "ena", "nā", "ai", "y",
    "r", "u", "naḥ", "nau", "ān", "nam", "āṃs",
)

OPCODES = {
    "l": "lopa",
    "d": "dirgha",
    "g": "guna",
    "v": "vrddhi",
    "a": "ayadi",
    "y": "yan",
    "s": "soften",
    "h": "harden",
    "n": "nasalize",
    "c": "natva",
    "1": "row_shift",
    "2": "row_shift",
    "3": "row_shift",
    "4": "row_shift",
    "5": "row_shift",
}
CLOSURES = {"c": "natva", "y": "junction-yan"}

GENDERS = {"m": "m", "masculine": "m"}


def normalize_gender(gender: str) -> str:
    try:
        return GENDERS[gender.strip().lower()]
    except KeyError:
        raise UnsupportedEnding(f"unsupported gender {gender!r} (only masculine is modelled)") from None


def stem(i: int) -> PhonemeString:
    if not isinstance(i, int) or not 1 <= i <= len(STEMS):
        raise StemIndexOutOfRange(f"stem index {i!r} outside 1..{len(STEMS)}")
    return tokenize(STEMS[i - 1])


# -- formula AST ---------------------------------------------------------------


@dataclass(frozen=True)
class Base:
    prime: bool = False
    ops: str = ""

    def __str__(self) -> str:
        name = "x'" if self.prime else "x"
        return f"{name}.{self.ops}" if self.ops else name


@dataclass(frozen=True)
class StemRef:
    index: int

    def __str__(self) -> str:
        return f"@{self.index}"


@dataclass(frozen=True)
class Literal:
    text: str

    def __str__(self) -> str:
        return f'"{self.text}"'


Atom = Union[StemRef, Literal]


@dataclass(frozen=True)
class Formula:
    base: Base
    tail: tuple[Atom, ...] = ()
    closure: str | None = None

    @property
    def parts(self) -> tuple:
        return (self.base, *self.tail)

    def __str__(self) -> str:
        seq = " + ".join(str(p) for p in self.parts)
        if self.closure:
            return f"({seq}).{self.closure}"
        return seq


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<base>[xX](?:'|′)?)
       |(?P<dot>\.)(?P<ops>[^\s+(),."@]*)
       |(?P<plus>\+)
       |(?P<stem>@\s*(?P<num>\d*))
       |(?P<lit>"(?P<littext>[^"]*)")
       |(?P<lparen>\()
       |(?P<rparen>\))
    )""",
    re.VERBOSE,
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, re.Match]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m or m.end() == pos:
                bad = pos + len(stripped[pos:]) - len(stripped[pos:].lstrip())
                raise FormulaSyntaxError("unexpected character", text, bad)
            self.tokens.append((_kind(m), m))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        if self.i < len(self.tokens):
            kind, m = self.tokens[self.i]
            return m.start(kind)
        return len(self.text)

    def take(self, kind: str) -> re.Match:
        if self.peek() != kind:
            found = self.peek() or "end of input"
            raise FormulaSyntaxError(f"expected {kind}, found {found}", self.text, self.pos())
        m = self.tokens[self.i][1]
        self.i += 1
        return m

    def parse(self) -> Formula:
        if self.peek() == "lparen":
            self.take("lparen")
            base, tail = self.seq()
            self.take("rparen")
            m = self.take("dot")
            closure = m.group("ops")
            if closure not in CLOSURES:
                raise FormulaSyntaxError(
                    f"unknown closure {closure!r} (expected one of {sorted(CLOSURES)})",
                    self.text, m.start("ops"),
                )
            formula = Formula(base, tail, closure)
        else:
            base, tail = self.seq()
            formula = Formula(base, tail)
        if self.peek() is not None:
            raise FormulaSyntaxError("trailing input", self.text, self.pos())
        return formula

    def seq(self) -> tuple[Base, tuple[Atom, ...]]:
        m = self.take("base")
        prime = len(m.group("base")) > 1
        ops = ""
        if self.peek() == "dot":
            dm = self.take("dot")
            ops = dm.group("ops")
            if not ops:
                raise FormulaSyntaxError("empty operation chain", self.text, dm.start("dot"))
            for k, code in enumerate(ops):
                if code not in OPCODES:
                    raise UnknownOpCode(f"unknown operation code {code!r}", self.text,
                                        dm.start("ops") + k)
        tail: list[Atom] = []
        while self.peek() == "plus":
            self.take("plus")
            kind = self.peek()
            if kind == "stem":
                sm = self.take("stem")
                if not sm.group("num"):
                    raise FormulaSyntaxError("missing stem number", self.text, sm.start("stem"))
                index = int(sm.group("num"))
                if not 1 <= index <= len(STEMS):
                    raise StemIndexOutOfRange(f"stem index {index} outside 1..{len(STEMS)}",
                                              self.text, sm.start("stem"))
                tail.append(StemRef(index))
            elif kind == "lit":
                lm = self.take("lit")
                value = lm.group("littext")
                if not value:
                    raise FormulaSyntaxError("empty literal", self.text, lm.start("lit"))
                try:
                    tokenize(value)
                except VibhaktiError as exc:
                    raise FormulaSyntaxError(f"literal is not IAST: {exc}", self.text,
                                             lm.start("lit")) from None
                tail.append(Literal(value))
            else:
                raise FormulaSyntaxError("expected @N or quoted literal after '+'",
                                         self.text, self.pos())
        return Base(prime, ops), tuple(tail)


def _kind(m: re.Match) -> str:
    for name in ("base", "dot", "plus", "stem", "lit", "lparen", "rparen"):
        if m.group(name) is not None:
            return name
    raise AssertionError(m)


def parse_formula(text: str) -> Formula:
    """Parse one formula from its ASCII notation.

    >>> str(parse_formula("( x.d+@7 + @20 ).c"))
    '(x.d + @7 + @20).c'
    """
    return _Parser(text).parse()


def split_formulas(text: str) -> list[str]:
    """Split a comma-separated formula list, ignoring commas inside quotes."""
    items, buf, quoted = [], [], False
    for ch in text:
        if ch == '"':
            quoted = not quoted
        if ch == "," and not quoted:
            items.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    items.append("".join(buf))
    items = [" ".join(s.split()) for s in items]
    if items and items[-1] == "":
        items.pop()
    return items


# -- rule files -------------------------------------------------------------------

Category = Union[int, None]


@dataclass(frozen=True)
class LetterRules:
    common: tuple[Formula, ...] = ()
    categories: Mapping[int, tuple[Formula, ...]] = field(default_factory=dict)


RuleTable = Mapping[tuple[str, str], LetterRules]


def _parse_list(text: str | None, path: str) -> tuple[Formula, ...]:
    out = []
    for item in split_formulas(text or ""):
        if not item:
            raise FormulaSyntaxError("empty formula in list", text or "", path=path)
        try:
            out.append(parse_formula(item))
        except FormulaSyntaxError as exc:
            exc.path = path
            exc.args = (f"{exc.args[0]} [{path}]",)
            raise
    return tuple(out)


def parse_rule_file(source: str | Path) -> dict[tuple[str, str], LetterRules]:
    """Read one rule file into ``{(gender, last_letter): LetterRules}``."""
    try:
        root = ET.parse(str(source)).getroot()
    except ET.ParseError as exc:
        raise XmlError(f"{source}: {exc}") from None
    except OSError as exc:
        raise XmlError(f"{source}: {exc}") from None
    genders = [root] if root.tag == "Gender" else list(root)
    table: dict[tuple[str, str], LetterRules] = {}
    for g in genders:
        if g.tag != "Gender":
            raise XmlError(f"{source}: unexpected element <{g.tag}>")
        gname = g.get("G")
        if gname is None:
            raise XmlError(f"{source}: Gender without G attribute")
        try:
            gender = normalize_gender(gname)
        except UnsupportedEnding as exc:
            raise XmlError(f"{source}: {exc}") from None
        for ll in g:
            if ll.tag != "LastLetter":
                raise XmlError(f"{source}: unexpected element <{ll.tag}> in Gender")
            letter = ll.get("L")
            try:
                ok = letter is not None and len(tokenize(letter)) == 1
            except VibhaktiError:
                ok = False
            if not ok:
                raise XmlError(f"{source}: LastLetter L={letter!r} is not a single sound")
            if (gender, letter) in table:
                raise XmlError(f"{source}: duplicate LastLetter L={letter!r}")
            path = f"Gender[@G='{gname}']/LastLetter[@L='{letter}']"
            common = _parse_list(ll.text, path)
            cats: dict[int, tuple[Formula, ...]] = {}
            for cat in ll:
                if cat.tag != "Category":
                    raise XmlError(f"{source}: unexpected element <{cat.tag}> in {path}")
                raw = cat.get("C", "")
                if not raw.isdigit() or int(raw) < 1:
                    raise XmlError(f"{source}: Category C={raw!r} in {path} must be an integer >= 1")
                if int(raw) in cats:
                    raise XmlError(f"{source}: duplicate Category C={raw} in {path}")
                cats[int(raw)] = _parse_list(cat.text, f"{path}/Category[@C='{raw}']")
            table[(gender, letter)] = LetterRules(common, cats)
    return table


# -- x' recipes -------------------------------------------------------------------


@dataclass(frozen=True)
class XPrimeRecipe:
    letter: str
    category: Category
    formula: Formula
    example: str
    expected: str


def parse_category(raw: str) -> Category:
    raw = raw.strip()
    if raw == "-":
        return None
    if not raw.isdigit() or int(raw) < 1:
        raise ValueError(f"category must be '-' or an integer >= 1, got {raw!r}")
    return int(raw)


def format_category(category: Category) -> str:
    return "-" if category is None else str(category)


def parse_xprime(lines: Iterable[str], source: str = "<xprime>",
                 gender: str = "m") -> dict[tuple[str, str, Category], XPrimeRecipe]:
    table: dict[tuple[str, str, Category], XPrimeRecipe] = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise ParseError(f"expected 5 tab-separated fields, got {len(fields)}", lineno, source)
        letter, raw_cat, text, example, expected = fields
        try:
            category = parse_category(raw_cat)
            formula = parse_formula(text)
            if formula.base.prime:
                raise FormulaSyntaxError("x' recipe cannot refer to x'", text)
            tokenize(example)
            tokenize(expected)
        except (ValueError, VibhaktiError) as exc:
            raise ParseError(str(exc), lineno, source) from None
        key = (gender, letter, category)
        if key in table:
            raise ParseError(f"duplicate recipe for {letter}/{raw_cat}", lineno, source)
        table[key] = XPrimeRecipe(letter, category, formula, example, expected)
    return table


# -- the combined store -----------------------------------------------------------


def data_path(name: str) -> Path:
    return Path(str(resources.files("vibhakti") / "data" / name))


@dataclass(frozen=True)
class RuleSet:
    """x' recipes plus full and reduced formula lists, keyed by gender and ending."""

    xprime: Mapping[tuple[str, str, Category], XPrimeRecipe]
    full: RuleTable
    reduced: RuleTable | None = None

    def recipe(self, gender: str, letter: str, category: Category) -> XPrimeRecipe:
        key = (normalize_gender(gender), letter, category)
        try:
            return self.xprime[key]
        except KeyError:
            raise NoRecipe(
                f"no x' recipe for ending {letter!r}, category {format_category(category)}"
            ) from None

    def categories(self, gender: str, letter: str) -> list[Category]:
        g = normalize_gender(gender)
        cats = [c for (gg, ll, c) in self.xprime if gg == g and ll == letter]
        return sorted(cats, key=lambda c: 0 if c is None else c)

    def endings(self, gender: str = "m") -> list[str]:
        g = normalize_gender(gender)
        seen: dict[str, None] = {}
        for gg, ll, _ in self.xprime:
            if gg == g:
                seen.setdefault(ll)
        return list(seen)

    def _lookup(self, table: RuleTable | None, gender: str, letter: str,
                category: Category, label: str) -> tuple[Formula, ...]:
        g = normalize_gender(gender)
        entry = None if table is None else table.get((g, letter))
        if entry is not None:
            if category is None and not entry.categories:
                return entry.common
            if category is not None and category in entry.categories:
                return entry.common + entry.categories[category]
        raise NoRuleData(
            f"no {label} declension data for ending {letter!r}, category "
            f"{format_category(category)}"
        )

    def full_formulas(self, gender: str, letter: str, category: Category) -> tuple[Formula, ...]:
        return self._lookup(self.full, gender, letter, category, "full")

    def reduced_formulas(self, gender: str, letter: str, category: Category) -> tuple[Formula, ...]:
        return self._lookup(self.reduced, gender, letter, category, "reduced")

    def has_full(self, gender: str, letter: str, category: Category) -> bool:
        try:
            self.full_formulas(gender, letter, category)
        except NoRuleData:
            return False
        return True

    def has_reduced(self, gender: str, letter: str, category: Category) -> bool:
        try:
            self.reduced_formulas(gender, letter, category)
        except NoRuleData:
            return False
        return True

    def pairs(self) -> list[tuple[str, str, Category]]:
        """Every (gender, ending, category) that has rule data in either list."""
        out = []
        for key in self.xprime:
            if self.has_full(*key) or self.has_reduced(*key):
                out.append(key)
        return out

    def all_formulas(self) -> Iterable[Formula]:
        for table in (self.full, self.reduced or {}):
            for entry in table.values():
                yield from entry.common
                for lst in entry.categories.values():
                    yield from lst


def load_xprime(source: str | Path | None = None, gender: str = "m"):
    path = Path(source) if source is not None else data_path("xprime.tsv")
    try:
        text = path.read_text("utf-8")
    except OSError as exc:
        raise ParseError(str(exc), source=str(path)) from None
    return parse_xprime(text.splitlines(), str(path), normalize_gender(gender))


def load_ruleset(full: str | Path | None = None, reduced: str | Path | None = None,
                 xprime: str | Path | None = None, *, require_reduced: bool = True) -> RuleSet:
    """Load the combined rule store; ``None`` paths fall back to the shipped data.

    With ``require_reduced=False`` a missing reduced file yields a RuleSet
    without search-key data instead of an error.
    """
    full_path = Path(full) if full is not None else data_path("rules-full.xml")
    reduced_path = Path(reduced) if reduced is not None else data_path("rules-reduced.xml")
    reduced_table = None
    if require_reduced or reduced_path.exists():
        reduced_table = parse_rule_file(reduced_path)
    return RuleSet(load_xprime(xprime), parse_rule_file(full_path), reduced_table)
