"""Command-line interface: ``vibhakti decline|search-forms|search|stats``.

Exit codes: 0 success, 2 usage error or word missing from the lexicon,
3 no rule data for the word's ending/category, 4 malformed input or data.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from typing import Sequence, TextIO

from vibhakti.errors import (
    NoRecipe,
    NoRuleData,
    UnknownWord,
    UnsupportedEnding,
    VibhaktiError,
)
from vibhakti.generator import InflectionResult, generate_inflections, reduction_stats
from vibhakti.lexicon import categorize, load_lexicon
from vibhakti.phonology import as_phonemes
from vibhakti.rules import load_ruleset, parse_category
from vibhakti.search import search_corpus

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNKNOWN_WORD = 2
EXIT_NO_RULE_DATA = 3
EXIT_DATA_ERROR = 4

FORMATS = ("text", "tsv", "json-record")


def _category(value: str):
    if value == "auto":
        return value
    try:
        return parse_category(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rules-full", metavar="PATH", help="full formula rule file (XML)")
    common.add_argument("--rules-reduced", metavar="PATH", help="search-key rule file (XML)")
    common.add_argument("--xprime", metavar="PATH", help="x' recipe table (TSV)")
    common.add_argument("--lexicon", metavar="PATH", help="word category lexicon (TSV)")
    common.add_argument("--format", choices=FORMATS, default="text", help="output format")

    word_opts = argparse.ArgumentParser(add_help=False)
    word_opts.add_argument("word", help="noun stem in IAST, e.g. rāma")
    word_opts.add_argument("--gender", default="m", help="grammatical gender (only m)")
    word_opts.add_argument("--category", type=_category, default="auto",
                           help="declension category; bypasses the lexicon")

    parser = argparse.ArgumentParser(
        prog="vibhakti",
        description="Case-inflected forms of Sanskrit masculine nouns, and inflection-aware search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("decline", parents=[common, word_opts],
                   help="print X' and every distinct inflected form")
    sub.add_parser("search-forms", parents=[common, word_opts],
                   help="print the reduced set of search keys")
    search = sub.add_parser("search", parents=[common, word_opts],
                            help="find inflected occurrences of a word in text files")
    search.add_argument("files", nargs="*", metavar="FILE")
    search.add_argument("--boundary", action="store_true",
                        help="only match at the start of a word")
    sub.add_parser("stats", parents=[common], help="formula counts and reduction per category")
    return parser


def _load(args):
    return load_ruleset(args.rules_full, args.rules_reduced, args.xprime, require_reduced=False)


def _write_result(out: TextIO, result: InflectionResult, fmt: str, recipe: str | None = None) -> None:
    if fmt == "json-record":
        out.write(json.dumps(result.to_record(), ensure_ascii=False, indent=2) + "\n")
    elif fmt == "tsv":
        out.write(f"xprime\t{result.x_prime_form}\t{recipe or ''}\n")
        for form, formula in zip(result.strings(), result.provenance):
            out.write(f"form\t{form}\t{formula}\n")
    else:
        for form in result.strings():
            out.write(form + "\n")


def _generate(args, mode: str) -> tuple[InflectionResult, str]:
    rules = _load(args)
    word = as_phonemes(args.word)
    category = args.category
    if category == "auto":
        category = categorize(word, args.gender, load_lexicon(args.lexicon, rules), rules)
    result = generate_inflections(word, args.gender, rules, category=category, mode=mode)
    recipe = rules.recipe(args.gender, word.last.symbol, category)
    return result, str(recipe.formula)


def cmd_decline(args, out: TextIO, err: TextIO) -> int:
    result, recipe = _generate(args, "full")
    if args.format == "text":
        err.write(f"x' = {result.x_prime_form} ({recipe})\n")
    _write_result(out, result, args.format, recipe)
    return EXIT_OK


def cmd_search_forms(args, out: TextIO, err: TextIO) -> int:
    result, recipe = _generate(args, "reduced")
    _write_result(out, result, args.format, recipe)
    return EXIT_OK


def cmd_search(args, out: TextIO, err: TextIO) -> int:
    if not args.files:
        err.write("vibhakti search: error: at least one FILE is required\n")
        return EXIT_USAGE
    keys, _ = _generate(args, "reduced")
    matches = search_corpus(keys, args.files, boundary=args.boundary)
    if args.format == "json-record":
        record = keys.to_record()
        record["matches"] = [m.to_record() for m in matches]
        out.write(json.dumps(record, ensure_ascii=False, indent=2) + "\n")
    elif args.format == "tsv":
        out.write("file\toffset\tline\tcolumn\tkey\tformula\n")
        for m in matches:
            out.write(m.tsv() + "\n")
    else:
        for m in matches:
            out.write(f"{m.file}:{m.line}:{m.column}: {m.matched_key} [{m.key_formula}]\n")
    return EXIT_OK


def cmd_stats(args, out: TextIO, err: TextIO) -> int:
    stats = reduction_stats(_load(args))
    header = ["ending", "category", "full", "reduced", "reduction"]
    rows = [r.cells() for r in stats.rows + stats.flagged]
    total = stats.total
    if args.format == "json-record":
        def rec(cells):
            return dict(zip(header, cells))
        record = {"rows": [rec(c) for c in rows],
                  "total": rec(total.cells()) if total else None}
        out.write(json.dumps(record, ensure_ascii=False, indent=2) + "\n")
        return EXIT_OK
    table = [header] + rows + ([total.cells()] if total else [])
    if args.format == "tsv":
        for cells in table:
            out.write("\t".join(cells) + "\n")
    else:
        widths = [max(len(c[i]) for c in table) for i in range(len(header))]
        for cells in table:
            out.write("  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip() + "\n")
    return EXIT_OK


COMMANDS = {
    "decline": cmd_decline,
    "search-forms": cmd_search_forms,
    "search": cmd_search,
    "stats": cmd_stats,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None,
         err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    for stream in (out, err):
        if hasattr(stream, "reconfigure"):
            try:
                stream.reconfigure(encoding="utf-8")
            except (ValueError, OSError):
                pass
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args, extra = parser.parse_known_args(argv)
            # argparse stops filling FILE at the first option, so files given
            # after e.g. --gender come back as extras.
            if extra and args.command == "search" and not any(e.startswith("-") for e in extra):
                args.files = list(args.files) + extra
            elif extra:
                parser.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out, err)
    except UnknownWord as exc:
        err.write(f"error: {exc}\n")
        return EXIT_UNKNOWN_WORD
    except (NoRuleData, NoRecipe, UnsupportedEnding) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_NO_RULE_DATA
    except VibhaktiError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
