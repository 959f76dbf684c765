from decimal import Decimal

import pytest
from hypothesis import given, settings, strategies as st

from vibhakti.errors import NoRecipe, NoRuleData, UndefinedOperation
from vibhakti.generator import (
    compute_x_prime,
    eval_formula,
    generate_full,
    generate_inflections,
    generate_search_keys,
    percent_reduction,
    reduction_stats,
)
from vibhakti.phonology import tokenize
from vibhakti.rules import load_ruleset, parse_formula

from reference import SEED_WORDS


@pytest.mark.parametrize("word, category, expected", [
    ("rāma", None, "rām"),
    ("sakhi", 2, "sakhāy"),
    ("rājan", 1, "rājñ"),
    ("vidvas", 3, "viduṣ"),
    ("hari", 1, "hare"),
])
def test_compute_x_prime(rules, word, category, expected):
    assert str(compute_x_prime(word, "m", category, rules)) == expected


def test_compute_x_prime_without_recipe(rules):
    with pytest.raises(NoRecipe):
        compute_x_prime("div", "m", None, rules)
    with pytest.raises(NoRecipe):
        compute_x_prime("hari", "m", 9, rules)


@pytest.mark.parametrize("formula, X, X_prime, expected", [
    ("x' + @2", "rāma", "rām", "rāmau"),
    ("(x' + @27).c", "rāma", "rām", "rāmeṇa"),
    ("(x + @19).y", "hari", "hare", "haryoḥ"),
    ("(x.d + @7 + @20).c", "rāma", "rām", "rāmāṇām"),
    ("(x + @9).y", "pati", "pate", "patyā"),
    ("(x + @15).y", "pati", "pate", "patyuḥ"),
    ("x'.a + @3", "hari", "hare", "harayaḥ"),
    ("x.l + @2", "hari", "hare", "harau"),
    ("x.va", "sakhi", None, "sakhāy"),
    ('x.lll + "nthā"', "pathin", None, "panthā"),
    ("x.h3", "rāj", None, "rāṭ"),
    ("x.c", "rāmena", None, "rāmeṇa"),
    ("(x + @19).y", "rāj", None, "rājoḥ"),  # no vowel junction: closure is a no-op
    ("x.g + @2", "pitṛ", None, "pitarau"),    # two-sound guna is spliced in place
])
def test_eval_formula(formula, X, X_prime, expected):
    assert str(eval_formula(parse_formula(formula), X, X_prime)) == expected


def test_eval_formula_reports_context():
    with pytest.raises(UndefinedOperation) as info:
        eval_formula(parse_formula("x.y"), "go")
    assert "x.y" in str(info.value) and "go" in str(info.value)


def test_x_prime_is_required_when_referenced():
    with pytest.raises(ValueError):
        eval_formula(parse_formula("x' + @2"), "rāma")


def test_one_phoneme_word_goes_through_empty_intermediate():
    assert str(eval_formula(parse_formula('x.l + "ā"'), "a")) == "ā"


def test_full_forms_exclude_word_and_duplicates(rules):
    for word, category in SEED_WORDS.items():
        result = generate_full(word, "m", category, rules)
        strings = result.strings()
        assert len(strings) == len(set(strings))
        assert word not in strings
        assert len(strings) <= 24
        assert len(result.provenance) == len(strings)


def test_dedup_keeps_first(tmp_path):
    full = tmp_path / "full.xml"
    full.write_text("<Gender G='m'><LastLetter L='a'>x, x' + @8, x + @1, x.l + \"aḥ\"</LastLetter></Gender>",
                    encoding="utf-8")
    rs = load_ruleset(full=full)
    result = generate_full("rāma", "m", None, rs)
    assert result.strings() == ["rāmaḥ"]
    assert result.provenance == ("x + @1",)


def test_counts_for_shipped_categories(rules):
    counts = [len(generate_full(w, "m", c, rules)) for w, c in SEED_WORDS.items()]
    assert counts == [16, 15, 16, 16]


def test_search_keys(rules):
    keys = generate_search_keys("rāma", "m", None, rules)
    assert keys.strings() == ["rāma", "rāmau", "rāmā", "rāme", "rāmai"]
    assert keys.provenance[0] == "X"
    hari = generate_search_keys("hari", "m", 1, rules).strings()
    assert "harī" in hari and "hary" in hari


def test_search_keys_missing_data(rules):
    with pytest.raises(NoRuleData):
        generate_search_keys("suhṛd", "m", None, rules)


def test_result_record(rules):
    record = generate_full("rāma", "m", None, rules).to_record()
    assert list(record) == ["word", "xPrime", "mode", "forms", "formulas"]
    assert record["xPrime"] == "rām" and record["mode"] == "full"
    assert record["formulas"][5] == "(x' + @27).c"


def test_generate_inflections_pipeline(rules, lexicon):
    via_lexicon = generate_inflections("pati", "m", rules, lexicon)
    explicit = generate_full("pati", "m", 3, rules)
    assert via_lexicon == explicit
    keys = generate_inflections("pati", "masculine", rules, lexicon, mode="reduced")
    assert keys.mode == "reduced"


@settings(max_examples=30)
@given(st.sampled_from(sorted(SEED_WORDS)))
def test_determinism(word):
    rules = load_ruleset()
    a = generate_full(word, "m", SEED_WORDS[word], rules)
    b = generate_full(word, "m", SEED_WORDS[word], rules)
    assert a == b


@pytest.mark.parametrize("full, reduced, expected", [
    (16, 4, "75.00"), (15, 5, "66.67"), (16, 6, "62.50"), (3, 2, "33.33"), (8, 1, "87.50"),
])
def test_percent_reduction(full, reduced, expected):
    assert percent_reduction(full, reduced) == Decimal(expected)


def test_reduction_stats_rows(rules):
    stats = reduction_stats(rules)
    assert [(r.ending, r.category, r.full, r.reduced, str(r.percent)) for r in stats.rows] == [
        ("a", None, 16, 4, "75.00"),
        ("i", 1, 15, 5, "66.67"),
        ("i", 2, 16, 6, "62.50"),
        ("i", 3, 16, 4, "75.00"),
    ]
    assert stats.flagged == ()
    total = stats.total
    assert (total.full, total.reduced) == (63, 19)
    # 100 * (1 - 19/63) = 69.8412...
    assert str(total.percent) == "69.84"


def test_reduction_stats_flags_incomplete_pairs(tmp_path):
    rs = load_ruleset(reduced=tmp_path / "none.xml", require_reduced=False)
    stats = reduction_stats(rs)
    assert stats.rows == () and stats.total is None
    assert [r.cells() for r in stats.flagged][0] == ["a", "-", "16", "n/a", "n/a"]
