"""
Declining a masculine noun
==========================

Walk one word through the pipeline: tokenize, pick its declension
category, build the pre-transformed stem X', then evaluate every formula.
"""

from vibhakti.generator import compute_x_prime, generate_full
from vibhakti.lexicon import categorize, load_lexicon
from vibhakti.phonology import tokenize
from vibhakti.rules import load_ruleset

rules = load_ruleset()
lexicon = load_lexicon(xprime=rules)

# Words are sequences of sounds, not characters: "kh" and "au" are single units.
word = tokenize("sakhi")
print(word.symbols)

# Nouns in i split into several classes, so the lexicon decides which one applies.
category = categorize(word, "m", lexicon, rules)
print("category:", category)

# X' is built by a short recipe keyed on the final sound and the category.
recipe = rules.recipe("m", word.last.symbol, category)
print("x' recipe:", recipe.formula, "->", compute_x_prime(word, "m", category, rules))

# Each form remembers the formula that produced it.
result = generate_full(word, "m", category, rules)
for form, formula in zip(result.strings(), result.provenance):
    print(f"{form:12} {formula}")
