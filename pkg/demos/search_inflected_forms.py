"""
Searching text for every inflection of a word
=============================================

A handful of short keys is enough to find all sixteen forms of rāma,
while searching for the bare word misses most of them.
"""

from vibhakti.generator import generate_full, generate_search_keys
from vibhakti.rules import load_ruleset
from vibhakti.search import recall_check, search_text

rules = load_ruleset()

keys = generate_search_keys("rāma", "m", None, rules)
print("keys:", keys.strings())

text = """rāmeṇa saha sītā vanaṃ gacchati .
rāmāya namaḥ . rāmau rāmāḥ ca .
surāmaḥ iti na rāmaḥ ."""

for m in search_text(keys, text):
    print(f"line {m.line} col {m.column}: {m.matched_key} [{m.key_formula}]")

# Matching is on whole sounds: "rāma" is not a prefix of "rāmau", since "au" is one vowel.
# Requiring a word start drops the hit inside "surāmaḥ".
print(len(search_text(keys, text)), "matches,",
      len(search_text(keys, text, boundary=True)), "at word starts")

# Recall over a corpus that holds each full form once.
print(recall_check("rāma", "m", None, rules))
print(recall_check("rāma", "m", None, rules, key_mode="word"))

full = generate_full("rāma", "m", None, rules)
print(f"{len(full)} forms covered by {len(keys)} keys")
