"""
How much smaller is the search-key rule set?
============================================

Compare the number of full formulas with the number of search-key formulas
for every (ending, category) pair that ships with both.
"""

from vibhakti.generator import reduction_stats
from vibhakti.rules import load_ruleset

stats = reduction_stats(load_ruleset())

print("ending  category  full  reduced  reduction %")
for row in stats.rows:
    ending, category, full, reduced, percent = row.cells()
    print(f"{ending:7} {category:9} {full:5} {reduced:8} {percent}")

total = stats.total
print(f"over {len(stats.rows)} rows: {total.full} -> {total.reduced} formulas, {total.percent}% fewer")

# Pairs with an x' recipe but no formula lists are not counted.
rules = load_ruleset()
missing = [(l, c) for (_, l, c) in rules.xprime if not rules.has_full("m", l, c)]
print(len(missing), "recipes have no declension data, e.g.", missing[:3])
