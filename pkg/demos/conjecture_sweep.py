"""
Sweeping the conjectures
========================

Every check returns pass, fail or inconclusive with a witness.  A sweep runs
checks over a bounded family of compositions in a fixed order.
"""

from fences import FamilySpec, check_heavy, check_lex_conjecture, sweep
from fences.conjectures import summarize

print(check_heavy((2, 1, 1)).to_json())

# %%
# All compositions with at most three parts, each at most 5.
reports = sweep(FamilySpec(max_segments=3, max_part=5, checks=("mgo", "heavy")))
print(summarize(reports)["counts"])

# %%
# Lexicographic decompositions: search all labelings of a small fence for
# one whose greedy decomposition is nested.
report = check_lex_conjecture((2, 2), "all")
print(report.verdict, report.witness["labels"])
