# coding: utf-8

# # Depth-bounded elementary substructures
#
# Ehrenfeucht-Fraisse games decide whether X and Y agree on every formula of
# quantifier depth d with parameters from X.  When they do not, the spoiler's
# strategy is turned into a distinguishing formula.

# In[1]:

from hostlab.formula import render
from hostlab.games import elementary_d
from hostlab.hierarchy import (
    TierConfig,
    build_stage,
    check_A3,
    check_A4,
    check_A5,
    collection_build,
    universe_lemma_check,
)

v1, v2 = build_stage(1).carrier, build_stage(2).carrier
v = elementary_d(v1, v2, 1, 1)
print(v.holds, render(v.formula), {k: str(s) for k, s in v.assignment.items()})


# # Tier configurations
#
# A configuration picks strictly increasing stages as tiers C_0, C_1, ...
# Each tier is a complete set: transitive and closed under subsets of its members.

# In[2]:

t = TierConfig.parse("2,3,4")
for step in check_A3(t, 1, 1):
    print(f"V_{step.lower} <= V_{step.upper}:", step.verdict.holds, render(step.verdict.formula))


# Collections about tier n are built by evaluating a formula in the next tier.
# The result is always a member of the next tier.

# In[3]:

print(collection_build(t, 0, "forall y in X. forall z in y. z in X"))
for r in check_A4(t)[:5]:
    print(r.tier, r.formula, "->", r.result, r.member_of_next)

print([r.holds for r in universe_lemma_check(t)])


# # Replacement within a tier
#
# Functions with domain and values in V_3 can have a range of rank 3, which
# falls outside V_3.  Those are the only failures.

# In[4]:

rep = check_A5(TierConfig((3, 4)), 0)
print(rep.functions, "functions,", len(rep.failures), "failures")
print("failure ranks", rep.failure_ranks, "passing ranks", rep.passing_ranks)
print("first failure:", rep.failures[0].function, "range", rep.failures[0].range)
