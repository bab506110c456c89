# coding: utf-8

# # Hereditarily finite sets
#
# Every hereditarily finite set has a unique natural-number code: the set
# {a, b, ...} gets 2^code(a) + 2^code(b) + ...  The library keeps sets in
# canonical form, sorted by that code, so equality is structural and the
# order is the numeric order of codes.

# In[1]:

from hostlab.hf import (
    EMPTY,
    classify,
    decode,
    fn_view,
    function_from,
    ordered_pair,
    parse_hf,
    powerset,
    unpair,
    von_neumann,
)
from hostlab.hierarchy import build_stage, ordinals_of

for n in range(8):
    print(n, decode(n), "rank", decode(n).rank)


# Text goes both ways. `#n` is shorthand for the set with code n, and can be
# nested inside braces.

# In[2]:

x = parse_hf("{#0, {#1}}")
print(x, x.code, parse_hf(f"#{x.code}") == x)


# # Stages of the cumulative hierarchy
#
# V_0 is empty and V_{k+1} is the powerset of V_k.  A set lies in V_k exactly
# when its rank is below k, and the members of V_k are precisely the codes
# below the k-fold tower of two.

# In[3]:

for k in range(6):
    s = build_stage(k)
    print(f"V_{k}: {len(s)} members")

v3 = build_stage(3).set
print(v3)
print("codes:", [m.code for m in v3.members])


# The ordinals inside V_k form the von Neumann ordinal k, which is not itself
# in V_k but is in V_{k+1}.

# In[4]:

o = ordinals_of(build_stage(4))
print(o, o == von_neumann(4), o in build_stage(4).set, o in build_stage(5).set)
print(classify(v3))


# # Pairs and functions
#
# Ordered pairs are Kuratowski pairs and functions are sets of pairs.

# In[5]:

p = ordered_pair(EMPTY, von_neumann(1))
print(p, unpair(p))

f = function_from({EMPTY: von_neumann(1), von_neumann(1): EMPTY})
view = fn_view(f)
print(f)
print("domain", view.domain, "range", view.range, "f(0) =", view(EMPTY))
print("|P(V_3)| =", len(powerset(v3)))
