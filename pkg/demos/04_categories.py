# coding: utf-8

# # Finite categories as tables
#
# A category is a list of objects, arrows with domain and codomain, identities
# and a composition table.  Coll(V_k) has the sets in V_k as objects and all
# functions between them as arrows.

# In[1]:

from hostlab.category import (
    build_coll,
    cantor_check,
    check_embedding,
    classify_size,
    discrete_category,
    freyd_audit,
    freyd_enumerate,
    functor_category,
    parallel_pair_category,
    product_of,
    terminal_object,
    topos_audit,
    validate,
)
from hostlab.hf import von_neumann
from hostlab.hierarchy import TierConfig

c = build_coll(3)
print(c.n_objects, "objects,", c.n_arrows, "arrows,", validate(c))
for f in range(5):
    print(c.describe(f))


# # Limits by search
#
# Limits are found by checking the universal property against every cone.
# Coll(V_3) has a terminal object but no product of the two-element set with
# itself, since there is no four-element object.

# In[2]:

print("terminal:", c.label(terminal_object(c)))
two = c.objects.index(von_neumann(2))
print("2 x 2:", product_of(c, [two, two]))
print("1 x 2:", product_of(c, [1, two]))


# # Freyd and Cantor
#
# A category with a parallel pair cannot have a power of an object indexed by
# its own arrows; in every small category enumerated, that power is absent.

# In[3]:

print(freyd_audit(parallel_pair_category()).status)
print(freyd_enumerate(2, 4).to_json())
for n in range(4):
    print(cantor_check(von_neumann(n)).to_json())


# # Functor categories, sizes and the hierarchy
#
# In[4]:

fc = functor_category(discrete_category(2), discrete_category(3))
print(fc.n_objects, "functors,", fc.n_arrows, "natural transformations")

for row in classify_size(discrete_category(1), TierConfig((2, 3))):
    print(row.to_json())

print(check_embedding(2, 3).to_json())
print(topos_audit(c, von_neumann(2)).to_json())
