# coding: utf-8

# # Formulas and structures
#
# Formulas use `in`, `=`, `!`, `&`, `|`, `->`, `<->`, unbounded quantifiers
# `forall x.` / `exists x.` and bounded ones `forall x in y.`.  Terms may be
# variables, tier constants `C0, C1, ...` or HF literals such as `{{}}` and `#3`.

# In[1]:

from hostlab.formula import Var, builtin, parse, relativize, render
from hostlab.hf import EMPTY, parse_hf
from hostlab.hierarchy import build_stage
from hostlab.model import Structure, axiom_audit, check_closed, evaluate, satisfies

phi = parse("forall x. exists y. x in y")
print(render(phi))

v2, v3 = build_stage(2).carrier, build_stage(3).carrier
print("V_2 |=", satisfies(v2, phi), "  V_3 |=", satisfies(v3, phi))

r = evaluate(v3, "exists x. forall y. !(y in x)")
print(r.value, "after visiting", r.nodes, "nodes")


# # Counterexamples
#
# A closed formula that fails comes back with the least failing assignment to
# its leading universal block, in code order.

# In[2]:

v = check_closed(v3, builtin("Z3"))
print(v.status, v.witness_text())
print("residual:", render(v.residual))


# # Auditing an entire stage
#
# The audit runs each built-in axiom (separation once per battery predicate).

# In[3]:

print(axiom_audit(build_stage(4).carrier).to_text())


# Foundation in its literal form fails already at the empty set, because the
# empty set has no member to serve as a minimal element.

# In[4]:

print(axiom_audit(v3, literal_foundation=True).verdicts["F1"].witness_text())


# Infinity is read charitably: a set containing the empty set and closed
# under successor *within the structure*.  Any transitive finite structure
# fails it, but a non-transitive one can satisfy it.

# In[5]:

odd = Structure.of([EMPTY, parse_hf("{{{{}}}}"), parse_hf("{{},{{{{}}}}}")])
print("odd structure:", check_closed(odd, builtin("Z5")).status)
print("V_3:", check_closed(v3, builtin("Z5")).status)


# # Relativization
#
# Relativizing to a variable X bounds every quantifier by X.  Evaluating the
# relativized formula in V_4 agrees with evaluating the original in the
# substructure on the members of X.

# In[6]:

psi = parse("exists a. forall b. b in a | b = a")
rel = relativize(psi, Var("X"))
print(render(rel))
v4 = build_stage(4).carrier
for x in v4.universe[:6]:
    print(x, satisfies(v4, rel, {"X": x}), satisfies(v4.induced(x), psi))
