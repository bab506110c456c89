"""Hypothesis strategies for HF sets, structures and formulas."""

from __future__ import annotations

from hypothesis import strategies as st

from hostlab.formula import (
    And,
    Equal,
    Exists,
    ExistsIn,
    ForAll,
    ForAllIn,
    Iff,
    Implies,
    Lit,
    Member,
    Not,
    Or,
    Var,
)
from hostlab.hf import EMPTY, canonicalize, decode
from hostlab.hierarchy import build_stage

hf_sets = st.recursive(
    st.just(EMPTY),
    lambda children: st.lists(children, max_size=3).map(canonicalize),
    max_leaves=10,
)

small_codes = st.integers(min_value=0, max_value=2**16 - 1)

#: Subsets of V_3 and V_4 as universes.
v3_subsets = st.sets(st.sampled_from(build_stage(3).set.members))
v4_subsets = st.sets(st.sampled_from(build_stage(4).set.members), max_size=8)

VARS = ("x", "y", "z")
BOUND = ("u", "v", "w")


def terms(free: tuple[str, ...], literals: bool = False):
    base = st.sampled_from([Var(v) for v in free]) if free else st.nothing()
    if literals:
        base = base | st.sampled_from([Lit(decode(n)) for n in range(8)])
    return base


@st.composite
def formulas(draw, free: tuple[str, ...] = VARS, depth: int = 3, literals: bool = False, bounded: bool = True):
    """Formulas whose free variables lie in ``free``; binders never shadow."""
    scope = tuple(free)

    def build(scope: tuple[str, ...], budget: int):
        choices = ["atom"]
        if budget > 0:
            choices += ["not", "bin"]
            if len(scope) < len(free) + len(BOUND):
                choices += ["q"]
        kind = draw(st.sampled_from(choices))
        if kind == "atom" or not scope:
            if not scope:
                return Equal(Lit(EMPTY), Lit(EMPTY))
            t = terms(scope, literals)
            cls = draw(st.sampled_from([Member, Equal]))
            return cls(draw(t), draw(t))
        if kind == "not":
            return Not(build(scope, budget - 1))
        if kind == "bin":
            cls = draw(st.sampled_from([And, Or, Implies, Iff]))
            return cls(build(scope, budget - 1), build(scope, budget - 1))
        v = next(b for b in BOUND if b not in scope)
        inner = scope + (v,)
        options = [ForAll, Exists] + ([ForAllIn, ExistsIn] if bounded and scope else [])
        cls = draw(st.sampled_from(options))
        body = build(inner, budget - 1)
        if cls in (ForAllIn, ExistsIn):
            return cls(v, Var(draw(st.sampled_from(scope))), body)
        return cls(v, body)

    return build(scope, depth)
