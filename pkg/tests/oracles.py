"""Slow reference implementations used to cross-check the library.

None of these reuse the optimized code paths they check: membership is read
off Ackermann codes, every quantifier (bounded ones as guarded scans) runs
over the whole universe, and EF equivalence is decided by refining a
partition of tuples instead of playing the game.
"""

from __future__ import annotations

from itertools import product

from hostlab.formula import (
    And,
    ConstC,
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
from hostlab.hf import HfSet


# ---------------------------------------------------------------------------
# Hereditarily finite sets by numbers
# ---------------------------------------------------------------------------


def code_of(x: HfSet) -> int:
    return sum(1 << code_of(y) for y in x.members)


def code_member(a: int, b: int) -> bool:
    return (b >> a) & 1 == 1


def stage_codes(k: int) -> list[int]:
    """Codes of ``V_k``: exactly the naturals below the ``k``-fold tower of 2."""
    n = 0
    for _ in range(k):
        n = 1 << n
    return list(range(n))


def stage_sizes(k: int) -> list[int]:
    sizes = [0]
    for _ in range(k):
        sizes.append(2 ** sizes[-1])
    return sizes


def complete_brute(x: HfSet) -> bool:
    """Transitive and closed under all subsets of members (full enumeration)."""
    cx = {code_of(y) for y in x.members}
    for c in cx:
        bits = [i for i in range(c.bit_length()) if code_member(i, c)]
        if any(b not in cx for b in bits):
            return False
        for mask in range(1 << len(bits)):
            sub = sum(1 << bits[j] for j in range(len(bits)) if mask >> j & 1)
            if sub not in cx:
                return False
    return True


# ---------------------------------------------------------------------------
# Naive satisfaction
# ---------------------------------------------------------------------------


class NaiveModel:
    def __init__(self, universe, tiers=None):
        self.codes = sorted(code_of(x) for x in universe)
        self.tiers = {n: code_of(v) for n, v in (tiers or {}).items()}

    def term(self, t, env):
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, ConstC):
            return self.tiers[t.index]
        if isinstance(t, Lit):
            return code_of(t.value)
        raise TypeError(t)

    def sat(self, f, env) -> bool:
        if isinstance(f, Member):
            return code_member(self.term(f.left, env), self.term(f.right, env))
        if isinstance(f, Equal):
            return self.term(f.left, env) == self.term(f.right, env)
        if isinstance(f, Not):
            return not self.sat(f.body, env)
        if isinstance(f, And):
            return self.sat(f.left, env) and self.sat(f.right, env)
        if isinstance(f, Or):
            return self.sat(f.left, env) or self.sat(f.right, env)
        if isinstance(f, Implies):
            return (not self.sat(f.left, env)) or self.sat(f.right, env)
        if isinstance(f, Iff):
            return self.sat(f.left, env) == self.sat(f.right, env)
        if isinstance(f, ForAll):
            return all(self.sat(f.body, {**env, f.var: c}) for c in self.codes)
        if isinstance(f, Exists):
            return any(self.sat(f.body, {**env, f.var: c}) for c in self.codes)
        # Bounded quantifiers read as guarded ones over the whole universe.
        if isinstance(f, ForAllIn):
            b = self.term(f.bound, env)
            return all(not code_member(c, b) or self.sat(f.body, {**env, f.var: c}) for c in self.codes)
        if isinstance(f, ExistsIn):
            b = self.term(f.bound, env)
            return any(code_member(c, b) and self.sat(f.body, {**env, f.var: c}) for c in self.codes)
        raise TypeError(f)


def naive_satisfies(universe, f, asg=None, tiers=None) -> bool:
    m = NaiveModel(universe, tiers)
    env = {k: code_of(v) for k, v in (asg or {}).items()}
    return m.sat(f, env)


def naive_counterexample(universe, f):
    """Least failing assignment to the leading universal block, or ``None``.

    Returns ``{}`` when ``f`` fails with no leading universal quantifier.
    """
    return _cx(NaiveModel(universe), f, {})


def _cx(m, g, env):
    if isinstance(g, (ForAll, ForAllIn)):
        for c in m.codes:
            if isinstance(g, ForAllIn) and not code_member(c, m.term(g.bound, env)):
                continue
            hit = _cx(m, g.body, {**env, g.var: c})
            if hit is not None:
                return hit
        return None
    return None if m.sat(g, env) else env


# ---------------------------------------------------------------------------
# EF by type refinement
# ---------------------------------------------------------------------------


def _atomic(t) -> tuple:
    n = len(t)
    ins = tuple(code_member(t[i], t[j]) for i in range(n) for j in range(n))
    eqs = tuple(t[i] == t[j] for i in range(n) for j in range(i + 1, n))
    return ins + eqs


class TypeOracle:
    """Depth-``d`` types of tuples, computed jointly for two structures.

    Two tuples get the same depth-``d`` type exactly when they satisfy the
    same formulas of quantifier depth ``d`` (Boolean closure of atoms and of
    projections of depth ``d - 1`` types).
    """

    def __init__(self, left, right):
        self.sides = (sorted(code_of(x) for x in left), sorted(code_of(x) for x in right))
        self._memo = {}

    def type_of(self, side: int, t: tuple, d: int):
        key = (side, t, d)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if d == 0:
            out = _atomic(t)
        else:
            out = (_atomic(t), frozenset(self.type_of(side, t + (x,), d - 1) for x in self.sides[side]))
        self._memo[key] = out
        return out

    def equivalent(self, params, d: int) -> bool:
        t = tuple(code_of(p) for p in params)
        return self.type_of(0, t, d) == self.type_of(1, t, d)


def oracle_elementary(left, right, d: int, max_params: int) -> bool:
    o = TypeOracle(left, right)
    return all(
        o.equivalent(params, d) for n in range(max_params + 1) for params in product(sorted(left), repeat=n)
    )


# ---------------------------------------------------------------------------
# Categories
# ---------------------------------------------------------------------------


def recheck_limit(c, D, cone) -> bool:
    """Universal property by building the factorization map cone-by-cone."""
    shape = D.source
    if any(c.comp[(cone.legs[shape.dom[s]], D.arr[s])] != cone.legs[shape.cod[s]] for s in range(shape.n_arrows)):
        return False
    for x in range(c.n_objects):
        outs = [
            tuple(legs)
            for legs in product(*(
                [f for f in range(c.n_arrows) if c.dom[f] == x and c.cod[f] == D.obj[i]]
                for i in range(shape.n_objects)
            ))
            if all(c.comp[(legs[shape.dom[s]], D.arr[s])] == legs[shape.cod[s]] for s in range(shape.n_arrows))
        ]
        induced = {}
        for u in range(c.n_arrows):
            if c.dom[u] == x and c.cod[u] == cone.apex:
                image = tuple(c.comp[(u, leg)] for leg in cone.legs)
                if image in induced:
                    return False
                induced[image] = u
        if set(induced) != set(outs):
            return False
    return True


# ---------------------------------------------------------------------------
# EF by formula enumeration
# ---------------------------------------------------------------------------


class EnumerationOracle:
    """Truth tables of every formula in the depth/width-bounded enumeration.

    Mirrors the shape of the library's formula stream (literals, one
    quantifier over a shallower formula, ``&``/``|`` of up to ``width``
    units) but evaluates bottom-up: a formula over ``n`` variables is a pair
    of bitmasks over the assignments in ``X^n`` and ``Y^n``.  Formulas with
    equal tables are merged, which keeps the sets small.
    """

    def __init__(self, left, right, width: int = 2):
        self.sides = (sorted(code_of(x) for x in left), sorted(code_of(x) for x in right))
        self.width = width
        self._memo = {}

    def _assignments(self, side, n):
        return list(product(self.sides[side], repeat=n))

    def _literals(self, n):
        out = set()
        pairs = [(i, j) for i in range(n) for j in range(n)] + [(i, j) for i in range(n) for j in range(i, n)]
        kinds = ["in"] * (n * n) + ["eq"] * (len(pairs) - n * n)
        for (i, j), kind in zip(pairs, kinds):
            tab = []
            for side in (0, 1):
                m = 0
                for k, t in enumerate(self._assignments(side, n)):
                    hit = code_member(t[i], t[j]) if kind == "in" else t[i] == t[j]
                    m |= hit << k
                tab.append(m)
            full = tuple((1 << len(self._assignments(s, n))) - 1 for s in (0, 1))
            out.add(tuple(tab))
            out.add((tab[0] ^ full[0], tab[1] ^ full[1]))
        return out

    def _project(self, tab, n, universal):
        res = []
        for side in (0, 1):
            u = self.sides[side]
            m = 0
            for k in range(len(u) ** n):
                # assignments of n+1 vars enumerate the new variable last
                bits = [(tab[side] >> (k * len(u) + v)) & 1 for v in range(len(u))]
                m |= (all(bits) if universal else any(bits)) << k
            res.append(m)
        return tuple(res)

    def definable(self, d, n):
        key = (d, n)
        if key in self._memo:
            return self._memo[key]
        units = set(self._literals(n))
        if d > 0:
            for tab in self.definable(d - 1, n + 1):
                units.add(self._project(tab, n, False))
                units.add(self._project(tab, n, True))
        out = set(units)
        if self.width >= 2:
            ul = sorted(units)
            for i in range(len(ul)):
                for j in range(i + 1, len(ul)):
                    a, b = ul[i], ul[j]
                    out.add((a[0] & b[0], a[1] & b[1]))
                    out.add((a[0] | b[0], a[1] | b[1]))
        self._memo[key] = out
        return out

    def separates(self, params, d) -> bool:
        t = tuple(code_of(p) for p in params)
        n = len(t)
        kx = self._assignments(0, n).index(t)
        ky = self._assignments(1, n).index(t)
        return any((mx >> kx & 1) != (my >> ky & 1) for mx, my in self.definable(d, n))
