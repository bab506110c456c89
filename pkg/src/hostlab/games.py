"""Depth-bounded elementary submodel checks via Ehrenfeucht-Fraisse games.

``elementary_d(X, Y, d, p)`` plays the ``d``-round game on ``(X, a)`` versus
``(Y, a)`` for every parameter tuple ``a`` of length at most ``p`` drawn from
``X``.  When the spoiler wins, its strategy is unfolded into a formula of
quantifier depth at most ``d`` that ``Y`` satisfies and ``X`` does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

from .errors import BudgetExceeded, ConfigError
from .formula import (
    And,
    Equal,
    Exists,
    ForAll,
    Formula,
    Member,
    Not,
    Or,
    Var,
    render,
)
from .hf import HfSet
from .model import Structure

PARAM_NAMES = ("a", "b", "c", "d", "e", "g", "h")
BOUND_NAMES = ("y", "z", "w", "u", "v", "s", "t")

DEFAULT_GAME_BUDGET = 10**7


def variable_names(n_params: int, n_bound: int) -> list[str]:
    if n_params > len(PARAM_NAMES) or n_bound > len(BOUND_NAMES):
        raise ConfigError("too many variables for the EF naming scheme")
    return list(PARAM_NAMES[:n_params]) + list(BOUND_NAMES[:n_bound])


@dataclass(frozen=True)
class EFVerdict:
    holds: bool
    depth: int
    max_params: int
    tuples_checked: int
    params: tuple[HfSet, ...] = ()
    formula: Formula | None = None

    @property
    def assignment(self) -> dict[str, HfSet]:
        return dict(zip(PARAM_NAMES, self.params))

    def to_json(self) -> dict:
        out: dict = {
            "status": "holds" if self.holds else "fails",
            "depth": self.depth,
            "max_params": self.max_params,
            "tuples_checked": self.tuples_checked,
        }
        if not self.holds:
            out["witness_formula"] = render(self.formula)
            out["parameters"] = {k: str(v) for k, v in self.assignment.items()}
        return out


class _Game:
    def __init__(self, x: Structure, y: Structure, budget: int):
        self.xs = x.universe
        self.ys = y.universe
        self.budget = budget
        self.positions = 0
        self._memo: dict[tuple, bool] = {}

    @staticmethod
    def _atoms(n: int) -> Iterator[tuple[str, int, int]]:
        for i in range(n):
            for j in range(n):
                yield "in", i, j
        for i, j in combinations(range(n), 2):
            yield "=", i, j

    @staticmethod
    def _atom_value(kind: str, i: int, j: int, t: Sequence[HfSet]) -> bool:
        if kind == "in":
            return t[i] in t[j]
        return t[i] == t[j]

    def first_difference(self, a: tuple, b: tuple) -> tuple[str, int, int] | None:
        for kind, i, j in self._atoms(len(a)):
            if self._atom_value(kind, i, j, a) != self._atom_value(kind, i, j, b):
                return kind, i, j
        return None

    def duplicator_wins(self, a: tuple, b: tuple, rounds: int) -> bool:
        key = (a, b, rounds)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self.positions += 1
        if self.positions > self.budget:
            raise BudgetExceeded(self.budget)
        if self.first_difference(a, b) is not None:
            result = False
        elif rounds == 0:
            result = True
        else:
            result = all(
                any(self.duplicator_wins(a + (x,), b + (y,), rounds - 1) for x in self.xs) for y in self.ys
            ) and all(any(self.duplicator_wins(a + (x,), b + (y,), rounds - 1) for y in self.ys) for x in self.xs)
        self._memo[key] = result
        return result

    def distinguish(self, a: tuple, b: tuple, rounds: int, names: list[str]) -> Formula:
        """A formula true of ``b`` in Y and false of ``a`` in X (spoiler wins)."""
        diff = self.first_difference(a, b)
        if diff is not None:
            kind, i, j = diff
            atom = Member(Var(names[i]), Var(names[j])) if kind == "in" else Equal(Var(names[i]), Var(names[j]))
            return atom if self._atom_value(kind, i, j, b) else Not(atom)
        v = names[len(a)]
        for y in self.ys:
            if not any(self.duplicator_wins(a + (x,), b + (y,), rounds - 1) for x in self.xs):
                parts = [self.distinguish(a + (x,), b + (y,), rounds - 1, names) for x in self.xs]
                return Exists(v, _join(And, parts, v))
        for x in self.xs:
            if not any(self.duplicator_wins(a + (x,), b + (y,), rounds - 1) for y in self.ys):
                parts = [self.distinguish(a + (x,), b + (y,), rounds - 1, names) for y in self.ys]
                return ForAll(v, _join(Or, parts, v))
        raise AssertionError("distinguish called on a duplicator win")


def _join(op, parts: list[Formula], v: str) -> Formula:
    seen: list[Formula] = []
    for p in parts:
        if p not in seen:
            seen.append(p)
    if not seen:
        # Empty conjunction is true, empty disjunction false.
        truth = Equal(Var(v), Var(v))
        return truth if op is And else Not(truth)
    out = seen[0]
    for p in seen[1:]:
        out = op(out, p)
    return out


def parameter_tuples(x: Structure, max_params: int) -> Iterator[tuple[HfSet, ...]]:
    for n in range(max_params + 1):
        yield from product(x.universe, repeat=n)


def elementary_d(
    x: Structure, y: Structure, d: int, max_params: int, budget: int = DEFAULT_GAME_BUDGET
) -> EFVerdict:
    """Depth-``d`` surrogate of ``X`` being an elementary submodel of ``Y``."""
    if not x.members <= y.members:
        raise ConfigError("the left structure must be a substructure of the right one")
    if d < 0 or max_params < 0:
        raise ConfigError("depth and parameter count must be natural numbers")
    game = _Game(x, y, budget)
    checked = 0
    for params in parameter_tuples(x, max_params):
        checked += 1
        if not game.duplicator_wins(params, params, d):
            phi = game.distinguish(params, params, d, variable_names(len(params), d))
            return EFVerdict(False, d, max_params, checked, params, phi)
    return EFVerdict(True, d, max_params, checked)


def ef_equivalent(x: Structure, y: Structure, params: tuple[HfSet, ...], d: int) -> bool:
    """Duplicator wins the ``d``-round game from the shared parameters ``params``."""
    return _Game(x, y, DEFAULT_GAME_BUDGET).duplicator_wins(params, params, d)


# ---------------------------------------------------------------------------
# Formula enumeration
# ---------------------------------------------------------------------------


def atoms_over(vs: Sequence[str]) -> list[Formula]:
    """``u in v`` for every ordered pair, then ``u = v`` for ``u`` not after ``v``."""
    out: list[Formula] = [Member(Var(p), Var(q)) for p in vs for q in vs]
    out += [Equal(Var(vs[i]), Var(vs[j])) for i in range(len(vs)) for j in range(i, len(vs))]
    return out


def _units(depth: int, vs: tuple[str, ...], width: int) -> Iterator[Formula]:
    for atom in atoms_over(vs):
        yield atom
        yield Not(atom)
    if depth == 0:
        return
    v = _next_bound(vs)
    for body in enumerate_formulas(depth - 1, vs + (v,), width):
        yield Exists(v, body)
        yield ForAll(v, body)


def _next_bound(vs: tuple[str, ...]) -> str:
    for name in BOUND_NAMES:
        if name not in vs:
            return name
    raise ConfigError("ran out of bound variable names")


def enumerate_formulas(depth: int, vars: Sequence[str], width: int = 2) -> Iterator[Formula]:
    """Negation-normal formulas of quantifier depth at most ``depth``.

    Units are literals over ``vars`` plus ``exists``/``forall`` of a formula
    one level shallower over ``vars`` and one new variable; the stream is all
    units followed by every ``&``/``|`` of 2..``width`` distinct units (in
    unit order).  Bound variables are drawn from :data:`BOUND_NAMES`.
    """
    vs = tuple(vars)
    units = list(_units(depth, vs, width))
    yield from units
    for k in range(2, width + 1):
        for combo in combinations(units, k):
            yield _fold(And, combo)
            yield _fold(Or, combo)


def count_formulas(depth: int, n_vars: int, width: int = 2) -> int:
    """Length of :func:`enumerate_formulas` without materializing it."""
    from math import comb

    atoms = n_vars * n_vars + n_vars * (n_vars + 1) // 2
    units = 2 * atoms
    if depth > 0:
        units += 2 * count_formulas(depth - 1, n_vars + 1, width)
    return units + sum(2 * comb(units, k) for k in range(2, width + 1))


def _fold(op, fs: Sequence[Formula]) -> Formula:
    out = fs[0]
    for f in fs[1:]:
        out = op(out, f)
    return out
