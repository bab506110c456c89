"""Finite structures, satisfaction and relativized axiom audits."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceeded, ConfigError, EvaluationError
from .formula import (
    AXIOM_ORDER,
    AxiomId,
    And,
    ConstC,
    Equal,
    Exists,
    ExistsIn,
    ForAll,
    ForAllIn,
    Formula,
    Iff,
    Implies,
    Lit,
    Member,
    Not,
    Or,
    Term,
    Var,
    builtin,
    free_vars,
    parse,
    render,
    separation_instance,
)
from .hf import HfSet, parse_hf

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class Structure:
    """A finite universe of HF sets with membership inherited from HF.

    ``tiers`` maps ``n`` to the value of the constant ``C_n``; each value must
    be a member of the universe or equal the universe read as a set.
    """

    universe: tuple[HfSet, ...]
    tiers: Mapping[int, HfSet] = field(default_factory=dict)
    name: str | None = None

    def __post_init__(self):
        u = tuple(sorted(set(self.universe)))
        if len(u) != len(self.universe) or u != self.universe:
            object.__setattr__(self, "universe", u)
        whole = None
        for n, value in self.tiers.items():
            if value in self.members:
                continue
            whole = whole if whole is not None else HfSet._from_sorted(self.universe)
            if value != whole:
                raise ConfigError(f"C{n} is neither a member of nor equal to the universe")

    @classmethod
    def of(cls, members: Iterable[HfSet], tiers: Mapping[int, HfSet] | None = None, name: str | None = None) -> Structure:
        return cls(tuple(members), dict(tiers or {}), name)

    @classmethod
    def from_set(cls, x: HfSet, tiers: Mapping[int, HfSet] | None = None, name: str | None = None) -> Structure:
        return cls(x.members, dict(tiers or {}), name)

    @cached_property
    def members(self) -> frozenset[HfSet]:
        return frozenset(self.universe)

    @cached_property
    def as_set(self) -> HfSet:
        return HfSet._from_sorted(self.universe)

    def __len__(self) -> int:
        return len(self.universe)

    def induced(self, x: HfSet) -> Structure:
        """Substructure on the universe members that belong to ``x``."""
        return Structure(tuple(y for y in self.universe if y in x), {}, None)

    def with_tiers(self, tiers: Mapping[int, HfSet]) -> Structure:
        return Structure(self.universe, dict(tiers), self.name)

    def to_json(self) -> dict:
        out: dict = {"universe": [str(x) for x in self.universe]}
        if self.tiers:
            out["tiers"] = {str(n): str(v) for n, v in sorted(self.tiers.items())}
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> Structure:
        try:
            universe = [parse_hf(s) for s in data["universe"]]
        except KeyError as exc:
            raise ConfigError("structure JSON needs a 'universe' list") from exc
        tiers = {int(n): parse_hf(s) for n, s in data.get("tiers", {}).items()}
        return cls.of(universe, tiers, data.get("name"))


# ---------------------------------------------------------------------------
# Satisfaction
# ---------------------------------------------------------------------------


class Evaluator:
    """Structural-recursion evaluator with a node budget.

    Unbounded quantifiers range over the universe; bounded ones over the
    actual members of the bound that lie in the universe.
    """

    def __init__(self, structure: Structure, budget: int = DEFAULT_BUDGET):
        if budget <= 0:
            raise ConfigError("budget must be positive")
        self.structure = structure
        self.budget = budget
        self.nodes = 0
        self._universe = structure.universe
        self._in_universe = structure.members
        self._dispatch = {
            Member: self._member,
            Equal: self._equal,
            Not: self._not,
            And: self._and,
            Or: self._or,
            Implies: self._implies,
            Iff: self._iff,
            ForAll: self._forall,
            Exists: self._exists,
            ForAllIn: self._forall_in,
            ExistsIn: self._exists_in,
        }

    def term(self, t: Term, env: Mapping[str, HfSet]) -> HfSet:
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise EvaluationError(f"variable {t.name!r} is not assigned") from None
        if isinstance(t, Lit):
            return t.value
        try:
            return self.structure.tiers[t.index]
        except KeyError:
            raise EvaluationError(f"constant C{t.index} has no tier interpretation") from None

    def holds(self, f: Formula, env: Mapping[str, HfSet]) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)
        return self._dispatch[type(f)](f, env)

    def domain(self, f: ForAllIn | ExistsIn, env: Mapping[str, HfSet]) -> list[HfSet]:
        inside = self._in_universe
        return [m for m in self.term(f.bound, env).members if m in inside]

    def _member(self, f, env):
        return self.term(f.left, env) in self.term(f.right, env)

    def _equal(self, f, env):
        return self.term(f.left, env) == self.term(f.right, env)

    def _not(self, f, env):
        return not self.holds(f.body, env)

    def _and(self, f, env):
        return self.holds(f.left, env) and self.holds(f.right, env)

    def _or(self, f, env):
        return self.holds(f.left, env) or self.holds(f.right, env)

    def _implies(self, f, env):
        return not self.holds(f.left, env) or self.holds(f.right, env)

    def _iff(self, f, env):
        return self.holds(f.left, env) == self.holds(f.right, env)

    def _forall(self, f, env):
        v, body = f.var, f.body
        return all(self.holds(body, {**env, v: x}) for x in self._universe)

    def _exists(self, f, env):
        v, body = f.var, f.body
        return any(self.holds(body, {**env, v: x}) for x in self._universe)

    def _forall_in(self, f, env):
        v, body = f.var, f.body
        return all(self.holds(body, {**env, v: x}) for x in self.domain(f, env))

    def _exists_in(self, f, env):
        v, body = f.var, f.body
        return any(self.holds(body, {**env, v: x}) for x in self.domain(f, env))


def _check_assignment(f: Formula, asg: Mapping[str, HfSet]) -> None:
    missing = sorted(free_vars(f) - set(asg))
    if missing:
        raise EvaluationError(f"free variable {missing[0]!r} has no assignment")


@dataclass(frozen=True)
class EvalResult:
    value: bool
    nodes: int


def evaluate(
    m: Structure, f: Formula | str, asg: Mapping[str, HfSet] | None = None, budget: int = DEFAULT_BUDGET
) -> EvalResult:
    if isinstance(f, str):
        f = parse(f)
    asg = dict(asg or {})
    _check_assignment(f, asg)
    ev = Evaluator(m, budget)
    value = ev.holds(f, asg)
    return EvalResult(value, ev.nodes)


def satisfies(
    m: Structure, f: Formula | str, asg: Mapping[str, HfSet] | None = None, budget: int = DEFAULT_BUDGET
) -> bool:
    """``m |= f[asg]``."""
    return evaluate(m, f, asg, budget).value


# ---------------------------------------------------------------------------
# Counterexample search and audits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Outcome for one closed formula.

    ``status`` is ``holds``, ``fails``, ``sampled`` or ``not exercised``.  A
    failing verdict names the least assignment (Ackermann order, quantifier
    order) to the leading universal variables under which ``residual`` is
    false.
    """

    status: str
    witness: dict[str, HfSet] | None = None
    residual: Formula | None = None
    sample_outcome: str | None = None
    sample_count: int | None = None
    nodes: int = 0
    instance: str | None = None

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            out["witness"] = {k: str(v) for k, v in self.witness.items()}
        if self.residual is not None:
            out["residual"] = render(self.residual)
        if self.instance is not None:
            out["instance"] = self.instance
        if self.status == "sampled":
            out["sample_outcome"] = self.sample_outcome
            out["sample_count"] = self.sample_count
        out["nodes"] = self.nodes
        return out

    def witness_text(self) -> str:
        if self.status == "sampled":
            return f"{self.sample_outcome} on {self.sample_count} instances"
        if not self.witness:
            return "-" if self.status != "fails" else "(no universal prefix)"
        return ", ".join(f"{k}={v}" for k, v in self.witness.items())


def _universal_domain(ev: Evaluator, f: Formula, env: Mapping[str, HfSet]) -> list[HfSet] | None:
    if isinstance(f, ForAll):
        return list(ev.structure.universe)
    if isinstance(f, ForAllIn):
        return ev.domain(f, env)
    return None


def _counterexample(ev: Evaluator, f: Formula, env: dict[str, HfSet]) -> tuple[dict[str, HfSet], Formula] | None:
    dom = _universal_domain(ev, f, env)
    if dom is None:
        return None if ev.holds(f, env) else (env, f)
    for x in dom:
        hit = _counterexample(ev, f.body, {**env, f.var: x})
        if hit is not None:
            return hit
    return None


def check_closed(m: Structure, f: Formula, budget: int = DEFAULT_BUDGET, asg: Mapping[str, HfSet] | None = None) -> Verdict:
    """Decide ``m |= f`` and extract the least counterexample when it fails.

    When the budget runs out the verdict is ``sampled``: the outcome over the
    instances of the outermost universal variable that finished in budget.
    """
    env = dict(asg or {})
    _check_assignment(f, env)
    ev = Evaluator(m, budget)
    dom = _universal_domain(ev, f, env)
    if dom is None:
        try:
            ok = ev.holds(f, env)
        except BudgetExceeded:
            return Verdict("sampled", sample_outcome="undecided", sample_count=0, nodes=ev.nodes)
        if ok:
            return Verdict("holds", nodes=ev.nodes)
        return Verdict("fails", witness={}, residual=f, nodes=ev.nodes)
    done = 0
    for x in dom:
        try:
            hit = _counterexample(ev, f.body, {**env, f.var: x})
        except BudgetExceeded:
            return Verdict("sampled", sample_outcome="holds", sample_count=done, nodes=ev.nodes)
        if hit is not None:
            wit, residual = hit
            wit = {k: v for k, v in wit.items() if k not in env}
            return Verdict("fails", witness=wit, residual=residual, nodes=ev.nodes)
        done += 1
    return Verdict("holds", nodes=ev.nodes)


DEFAULT_BATTERY = (
    "z = z",
    "!(z = z)",
    "z in z",
    "exists w in z. w = w",
    "forall w in z. !(exists t in w. t = t)",
    "exists w in z. exists t in w. t = t",
    "forall w in z. forall t in w. t in z",
    "exists w. z in w",
    "forall w in z. exists t in z. w in t | t = w",
    "exists w in z. forall t in z. t = w",
    "forall w in z. forall t in z. w = t | w in t | t in w",
    "exists w. exists t. w in t & t in z",
)


def default_battery() -> list[Formula]:
    """Separation predicates in the free variable ``z``."""
    return [parse(s) for s in DEFAULT_BATTERY]


@dataclass(frozen=True)
class AuditReport:
    structure_size: int
    verdicts: dict[str, Verdict]
    battery: tuple[str, ...]
    battery_verdicts: tuple[Verdict, ...]
    headline_foundation: str

    @property
    def failures(self) -> dict[str, Verdict]:
        return {k: v for k, v in self.verdicts.items() if v.status == "fails"}

    def status(self, axiom: str) -> str:
        return self.verdicts[axiom].status

    def to_json(self) -> dict:
        return {
            "structure_size": self.structure_size,
            "headline_foundation": self.headline_foundation,
            "verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
            "battery": list(self.battery),
            "battery_verdicts": [v.to_json() for v in self.battery_verdicts],
        }

    def to_text(self) -> str:
        rows = [("axiom", "verdict", "witness")]
        for k, v in self.verdicts.items():
            rows.append((k, v.status, v.witness_text()))
        w0 = max(len(r[0]) for r in rows)
        w1 = max(len(r[1]) for r in rows)
        lines = [f"{a:<{w0}}  {b:<{w1}}  {c}".rstrip() for a, b, c in rows]
        lines.insert(1, "-" * len(lines[0]))
        return "\n".join(lines)


def axiom_audit(
    m: Structure,
    battery: Sequence[Formula | str] | None = None,
    budget: int = DEFAULT_BUDGET,
    literal_foundation: bool = False,
    axioms: Sequence[AxiomId] = AXIOM_ORDER,
) -> AuditReport:
    """Audit the built-in axioms in ``m``.

    The separation schema is audited once per battery predicate; with an
    empty battery it is reported ``not exercised``.  Each axiom gets its own
    budget.  The ``F1`` row repeats the guarded form unless
    ``literal_foundation`` is set.
    """
    if battery is None:
        battery = default_battery()
    phis = [parse(b) if isinstance(b, str) else b for b in battery]
    verdicts: dict[str, Verdict] = {}
    bverdicts: list[Verdict] = []
    for axiom in axioms:
        if axiom is AxiomId.Z2:
            for phi in phis:
                bverdicts.append(check_closed(m, separation_instance(phi), budget))
            verdicts[axiom.value] = _combine_schema(bverdicts, [render(p) for p in phis])
        else:
            verdicts[axiom.value] = check_closed(m, builtin(axiom), budget)
    headline = AxiomId.F1_LITERAL.value if literal_foundation else AxiomId.F1_GUARDED.value
    if headline in verdicts:
        verdicts["F1"] = verdicts[headline]
    return AuditReport(len(m), verdicts, tuple(render(p) for p in phis), tuple(bverdicts), headline)


def _combine_schema(vs: list[Verdict], names: list[str]) -> Verdict:
    if not vs:
        return Verdict("not exercised")
    nodes = sum(v.nodes for v in vs)
    for v, name in zip(vs, names):
        if v.status == "fails":
            return Verdict("fails", v.witness, v.residual, nodes=nodes, instance=name)
    sampled = [v for v in vs if v.status == "sampled"]
    if sampled:
        return Verdict("sampled", sample_outcome="holds", sample_count=sum(v.sample_count or 0 for v in sampled), nodes=nodes)
    return Verdict("holds", nodes=nodes)
