"""Cumulative stages and finite tier configurations standing in for ``C_n``.

A :class:`TierConfig` ``(k_0 < k_1 < ...)`` reads the constant ``C_n`` as
the stage ``V_{k_n}``.  The checks here replay the collection axioms on those
stages and report where finiteness makes them fail.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Sequence

from .errors import BoundExceeded, ConfigError
from .formula import Formula, free_vars, is_safe_above, ordinal_predicate, parse, render, substitute, Lit
from .games import DEFAULT_GAME_BUDGET, EFVerdict, elementary_d
from .hf import EMPTY, HfSet, classify, fn_view, function_from, is_complete, is_ordinal, powerset
from .model import DEFAULT_BUDGET, AuditReport, Evaluator, Structure, axiom_audit

MAX_STAGE = 5
#: Largest stage on which quantifier-heavy audits are attempted.
MAX_AUDIT_STAGE = 4
DEFAULT_ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class Stage:
    index: int
    set: HfSet
    carrier: Structure

    def __len__(self) -> int:
        return len(self.set)


_stage_lock = threading.Lock()
_stages: dict[int, Stage] = {}


def build_stage(k: int) -> Stage:
    """``V_k``: ``V_0`` is empty and ``V_{k+1} = P(V_k)``.  Memoized."""
    if k < 0:
        raise ConfigError("stage index must be a natural number")
    if k > MAX_STAGE:
        raise BoundExceeded(f"V_{k} is too large to materialize (limit V_{MAX_STAGE})")
    with _stage_lock:
        hit = _stages.get(k)
        if hit is not None:
            return hit
        prev = _stages[k - 1].set if k > 0 and k - 1 in _stages else None
    if k == 0:
        v = EMPTY
    else:
        v = powerset(prev if prev is not None else build_stage(k - 1).set)
    st = Stage(k, v, Structure(v.members, {}, f"V{k}"))
    with _stage_lock:
        return _stages.setdefault(k, st)


def stage_structure(name: str) -> Structure:
    """Parse ``"V3"`` style names."""
    if len(name) < 2 or name[0] not in "Vv" or not name[1:].isdigit():
        raise ConfigError(f"expected a stage name like V3, got {name!r}")
    return build_stage(int(name[1:])).carrier


def ordinals_of(s: Stage) -> HfSet:
    return HfSet._from_sorted(tuple(x for x in s.set.members if is_ordinal(x)))


# ---------------------------------------------------------------------------
# Tiers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TierConfig:
    ks: tuple[int, ...]

    def __post_init__(self):
        ks = tuple(self.ks)
        object.__setattr__(self, "ks", ks)
        if not ks:
            raise ConfigError("a tier configuration needs at least one stage")
        if any(k < 0 for k in ks):
            raise ConfigError("stage indices must be natural numbers")
        if any(a >= b for a, b in zip(ks, ks[1:])):
            raise ConfigError(f"tier stages must be strictly increasing, got {','.join(map(str, ks))}")
        if ks[-1] > MAX_STAGE:
            raise ConfigError(f"stage V_{ks[-1]} is not buildable (limit V_{MAX_STAGE})")

    @classmethod
    def parse(cls, text: str) -> TierConfig:
        try:
            ks = tuple(int(p) for p in text.split(","))
        except ValueError as exc:
            raise ConfigError(f"tier list must be comma-separated naturals, got {text!r}") from exc
        return cls(ks)

    def __len__(self) -> int:
        return len(self.ks)

    def __str__(self) -> str:
        return ",".join(map(str, self.ks))

    def stage(self, n: int) -> Stage:
        if not 0 <= n < len(self.ks):
            raise ConfigError(f"tier {n} out of range for configuration {self}")
        return build_stage(self.ks[n])

    def carrier(self, n: int) -> HfSet:
        return self.stage(n).set

    def interpretation(self, upto: int) -> dict[int, HfSet]:
        """``C_m`` for ``m <= upto``."""
        return {m: self.carrier(m) for m in range(min(upto, len(self.ks) - 1) + 1)}

    def evaluation_structure(self, n: int) -> Structure:
        """Where formulas about tier ``n`` are evaluated: the next tier's carrier.

        For the top tier the next stage ``V_{k_n + 1}`` plays that role.
        """
        k_next = self.ks[n + 1] if n + 1 < len(self.ks) else self.ks[n] + 1
        base = build_stage(k_next).carrier
        return base.with_tiers(self.interpretation(n))


# ---------------------------------------------------------------------------
# A2: completeness and Zermelo audit per tier
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TierAudit:
    tier: int
    k: int
    complete: bool
    audit: AuditReport | None
    skipped: str | None = None

    def to_json(self) -> dict:
        out: dict = {"tier": self.tier, "stage": self.k, "complete": self.complete}
        if self.audit is not None:
            out["audit"] = self.audit.to_json()
        if self.skipped:
            out["skipped"] = self.skipped
        return out


def check_A2(t: TierConfig, battery: Sequence[Formula | str] | None = None, budget: int = DEFAULT_BUDGET) -> list[TierAudit]:
    out = []
    for n, k in enumerate(t.ks):
        st = t.stage(n)
        complete = is_complete(st.set)
        if k > MAX_AUDIT_STAGE:
            out.append(TierAudit(n, k, complete, None, f"V_{k} exceeds the audit limit V_{MAX_AUDIT_STAGE}"))
            continue
        out.append(TierAudit(n, k, complete, axiom_audit(st.carrier, battery, budget)))
    return out


# ---------------------------------------------------------------------------
# A3: elementary chain surrogate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainStep:
    lower: int
    upper: int
    verdict: EFVerdict

    def to_json(self) -> dict:
        return {"lower_stage": self.lower, "upper_stage": self.upper, **self.verdict.to_json()}


def check_A3(t: TierConfig, d: int, max_params: int, budget: int = DEFAULT_GAME_BUDGET) -> list[ChainStep]:
    steps = []
    for n in range(len(t.ks) - 1):
        lo, hi = t.stage(n), t.stage(n + 1)
        steps.append(ChainStep(lo.index, hi.index, elementary_d(lo.carrier, hi.carrier, d, max_params, budget)))
    return steps


# ---------------------------------------------------------------------------
# A4: collection building
# ---------------------------------------------------------------------------


def _single_free(f: Formula) -> str:
    fv = sorted(free_vars(f))
    if len(fv) != 1:
        raise ConfigError(f"collection building needs exactly one free variable, got {fv}")
    return fv[0]


def collection_build(t: TierConfig, n: int, f: Formula | str, budget: int = DEFAULT_BUDGET) -> HfSet:
    """``{Y in C_n : f(Y)}``, deciding ``f`` in the structure above tier ``n``."""
    if isinstance(f, str):
        f = parse(f)
    stage = t.stage(n)
    if not is_safe_above(f, n, stage.index):
        raise ConfigError(f"formula is not safe above {n}: {render(f)}")
    var = _single_free(f)
    ev = Evaluator(t.evaluation_structure(n), budget)
    return HfSet._from_sorted(tuple(y for y in stage.set.members if ev.holds(f, {var: y})))


@dataclass(frozen=True)
class BuildRecord:
    tier: int
    formula: str
    result: HfSet
    subset_of_tier: bool
    member_of_next: bool

    def to_json(self) -> dict:
        return {
            "tier": self.tier,
            "formula": self.formula,
            "result": str(self.result),
            "subset_of_tier": self.subset_of_tier,
            "member_of_next": self.member_of_next,
        }


SAFE_BATTERY = (
    "X = X",
    "!(X = X)",
    "forall y in X. forall z in y. z in X",
    "exists y in X. y = y",
    "exists y. X in y",
    "forall y in X. !(exists z in y. z = z)",
    "exists y in X. exists z in X. !(y = z)",
    "X in C0",
    "exists y in X. forall z in X. z = y",
)


def safe_battery() -> list[Formula]:
    return [parse(s) for s in SAFE_BATTERY] + [ordinal_predicate("X")]


def check_A4(t: TierConfig, battery: Sequence[Formula | str] | None = None, budget: int = DEFAULT_BUDGET) -> list[BuildRecord]:
    """Build each battery collection at every tier that has a successor tier."""
    phis = [parse(b) if isinstance(b, str) else b for b in (battery if battery is not None else safe_battery())]
    out = []
    for n in range(len(t.ks) - 1):
        carrier, nxt = t.carrier(n), t.carrier(n + 1)
        for phi in phis:
            if not is_safe_above(phi, n, t.ks[n]):
                continue
            built = collection_build(t, n, phi, budget)
            out.append(BuildRecord(n, render(phi), built, built.issubset(carrier), built in nxt))
    return out


# ---------------------------------------------------------------------------
# A5: replacement surrogate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReplacementCase:
    function: HfSet
    domain: HfSet
    range: HfSet
    range_rank: int
    range_in_tier: bool
    function_in_next: bool | None

    def to_json(self) -> dict:
        return {
            "function": str(self.function),
            "domain": str(self.domain),
            "range": str(self.range),
            "range_rank": self.range_rank,
            "range_in_tier": self.range_in_tier,
            "function_in_next": self.function_in_next,
        }


@dataclass(frozen=True)
class ReplacementReport:
    tier: int
    k: int
    functions: int
    failures: tuple[ReplacementCase, ...]
    failure_ranks: tuple[int, ...]
    passing_ranks: tuple[int, ...]
    sampled: bool = False

    @property
    def status(self) -> str:
        if self.failures:
            return "fails"
        return "sampled" if self.sampled else "holds"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "tier": self.tier,
            "stage": self.k,
            "functions": self.functions,
            "failures": len(self.failures),
            "failure_ranks": list(self.failure_ranks),
            "passing_ranks": list(self.passing_ranks),
            "least_failure": self.failures[0].to_json() if self.failures else None,
        }


def enumerate_functions(domains: Iterable[HfSet], values: Sequence[HfSet], cap: int = DEFAULT_ENUMERATION_CAP) -> Iterable[HfSet]:
    """Every function from one of ``domains`` into ``values``."""
    count = 0
    for dom in domains:
        for image in product(values, repeat=len(dom)):
            count += 1
            if count > cap:
                raise BoundExceeded(f"function enumeration exceeded {cap}")
            yield function_from(zip(dom.members, image))


def check_A5(t: TierConfig, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> ReplacementReport:
    """Every function with domain in tier ``n`` and values in tier ``n``: is its range in tier ``n``?

    Functions are enumerated from their domain and values, not from the next
    tier, since most of them have rank too high to live in any finite stage
    above.  Membership in the next tier is recorded per failure.
    """
    carrier = t.carrier(n)
    nxt = t.carrier(n + 1) if n + 1 < len(t.ks) else None
    members = carrier.members
    failures = []
    fail_ranks: set[int] = set()
    pass_ranks: set[int] = set()
    total = 0
    sampled = False
    try:
        for f in enumerate_functions(members, members, cap):
            total += 1
            view = fn_view(f)
            ok = view.range in carrier
            (pass_ranks if ok else fail_ranks).add(view.range.rank)
            if not ok:
                failures.append(
                    ReplacementCase(f, view.domain, view.range, view.range.rank, ok, None if nxt is None else f in nxt)
                )
    except BoundExceeded:
        sampled = True
    failures.sort(key=lambda c: c.function)
    return ReplacementReport(
        n, t.ks[n], total, tuple(failures), tuple(sorted(fail_ranks)), tuple(sorted(pass_ranks)), sampled
    )


# ---------------------------------------------------------------------------
# Universe lemma
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaRecord:
    tier: int
    k: int
    holds: bool
    built_size: int
    carrier_size: int

    def to_json(self) -> dict:
        return {"tier": self.tier, "stage": self.k, "holds": self.holds, "built": self.built_size, "carrier": self.carrier_size}


def universe_lemma_check(
    t: TierConfig, builder: Callable[[TierConfig, int, Formula], HfSet] | None = None
) -> list[LemmaRecord]:
    """``{X | X = X}`` built at tier ``n`` equals the carrier of tier ``n``."""
    build = builder or collection_build
    trivial = parse("X = X")
    out = []
    for n, k in enumerate(t.ks):
        built = build(t, n, trivial)
        carrier = t.carrier(n)
        out.append(LemmaRecord(n, k, built == carrier, len(built), len(carrier)))
    return out
