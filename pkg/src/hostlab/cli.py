"""Command-line front end.

Every command prints one report, as a text summary or as a JSON document
with a fixed header (tool version, argv, budgets, seed).  Exit status is 0
when the checked property holds, 1 when it fails with a witness and 2 on
usage or resource errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from . import category as cat
from . import hierarchy as hier
from .errors import HostError
from .formula import Formula, parse, render
from .games import DEFAULT_GAME_BUDGET, elementary_d
from .hf import parse_hf, von_neumann
from .model import DEFAULT_BUDGET, Structure, axiom_audit, evaluate

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
DEFAULT_ENUM_CAP = 10**5
CHECKS = ("A2", "A3", "A4", "A5", "lemma")
SCHEMA_PATH = Path(__file__).with_name("schema") / "report.schema.json"


class Outcome:
    """What a command hands back to :func:`main`."""

    def __init__(self, ok: bool, result: dict, text: str):
        self.ok = ok
        self.result = result
        self.text = text


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise HostError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise HostError(f"{path} is not valid JSON: {exc.msg}") from exc


def load_structure(arg: str) -> Structure:
    if arg[:1] in "Vv" and arg[1:].isdigit():
        return hier.stage_structure(arg)
    return Structure.from_json(_read_json(arg))


def load_formula(arg: str) -> Formula:
    if arg.startswith("@"):
        try:
            arg = Path(arg[1:]).read_text()
        except OSError as exc:
            raise HostError(f"cannot read {arg[1:]}: {exc.strerror}") from exc
    return parse(arg.strip())


def load_battery(path: str | None) -> list[Formula] | None:
    if path is None:
        return None
    lines = Path(path).read_text().splitlines()
    return [parse(s) for s in (line.strip() for line in lines) if s and not s.startswith("#")]


def load_category(arg: str) -> cat.FinCategory:
    """A JSON file or one of ``terminal``, ``parallel-pair``, ``cospan``, ``discrete-N``, ``collK``."""
    if arg == "terminal":
        return cat.terminal_category()
    if arg == "parallel-pair":
        return cat.parallel_pair_category()
    if arg == "cospan":
        return cat.cospan_category()
    if arg.startswith("discrete-") and arg[9:].isdigit():
        return cat.discrete_category(int(arg[9:]))
    if arg.startswith("coll") and arg[4:].isdigit():
        return cat.build_coll(int(arg[4:]))
    return cat.FinCategory.from_json(_read_json(arg), name=Path(arg).stem)


def _assignment(pairs: Sequence[str]) -> dict:
    out = {}
    for p in pairs:
        name, sep, term = p.partition("=")
        if not sep or not name.strip():
            raise HostError(f"--assign expects var=term, got {p!r}")
        out[name.strip()] = parse_hf(term.strip())
    return out


def _status(ok: bool) -> str:
    return "holds" if ok else "fails"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_eval(a: argparse.Namespace) -> Outcome:
    m = load_structure(a.structure)
    f = load_formula(a.formula)
    asg = _assignment(a.assign)
    r = evaluate(m, f, asg, a.budget)
    result = {
        "status": "true" if r.value else "false",
        "value": r.value,
        "formula": render(f),
        "structure_size": len(m),
        "assignment": {k: str(v) for k, v in sorted(asg.items())},
        "nodes": r.nodes,
    }
    return Outcome(r.value, result, f"{'true' if r.value else 'false'} ({r.nodes} nodes)")


def cmd_audit(a: argparse.Namespace) -> Outcome:
    m = load_structure(a.structure)
    rep = axiom_audit(m, load_battery(a.battery), a.budget, a.literal_foundation)
    ok = not rep.failures and all(v.status == "holds" for v in rep.verdicts.values())
    return Outcome(ok, rep.to_json(), rep.to_text())


def cmd_ef(a: argparse.Namespace) -> Outcome:
    x, y = load_structure(a.left), load_structure(a.right)
    v = elementary_d(x, y, a.depth, a.params, a.game_budget)
    if v.holds:
        text = f"holds at depth {a.depth} with up to {a.params} parameters ({v.tuples_checked} tuples)"
    else:
        params = ", ".join(f"{k}={val}" for k, val in v.assignment.items()) or "none"
        text = f"fails: {render(v.formula)}  [parameters: {params}]"
    return Outcome(v.holds, v.to_json(), text)


def _run_check(name: str, fn: Callable[[], tuple[bool, Any, list[str]]]) -> tuple[bool | None, dict, list[str]]:
    try:
        ok, payload, lines = fn()
    except HostError as exc:
        return None, {"status": "error", "error": str(exc)}, [f"{name}: error: {exc}"]
    return ok, {"status": _status(ok), "report": payload}, lines


def cmd_tiers(a: argparse.Namespace) -> Outcome:
    t = hier.TierConfig.parse(a.config)
    checks = [c.strip() for c in a.check.split(",") if c.strip()]
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise HostError(f"unknown check {unknown[0]!r}; choose from {', '.join(CHECKS)}")
    battery = load_battery(a.battery)

    def a2():
        rows = hier.check_A2(t, None, a.budget)
        lines = []
        for r in rows:
            if r.audit is None:
                lines.append(f"A2 tier {r.tier} (V{r.k}): complete={r.complete}, audit skipped: {r.skipped}")
            else:
                fails = ",".join(r.audit.failures) or "none"
                lines.append(f"A2 tier {r.tier} (V{r.k}): complete={r.complete}, failing axioms: {fails}")
        ok = all(r.complete and r.audit is not None and not r.audit.failures for r in rows)
        return ok, [r.to_json() for r in rows], lines

    def a3():
        steps = hier.check_A3(t, a.depth, a.params, a.game_budget)
        lines = []
        for s in steps:
            v = s.verdict
            if v.holds:
                lines.append(f"A3 V{s.lower} <= V{s.upper}: holds at depth {a.depth}")
            else:
                params = ", ".join(f"{k}={val}" for k, val in v.assignment.items()) or "none"
                lines.append(f"A3 V{s.lower} <= V{s.upper}: fails, {render(v.formula)}  [parameters: {params}]")
        return all(s.verdict.holds for s in steps), [s.to_json() for s in steps], lines

    def a4():
        recs = hier.check_A4(t, battery, a.budget)
        ok = all(r.subset_of_tier and r.member_of_next for r in recs)
        good = sum(r.member_of_next for r in recs)
        return ok, [r.to_json() for r in recs], [f"A4: {good}/{len(recs)} built collections are members of the next tier"]

    def a5():
        reps = [hier.check_A5(t, n, a.enum_cap) for n in range(len(t))]
        lines = [
            f"A5 tier {r.tier} (V{r.k}): {r.functions} functions, {len(r.failures)} failures"
            f" at range ranks {list(r.failure_ranks)}" + (" (sampled)" if r.sampled else "")
            for r in reps
        ]
        return all(r.status == "holds" for r in reps), [r.to_json() for r in reps], lines

    def lemma():
        recs = hier.universe_lemma_check(t)
        lines = [f"lemma tier {r.tier} (V{r.k}): {'holds' if r.holds else 'fails'}" for r in recs]
        return all(r.holds for r in recs), [r.to_json() for r in recs], lines

    runners = {"A2": a2, "A3": a3, "A4": a4, "A5": a5, "lemma": lemma}
    results: dict[str, dict] = {}
    text: list[str] = []
    oks: list[bool | None] = []
    for name in checks:
        ok, payload, lines = _run_check(name, runners[name])
        results[name] = payload
        text.extend(lines)
        oks.append(ok)
    if None in oks:
        raise _PartialError({"config": str(t), "checks": results}, "\n".join(text))
    return Outcome(all(oks), {"config": str(t), "checks": results}, "\n".join(text))


class _PartialError(HostError):
    def __init__(self, result: dict, text: str):
        self.result = result
        self.text = text
        super().__init__("one or more checks could not run")


def cmd_cat(a: argparse.Namespace) -> Outcome:
    return _CAT[a.cat_command](a)


def cat_coll(a):
    c = cat.build_coll(a.stage)
    v = cat.validate(c)
    laws = "laws OK" if v.holds else f"laws fail ({v.law})"
    result = {"status": _status(v.holds), "objects": c.n_objects, "arrows": c.n_arrows,
              "thin": cat.is_thin(c), "laws": v.to_json(), "category": c.to_json()}
    return Outcome(v.holds, result, f"{c.name}: {c.n_objects} objects, {c.n_arrows} arrows, {laws}")


def cat_validate(a):
    c = load_category(a.file)
    v = cat.validate(c)
    text = "laws OK" if v.holds else f"fails {v.law}: {', '.join(v.witness)}"
    return Outcome(v.holds, {"objects": c.n_objects, "arrows": c.n_arrows, **v.to_json()}, text)


def cat_freyd(a):
    if a.enumerate:
        n, m = a.enumerate
        r = cat.freyd_enumerate(n, m)
        text = f"{r.categories} categories enumerated, {r.non_thin} non-thin, {r.violations} violations"
        return Outcome(r.violations == 0, {"status": _status(r.violations == 0), **r.to_json()}, text)
    if not a.file:
        raise HostError("cat freyd needs a category file or --enumerate N M")
    c = load_category(a.file)
    v = cat.validate(c)
    if not v.holds:
        raise HostError(f"not a category: {v.law} at {', '.join(v.witness)}")
    r = cat.freyd_audit(c)
    return Outcome(not r.violation, r.to_json(), r.status)


def cat_cantor(a):
    if a.size < 0:
        raise HostError("--size must be a natural number")
    r = cat.cantor_check(von_neumann(a.size))
    return Outcome(r.holds, r.to_json(), f"{r.functions} functions checked, {r.surjective} surjective")


def cat_functorcat(a):
    c, d = load_category(a.source), load_category(a.target)
    fc = cat.functor_category(c, d, a.enum_cap)
    v = cat.validate(fc)
    result = {"status": _status(v.holds), "objects": fc.n_objects, "arrows": fc.n_arrows,
              "laws": v.to_json(), "category": fc.to_json()}
    text = f"{fc.n_objects} functors, {fc.n_arrows} natural transformations, {'laws OK' if v.holds else 'laws fail'}"
    return Outcome(v.holds, result, text)


def cat_classify(a):
    c = load_category(a.file)
    t = hier.TierConfig.parse(a.config)
    rows = cat.classify_size(c, t)
    lines = []
    for r in rows:
        flags = [k for k, v in r.to_json().items() if k != "tier" and v]
        lines.append(f"tier {r.tier}: {', '.join(flags) or 'none'}")
    return Outcome(True, {"config": str(t), "tiers": [r.to_json() for r in rows]}, "\n".join(lines))


def cat_embed(a):
    r = cat.check_embedding(a.k1, a.k2)
    text = (f"Coll(V{a.k1}) -> Coll(V{a.k2}): full={r.full}, faithful={r.faithful}, "
            f"terminal preserved={r.terminal_preserved}, products preserved={r.products_preserved}")
    return Outcome(r.holds, r.to_json(), text)


def cat_topos(a):
    c = cat.build_coll(a.stage)
    r = cat.topos_audit(c, von_neumann(2))
    lines = []
    for k, f in r.features.items():
        extra = f" [{', '.join(f.witness)}]" if f.witness else ""
        note = f" ({f.note})" if f.note else ""
        lines.append(f"{k}: {_status(f.holds)}{extra}{note}")
    return Outcome(r.holds, r.to_json(), "\n".join(lines))


_CAT = {
    "coll": cat_coll,
    "validate": cat_validate,
    "freyd": cat_freyd,
    "cantor": cat_cantor,
    "functorcat": cat_functorcat,
    "classify": cat_classify,
    "embed": cat_embed,
    "topos": cat_topos,
}


# ---------------------------------------------------------------------------
# Parser and driver
# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _natural(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a natural number")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--budget", type=_positive, default=argparse.SUPPRESS, help="evaluation node budget")
    common.add_argument("--game-budget", type=_positive, default=argparse.SUPPRESS, help="EF position budget")
    common.add_argument("--enum-cap", type=_positive, default=argparse.SUPPRESS, help="enumeration cap")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="recorded in the report header")

    p = argparse.ArgumentParser(prog="hostlab", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=f"hostlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="decide a formula in a structure")
    e.add_argument("--structure", required=True, help="Vk or a structure JSON file")
    e.add_argument("--formula", required=True, help="formula text or @file")
    e.add_argument("--assign", action="append", default=[], metavar="VAR=TERM")
    e.set_defaults(func=cmd_eval)

    au = sub.add_parser("audit", parents=[common], help="audit the built-in axioms")
    au.add_argument("--structure", required=True)
    au.add_argument("--battery", help="file of separation predicates in z, one per line")
    au.add_argument("--literal-foundation", action="store_true")
    au.set_defaults(func=cmd_audit)

    ef = sub.add_parser("ef", parents=[common], help="depth-bounded elementary submodel check")
    ef.add_argument("--left", required=True)
    ef.add_argument("--right", required=True)
    ef.add_argument("--depth", type=_natural, default=1)
    ef.add_argument("--params", type=_natural, default=1)
    ef.set_defaults(func=cmd_ef)

    ti = sub.add_parser("tiers", parents=[common], help="tier configuration checks")
    ti.add_argument("--config", required=True, help="comma list of stage indices, e.g. 2,3,4")
    ti.add_argument("--check", default=",".join(CHECKS), help="subset of " + ",".join(CHECKS))
    ti.add_argument("--battery", help="A4 battery: safe predicates in X, one per line")
    ti.add_argument("--depth", type=_natural, default=1)
    ti.add_argument("--params", type=_natural, default=1)
    ti.set_defaults(func=cmd_tiers)

    ca = sub.add_parser("cat", parents=[common], help="finite category tools")
    cs = ca.add_subparsers(dest="cat_command", required=True)
    x = cs.add_parser("coll", parents=[common])
    x.add_argument("--stage", type=_natural, required=True)
    x = cs.add_parser("validate", parents=[common])
    x.add_argument("file")
    x = cs.add_parser("freyd", parents=[common])
    x.add_argument("file", nargs="?")
    x.add_argument("--enumerate", nargs=2, type=_natural, metavar=("N", "M"),
                   help="all categories with at most N objects and M arrows")
    x = cs.add_parser("cantor", parents=[common])
    x.add_argument("--size", type=_natural, required=True)
    x = cs.add_parser("functorcat", parents=[common])
    x.add_argument("source")
    x.add_argument("target")
    x = cs.add_parser("classify", parents=[common])
    x.add_argument("file")
    x.add_argument("--config", required=True)
    x = cs.add_parser("embed", parents=[common])
    x.add_argument("k1", type=_natural)
    x.add_argument("k2", type=_natural)
    x = cs.add_parser("topos", parents=[common])
    x.add_argument("--stage", type=_natural, required=True)
    ca.set_defaults(func=cmd_cat)
    return p


def _header(a: argparse.Namespace, argv: Sequence[str]) -> dict:
    return {
        "tool": "hostlab",
        "version": __version__,
        "command": list(argv),
        "budgets": {"eval_nodes": a.budget, "game_positions": a.game_budget, "enumeration_cap": a.enum_cap},
        "seed": a.seed,
    }


def _emit(doc: dict, text: str, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def main(argv: Sequence[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    a = build_parser().parse_args(argv)
    for name, default in (("format", "text"), ("budget", DEFAULT_BUDGET), ("game_budget", DEFAULT_GAME_BUDGET),
                          ("enum_cap", DEFAULT_ENUM_CAP), ("seed", 0)):
        if not hasattr(a, name):
            setattr(a, name, default)
    doc = _header(a, argv)
    try:
        outcome = a.func(a)
    except _PartialError as exc:
        doc.update(status="error", error=str(exc), result=exc.result)
        _emit(doc, exc.text, a.format, out)
        return EXIT_ERROR
    except (HostError, OSError) as exc:
        print(f"hostlab: error: {exc}", file=sys.stderr)
        if a.format == "json":
            doc.update(status="error", error=str(exc))
            _emit(doc, "", "json", out)
        return EXIT_ERROR
    doc.update(status="holds" if outcome.ok else "fails", result=outcome.result)
    _emit(doc, outcome.text, a.format, out)
    return EXIT_OK if outcome.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
