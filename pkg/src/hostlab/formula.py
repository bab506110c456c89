"""The first-order language of collections: AST, parser, printer, transforms.

Grammar (``->`` is right-associative, quantifier bodies extend as far right
as possible)::

    formula    := quantified | iff
    quantified := ("forall" | "exists") var ["in" term] "." formula
    iff        := implies ("<->" implies)*
    implies    := or ("->" implies)?
    or         := and ("|" and)*
    and        := unary ("&" unary)*
    unary      := "!" unary | quantified | "(" formula ")" | atom
    atom       := term ("in" | "=" | "!=") term
    term       := var | "C" digits | hf-literal | "#" digits
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import CaptureError, FormulaSyntaxError
from .hf import HfSet, _parse_hf_at

# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class ConstC:
    """The constant ``C_n`` naming the collection of n-collections."""

    index: int


@dataclass(frozen=True)
class Lit:
    value: HfSet


Term = Union[Var, ConstC, Lit]


@dataclass(frozen=True)
class Member:
    left: Term
    right: Term


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForAll:
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists:
    var: str
    body: Formula


@dataclass(frozen=True)
class ForAllIn:
    var: str
    bound: Term
    body: Formula


@dataclass(frozen=True)
class ExistsIn:
    var: str
    bound: Term
    body: Formula


Atom = Union[Member, Equal]
Binary = Union[And, Or, Implies, Iff]
Quantifier = Union[ForAll, Exists, ForAllIn, ExistsIn]
Formula = Union[Member, Equal, Not, And, Or, Implies, Iff, ForAll, Exists, ForAllIn, ExistsIn]

BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (ForAll, Exists, ForAllIn, ExistsIn)
BOUNDED = (ForAllIn, ExistsIn)


def conj(*fs: Formula) -> Formula:
    """Left-nested conjunction of one or more formulas."""
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def disj(*fs: Formula) -> Formula:
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


# ---------------------------------------------------------------------------
# Tokenizer and parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|!=|[!&|().=])
  | (?P<hash>\#\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<brace>\{)
    """,
    re.VERBOSE,
)

KEYWORDS = frozenset({"forall", "exists", "in"})
_CONST = re.compile(r"C(\d+)\Z")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int
    value: object = None


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind == "ws":
            pos = m.end()
            continue
        if kind == "brace":
            value, end = _parse_hf_at(text, pos)
            toks.append(_Tok("lit", text[pos:end], pos, value))
            pos = end
            continue
        if kind == "hash":
            value, end = _parse_hf_at(text, pos)
            toks.append(_Tok("lit", text[pos:end], pos, value))
            pos = end
            continue
        word = m.group()
        if kind == "ident" and word in KEYWORDS:
            kind = word
        toks.append(_Tok(kind, word, pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str) -> FormulaSyntaxError:
        where = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
        return FormulaSyntaxError(f"{message}, found {where}", self.tok.pos, self.text)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("op", "in", "forall", "exists"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.error(f"expected {text!r}")

    def parse(self) -> Formula:
        f = self.formula()
        if self.tok.kind != "eof":
            raise self.error("expected end of input")
        return f

    def formula(self) -> Formula:
        left = self.implies()
        while self.accept("<->"):
            left = Iff(left, self.implies())
        return left

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.accept("|"):
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.accept("&"):
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.accept("!"):
            return Not(self.unary())
        if self.tok.kind in ("forall", "exists"):
            return self.quantified()
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        return self.atom()

    def quantified(self) -> Formula:
        kind = self.tok.kind
        self.i += 1
        if self.tok.kind != "ident" or _CONST.match(self.tok.text):
            raise self.error("expected a variable after quantifier")
        var = self.tok.text
        self.i += 1
        bound = None
        if self.accept("in"):
            bound = self.term()
        self.expect(".")
        body = self.formula()
        if kind == "forall":
            return ForAll(var, body) if bound is None else ForAllIn(var, bound, body)
        return Exists(var, body) if bound is None else ExistsIn(var, bound, body)

    def atom(self) -> Formula:
        left = self.term()
        if self.accept("in"):
            return Member(left, self.term())
        if self.accept("="):
            return Equal(left, self.term())
        if self.accept("!="):
            return Not(Equal(left, self.term()))
        raise self.error("expected 'in', '=' or '!='")

    def term(self) -> Term:
        tok = self.tok
        if tok.kind == "lit":
            self.i += 1
            return Lit(tok.value)
        if tok.kind == "ident":
            self.i += 1
            m = _CONST.match(tok.text)
            if m:
                return ConstC(int(m.group(1)))
            return Var(tok.text)
        raise self.error("expected a term")


def parse(text: str) -> Formula:
    """Parse ``text``; bound variables that shadow are renamed apart."""
    return freshen(_Parser(text).parse())


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYM = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def render_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, ConstC):
        return f"C{t.index}"
    return str(t.value)


def render(f: Formula) -> str:
    return _render(f, 0)


def _prec(f: Formula) -> int:
    if isinstance(f, QUANTIFIERS):
        return 0
    if isinstance(f, BINARY):
        return _PREC[type(f)]
    return 6


def _render(f: Formula, need: int) -> str:
    if isinstance(f, Member):
        s = f"{render_term(f.left)} in {render_term(f.right)}"
    elif isinstance(f, Equal):
        s = f"{render_term(f.left)} = {render_term(f.right)}"
    elif isinstance(f, Not):
        inner = _render(f.body, 6)
        s = "!" + (inner if isinstance(f.body, Not) else _paren(inner, f.body))
    elif isinstance(f, BINARY):
        p = _PREC[type(f)]
        if isinstance(f, Implies):
            ln, rn = p + 1, p
        else:
            ln, rn = p, p + 1
        s = f"{_render(f.left, ln)} {_SYM[type(f)]} {_render(f.right, rn)}"
    elif isinstance(f, (ForAll, Exists)):
        q = "forall" if isinstance(f, ForAll) else "exists"
        s = f"{q} {f.var}. {_render(f.body, 0)}"
    elif isinstance(f, BOUNDED):
        q = "forall" if isinstance(f, ForAllIn) else "exists"
        s = f"{q} {f.var} in {render_term(f.bound)}. {_render(f.body, 0)}"
    else:
        raise TypeError(f"not a formula: {f!r}")
    if _prec(f) < need:
        return f"({s})"
    return s


def _paren(s: str, f: Formula) -> str:
    return s if s.startswith("(") and _prec(f) < 6 else f"({s})"


# ---------------------------------------------------------------------------
# Structural queries
# ---------------------------------------------------------------------------


def term_vars(t: Term) -> set[str]:
    return {t.name} if isinstance(t, Var) else set()


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, (Member, Equal)):
        return frozenset(term_vars(f.left) | term_vars(f.right))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (ForAll, Exists)):
        return free_vars(f.body) - {f.var}
    if isinstance(f, BOUNDED):
        return (free_vars(f.body) - {f.var}) | term_vars(f.bound)
    raise TypeError(f"not a formula: {f!r}")


def quantifier_depth(f: Formula) -> int:
    if isinstance(f, (Member, Equal)):
        return 0
    if isinstance(f, Not):
        return quantifier_depth(f.body)
    if isinstance(f, BINARY):
        return max(quantifier_depth(f.left), quantifier_depth(f.right))
    return 1 + quantifier_depth(f.body)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from subformulas(f.body)


def terms(f: Formula) -> Iterator[Term]:
    for g in subformulas(f):
        if isinstance(g, (Member, Equal)):
            yield g.left
            yield g.right
        elif isinstance(g, BOUNDED):
            yield g.bound


def constants(f: Formula) -> frozenset[int]:
    return frozenset(t.index for t in terms(f) if isinstance(t, ConstC))


def literals(f: Formula) -> frozenset[HfSet]:
    return frozenset(t.value for t in terms(f) if isinstance(t, Lit))


def bound_vars(f: Formula) -> frozenset[str]:
    return frozenset(g.var for g in subformulas(f) if isinstance(g, QUANTIFIERS))


def all_vars(f: Formula) -> frozenset[str]:
    return bound_vars(f) | frozenset(t.name for t in terms(f) if isinstance(t, Var))


def is_safe_above(f: Formula, n: int, rank_bound: int | None = None) -> bool:
    """No constant ``C_m`` with ``m > n``; no literal of rank above ``rank_bound``.

    ``rank_bound`` is the stage index ``k_n`` of the active tier ``n`` (members
    of tier ``n`` have rank below it, the tier itself has rank equal to it).
    """
    if any(m > n for m in constants(f)):
        return False
    if rank_bound is not None and any(x.rank > rank_bound for x in literals(f)):
        return False
    return True


# ---------------------------------------------------------------------------
# Renaming, substitution, alpha-equivalence
# ---------------------------------------------------------------------------


def fresh_name(base: str, taken: set[str] | frozenset[str]) -> str:
    stem = base.rstrip("0123456789") or base
    for i in itertools.count(1):
        cand = f"{stem}{i}"
        if cand not in taken and not _CONST.match(cand):
            return cand
    raise AssertionError("unreachable")


def _sub_term(t: Term, env: dict[str, Term]) -> Term:
    if isinstance(t, Var) and t.name in env:
        return env[t.name]
    return t


def substitute(f: Formula, env: dict[str, Term]) -> Formula:
    """Capture-avoiding substitution of free variables."""
    incoming: set[str] = set()
    for t in env.values():
        incoming |= term_vars(t)
    return _subst(f, dict(env), incoming)


def _subst(f: Formula, env: dict[str, Term], incoming: set[str]) -> Formula:
    if isinstance(f, Member):
        return Member(_sub_term(f.left, env), _sub_term(f.right, env))
    if isinstance(f, Equal):
        return Equal(_sub_term(f.left, env), _sub_term(f.right, env))
    if isinstance(f, Not):
        return Not(_subst(f.body, env, incoming))
    if isinstance(f, BINARY):
        return type(f)(_subst(f.left, env, incoming), _subst(f.right, env, incoming))
    v = f.var
    inner = {k: t for k, t in env.items() if k != v}
    new_v = v
    if v in incoming:
        new_v = fresh_name(v, incoming | all_vars(f) | set(env))
        inner[v] = Var(new_v)
    body = _subst(f.body, inner, incoming | {new_v})
    if isinstance(f, ForAll):
        return ForAll(new_v, body)
    if isinstance(f, Exists):
        return Exists(new_v, body)
    bound = _sub_term(f.bound, env)
    return type(f)(new_v, bound, body)


def freshen(f: Formula) -> Formula:
    """Rename binders that shadow a free variable or an enclosing binder."""
    free = free_vars(f)
    taken = set(all_vars(f))
    return _freshen(f, {}, frozenset(), free, taken)


def _freshen(f: Formula, env: dict[str, str], bound: frozenset[str], free: frozenset[str], taken: set[str]) -> Formula:
    def rt(t: Term) -> Term:
        if isinstance(t, Var) and t.name in env:
            return Var(env[t.name])
        return t

    if isinstance(f, Member):
        return Member(rt(f.left), rt(f.right))
    if isinstance(f, Equal):
        return Equal(rt(f.left), rt(f.right))
    if isinstance(f, Not):
        return Not(_freshen(f.body, env, bound, free, taken))
    if isinstance(f, BINARY):
        return type(f)(_freshen(f.left, env, bound, free, taken), _freshen(f.right, env, bound, free, taken))
    v = f.var
    new_v = v
    if v in free or v in bound:
        new_v = fresh_name(v, taken)
        taken.add(new_v)
    body = _freshen(f.body, {**env, v: new_v}, bound | {new_v}, free, taken)
    if isinstance(f, ForAll):
        return ForAll(new_v, body)
    if isinstance(f, Exists):
        return Exists(new_v, body)
    return type(f)(new_v, rt(f.bound), body)


def alpha_equal(f: Formula, g: Formula) -> bool:
    return _alpha(f, g, {}, {}, 0)


def _alpha(f: Formula, g: Formula, ef: dict[str, int], eg: dict[str, int], depth: int) -> bool:
    if type(f) is not type(g):
        return False

    def same(s: Term, t: Term) -> bool:
        if isinstance(s, Var) and isinstance(t, Var):
            a, b = ef.get(s.name), eg.get(t.name)
            if a is None and b is None:
                return s.name == t.name
            return a == b
        return s == t

    if isinstance(f, (Member, Equal)):
        return same(f.left, g.left) and same(f.right, g.right)
    if isinstance(f, Not):
        return _alpha(f.body, g.body, ef, eg, depth)
    if isinstance(f, BINARY):
        return _alpha(f.left, g.left, ef, eg, depth) and _alpha(f.right, g.right, ef, eg, depth)
    if isinstance(f, BOUNDED) and not same(f.bound, g.bound):
        return False
    return _alpha(f.body, g.body, {**ef, f.var: depth}, {**eg, g.var: depth}, depth + 1)


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------


def desugar(f: Formula) -> Formula:
    """Replace bounded quantifiers by guarded unbounded ones."""
    if isinstance(f, (Member, Equal)):
        return f
    if isinstance(f, Not):
        return Not(desugar(f.body))
    if isinstance(f, BINARY):
        return type(f)(desugar(f.left), desugar(f.right))
    body = desugar(f.body)
    if isinstance(f, ForAll):
        return ForAll(f.var, body)
    if isinstance(f, Exists):
        return Exists(f.var, body)
    guard = Member(Var(f.var), f.bound)
    if isinstance(f, ForAllIn):
        return ForAll(f.var, Implies(guard, body))
    return Exists(f.var, And(guard, body))


def relativize(f: Formula, bound: Term, guard_free: bool = False) -> Formula:
    """Bind every quantifier of ``f`` to ``bound``.

    Already-bounded quantifiers keep their own bound as a guard inside the
    relativized one.  With ``guard_free`` the free variables are also
    restricted: the result is ``(v1 in bound & ...) -> f'``.
    """
    names = term_vars(bound)
    if names & bound_vars(f):
        raise CaptureError(f"a quantifier of the formula binds {sorted(names & bound_vars(f))[0]!r}")
    out = _relativize(f, bound)
    if guard_free:
        free = sorted(free_vars(f) - names)
        if free:
            out = Implies(conj(*(Member(Var(v), bound) for v in free)), out)
    return out


def _relativize(f: Formula, b: Term) -> Formula:
    if isinstance(f, (Member, Equal)):
        return f
    if isinstance(f, Not):
        return Not(_relativize(f.body, b))
    if isinstance(f, BINARY):
        return type(f)(_relativize(f.left, b), _relativize(f.right, b))
    body = _relativize(f.body, b)
    if isinstance(f, ForAll):
        return ForAllIn(f.var, b, body)
    if isinstance(f, Exists):
        return ExistsIn(f.var, b, body)
    guard = Member(Var(f.var), f.bound)
    if isinstance(f, ForAllIn):
        return ForAllIn(f.var, b, Implies(guard, body))
    return ExistsIn(f.var, b, And(guard, body))


def negation_normal(f: Formula) -> Formula:
    """Push negations to atoms; eliminates ``->`` and ``<->``."""
    return _nnf(f, False)


def _nnf(f: Formula, neg: bool) -> Formula:
    if isinstance(f, (Member, Equal)):
        return Not(f) if neg else f
    if isinstance(f, Not):
        return _nnf(f.body, not neg)
    if isinstance(f, And):
        l, r = _nnf(f.left, neg), _nnf(f.right, neg)
        return Or(l, r) if neg else And(l, r)
    if isinstance(f, Or):
        l, r = _nnf(f.left, neg), _nnf(f.right, neg)
        return And(l, r) if neg else Or(l, r)
    if isinstance(f, Implies):
        return _nnf(Or(Not(f.left), f.right), neg)
    if isinstance(f, Iff):
        return _nnf(Or(And(f.left, f.right), And(Not(f.left), Not(f.right))), neg)
    body = _nnf(f.body, neg)
    flip = {ForAll: Exists, Exists: ForAll, ForAllIn: ExistsIn, ExistsIn: ForAllIn}
    cls = flip[type(f)] if neg else type(f)
    if isinstance(f, BOUNDED):
        return cls(f.var, f.bound, body)
    return cls(f.var, body)


# ---------------------------------------------------------------------------
# Defined notions expanded to membership and equality
# ---------------------------------------------------------------------------


class _Names:
    """Supply of bound-variable names that avoid a reserved set."""

    def __init__(self, reserved: set[str] | frozenset[str] = frozenset()):
        self.taken = set(reserved)

    def __call__(self, base: str) -> str:
        name = base if base not in self.taken else fresh_name(base, self.taken)
        self.taken.add(name)
        return name


def _v(name: str) -> Var:
    return Var(name)


def is_empty(x: Term, names: _Names) -> Formula:
    w = names("w")
    return ForAll(w, Not(Member(_v(w), x)))


def is_nonempty(x: Term, names: _Names) -> Formula:
    w = names("w")
    return Exists(w, Member(_v(w), x))


def subset(a: Term, b: Term, names: _Names) -> Formula:
    w = names("w")
    return ForAll(w, Implies(Member(_v(w), a), Member(_v(w), b)))


def is_successor_of(y: Term, z: Term, names: _Names) -> Formula:
    """``y = z u {z}``."""
    w = names("w")
    return ForAll(w, Iff(Member(_v(w), y), Or(Member(_v(w), z), Equal(_v(w), z))))


def is_transitive_f(x: Term, names: _Names) -> Formula:
    y, z = names("y"), names("z")
    return ForAllIn(y, x, ForAllIn(z, _v(y), Member(_v(z), x)))


def is_ordinal_f(x: Term, names: _Names) -> Formula:
    """Transitive set of transitive sets."""
    y = names("y")
    return And(is_transitive_f(x, names), ForAllIn(y, x, is_transitive_f(_v(y), names)))


def _sing(u: Term, a: Term, names: _Names) -> Formula:
    t = names("t")
    return And(Member(a, u), ForAllIn(t, u, Equal(_v(t), a)))


def _dbl(u: Term, a: Term, b: Term, names: _Names) -> Formula:
    t = names("t")
    return conj(Member(a, u), Member(b, u), ForAllIn(t, u, Or(Equal(_v(t), a), Equal(_v(t), b))))


def is_pair(p: Term, a: Term, b: Term, names: _Names) -> Formula:
    """``p = {{a}, {a, b}}`` with every quantifier bounded by ``p``."""
    u1, u2, u3 = names("u"), names("u"), names("u")
    return conj(
        ExistsIn(u1, p, _sing(_v(u1), a, names)),
        ExistsIn(u2, p, _dbl(_v(u2), a, b, names)),
        ForAllIn(u3, p, Or(_sing(_v(u3), a, names), _dbl(_v(u3), a, b, names))),
    )


def _each_pair(f: Term, names: _Names, body) -> Formula:
    """``forall p in f. forall u in p. forall a in u. forall v in p. forall b in v. (pair -> body)``."""
    p, u, a, v, b = names("p"), names("u"), names("a"), names("v"), names("b")
    guard = is_pair(_v(p), _v(a), _v(b), names)
    inner = Implies(guard, body(_v(a), _v(b)))
    return ForAllIn(p, f, ForAllIn(u, _v(p), ForAllIn(a, _v(u), ForAllIn(v, _v(p), ForAllIn(b, _v(v), inner)))))


def _some_value(f: Term, a: Term, names: _Names, body=None) -> Formula:
    """``exists p in f. exists v in p. exists b in v. (pair(p, a, b) & body(b))``."""
    p, v, b = names("p"), names("v"), names("b")
    matrix = is_pair(_v(p), a, _v(b), names)
    if body is not None:
        matrix = And(matrix, body(_v(b)))
    return ExistsIn(p, f, ExistsIn(v, _v(p), ExistsIn(b, _v(v), matrix)))


def is_function_f(f: Term, names: _Names) -> Formula:
    """A set of ordered pairs in which no first coordinate repeats."""
    p, u, a, v, b = names("p"), names("u"), names("a"), names("v"), names("b")
    all_pairs = ForAllIn(
        p, f, ExistsIn(u, _v(p), ExistsIn(a, _v(u), ExistsIn(v, _v(p), ExistsIn(b, _v(v), is_pair(_v(p), _v(a), _v(b), names)))))
    )
    q, w, c = names("q"), names("w"), names("c")

    def unique(a_: Term, b_: Term) -> Formula:
        return ForAllIn(q, f, ForAllIn(w, _v(q), ForAllIn(c, _v(w), Implies(is_pair(_v(q), a_, _v(c), names), Equal(b_, _v(c))))))

    return And(all_pairs, _each_pair(f, names, unique))


def domain_equals(f: Term, x: Term, names: _Names) -> Formula:
    a = names("a")
    covers = ForAllIn(a, x, _some_value(f, _v(a), names))
    inside = _each_pair(f, names, lambda a_, b_: Member(a_, x))
    return And(covers, inside)


def range_within_union(f: Term, x: Term, names: _Names) -> Formula:
    y = names("y")
    return _each_pair(f, names, lambda a_, b_: ExistsIn(y, x, Member(b_, _v(y))))


# ---------------------------------------------------------------------------
# Built-in axioms
# ---------------------------------------------------------------------------


class AxiomId(str, enum.Enum):
    Z1 = "Z1"
    Z2 = "Z2"
    Z3 = "Z3"
    Z4 = "Z4"
    Z5 = "Z5"
    Z5_LITERAL = "Z5_literal"
    Z6 = "Z6"
    Z7 = "Z7"
    F1_LITERAL = "F1_literal"
    F1_GUARDED = "F1_guarded"


#: Audit order used by reports.
AXIOM_ORDER = (
    AxiomId.Z1,
    AxiomId.Z2,
    AxiomId.Z3,
    AxiomId.Z4,
    AxiomId.Z5,
    AxiomId.Z6,
    AxiomId.Z7,
    AxiomId.F1_GUARDED,
    AxiomId.F1_LITERAL,
)

DEFAULT_SEPARATION_PREDICATE = "z = z"


def separation_instance(phi: Formula, var: str = "z") -> Formula:
    """``forall params. forall x. exists y. forall var. (var in y <-> var in x & phi)``.

    Free variables of ``phi`` other than ``var`` become universally closed
    parameters, outermost, in sorted order.
    """
    params = sorted(free_vars(phi) - {var})
    names = _Names(all_vars(phi) | {var})
    x, y = names("x"), names("y")
    core = ForAll(
        x,
        Exists(y, ForAll(var, Iff(Member(_v(var), _v(y)), And(Member(_v(var), _v(x)), phi)))),
    )
    for p in reversed(params):
        core = ForAll(p, core)
    return core


def _z1() -> Formula:
    return parse("forall x. forall y. (x = y <-> forall z. (z in x <-> z in y))")


def _z3() -> Formula:
    return parse("forall x. forall y. exists z. forall a. (a in z <-> a = x | a = y)")


def _z4() -> Formula:
    return parse("forall x. exists y. forall z. (z in y <-> exists a in x. z in a)")


def _z5() -> Formula:
    n = _Names({"x", "y", "z"})
    x, y, z = _v("x"), _v("y"), _v("z")
    rhs = Or(is_empty(y, n), ExistsIn("z", x, is_successor_of(y, z, n)))
    return Exists("x", ForAll("y", Iff(Member(y, x), rhs)))


def _z5_literal() -> Formula:
    n = _Names({"x", "y", "z", "e"})
    x, y, z, e = _v("x"), _v("y"), _v("z"), _v("e")
    has_empty = ExistsIn("e", x, is_empty(e, n))
    closure = ForAll("y", Iff(Member(y, x), ExistsIn("z", x, is_successor_of(y, z, n))))
    return Exists("x", And(has_empty, closure))


def _z6() -> Formula:
    n = _Names({"x", "y", "z"})
    x, y, z = _v("x"), _v("y"), _v("z")
    return ForAll("x", Exists("y", ForAll("z", Iff(subset(z, x, n), Member(z, y)))))


def _z7() -> Formula:
    n = _Names({"x", "f", "y", "e"})
    x, f, y, e = _v("x"), _v("f"), _v("y"), _v("e")
    no_empty = Not(ExistsIn("e", x, is_empty(e, n)))
    choice = conj(
        is_function_f(f, n),
        domain_equals(f, x, n),
        range_within_union(f, x, n),
        ForAllIn("y", x, _some_value(f, y, n, lambda b: Member(b, y))),
    )
    return ForAll("x", Implies(no_empty, Exists("f", choice)))


def _disjoint_member(x: Term, y: Term, n: _Names) -> Formula:
    w = n("w")
    return And(Member(y, x), ForAll(w, Not(And(Member(_v(w), y), Member(_v(w), x)))))


def _f1_literal() -> Formula:
    n = _Names({"x", "y"})
    return ForAll("x", Exists("y", _disjoint_member(_v("x"), _v("y"), n)))


def _f1_guarded() -> Formula:
    n = _Names({"x", "y"})
    x = _v("x")
    return ForAll("x", Implies(is_nonempty(x, n), Exists("y", _disjoint_member(x, _v("y"), n))))


_BUILDERS = {
    AxiomId.Z1: _z1,
    AxiomId.Z3: _z3,
    AxiomId.Z4: _z4,
    AxiomId.Z5: _z5,
    AxiomId.Z5_LITERAL: _z5_literal,
    AxiomId.Z6: _z6,
    AxiomId.Z7: _z7,
    AxiomId.F1_LITERAL: _f1_literal,
    AxiomId.F1_GUARDED: _f1_guarded,
}


def builtin(a: AxiomId | str, phi: Formula | str | None = None) -> Formula:
    """Closed formula for an axiom.

    ``Z2`` is a schema: ``phi`` (free variable ``z``, other free variables
    become parameters) selects the instance; it defaults to ``z = z``.
    Defined symbols are expanded to membership and equality.
    """
    a = AxiomId(a)
    if a is AxiomId.Z2:
        if phi is None:
            phi = DEFAULT_SEPARATION_PREDICATE
        if isinstance(phi, str):
            phi = parse(phi)
        return separation_instance(phi)
    if phi is not None:
        raise ValueError(f"{a.value} is not a schema")
    return _BUILDERS[a]()


def ordinal_predicate(var: str = "X") -> Formula:
    """``var`` is a transitive set of transitive sets."""
    return is_ordinal_f(_v(var), _Names({var}))
