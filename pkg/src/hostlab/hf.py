"""Hereditarily finite sets in canonical form.

An :class:`HfSet` stores its members as a tuple sorted by Ackermann order,
``code(x) = sum(2 ** code(y) for y in x)``, with duplicates removed.  The
order is decided structurally (largest members compared first), so two sets
can be compared even when their codes would be astronomically large.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Iterator

from .errors import BoundExceeded, CodeOverflow, FormulaSyntaxError, NotAFunction

#: Maximum bit length of an Ackermann code (V_5 itself needs exactly 65536 bits).
CODE_BITS_LIMIT = 1 << 16

#: Default cardinality bound for powerset and product construction.
POWERSET_BOUND = 20


class HfSet:
    """Immutable hereditarily finite set.

    Build values with :func:`canonicalize`, :func:`decode` or :func:`parse_hf`;
    the constructor accepts any iterable of members and canonicalizes it.
    """

    __slots__ = ("members", "_key", "_hash", "_code", "_rank", "_mset")

    members: tuple[HfSet, ...]

    def __init__(self, members: Iterable[HfSet] = ()):
        uniq: dict[HfSet, None] = dict.fromkeys(members)
        for m in uniq:
            if not isinstance(m, HfSet):
                raise TypeError(f"members must be HfSet, got {type(m).__name__}")
        self._init(tuple(sorted(uniq, key=_sort_key)))

    def _init(self, members: tuple[HfSet, ...]) -> None:
        self.members = members
        self._key = tuple(m._key for m in reversed(members))
        self._hash = hash(tuple(m._hash for m in members))
        self._code = None
        self._rank = None
        self._mset = None

    @classmethod
    def _from_sorted(cls, members: tuple[HfSet, ...]) -> HfSet:
        # Caller guarantees members are distinct and ascending.
        obj = cls.__new__(cls)
        obj._init(members)
        return obj

    # -- identity and order -------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, HfSet):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: HfSet) -> bool:
        return self._key < other._key

    def __le__(self, other: HfSet) -> bool:
        return self._key <= other._key

    def __gt__(self, other: HfSet) -> bool:
        return self._key > other._key

    def __ge__(self, other: HfSet) -> bool:
        return self._key >= other._key

    # -- container protocol -------------------------------------------------
    def __contains__(self, item: object) -> bool:
        if self._mset is None:
            self._mset = frozenset(self.members)
        return item in self._mset

    def __iter__(self) -> Iterator[HfSet]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(str(m) for m in self.members) + "}"

    def __repr__(self) -> str:
        return f"HfSet({self})"

    # -- derived quantities -------------------------------------------------
    @property
    def rank(self) -> int:
        if self._rank is None:
            # Ackermann order refines rank order, so the last member has maximal rank.
            self._rank = self.members[-1].rank + 1 if self.members else 0
        return self._rank

    @property
    def code(self) -> int:
        if self._code is None:
            total = 0
            for m in self.members:
                c = m.code
                if c >= CODE_BITS_LIMIT:
                    raise CodeOverflow(f"Ackermann code of {_abbrev(self)} exceeds {CODE_BITS_LIMIT} bits")
                total |= 1 << c
            self._code = total
        return self._code

    def issubset(self, other: HfSet) -> bool:
        return all(m in other for m in self.members)


def _sort_key(x: HfSet) -> tuple:
    return x._key


def _abbrev(x: HfSet, limit: int = 60) -> str:
    s = str(x)
    return s if len(s) <= limit else s[: limit - 3] + "..."


EMPTY = HfSet._from_sorted(())


# ---------------------------------------------------------------------------
# Canonical naming
# ---------------------------------------------------------------------------

def canonicalize(members: Iterable[HfSet]) -> HfSet:
    """Return the unique set with exactly the given members."""
    return HfSet(members)


def ackermann(x: HfSet) -> int:
    return x.code


def decode(n: int) -> HfSet:
    """Inverse of :func:`ackermann`."""
    if n < 0:
        raise ValueError("Ackermann codes are natural numbers")
    if n.bit_length() > CODE_BITS_LIMIT:
        raise CodeOverflow(f"code with {n.bit_length()} bits exceeds the {CODE_BITS_LIMIT}-bit limit")
    return _decode(n)


_DECODE_CACHE: dict[int, HfSet] = {}


def _decode(n: int) -> HfSet:
    hit = _DECODE_CACHE.get(n)
    if hit is not None:
        return hit
    members = []
    i = 0
    m = n
    while m:
        if m & 1:
            members.append(_decode(i))
        m >>= 1
        i += 1
    x = HfSet._from_sorted(tuple(members))
    x._code = n
    if n < 1 << 16:
        _DECODE_CACHE[n] = x
    return x


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def pair_set(x: HfSet, y: HfSet) -> HfSet:
    return HfSet((x, y))


def singleton(x: HfSet) -> HfSet:
    return HfSet._from_sorted((x,))


def ordered_pair(x: HfSet, y: HfSet) -> HfSet:
    """Kuratowski pair ``{{x}, {x, y}}``."""
    return pair_set(singleton(x), pair_set(x, y))


def successor(x: HfSet) -> HfSet:
    return HfSet(x.members + (x,))


def binary_union(x: HfSet, y: HfSet) -> HfSet:
    return HfSet(x.members + y.members)


def binary_intersection(x: HfSet, y: HfSet) -> HfSet:
    return HfSet._from_sorted(tuple(m for m in x.members if m in y))


def union(x: HfSet) -> HfSet:
    return HfSet(m for member in x.members for m in member.members)


def powerset(x: HfSet, bound: int = POWERSET_BOUND) -> HfSet:
    n = len(x)
    if n > bound:
        raise BoundExceeded(f"powerset of a {n}-element set refused (bound {bound})")
    ms = x.members
    # Bitmask order over ascending members is already Ackermann order.
    subsets = tuple(
        HfSet._from_sorted(tuple(ms[j] for j in range(n) if mask >> j & 1))
        for mask in range(1 << n)
    )
    return HfSet._from_sorted(subsets)


def separation(x: HfSet, pred: Callable[[HfSet], bool]) -> HfSet:
    return HfSet._from_sorted(tuple(m for m in x.members if pred(m)))


def cartesian_product(x: HfSet, y: HfSet, bound: int = POWERSET_BOUND) -> HfSet:
    if len(x) > bound or len(y) > bound:
        raise BoundExceeded(f"product of sizes {len(x)} and {len(y)} refused (bound {bound})")
    return HfSet(ordered_pair(a, b) for a, b in product(x.members, y.members))


def cartesian_product_by_filtration(x: HfSet, y: HfSet, bound: int = 4) -> HfSet:
    """Product carved out of ``P(P(x | y))`` by the pair test, as in the axioms.

    Doubly exponential; only usable when ``|x | y| <= bound``.
    """
    xy = binary_union(x, y)
    if len(xy) > bound:
        raise BoundExceeded(f"filtration over P(P(X u Y)) with |X u Y| = {len(xy)} refused (bound {bound})")
    candidates = powerset(powerset(xy), bound=1 << bound)
    return separation(candidates, lambda p: _pair_in(p, x, y))


def _pair_in(p: HfSet, x: HfSet, y: HfSet) -> bool:
    try:
        a, b = unpair(p)
    except NotAFunction:
        return False
    return a in x and b in y


def von_neumann(n: int) -> HfSet:
    """The von Neumann natural ``n = {0, ..., n-1}``."""
    x = EMPTY
    for _ in range(n):
        x = successor(x)
    return x


# ---------------------------------------------------------------------------
# Rank, structural flags, function views
# ---------------------------------------------------------------------------

def rank(x: HfSet) -> int:
    return x.rank


def is_transitive(x: HfSet) -> bool:
    return all(z in x for y in x.members for z in y.members)


def is_complete(x: HfSet, bound: int = POWERSET_BOUND) -> bool:
    """Transitive, and every subset of a member is a member.

    Closure under deleting one element reaches every subset, so only those
    one-step subsets are tested.
    """
    if not is_transitive(x):
        return False
    for z in x.members:
        if len(z) > bound:
            raise BoundExceeded(f"completeness check on a {len(z)}-element member (bound {bound})")
        ms = z.members
        for j in range(len(ms)):
            if HfSet._from_sorted(ms[:j] + ms[j + 1:]) not in x:
                return False
    return True


def is_ordinal(x: HfSet) -> bool:
    # Transitive set of transitive sets; with foundation this is hereditary.
    return is_transitive(x) and all(is_transitive(y) for y in x.members)


def unpair(p: HfSet) -> tuple[HfSet, HfSet]:
    """Decode a Kuratowski pair, raising :class:`NotAFunction` otherwise."""
    ms = p.members
    if len(ms) == 1:
        (s,) = ms
        if len(s) == 1:
            return s.members[0], s.members[0]
    elif len(ms) == 2:
        s, d = ms
        if len(s) != 1:
            s, d = d, s
        if len(s) == 1 and len(d) == 2:
            (a,) = s.members
            if a in d:
                b = d.members[0] if d.members[1] == a else d.members[1]
                return a, b
    raise NotAFunction(f"{_abbrev(p)} is not an ordered pair")


@dataclass(frozen=True)
class FnView:
    """A set of ordered pairs read as a function."""

    graph: HfSet
    domain: HfSet
    range: HfSet

    def __call__(self, a: HfSet) -> HfSet:
        for p in self.graph:
            x, y = unpair(p)
            if x == a:
                return y
        raise KeyError(str(a))

    def as_dict(self) -> dict[HfSet, HfSet]:
        return dict(unpair(p) for p in self.graph)


def fn_view(x: HfSet) -> FnView:
    table: dict[HfSet, HfSet] = {}
    for p in x.members:
        a, b = unpair(p)
        if a in table and table[a] != b:
            raise NotAFunction(f"first coordinate {_abbrev(a)} has two values")
        table[a] = b
    return FnView(x, HfSet(table), HfSet(table.values()))


def function_from(mapping: dict[HfSet, HfSet] | Iterable[tuple[HfSet, HfSet]]) -> HfSet:
    items = mapping.items() if isinstance(mapping, dict) else mapping
    return HfSet(ordered_pair(a, b) for a, b in items)


def is_function(x: HfSet) -> bool:
    try:
        fn_view(x)
    except NotAFunction:
        return False
    return True


@dataclass(frozen=True)
class Flags:
    transitive: bool
    complete: bool
    ordinal: bool
    function: bool


def classify(x: HfSet, bound: int = POWERSET_BOUND) -> Flags:
    return Flags(
        transitive=is_transitive(x),
        complete=is_complete(x, bound),
        ordinal=is_ordinal(x),
        function=is_function(x),
    )


def foundation_witness(x: HfSet) -> HfSet | None:
    """An Ackermann-least member disjoint from ``x``, or None when ``x`` is empty."""
    for y in x.members:
        if not any(z in x for z in y.members):
            return y
    return None


# ---------------------------------------------------------------------------
# Text notation
# ---------------------------------------------------------------------------

def parse_hf(text: str) -> HfSet:
    """Parse brace notation (``"{{},{{}}}"``) or ``"#n"``; nested ``#n`` is allowed."""
    value, pos = _parse_hf_at(text, _skip_ws(text, 0))
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise FormulaSyntaxError("trailing input after set literal", pos, text)
    return value


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_hf_at(text: str, pos: int) -> tuple[HfSet, int]:
    if pos < len(text) and text[pos] == "#":
        end = pos + 1
        while end < len(text) and text[end].isdigit():
            end += 1
        if end == pos + 1:
            raise FormulaSyntaxError("expected digits after '#'", end, text)
        return decode(int(text[pos + 1 : end])), end
    if pos >= len(text) or text[pos] != "{":
        raise FormulaSyntaxError("expected '{' or '#'", pos, text)
    pos = _skip_ws(text, pos + 1)
    members = []
    if pos < len(text) and text[pos] == "}":
        return EMPTY, pos + 1
    while True:
        m, pos = _parse_hf_at(text, pos)
        members.append(m)
        pos = _skip_ws(text, pos)
        if pos < len(text) and text[pos] == ",":
            pos = _skip_ws(text, pos + 1)
            continue
        if pos < len(text) and text[pos] == "}":
            return HfSet(members), pos + 1
        raise FormulaSyntaxError("expected ',' or '}'", pos, text)
