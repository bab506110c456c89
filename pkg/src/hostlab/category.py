"""Finite categories given by explicit tables.

Arrows are integers indexing ``dom``/``cod``; ``comp[(f, g)]`` is the
composite ``g . f`` (first ``f``, then ``g``) and is defined exactly on pairs
with ``cod f == dom g``.  Limits are found by brute-force search for a cone
with the universal property.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Any, Iterator, Mapping, Sequence

from .errors import BoundExceeded, ConfigError
from .hf import HfSet, canonicalize, fn_view, function_from, ordered_pair, parse_hf, powerset, von_neumann
from .hierarchy import Stage, TierConfig, build_stage

MAX_COLL_STAGE = 3
DEFAULT_SEARCH_CAP = 10**6


@dataclass(frozen=True)
class FinCategory:
    objects: tuple
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    identity: tuple[int, ...]
    comp: Mapping[tuple[int, int], int]
    arrow_ids: tuple[str, ...] = ()
    arrow_codes: tuple[HfSet, ...] | None = None
    name: str = ""
    _homs: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.arrow_ids:
            object.__setattr__(self, "arrow_ids", tuple(f"f{i}" for i in range(len(self.dom))))
        if len(self.cod) != len(self.dom) or len(self.arrow_ids) != len(self.dom):
            raise ConfigError("arrow tables have inconsistent lengths")
        if len(self.identity) != len(self.objects):
            raise ConfigError("every object needs exactly one identity")
        n = len(self.objects)
        for i, (d, c) in enumerate(zip(self.dom, self.cod)):
            if not (0 <= d < n and 0 <= c < n):
                raise ConfigError(f"arrow {self.arrow_ids[i]} has an endpoint outside the object list")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.dom)

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        hit = self._homs.get((x, y))
        if hit is None:
            hit = tuple(f for f in range(self.n_arrows) if self.dom[f] == x and self.cod[f] == y)
            self._homs[(x, y)] = hit
        return hit

    def then(self, f: int, g: int) -> int:
        """``g . f``."""
        return self.comp[(f, g)]

    def label(self, x: int) -> str:
        return str(self.objects[x])

    def describe(self, f: int) -> str:
        return f"{self.arrow_ids[f]}: {self.label(self.dom[f])} -> {self.label(self.cod[f])}"

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "objects": [self.label(x) for x in range(self.n_objects)],
            "arrows": [
                {"id": self.arrow_ids[f], "dom": self.label(self.dom[f]), "cod": self.label(self.cod[f])}
                for f in range(self.n_arrows)
            ],
            "compose": [
                [self.arrow_ids[f], self.arrow_ids[g], self.arrow_ids[h]] for (f, g), h in sorted(self.comp.items())
            ],
            "identity": {self.label(x): self.arrow_ids[self.identity[x]] for x in range(self.n_objects)},
        }
        if self.arrow_codes is not None:
            for a, code in zip(out["arrows"], self.arrow_codes):
                a["code"] = str(code)
        return out

    @classmethod
    def from_json(cls, data: Mapping, name: str = "") -> FinCategory:
        try:
            labels = [str(o) for o in data["objects"]]
            arrows = data["arrows"]
            compose = data["compose"]
            ident = data["identity"]
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"category JSON is missing a field: {exc}") from exc
        if len(set(labels)) != len(labels):
            raise ConfigError("object labels must be distinct")
        obj_ix = {o: i for i, o in enumerate(labels)}
        ids = [str(a["id"]) for a in arrows]
        if len(set(ids)) != len(ids):
            raise ConfigError("arrow ids must be distinct")
        arr_ix = {a: i for i, a in enumerate(ids)}

        def obj(o) -> int:
            if str(o) not in obj_ix:
                raise ConfigError(f"unknown object {o!r}")
            return obj_ix[str(o)]

        def arr(a) -> int:
            if str(a) not in arr_ix:
                raise ConfigError(f"unknown arrow {a!r}")
            return arr_ix[str(a)]

        comp: dict[tuple[int, int], int] = {}
        for row in compose:
            if len(row) != 3:
                raise ConfigError("compose rows are [f, g, g.f]")
            key = (arr(row[0]), arr(row[1]))
            if key in comp:
                raise ConfigError(f"composite of {row[0]} then {row[1]} given twice")
            comp[key] = arr(row[2])
        identity = []
        for o in labels:
            if o not in ident:
                raise ConfigError(f"object {o!r} has no identity")
            identity.append(arr(ident[o]))
        objects = tuple(_maybe_hf(o) for o in labels)
        codes = None
        if all("code" in a for a in arrows) and arrows:
            codes = tuple(parse_hf(str(a["code"])) for a in arrows)
        return cls(
            objects,
            tuple(obj(a["dom"]) for a in arrows),
            tuple(obj(a["cod"]) for a in arrows),
            tuple(identity),
            comp,
            tuple(ids),
            codes,
            name,
        )


def _maybe_hf(label: str):
    if label.startswith("{") or label.startswith("#"):
        try:
            return parse_hf(label)
        except ValueError:
            return label
    return label


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LawVerdict:
    holds: bool
    law: str | None = None
    witness: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out: dict = {"status": "holds" if self.holds else "fails"}
        if not self.holds:
            out["law"] = self.law
            out["witness"] = list(self.witness)
        return out


def _check_tables(c: FinCategory) -> None:
    expected = {(f, g) for f in range(c.n_arrows) for g in range(c.n_arrows) if c.cod[f] == c.dom[g]}
    keys = set(c.comp)
    if keys != expected:
        bad = sorted(keys ^ expected)[0]
        what = "missing" if bad in expected else "defined on a non-composable pair"
        raise ConfigError(
            f"composition table {what}: {c.arrow_ids[bad[0]]} then {c.arrow_ids[bad[1]]}"
        )
    for h in c.comp.values():
        if not 0 <= h < c.n_arrows:
            raise ConfigError("composition table names an unknown arrow")


def validate(c: FinCategory) -> LawVerdict:
    """Check the category laws exhaustively.  Malformed tables raise."""
    _check_tables(c)
    ids = c.arrow_ids
    for x, i in enumerate(c.identity):
        if c.dom[i] != x or c.cod[i] != x:
            return LawVerdict(False, "identity-type", (ids[i],))
    for (f, g), h in sorted(c.comp.items()):
        if c.dom[h] != c.dom[f] or c.cod[h] != c.cod[g]:
            return LawVerdict(False, "composite-type", (ids[f], ids[g], ids[h]))
    for f in range(c.n_arrows):
        if c.then(c.identity[c.dom[f]], f) != f:
            return LawVerdict(False, "left-identity", (ids[f],))
        if c.then(f, c.identity[c.cod[f]]) != f:
            return LawVerdict(False, "right-identity", (ids[f],))
    for f in range(c.n_arrows):
        for g in _arrows_from(c, c.cod[f]):
            fg = c.then(f, g)
            for h in _arrows_from(c, c.cod[g]):
                if c.then(fg, h) != c.then(f, c.then(g, h)):
                    return LawVerdict(False, "associativity", (ids[f], ids[g], ids[h]))
    return LawVerdict(True)


def _arrows_from(c: FinCategory, x: int) -> Iterator[int]:
    for y in range(c.n_objects):
        yield from c.hom(x, y)


def is_thin(c: FinCategory) -> bool:
    return all(len(c.hom(x, y)) <= 1 for x in range(c.n_objects) for y in range(c.n_objects))


def parallel_pair_in(c: FinCategory) -> tuple[int, int] | None:
    """Least distinct ``f, g`` with the same domain and codomain."""
    for x in range(c.n_objects):
        for y in range(c.n_objects):
            h = c.hom(x, y)
            if len(h) >= 2:
                return h[0], h[1]
    return None


def is_mono(c: FinCategory, m: int) -> bool:
    x = c.dom[m]
    for w in range(c.n_objects):
        hs = c.hom(w, x)
        images = {c.then(u, m) for u in hs}
        if len(images) != len(hs):
            return False
    return True


# ---------------------------------------------------------------------------
# Small constructions
# ---------------------------------------------------------------------------


def _shape(n: int, edges: Sequence[tuple[int, int]], name: str) -> FinCategory:
    """Category on ``n`` objects with the given non-composable edges."""
    dom = list(range(n)) + [e[0] for e in edges]
    cod = list(range(n)) + [e[1] for e in edges]
    comp: dict[tuple[int, int], int] = {}
    for f in range(len(dom)):
        comp[(dom[f], f)] = f
        comp[(f, cod[f])] = f
    c = FinCategory(tuple(range(n)), tuple(dom), tuple(cod), tuple(range(n)), comp, name=name)
    _check_tables(c)
    return c


def discrete_category(m: int) -> FinCategory:
    return _shape(m, (), f"discrete-{m}")


def terminal_category() -> FinCategory:
    return discrete_category(1)


def parallel_pair_category() -> FinCategory:
    return _shape(2, ((0, 1), (0, 1)), "parallel-pair")


def cospan_category() -> FinCategory:
    """``0 -> 2 <- 1``."""
    return _shape(3, ((0, 2), (1, 2)), "cospan")


def poset_category(n: int, leq: Sequence[tuple[int, int]], name: str = "poset") -> FinCategory:
    """Thin category of a partial order given by generating pairs ``(i, j)`` with ``i <= j``."""
    rel = {(i, i) for i in range(n)} | set(leq)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in list(product(rel, rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    pairs = sorted(rel, key=lambda p: (p[0] != p[1], p))
    index = {p: i for i, p in enumerate(pairs)}
    comp = {(index[(a, b)], index[(b, d)]): index[(a, d)] for (a, b) in pairs for (c, d) in pairs if b == c}
    ident = tuple(index[(i, i)] for i in range(n))
    return FinCategory(tuple(range(n)), tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), ident, comp, name=name)


def monoid_category(table: Sequence[Sequence[int]], unit: int = 0, name: str = "monoid") -> FinCategory:
    """One object; ``table[a][b]`` is the product ``a * b`` read as ``a . b``."""
    n = len(table)
    comp = {(f, g): table[g][f] for f in range(n) for g in range(n)}
    return FinCategory((0,), (0,) * n, (0,) * n, (unit,), comp, name=name)


# ---------------------------------------------------------------------------
# Coll(V_k)
# ---------------------------------------------------------------------------


def functions_between(x: HfSet, y: HfSet) -> list[HfSet]:
    """All functions ``x -> y`` as graphs, in value-tuple order."""
    return [function_from(zip(x.members, image)) for image in product(y.members, repeat=len(x))]


def build_coll(s: Stage | int) -> FinCategory:
    """Sets in ``V_k`` and all functions between them.

    An arrow ``X -> Y`` is encoded as the ordered pair ``(graph, Y)`` so that
    empty functions into different codomains stay distinct.
    """
    st = build_stage(s) if isinstance(s, int) else s
    if st.index > MAX_COLL_STAGE:
        raise BoundExceeded(f"Coll(V_{st.index}) is too large to materialize (limit V_{MAX_COLL_STAGE})")
    objs = st.set.members
    dom: list[int] = []
    cod: list[int] = []
    graphs: list[HfSet] = []
    index: dict[tuple[HfSet, int], int] = {}
    for i, x in enumerate(objs):
        for j, y in enumerate(objs):
            for g in functions_between(x, y):
                index[(g, j)] = len(dom)
                dom.append(i)
                cod.append(j)
                graphs.append(g)
    ident = tuple(index[(function_from((a, a) for a in x.members), i)] for i, x in enumerate(objs))
    views = [fn_view(g).as_dict() for g in graphs]
    comp: dict[tuple[int, int], int] = {}
    for f in range(len(dom)):
        for g in range(len(dom)):
            if cod[f] != dom[g]:
                continue
            gf = function_from((a, views[g][b]) for a, b in views[f].items())
            comp[(f, g)] = index[(gf, cod[g])]
    codes = tuple(ordered_pair(graphs[f], objs[cod[f]]) for f in range(len(dom)))
    ids = tuple(f"a{f}" for f in range(len(dom)))
    return FinCategory(tuple(objs), tuple(dom), tuple(cod), ident, comp, ids, codes, f"Coll(V{st.index})")


# ---------------------------------------------------------------------------
# Functors and natural transformations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Functor:
    source: FinCategory
    target: FinCategory
    obj: tuple[int, ...]
    arr: tuple[int, ...]


def check_functor(F: Functor) -> LawVerdict:
    s, t = F.source, F.target
    if len(F.obj) != s.n_objects or len(F.arr) != s.n_arrows:
        raise ConfigError("functor maps have the wrong length")
    for f in range(s.n_arrows):
        a = F.arr[f]
        if t.dom[a] != F.obj[s.dom[f]] or t.cod[a] != F.obj[s.cod[f]]:
            return LawVerdict(False, "endpoints", (s.arrow_ids[f],))
    for x in range(s.n_objects):
        if F.arr[s.identity[x]] != t.identity[F.obj[x]]:
            return LawVerdict(False, "identity", (s.arrow_ids[s.identity[x]],))
    for (f, g), h in sorted(s.comp.items()):
        if t.then(F.arr[f], F.arr[g]) != F.arr[h]:
            return LawVerdict(False, "composition", (s.arrow_ids[f], s.arrow_ids[g]))
    return LawVerdict(True)


@dataclass(frozen=True)
class NatTrans:
    source: Functor
    target: Functor
    components: tuple[int, ...]


def is_natural(a: NatTrans) -> bool:
    F, G = a.source, a.target
    c, d = F.source, F.target
    for x in range(c.n_objects):
        comp_x = a.components[x]
        if d.dom[comp_x] != F.obj[x] or d.cod[comp_x] != G.obj[x]:
            return False
    for f in range(c.n_arrows):
        x, y = c.dom[f], c.cod[f]
        if d.then(a.components[x], G.arr[f]) != d.then(F.arr[f], a.components[y]):
            return False
    return True


def enumerate_functors(c: FinCategory, d: FinCategory, cap: int = DEFAULT_SEARCH_CAP) -> list[Functor]:
    out = []
    tried = 0
    ident_of = {c.identity[x]: x for x in range(c.n_objects)}
    for obj in product(range(d.n_objects), repeat=c.n_objects):
        choices = []
        for f in range(c.n_arrows):
            if f in ident_of:
                choices.append((d.identity[obj[ident_of[f]]],))
            else:
                choices.append(d.hom(obj[c.dom[f]], obj[c.cod[f]]))
        for arr in product(*choices):
            tried += 1
            if tried > cap:
                raise BoundExceeded(f"functor enumeration exceeded {cap} candidates")
            F = Functor(c, d, obj, arr)
            if check_functor(F).holds:
                out.append(F)
    return out


def functor_category(c: FinCategory, d: FinCategory, cap: int = DEFAULT_SEARCH_CAP) -> FinCategory:
    """``d^c``: functors ``c -> d`` and natural transformations between them."""
    fs = enumerate_functors(c, d, cap)
    dom: list[int] = []
    cod: list[int] = []
    comps: list[tuple[int, ...]] = []
    index: dict[tuple[int, int, tuple[int, ...]], int] = {}
    tried = 0
    for i, F in enumerate(fs):
        for j, G in enumerate(fs):
            for components in product(*(d.hom(F.obj[x], G.obj[x]) for x in range(c.n_objects))):
                tried += 1
                if tried > cap:
                    raise BoundExceeded(f"natural transformation enumeration exceeded {cap} candidates")
                if is_natural(NatTrans(F, G, components)):
                    index[(i, j, components)] = len(dom)
                    dom.append(i)
                    cod.append(j)
                    comps.append(components)
    ident = tuple(index[(i, i, tuple(d.identity[F.obj[x]] for x in range(c.n_objects)))] for i, F in enumerate(fs))
    comp: dict[tuple[int, int], int] = {}
    for a in range(len(dom)):
        for b in range(len(dom)):
            if cod[a] == dom[b]:
                ba = tuple(d.then(comps[a][x], comps[b][x]) for x in range(c.n_objects))
                comp[(a, b)] = index[(dom[a], cod[b], ba)]
    objects = tuple("<" + ",".join(d.label(o) for o in F.obj) + ">" for F in fs)
    name = f"{d.name or 'D'}^{c.name or 'C'}"
    return FinCategory(objects, tuple(dom), tuple(cod), ident, comp, name=name)


# ---------------------------------------------------------------------------
# Limits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    apex: int
    legs: tuple[int, ...]


def diagram(c: FinCategory, shape: FinCategory, obj: Sequence[int], edges: Sequence[int] = ()) -> Functor:
    """Functor from ``shape``; ``edges`` gives images of the non-identity shape arrows in order."""
    arr = [c.identity[obj[x]] for x in range(shape.n_objects)] + list(edges)
    F = Functor(shape, c, tuple(obj), tuple(arr))
    v = check_functor(F)
    if not v.holds:
        raise ConfigError(f"not a diagram: {v.law}")
    return F


def empty_diagram(c: FinCategory) -> Functor:
    return diagram(c, discrete_category(0), ())


def discrete_diagram(c: FinCategory, objs: Sequence[int]) -> Functor:
    return diagram(c, discrete_category(len(objs)), objs)


def parallel_diagram(c: FinCategory, f: int, g: int) -> Functor:
    return diagram(c, parallel_pair_category(), (c.dom[f], c.cod[f]), (f, g))


def cospan_diagram(c: FinCategory, f: int, g: int) -> Functor:
    return diagram(c, cospan_category(), (c.dom[f], c.dom[g], c.cod[f]), (f, g))


def cones_from(c: FinCategory, D: Functor, apex: int, cap: int = DEFAULT_SEARCH_CAP) -> list[Cone]:
    shape = D.source
    choices = [c.hom(apex, D.obj[i]) for i in range(shape.n_objects)]
    total = 1
    for ch in choices:
        total *= len(ch)
    if total > cap:
        raise BoundExceeded(f"more than {cap} candidate cones at one apex")
    out = []
    for legs in product(*choices):
        if all(c.then(legs[shape.dom[s]], D.arr[s]) == legs[shape.cod[s]] for s in range(shape.n_arrows)):
            out.append(Cone(apex, legs))
    return out


def factorizations(c: FinCategory, other: Cone, cone: Cone) -> list[int]:
    """Arrows ``u: other.apex -> cone.apex`` with ``cone.legs[i] . u == other.legs[i]``."""
    return [
        u
        for u in c.hom(other.apex, cone.apex)
        if all(c.then(u, leg) == o for leg, o in zip(cone.legs, other.legs))
    ]


def is_limit(c: FinCategory, D: Functor, cone: Cone, cones: Mapping[int, list[Cone]] | None = None) -> bool:
    cones = cones if cones is not None else {x: cones_from(c, D, x) for x in range(c.n_objects)}
    return all(len(factorizations(c, other, cone)) == 1 for x in range(c.n_objects) for other in cones[x])


def find_limit(c: FinCategory, D: Functor, cap: int = DEFAULT_SEARCH_CAP) -> Cone | None:
    """First cone (by apex, then legs) with the universal property, if any."""
    cones = {x: cones_from(c, D, x, cap) for x in range(c.n_objects)}
    for p in range(c.n_objects):
        # A limit apex P has exactly one arrow C -> P per cone from C.
        if any(len(c.hom(x, p)) != len(cones[x]) for x in range(c.n_objects)):
            continue
        for cone in cones[p]:
            if is_limit(c, D, cone, cones):
                return cone
    return None


def terminal_object(c: FinCategory) -> int | None:
    cone = find_limit(c, empty_diagram(c))
    return None if cone is None else cone.apex


def product_of(c: FinCategory, objs: Sequence[int], cap: int = DEFAULT_SEARCH_CAP) -> Cone | None:
    return find_limit(c, discrete_diagram(c, objs), cap)


def equalizer_of(c: FinCategory, f: int, g: int) -> Cone | None:
    return find_limit(c, parallel_diagram(c, f, g))


# ---------------------------------------------------------------------------
# Freyd
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreydReport:
    thin: bool
    hom_count: int
    parallel: tuple[str, str] | None
    targets_checked: tuple[str, ...]
    power_found: str | None = None
    tuplings: tuple[str, ...] = ()

    @property
    def violation(self) -> bool:
        return not self.thin and self.power_found is not None

    @property
    def status(self) -> str:
        if self.thin:
            return "thin, lemma vacuous"
        return "violation" if self.violation else "power absent"

    def to_json(self) -> dict:
        out: dict = {"status": self.status, "thin": self.thin, "hom_count": self.hom_count}
        if not self.thin:
            out["parallel_pair"] = list(self.parallel)
            out["targets_checked"] = list(self.targets_checked)
            out["power_found"] = self.power_found
            if self.tuplings:
                out["counting_bound"] = f"2^{self.hom_count} > {self.hom_count}"
                out["tupling_sample"] = list(self.tuplings)
        return out


def freyd_audit(c: FinCategory, sample: int = 8, cap: int = DEFAULT_SEARCH_CAP) -> FreydReport:
    """Look for the ``|Hom|``-fold power of every object receiving a parallel pair."""
    h = c.n_arrows
    pair = parallel_pair_in(c)
    if pair is None:
        return FreydReport(True, h, None, ())
    targets = sorted({c.cod[f] for x in range(c.n_objects) for y in range(c.n_objects)
                      if len(c.hom(x, y)) >= 2 for f in c.hom(x, y)})
    for y in targets:
        cone = product_of(c, [y] * h, cap)
        if cone is None:
            continue
        # Tupling arrows X -> Y^Hom from choice vectors in {f, g}^Hom.
        x = min(x for x in range(c.n_objects) if len(c.hom(x, y)) >= 2)
        f, g = c.hom(x, y)[:2]
        seen = []
        for v in product((f, g), repeat=h):
            us = factorizations(c, Cone(x, v), cone)
            seen.append(c.arrow_ids[us[0]])
            if len(seen) >= sample:
                break
        return FreydReport(False, h, (c.arrow_ids[pair[0]], c.arrow_ids[pair[1]]),
                           tuple(c.label(t) for t in targets), c.label(y), tuple(seen))
    return FreydReport(False, h, (c.arrow_ids[pair[0]], c.arrow_ids[pair[1]]), tuple(c.label(t) for t in targets), None)


def enumerate_small_categories(max_objects: int, max_arrows: int) -> Iterator[FinCategory]:
    """Every valid category on ``0..max_objects`` objects with at most ``max_arrows`` arrows.

    Non-identity arrows are listed with nondecreasing ``(dom, cod)``; no other
    symmetry is quotiented out, so isomorphic copies may repeat.
    """
    for n in range(max_objects + 1):
        slots = [(a, b) for a in range(n) for b in range(n)]
        for r in range(max_arrows - n + 1):
            for ends in combinations_with_replacement(slots, r):
                yield from _tables(n, ends)


def _tables(n: int, ends: Sequence[tuple[int, int]]) -> Iterator[FinCategory]:
    dom = tuple(range(n)) + tuple(e[0] for e in ends)
    cod = tuple(range(n)) + tuple(e[1] for e in ends)
    m = len(dom)
    base: dict[tuple[int, int], int] = {}
    free: list[tuple[int, int]] = []
    for f in range(m):
        for g in range(m):
            if cod[f] != dom[g]:
                continue
            if f < n:
                base[(f, g)] = g
            elif g < n:
                base[(f, g)] = f
            else:
                free.append((f, g))
    options = [[h for h in range(m) if dom[h] == dom[f] and cod[h] == cod[g]] for f, g in free]
    nonid = range(n, m)
    for choice in product(*options):
        comp = dict(base)
        comp.update(zip(free, choice))
        if _associative(comp, nonid, cod, dom):
            yield FinCategory(tuple(range(n)), dom, cod, tuple(range(n)), comp, name=f"enum-{n}-{m}")


def _associative(comp, nonid, cod, dom) -> bool:
    for f in nonid:
        for g in nonid:
            if cod[f] != dom[g]:
                continue
            fg = comp[(f, g)]
            for h in nonid:
                if cod[g] == dom[h] and comp[(fg, h)] != comp[(f, comp[(g, h)])]:
                    return False
    return True


@dataclass(frozen=True)
class FreydEnumeration:
    max_objects: int
    max_arrows: int
    categories: int
    non_thin: int
    violations: int
    first_non_thin: FreydReport | None

    def to_json(self) -> dict:
        return {
            "max_objects": self.max_objects,
            "max_arrows": self.max_arrows,
            "categories": self.categories,
            "non_thin": self.non_thin,
            "violations": self.violations,
            "first_non_thin": None if self.first_non_thin is None else self.first_non_thin.to_json(),
        }


def freyd_enumerate(max_objects: int = 2, max_arrows: int = 4) -> FreydEnumeration:
    total = non_thin = bad = 0
    first = None
    for c in enumerate_small_categories(max_objects, max_arrows):
        total += 1
        rep = freyd_audit(c)
        if not rep.thin:
            non_thin += 1
            first = first or rep
        bad += rep.violation
    return FreydEnumeration(max_objects, max_arrows, total, non_thin, bad, first)


# ---------------------------------------------------------------------------
# Cantor
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CantorReport:
    size: int
    functions: int
    surjective: int
    diagonal_missed: int

    @property
    def holds(self) -> bool:
        return self.surjective == 0 and self.diagonal_missed == self.functions

    def to_json(self) -> dict:
        return {
            "status": "holds" if self.holds else "fails",
            "size": self.size,
            "functions": self.functions,
            "surjective": self.surjective,
            "diagonal_missed": self.diagonal_missed,
        }


MAX_CANTOR_SIZE = 3


def cantor_check(x: HfSet) -> CantorReport:
    """Every ``s: x -> P(x)`` misses its diagonal ``{a in x : a not in s(a)}``."""
    if len(x) > MAX_CANTOR_SIZE:
        raise BoundExceeded(f"cantor_check enumerates |P(x)|^|x| functions; |x| must be at most {MAX_CANTOR_SIZE}")
    px = powerset(x)
    total = surj = missed = 0
    for image in product(px.members, repeat=len(x)):
        total += 1
        values = set(image)
        surj += len(values) == len(px)
        diag = canonicalize(a for a, s in zip(x.members, image) if a not in s)
        missed += diag not in values
    return CantorReport(len(x), total, surj, missed)


# ---------------------------------------------------------------------------
# Size taxonomy
# ---------------------------------------------------------------------------


def object_codes(c: FinCategory) -> tuple[HfSet, ...]:
    """HF codes of the objects; non-HF labels fall back to the von Neumann index."""
    if all(isinstance(o, HfSet) for o in c.objects):
        return tuple(c.objects)
    return tuple(von_neumann(i) for i in range(c.n_objects))


def arrow_codes(c: FinCategory) -> tuple[HfSet, ...]:
    if c.arrow_codes is not None:
        return c.arrow_codes
    return tuple(von_neumann(i) for i in range(c.n_arrows))


@dataclass(frozen=True)
class SizeClass:
    tier: int
    small: bool
    locally_small: bool | None
    tiny: bool
    large: bool | None
    very_large: bool | None

    def to_json(self) -> dict:
        return {
            "tier": self.tier,
            "small": self.small,
            "locally_small": self.locally_small,
            "tiny": self.tiny,
            "large": self.large,
            "very_large": self.very_large,
        }


def classify_size(c: FinCategory, t: TierConfig) -> list[SizeClass]:
    """Size flags per tier, with membership in ``V_k`` decided by rank.

    The tier above the top one is read as ``V_{k+1}``, the same convention
    used for evaluating formulas about the top tier.
    """
    ob = canonicalize(object_codes(c))
    codes = arrow_codes(c)
    hom = canonicalize(codes)
    homs = [
        canonicalize(codes[f] for f in c.hom(x, y)) for x in range(c.n_objects) for y in range(c.n_objects)
    ]
    ks = list(t.ks) + [t.ks[-1] + 1]

    def member(s: HfSet, n: int) -> bool:
        return s.rank < ks[n]

    small = [member(ob, n) and member(hom, n) for n in range(len(ks))]
    out = []
    for n in range(len(t.ks)):
        local = member(ob, n + 1) and all(member(h, n) for h in homs)
        nxt = small[n + 1]
        out.append(SizeClass(n, small[n], local, any(small[:n]), nxt and not small[n], not nxt))
    return out


# ---------------------------------------------------------------------------
# Hierarchy embedding and topos features
# ---------------------------------------------------------------------------


def inclusion_functor(k1: int, k2: int) -> Functor:
    if not k1 < k2:
        raise ConfigError(f"embedding needs k1 < k2, got {k1}, {k2}")
    s, t = build_coll(k1), build_coll(k2)
    obj_ix = {o: i for i, o in enumerate(t.objects)}
    arr_ix = {code: i for i, code in enumerate(t.arrow_codes)}
    return Functor(s, t, tuple(obj_ix[o] for o in s.objects), tuple(arr_ix[code] for code in s.arrow_codes))


@dataclass(frozen=True)
class EmbeddingReport:
    k1: int
    k2: int
    functor: LawVerdict
    faithful: bool
    full: bool
    terminal_preserved: bool | None
    products_preserved: bool
    product_witness: tuple[str, str] | None

    @property
    def holds(self) -> bool:
        return self.functor.holds and self.faithful and self.full and self.terminal_preserved is not False and self.products_preserved

    def to_json(self) -> dict:
        return {
            "status": "holds" if self.holds else "fails",
            "source": f"Coll(V{self.k1})",
            "target": f"Coll(V{self.k2})",
            "functor_laws": self.functor.to_json(),
            "faithful": self.faithful,
            "full": self.full,
            "terminal_preserved": self.terminal_preserved,
            "products_preserved": self.products_preserved,
            "product_witness": None if self.product_witness is None else list(self.product_witness),
        }


def check_embedding(k1: int, k2: int) -> EmbeddingReport:
    F = inclusion_functor(k1, k2)
    s, t = F.source, F.target
    laws = check_functor(F)
    faithful = full = True
    for x in range(s.n_objects):
        for y in range(s.n_objects):
            image = [F.arr[f] for f in s.hom(x, y)]
            faithful &= len(set(image)) == len(image)
            full &= set(image) == set(t.hom(F.obj[x], F.obj[y]))
    term = terminal_object(s)
    term_ok = None if term is None else is_limit(t, empty_diagram(t), Cone(F.obj[term], ()))
    prod_ok, witness = True, None
    for x in range(s.n_objects):
        for y in range(x, s.n_objects):
            cone = product_of(s, [x, y])
            if cone is None:
                continue
            image = Cone(F.obj[cone.apex], tuple(F.arr[leg] for leg in cone.legs))
            if not is_limit(t, discrete_diagram(t, [F.obj[x], F.obj[y]]), image):
                prod_ok, witness = False, (s.label(x), s.label(y))
                break
        if not prod_ok:
            break
    return EmbeddingReport(k1, k2, laws, faithful, full, term_ok, prod_ok, witness)


@dataclass(frozen=True)
class Feature:
    holds: bool
    witness: tuple[str, ...] = ()
    note: str = ""

    def to_json(self) -> dict:
        out: dict = {"status": "holds" if self.holds else "fails"}
        if self.witness:
            out["witness"] = list(self.witness)
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class ToposReport:
    name: str
    features: dict[str, Feature]

    @property
    def holds(self) -> bool:
        return all(f.holds for f in self.features.values())

    def to_json(self) -> dict:
        return {
            "status": "holds" if self.holds else "fails",
            "category": self.name,
            "features": {k: v.to_json() for k, v in self.features.items()},
        }


def _products(c: FinCategory) -> dict[tuple[int, int], Cone | None]:
    return {(x, y): product_of(c, [x, y]) for x in range(c.n_objects) for y in range(c.n_objects)}


def _pairing(c: FinCategory, target: Cone, legs: tuple[int, int]) -> int:
    src = c.dom[legs[0]]
    us = factorizations(c, Cone(src, legs), target)
    return us[0]


def _exponential_holds(c: FinCategory, prods, a: int, b: int) -> bool:
    for e in range(c.n_objects):
        pe = prods[(e, a)]
        if pe is None:
            continue
        for ev in c.hom(pe.apex, b):
            if _is_exponential(c, prods, a, e, pe, ev):
                return True
    return False


def _is_exponential(c: FinCategory, prods, a: int, e: int, pe: Cone, ev: int) -> bool:
    b = c.cod[ev]
    for x in range(c.n_objects):
        q = prods[(x, a)]
        if q is None:
            continue
        for g in c.hom(q.apex, b):
            count = 0
            for u in c.hom(x, e):
                ux = _pairing(c, pe, (c.then(q.legs[0], u), q.legs[1]))
                count += c.then(ux, ev) == g
            if count != 1:
                return False
    return True


def _classifies(c: FinCategory, term: int, omega: int, true: int) -> bool:
    for m in range(c.n_arrows):
        if not is_mono(c, m):
            continue
        s, x = c.dom[m], c.cod[m]
        bang = c.hom(s, term)[0]
        good = 0
        for chi in c.hom(x, omega):
            D = cospan_diagram(c, chi, true)
            legs = (m, bang, c.then(m, chi))
            if c.then(bang, true) != legs[2]:
                continue
            good += is_limit(c, D, Cone(s, legs))
        if good != 1:
            return False
    return True


def topos_audit(c: FinCategory, omega_candidate: HfSet | None = None) -> ToposReport:
    """Terminal object, binary products, equalizers, exponentials and a subobject classifier."""
    feats: dict[str, Feature] = {}
    term = terminal_object(c)
    feats["terminal"] = Feature(term is not None, note="" if term is None else c.label(term))
    prods = _products(c)
    missing = [(x, y) for (x, y), p in sorted(prods.items()) if p is None and x <= y]
    feats["binary_products"] = Feature(not missing, tuple(c.label(o) for o in missing[0]) if missing else ())
    eq_fail = None
    for x in range(c.n_objects):
        for y in range(c.n_objects):
            for f in c.hom(x, y):
                for g in c.hom(x, y):
                    if f < g and eq_fail is None and equalizer_of(c, f, g) is None:
                        eq_fail = (c.arrow_ids[f], c.arrow_ids[g])
    feats["equalizers"] = Feature(eq_fail is None, eq_fail or ())
    exp_fail = None
    for a in range(c.n_objects):
        for b in range(c.n_objects):
            if exp_fail is None and not _exponential_holds(c, prods, a, b):
                exp_fail = (c.label(b), c.label(a))
    feats["exponentials"] = Feature(exp_fail is None, exp_fail or (), "witness is (base, exponent)" if exp_fail else "")
    if term is None:
        feats["subobject_classifier"] = Feature(False, note="no terminal object")
    else:
        found = None
        named = None
        for o in range(c.n_objects):
            for t in c.hom(term, o):
                ok = _classifies(c, term, o, t)
                if ok and found is None:
                    found = (c.label(o), c.arrow_ids[t])
                if omega_candidate is not None and c.objects[o] == omega_candidate:
                    named = named or ok
        note = ""
        if omega_candidate is not None:
            if omega_candidate not in c.objects:
                note = f"candidate {omega_candidate}: not an object"
            else:
                note = f"candidate {omega_candidate}: {'classifies' if named else 'does not classify'}"
        feats["subobject_classifier"] = Feature(found is not None, found or (), note)
    return ToposReport(c.name, feats)
