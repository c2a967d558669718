"""Finite groupoids as explicit tables, plus morphisms and subgroupoids.

Arrows compose like functions: ``mul(g, g2)`` is defined when
``src[g] == tgt[g2]`` and has source ``src[g2]`` and target ``tgt[g]``.
Objects and arrows are addressed by dense integer indices; labels are
display strings and are unique within one groupoid.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from .common import Partition, ValidationReport, partition_from_neighbours, tuple_label
from .errors import (
    InvalidSubgroupoid,
    MalformedParams,
    UnknownElement,
    UnknownObject,
)


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    objects: tuple[str, ...]
    arrows: tuple[str, ...]
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    ident: tuple[int, ...]
    inv: tuple[int, ...]
    comp: Mapping[tuple[int, int], int]
    name: str = ""
    # (G, H) when this is G x H with index i = i_G * |H| + i_H
    factors: tuple | None = None
    opposite_of: "FiniteGroupoid | None" = None

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<FiniteGroupoid{nm}: {len(self.objects)} objects, {len(self.arrows)} arrows>"

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def mul(self, g: int, g2: int) -> int:
        return self.comp[(g, g2)]

    @cached_property
    def object_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.objects)}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.arrows)}

    def obj(self, label: str) -> int:
        try:
            return self.object_index[label]
        except KeyError:
            raise UnknownObject(label) from None

    def arr(self, label: str) -> int:
        try:
            return self.arrow_index[label]
        except KeyError:
            raise UnknownElement(label) from None

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.objects]
        for g, s in enumerate(self.src):
            out[s].append(g)
        return tuple(tuple(x) for x in out)

    @cached_property
    def _in(self) -> tuple[tuple[int, ...], ...]:
        into = [[] for _ in self.objects]
        for g, t in enumerate(self.tgt):
            into[t].append(g)
        return tuple(tuple(x) for x in into)

    def arrows_from(self, x: int) -> tuple[int, ...]:
        """Arrows with source ``x``."""
        return self._out[x]

    def arrows_to(self, x: int) -> tuple[int, ...]:
        """Arrows with target ``x``."""
        return self._in[x]

    @cached_property
    def _hom(self) -> dict[tuple[int, int], tuple[int, ...]]:
        hom: dict[tuple[int, int], list[int]] = {}
        for g in range(len(self.arrows)):
            hom.setdefault((self.src[g], self.tgt[g]), []).append(g)
        return {k: tuple(v) for k, v in hom.items()}

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        """Arrows from ``x`` to ``y``."""
        return self._hom.get((x, y), ())

    def loops(self, x: int) -> tuple[int, ...]:
        return self.hom(x, x)

    def composable(self):
        """Yield every composable pair ``(g, g2)`` (``src[g] == tgt[g2]``)."""
        for g in range(len(self.arrows)):
            for g2 in self._in[self.src[g]]:
                yield g, g2

    def is_identity(self, g: int) -> bool:
        return self.ident[self.src[g]] == g

    # product helpers -----------------------------------------------------
    def pair_arrow(self, i: int, j: int) -> int:
        return i * self.factors[1].n_arrows + j

    def split_arrow(self, g: int) -> tuple[int, int]:
        return divmod(g, self.factors[1].n_arrows)

    def pair_object(self, x: int, y: int) -> int:
        return x * self.factors[1].n_objects + y

    def split_object(self, x: int) -> tuple[int, int]:
        return divmod(x, self.factors[1].n_objects)

    def tables(self) -> tuple:
        """Every table as plain tuples, for table-identity comparisons."""
        comp = tuple(sorted(self.comp.items()))
        return (self.objects, self.arrows, self.src, self.tgt, self.ident, self.inv, comp)


def _check_labels(kind: str, labels: Sequence[str]):
    if len(set(labels)) != len(labels):
        seen, dup = set(), None
        for lab in labels:
            if lab in seen:
                dup = lab
                break
            seen.add(lab)
        raise MalformedParams(f"duplicate {kind} label {dup!r}")


# ---------------------------------------------------------------------------
# builders


def _relation_groupoid(objects: Sequence[str], related, name: str) -> FiniteGroupoid:
    """Groupoid of an equivalence relation: arrow (x, y) goes from y to x."""
    objects = tuple(str(o) for o in objects)
    _check_labels("object", objects)
    n = len(objects)
    pairs = [(i, j) for i in range(n) for j in range(n) if related(i, j)]
    index = {p: k for k, p in enumerate(pairs)}
    arrows = tuple(tuple_label(objects[i], objects[j]) for i, j in pairs)
    src = tuple(j for _, j in pairs)
    tgt = tuple(i for i, _ in pairs)
    ident = tuple(index[(i, i)] for i in range(n))
    inv = tuple(index[(j, i)] for i, j in pairs)
    comp = {}
    for k, (i, j) in enumerate(pairs):
        for k2, (j2, l) in enumerate(pairs):
            if j2 == j:
                comp[(k, k2)] = index[(i, l)]
    return FiniteGroupoid(objects, arrows, src, tgt, ident, inv, comp, name=name)


def trivial(objects: Sequence[str], name: str = "") -> FiniteGroupoid:
    """Only identity arrows, labelled ``1_x``."""
    objects = tuple(str(o) for o in objects)
    _check_labels("object", objects)
    n = len(objects)
    rng = tuple(range(n))
    return FiniteGroupoid(
        objects, tuple(f"1_{o}" for o in objects), rng, rng, rng, rng,
        {(i, i): i for i in rng}, name=name,
    )


def pairs(objects: Sequence[str], name: str = "") -> FiniteGroupoid:
    return _relation_groupoid(objects, lambda i, j: True, name)


def fibre(objects: Sequence[str], nu: Mapping[str, object], name: str = "") -> FiniteGroupoid:
    """Pairs with equal image under ``nu``."""
    objects = tuple(str(o) for o in objects)
    missing = [o for o in objects if o not in nu]
    if missing:
        raise MalformedParams(f"map undefined on {missing[0]!r}")
    vals = [nu[o] for o in objects]
    return _relation_groupoid(objects, lambda i, j: vals[i] == vals[j], name)


def eqrel(objects: Sequence[str], classes: Iterable[Iterable[str]], name: str = "") -> FiniteGroupoid:
    objects = tuple(str(o) for o in objects)
    _check_labels("object", objects)
    block: dict[str, int] = {}
    for b, cls in enumerate(classes):
        for o in cls:
            o = str(o)
            if o in block:
                raise MalformedParams(f"partition cells overlap at {o!r}")
            if o not in objects:
                raise MalformedParams(f"class member {o!r} is not an object")
            block[o] = b
    uncovered = [o for o in objects if o not in block]
    if uncovered:
        raise MalformedParams(f"partition does not cover {uncovered[0]!r}")
    cell = [block[o] for o in objects]
    return _relation_groupoid(objects, lambda i, j: cell[i] == cell[j], name)


def one_object_group(elements: Sequence[str], table, name: str = "", obj: str = "*") -> FiniteGroupoid:
    """One-object groupoid from a Cayley table.

    ``table[i][j]`` is the product of ``elements[i]`` and ``elements[j]``,
    given either as an index or as an element label.
    """
    elements = tuple(str(e) for e in elements)
    _check_labels("element", elements)
    n = len(elements)
    if n == 0:
        raise MalformedParams("a group needs at least one element")
    idx = {e: i for i, e in enumerate(elements)}
    try:
        tab = [[v if isinstance(v, int) else idx[str(v)] for v in row] for row in table]
    except KeyError as exc:
        raise MalformedParams(f"Cayley table mentions unknown element {exc.args[0]!r}") from None
    if len(tab) != n or any(len(row) != n for row in tab):
        raise MalformedParams("Cayley table has the wrong shape")
    if any(not 0 <= v < n for row in tab for v in row):
        raise MalformedParams("Cayley table entry out of range")
    units = [e for e in range(n) if all(tab[e][x] == x and tab[x][e] == x for x in range(n))]
    if not units:
        raise MalformedParams("Cayley table not a group: no identity")
    e = units[0]
    for a, b, c in iproduct(range(n), repeat=3):
        if tab[tab[a][b]][c] != tab[a][tab[b][c]]:
            raise MalformedParams(
                f"Cayley table not a group: ({elements[a]}{elements[b]}){elements[c]} "
                f"!= {elements[a]}({elements[b]}{elements[c]})"
            )
    inv = []
    for a in range(n):
        cands = [b for b in range(n) if tab[a][b] == e]
        if not cands:
            raise MalformedParams(f"Cayley table not a group: {elements[a]} has no inverse")
        inv.append(cands[0])
    zeros = (0,) * n
    comp = {(a, b): tab[a][b] for a in range(n) for b in range(n)}
    return FiniteGroupoid((obj,), elements, zeros, zeros, (e,), tuple(inv), comp, name=name)


def cyclic_group(n: int, name: str = "") -> FiniteGroupoid:
    if n < 1:
        raise MalformedParams("cyclic group order must be positive")
    labels = ["e"] + [("c" if k == 1 else f"c{k}") for k in range(1, n)]
    return one_object_group(labels, [[(a + b) % n for b in range(n)] for a in range(n)], name=name)


def action_groupoid(group: FiniteGroupoid, carrier: Sequence[str], act: Mapping, name: str = "") -> FiniteGroupoid:
    """Action groupoid of a right action of a one-object groupoid.

    ``act`` maps ``(x, g)`` label pairs to ``xg``. The arrow ``(x, g)`` goes
    from ``xg`` to ``x``; ``(x, g)(x', g') = (x, gg')`` when ``xg = x'``.
    """
    if group.n_objects != 1:
        raise MalformedParams("action groupoid needs a one-object group")
    carrier = tuple(str(x) for x in carrier)
    _check_labels("carrier", carrier)
    cidx = {x: i for i, x in enumerate(carrier)}
    ng = group.n_arrows
    table = {}
    for x in carrier:
        for g in group.arrows:
            try:
                y = str(act[(x, g)])
            except KeyError:
                raise MalformedParams(f"action undefined on ({x},{g})") from None
            if y not in cidx:
                raise MalformedParams(f"action sends ({x},{g}) outside the carrier")
            table[(cidx[x], group.arr(g))] = cidx[y]
    e = group.ident[0]
    for x in range(len(carrier)):
        if table[(x, e)] != x:
            raise MalformedParams(f"action not unital at {carrier[x]}")
        for g in range(ng):
            for h in range(ng):
                if table[(table[(x, g)], h)] != table[(x, group.mul(g, h))]:
                    raise MalformedParams(f"action not associative at {carrier[x]}")
    n = len(carrier)
    arrows = tuple(tuple_label(carrier[x], group.arrows[g]) for x in range(n) for g in range(ng))
    src = tuple(table[(x, g)] for x in range(n) for g in range(ng))
    tgt = tuple(x for x in range(n) for _ in range(ng))
    ident = tuple(x * ng + e for x in range(n))
    inv = tuple(table[(x, g)] * ng + group.inv[g] for x in range(n) for g in range(ng))
    comp = {}
    for x in range(n):
        for g in range(ng):
            x2 = table[(x, g)]
            for g2 in range(ng):
                comp[(x * ng + g, x2 * ng + g2)] = x * ng + group.mul(g, g2)
    return FiniteGroupoid(tuple(carrier), arrows, src, tgt, ident, inv, comp, name=name)


def induced(base: FiniteGroupoid, carrier: Sequence[str], sigma: Mapping[str, str], name: str = "") -> FiniteGroupoid:
    """Induced groupoid along ``sigma``: arrows ``(x, g, x')`` with ``g: sigma(x') -> sigma(x)``."""
    carrier = tuple(str(x) for x in carrier)
    _check_labels("carrier", carrier)
    try:
        sig = [base.obj(str(sigma[x])) for x in carrier]
    except KeyError as exc:
        raise MalformedParams(f"structure map undefined or invalid at {exc.args[0]!r}") from None
    n = len(carrier)
    trip = [(x, g, x2) for x in range(n) for x2 in range(n) for g in base.hom(sig[x2], sig[x])]
    index = {t: k for k, t in enumerate(trip)}
    arrows = tuple(tuple_label(carrier[x], base.arrows[g], carrier[x2]) for x, g, x2 in trip)
    src = tuple(x2 for _, _, x2 in trip)
    tgt = tuple(x for x, _, _ in trip)
    ident = tuple(index[(x, base.ident[sig[x]], x)] for x in range(n))
    inv = tuple(index[(x2, base.inv[g], x)] for x, g, x2 in trip)
    comp = {}
    for k, (x, g, x2) in enumerate(trip):
        for k2, (y, g2, y2) in enumerate(trip):
            if y == x2:
                comp[(k, k2)] = index[(x, base.mul(g, g2), y2)]
    return FiniteGroupoid(carrier, arrows, src, tgt, ident, inv, comp, name=name)


@lru_cache(maxsize=4096)
def product(G: FiniteGroupoid, H: FiniteGroupoid) -> FiniteGroupoid:
    """Componentwise product; cached so repeated calls share one reference."""
    na, nb = G.n_arrows, H.n_arrows
    oa, ob = G.n_objects, H.n_objects
    objects = tuple(tuple_label(x, y) for x in G.objects for y in H.objects)
    arrows = tuple(tuple_label(g, h) for g in G.arrows for h in H.arrows)
    src = tuple(G.src[i] * ob + H.src[j] for i in range(na) for j in range(nb))
    tgt = tuple(G.tgt[i] * ob + H.tgt[j] for i in range(na) for j in range(nb))
    ident = tuple(G.ident[x] * nb + H.ident[y] for x in range(oa) for y in range(ob))
    inv = tuple(G.inv[i] * nb + H.inv[j] for i in range(na) for j in range(nb))
    pairs_h = list(H.comp.items())
    comp = {}
    for (a, a2), a3 in G.comp.items():
        ba, ba2, ba3 = a * nb, a2 * nb, a3 * nb
        for (b, b2), b3 in pairs_h:
            comp[(ba + b, ba2 + b2)] = ba3 + b3
    name = f"{G.name}x{H.name}" if G.name and H.name else ""
    return FiniteGroupoid(objects, arrows, src, tgt, ident, inv, comp, name=name, factors=(G, H))


@lru_cache(maxsize=4096)
def opposite(G: FiniteGroupoid) -> FiniteGroupoid:
    """Same labels, source and target swapped, composition order reversed."""
    if G.opposite_of is not None:
        return G.opposite_of
    comp = {(b, a): c for (a, b), c in G.comp.items()}
    name = f"{G.name}^op" if G.name else ""
    return FiniteGroupoid(G.objects, G.arrows, G.tgt, G.src, G.ident, G.inv, comp,
                          name=name, opposite_of=G)


def reindexed(G: FiniteGroupoid, obj_order: Sequence[int], arr_order: Sequence[int], name: str | None = None) -> FiniteGroupoid:
    """Copy of ``G`` whose i-th object is ``G``'s ``obj_order[i]`` (same for arrows)."""
    onew = {old: new for new, old in enumerate(obj_order)}
    anew = {old: new for new, old in enumerate(arr_order)}
    if sorted(onew) != list(range(G.n_objects)) or sorted(anew) != list(range(G.n_arrows)):
        raise MalformedParams("reindexing orders must be permutations")
    return FiniteGroupoid(
        tuple(G.objects[o] for o in obj_order),
        tuple(G.arrows[a] for a in arr_order),
        tuple(onew[G.src[a]] for a in arr_order),
        tuple(onew[G.tgt[a]] for a in arr_order),
        tuple(anew[G.ident[o]] for o in obj_order),
        tuple(anew[G.inv[a]] for a in arr_order),
        {(anew[a], anew[b]): anew[c] for (a, b), c in G.comp.items()},
        name=G.name if name is None else name,
    )


def reversed_groupoid(G: FiniteGroupoid) -> FiniteGroupoid:
    return reindexed(G, range(G.n_objects - 1, -1, -1), range(G.n_arrows - 1, -1, -1))


def _need(params: dict, *keys):
    missing = [k for k in keys if k not in params]
    if missing:
        raise MalformedParams(f"missing parameter {missing[0]!r}")
    return [params[k] for k in keys]


def build_groupoid(kind: str, **params) -> FiniteGroupoid:
    """Dispatch on builder ``kind``; see the individual builder functions."""
    name = params.pop("name", "")
    if kind == "trivial":
        (objs,) = _need(params, "objects")
        return trivial(objs, name=name)
    if kind == "pairs":
        (objs,) = _need(params, "objects")
        return pairs(objs, name=name)
    if kind == "fibre":
        objs, nu = _need(params, "objects", "nu")
        return fibre(objs, nu, name=name)
    if kind == "eqrel":
        objs, classes = _need(params, "objects", "classes")
        return eqrel(objs, classes, name=name)
    if kind == "one_object_group":
        elems, table = _need(params, "elements", "table")
        return one_object_group(elems, table, name=name)
    if kind == "cyclic":
        (n,) = _need(params, "order")
        return cyclic_group(int(n), name=name)
    if kind == "action":
        group, carrier, act = _need(params, "group", "carrier", "act")
        return action_groupoid(group, carrier, act, name=name)
    if kind == "induced":
        base, carrier, sigma = _need(params, "base", "carrier", "sigma")
        return induced(base, carrier, sigma, name=name)
    if kind == "product":
        G, H = _need(params, "left", "right")
        return product(G, H)
    if kind == "opposite":
        (G,) = _need(params, "groupoid")
        return opposite(G)
    raise MalformedParams(f"unknown builder kind {kind!r}")


# ---------------------------------------------------------------------------
# validation


def validate_groupoid(G: FiniteGroupoid) -> ValidationReport:
    rep = ValidationReport()
    n0, n1 = G.n_objects, G.n_arrows
    sizes_ok = (
        len(G.src) == n1 and len(G.tgt) == n1 and len(G.inv) == n1 and len(G.ident) == n0
        and all(0 <= v < n0 for v in (*G.src, *G.tgt))
        and all(0 <= v < n1 for v in (*G.inv, *G.ident))
    )
    if not sizes_ok:
        rep.add("table-sizes", "tables have inconsistent sizes or out-of-range entries")
        return rep
    if len(set(G.objects)) != n0:
        rep.add("labels", "object labels are not unique")
    if len(set(G.arrows)) != n1:
        rep.add("labels", "arrow labels are not unique")
    lab, olab = G.arrows, G.objects

    if len(set(G.ident)) != n0:
        rep.add("identity-injective", "identity table is not injective")
    for x in range(n0):
        i = G.ident[x]
        if G.src[i] != x or G.tgt[i] != x:
            rep.add("identity-endpoints", f"s/t of identity at {olab[x]} is not {olab[x]}", olab[x], lab[i])

    for key, val in G.comp.items():
        g, g2 = key
        if not (0 <= g < n1 and 0 <= g2 < n1 and 0 <= val < n1):
            rep.add("comp-domain", f"composition entry {key} out of range")
            return rep
        if G.src[g] != G.tgt[g2]:
            rep.add("comp-domain", f"composition defined on non-composable pair ({lab[g]},{lab[g2]})", lab[g], lab[g2])
    for g, g2 in G.composable():
        if (g, g2) not in G.comp:
            rep.add("comp-domain", f"composition undefined on composable pair ({lab[g]},{lab[g2]})", lab[g], lab[g2])
            continue
        c = G.comp[(g, g2)]
        if G.src[c] != G.src[g2] or G.tgt[c] != G.tgt[g]:
            rep.add("comp-endpoints", f"s/t of {lab[g]}*{lab[g2]} are wrong", lab[g], lab[g2])
    if not rep.ok:
        return rep

    for g in range(n1):
        if G.comp[(G.ident[G.tgt[g]], g)] != g or G.comp[(g, G.ident[G.src[g]])] != g:
            rep.add("unit", f"identity law fails for {lab[g]}", lab[g])
        gi = G.inv[g]
        if G.src[gi] != G.tgt[g] or G.tgt[gi] != G.src[g]:
            rep.add("inverse-endpoints", f"s(inv {lab[g]}) != t({lab[g]})", lab[g])
            continue
        if G.comp[(g, gi)] != G.ident[G.tgt[g]]:
            rep.add("inverse-right", f"g*g^-1 != identity for g={lab[g]}", lab[g], lab[gi])
        if G.comp[(gi, g)] != G.ident[G.src[g]]:
            rep.add("inverse-left", f"g^-1*g != identity for g={lab[g]}", lab[g], lab[gi])

    comp = G.comp
    for g in range(n1):
        for g2 in G.arrows_to(G.src[g]):
            gg2 = comp[(g, g2)]
            for g3 in G.arrows_to(G.src[g2]):
                if comp[(gg2, g3)] != comp[(g, comp[(g2, g3)])]:
                    rep.add("associativity", f"({lab[g]}{lab[g2]}){lab[g3]} != {lab[g]}({lab[g2]}{lab[g3]})",
                            lab[g], lab[g2], lab[g3])
    return rep


def connected_components(G: FiniteGroupoid) -> Partition:
    return partition_from_neighbours(G.n_objects, lambda x: (G.tgt[g] for g in G.arrows_from(x)))


# ---------------------------------------------------------------------------
# subgroupoids


@dataclass(frozen=True)
class Subgroupoid:
    """Object and arrow subsets of a parent groupoid (index sets, never copies)."""

    parent: FiniteGroupoid
    objs: frozenset
    arrs: frozenset
    name: str = field(default="", compare=False)

    @property
    def wide(self) -> bool:
        return len(self.objs) == self.parent.n_objects

    @property
    def obj_mask(self) -> tuple[bool, ...]:
        return tuple(x in self.objs for x in range(self.parent.n_objects))

    @property
    def arr_mask(self) -> tuple[bool, ...]:
        return tuple(g in self.arrs for g in range(self.parent.n_arrows))

    def __contains__(self, g: int) -> bool:
        return g in self.arrs

    def __len__(self):
        return len(self.arrs)

    def loops(self, x: int) -> list[int]:
        return [g for g in self.parent.loops(x) if g in self.arrs]

    def sorted_arrows(self) -> list[int]:
        return sorted(self.arrs)

    def labels(self) -> list[str]:
        return [self.parent.arrows[g] for g in sorted(self.arrs)]

    @classmethod
    def from_arrows(cls, parent: FiniteGroupoid, arrows: Iterable[int], objects: Iterable[int] = (),
                    close: bool = False, wide: bool = False, name: str = "") -> "Subgroupoid":
        arrs = set(arrows)
        objs = set(objects)
        if wide:
            objs = set(range(parent.n_objects))
        for g in arrs:
            objs.add(parent.src[g])
            objs.add(parent.tgt[g])
        if close:
            objs, arrs = closure(parent, objs, arrs)
        return cls(parent, frozenset(objs), frozenset(arrs), name)

    @classmethod
    def from_labels(cls, parent: FiniteGroupoid, arrows: Iterable[str], objects: Iterable[str] = (),
                    close: bool = False, wide: bool = False, name: str = "") -> "Subgroupoid":
        return cls.from_arrows(parent, [parent.arr(a) for a in arrows], [parent.obj(o) for o in objects],
                               close=close, wide=wide, name=name)

    @classmethod
    def identities(cls, parent: FiniteGroupoid, name: str = "") -> "Subgroupoid":
        return cls(parent, frozenset(range(parent.n_objects)), frozenset(parent.ident), name)

    @classmethod
    def full(cls, parent: FiniteGroupoid, name: str = "") -> "Subgroupoid":
        return cls(parent, frozenset(range(parent.n_objects)), frozenset(range(parent.n_arrows)), name)

    def as_groupoid(self, name: str = "") -> FiniteGroupoid:
        P = self.parent
        ol = sorted(self.objs)
        al = sorted(self.arrs)
        onew = {o: i for i, o in enumerate(ol)}
        anew = {a: i for i, a in enumerate(al)}
        comp = {(anew[a], anew[b]): anew[P.comp[(a, b)]]
                for a in al for b in P.arrows_to(P.src[a]) if b in anew}
        return FiniteGroupoid(
            tuple(P.objects[o] for o in ol), tuple(P.arrows[a] for a in al),
            tuple(onew[P.src[a]] for a in al), tuple(onew[P.tgt[a]] for a in al),
            tuple(anew[P.ident[o]] for o in ol), tuple(anew[P.inv[a]] for a in al),
            comp, name=name or self.name,
        )

    def inclusion(self) -> "GroupoidMorphism":
        sub = self.as_groupoid()
        return GroupoidMorphism(sub, self.parent, tuple(sorted(self.objs)), tuple(sorted(self.arrs)))


def closure(parent: FiniteGroupoid, objs: Iterable[int], arrs: Iterable[int]) -> tuple[set, set]:
    """Smallest subgroupoid containing the given objects and arrows."""
    objs = set(objs)
    arrs = set(arrs)
    for g in arrs:
        objs.update((parent.src[g], parent.tgt[g]))
    arrs.update(parent.ident[x] for x in objs)
    arrs.update([parent.inv[g] for g in arrs])
    pending = list(arrs)
    while pending:
        g = pending.pop()
        new = []
        for h in list(arrs):
            if parent.src[g] == parent.tgt[h]:
                new.append(parent.comp[(g, h)])
            if parent.src[h] == parent.tgt[g]:
                new.append(parent.comp[(h, g)])
        for c in new:
            for d in (c, parent.inv[c]):
                if d not in arrs:
                    arrs.add(d)
                    pending.append(d)
    return objs, arrs


def subgroupoid_check(S: Subgroupoid) -> ValidationReport:
    P = S.parent
    rep = ValidationReport(info={"wide": S.wide})
    if any(not 0 <= x < P.n_objects for x in S.objs) or any(not 0 <= g < P.n_arrows for g in S.arrs):
        rep.add("masks", "subset indices out of range for parent")
        return rep
    for x in sorted(S.objs):
        if P.ident[x] not in S.arrs:
            rep.add("identity-closed", f"identity at {P.objects[x]} missing", P.objects[x])
    for g in sorted(S.arrs):
        if P.src[g] not in S.objs or P.tgt[g] not in S.objs:
            rep.add("endpoints", f"endpoint of {P.arrows[g]} outside object subset", P.arrows[g])
        if P.inv[g] not in S.arrs:
            rep.add("inverse-closed", f"not inverse-closed: {P.arrows[P.inv[g]]} missing", P.arrows[g])
    for g in sorted(S.arrs):
        for h in P.arrows_to(P.src[g]):
            if h in S.arrs and P.comp[(g, h)] not in S.arrs:
                rep.add("composition-closed", f"{P.arrows[g]}*{P.arrows[h]} missing", P.arrows[g], P.arrows[h])
    return rep


def require_subgroupoid(S: Subgroupoid) -> None:
    rep = subgroupoid_check(S)
    if not rep.ok:
        v = rep.violations[0]
        raise InvalidSubgroupoid(f"{v.axiom}: {v.message}")


def isotropy_group(G: FiniteGroupoid, x) -> Subgroupoid:
    """One-object subgroupoid of all loops at ``x`` (index or label)."""
    if isinstance(x, str):
        x = G.obj(x)
    if not 0 <= x < G.n_objects:
        raise UnknownObject(x)
    return Subgroupoid(G, frozenset([x]), frozenset(G.loops(x)))


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class GroupoidMorphism:
    dom: FiniteGroupoid
    cod: FiniteGroupoid
    obj_map: tuple[int, ...]
    arr_map: tuple[int, ...]

    @classmethod
    def from_labels(cls, dom: FiniteGroupoid, cod: FiniteGroupoid, obj_map: Mapping[str, str],
                    arr_map: Mapping[str, str]) -> "GroupoidMorphism":
        try:
            om = tuple(cod.obj(obj_map[o]) for o in dom.objects)
            am = tuple(cod.arr(arr_map[a]) for a in dom.arrows)
        except KeyError as exc:
            raise MalformedParams(f"morphism table undefined at {exc.args[0]!r}") from None
        return cls(dom, cod, om, am)

    @classmethod
    def identity(cls, G: FiniteGroupoid) -> "GroupoidMorphism":
        return cls(G, G, tuple(range(G.n_objects)), tuple(range(G.n_arrows)))


def check_morphism(m: GroupoidMorphism) -> ValidationReport:
    D, C = m.dom, m.cod
    rep = ValidationReport()
    if len(m.obj_map) != D.n_objects or len(m.arr_map) != D.n_arrows:
        rep.add("table-sizes", "morphism tables not sized to the domain")
        return rep
    if any(not 0 <= v < C.n_objects for v in m.obj_map) or any(not 0 <= v < C.n_arrows for v in m.arr_map):
        rep.add("table-sizes", "morphism tables point outside the codomain")
        return rep
    f0, f1 = m.obj_map, m.arr_map
    for g in range(D.n_arrows):
        if C.src[f1[g]] != f0[D.src[g]]:
            rep.add("source", f"s(phi({D.arrows[g]})) != phi(s({D.arrows[g]}))", D.arrows[g])
        if C.tgt[f1[g]] != f0[D.tgt[g]]:
            rep.add("target", f"t(phi({D.arrows[g]})) != phi(t({D.arrows[g]}))", D.arrows[g])
    for x in range(D.n_objects):
        if f1[D.ident[x]] != C.ident[f0[x]]:
            rep.add("identity", f"phi does not preserve the identity at {D.objects[x]}", D.objects[x])
    for (g, g2), c in D.comp.items():
        a, b = f1[g], f1[g2]
        if C.comp.get((a, b)) != f1[c]:
            rep.add("composition", f"phi({D.arrows[g]}*{D.arrows[g2]}) != phi({D.arrows[g]})*phi({D.arrows[g2]})",
                    D.arrows[g], D.arrows[g2])
    isot = {}
    if rep.ok:
        for y in range(D.n_objects):
            loops = D.loops(y)
            image = {f1[g] for g in loops}
            isot[D.objects[y]] = {
                "injective": len(image) == len(loops),
                "surjective": image == set(C.loops(f0[y])),
            }
    rep.info["isotropy"] = isot
    return rep


def orbit_of_object(G: FiniteGroupoid, x: int) -> set[int]:
    """Targets of arrows leaving ``x``."""
    return {G.tgt[g] for g in G.arrows_from(x)}
