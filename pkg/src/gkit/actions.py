"""Left and right groupoid-sets, equivariant maps, orbits and stabilizers."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .common import Partition, ValidationReport, partition_from_neighbours, tuple_label
from .errors import (
    InvalidAction,
    MalformedParams,
    NotBijective,
    NotInvariantSubset,
    UnknownElement,
)
from .groupoid import FiniteGroupoid, GroupoidMorphism, Subgroupoid, validate_groupoid


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @classmethod
    def parse(cls, value) -> "Side":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise MalformedParams(f"side must be 'left' or 'right', not {value!r}") from None


@dataclass(frozen=True, eq=False)
class GroupoidAction:
    """A groupoid-set.

    For a right action ``act[(x, g)] = xg`` is defined when
    ``structure[x] == tgt[g]``; for a left action ``act[(h, x)] = hx`` is
    defined when ``src[h] == structure[x]``.
    """

    side: Side
    groupoid: FiniteGroupoid
    carrier: tuple[str, ...]
    structure: tuple[int, ...]
    act: Mapping[tuple[int, int], int]
    name: str = ""

    def __repr__(self):
        return f"<GroupoidAction {self.side.value} {self.name or ''} |X|={len(self.carrier)}>"

    def __len__(self):
        return len(self.carrier)

    @cached_property
    def element_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.carrier)}

    def elem(self, label) -> int:
        if isinstance(label, int):
            if 0 <= label < len(self.carrier):
                return label
            raise UnknownElement(label)
        try:
            return self.element_index[label]
        except KeyError:
            raise UnknownElement(label) from None

    def admissible(self, x: int) -> tuple[int, ...]:
        """Arrows that may act on ``x``."""
        G = self.groupoid
        if self.side is Side.RIGHT:
            return G.arrows_to(self.structure[x])
        return G.arrows_from(self.structure[x])

    def apply(self, x: int, g: int) -> int:
        """``xg`` for a right action, ``gx`` for a left one."""
        if self.side is Side.RIGHT:
            return self.act[(x, g)]
        return self.act[(g, x)]

    def moves(self, x: int):
        for g in self.admissible(x):
            yield g, self.apply(x, g)

    def tables(self) -> tuple:
        return (self.side, self.carrier, self.structure, tuple(sorted(self.act.items())))

    @classmethod
    def from_labels(cls, side, groupoid: FiniteGroupoid, carrier: Sequence[str],
                    structure: Mapping[str, str], act: Mapping[tuple[str, str], str],
                    fill_identities: bool = False, name: str = "") -> "GroupoidAction":
        """Build from label tables; ``act`` keys are ``(x, g)`` (right) or ``(h, x)`` (left)."""
        side = Side.parse(side)
        carrier = tuple(str(x) for x in carrier)
        if len(set(carrier)) != len(carrier):
            raise MalformedParams("duplicate carrier labels")
        idx = {x: i for i, x in enumerate(carrier)}
        try:
            struct = tuple(groupoid.obj(str(structure[x])) for x in carrier)
        except KeyError as exc:
            raise MalformedParams(f"structure map undefined at {exc.args[0]!r}") from None
        table = {}
        for key, val in act.items():
            a, b = key
            try:
                if side is Side.RIGHT:
                    k = (idx[str(a)], groupoid.arr(str(b)))
                else:
                    k = (groupoid.arr(str(a)), idx[str(b)])
                table[k] = idx[str(val)]
            except KeyError as exc:
                raise MalformedParams(f"action table mentions unknown label {exc.args[0]!r}") from None
        if fill_identities:
            for x in range(len(carrier)):
                e = groupoid.ident[struct[x]]
                table.setdefault((x, e) if side is Side.RIGHT else (e, x), x)
        return cls(side, groupoid, carrier, struct, table, name)


def regular_action(G: FiniteGroupoid, side=Side.RIGHT) -> GroupoidAction:
    """Arrows acting on themselves by multiplication; structure is ``src`` (right) or ``tgt`` (left)."""
    side = Side.parse(side)
    if side is Side.RIGHT:
        act = {(x, g): G.mul(x, g) for x in range(G.n_arrows) for g in G.arrows_to(G.src[x])}
        return GroupoidAction(side, G, G.arrows, G.src, act, name="regular")
    act = {(h, x): G.mul(h, x) for x in range(G.n_arrows) for h in G.arrows_from(G.tgt[x])}
    return GroupoidAction(side, G, G.arrows, G.tgt, act, name="regular")


def validate_action(a: GroupoidAction) -> ValidationReport:
    G = a.groupoid
    rep = ValidationReport()
    n = len(a.carrier)
    if len(a.structure) != n or any(not 0 <= o < G.n_objects for o in a.structure):
        rep.add("table-sizes", "structure map not sized to the carrier or out of range")
        return rep
    right = a.side is Side.RIGHT
    lab, glab = a.carrier, G.arrows
    for key, val in a.act.items():
        x, g = key if right else (key[1], key[0])
        if not (0 <= x < n and 0 <= g < G.n_arrows and 0 <= val < n):
            rep.add("table-sizes", f"action entry {key} out of range")
            return rep
        need = G.tgt[g] if right else G.src[g]
        if a.structure[x] != need:
            rep.add("domain", f"action defined on non-admissible pair ({lab[x]},{glab[g]})", lab[x], glab[g])
    for x in range(n):
        for g in a.admissible(x):
            key = (x, g) if right else (g, x)
            if key not in a.act:
                rep.add("domain", f"action undefined on admissible pair ({lab[x]},{glab[g]})", lab[x], glab[g])
    if not rep.ok:
        return rep
    act, st, mul = a.act, a.structure, G.comp
    src, tgt = G.src, G.tgt
    adm = G.arrows_to if right else G.arrows_from
    for x in range(n):
        for g in adm(st[x]):
            y = act[(x, g)] if right else act[(g, x)]
            if st[y] != (src[g] if right else tgt[g]):
                rep.add("structure", f"structure of {'x.g' if right else 'g.x'} is not "
                        f"{'s' if right else 't'}(g) for x={lab[x]}, g={glab[g]}", lab[x], glab[g])
        e = G.ident[st[x]]
        if (act[(x, e)] if right else act[(e, x)]) != x:
            rep.add("unit", f"identity does not fix {lab[x]}", lab[x])
    if not rep.ok:
        return rep
    for x in range(n):
        if right:
            for g in adm(st[x]):
                y = act[(x, g)]
                for h in adm(st[y]):
                    if act[(y, h)] != act[(x, mul[(g, h)])]:
                        rep.add("associativity", f"(x{glab[g]}){glab[h]} != x({glab[g]}{glab[h]}) at x={lab[x]}",
                                lab[x], glab[g], glab[h])
        else:
            for g in adm(st[x]):
                y = act[(g, x)]
                for h in adm(st[y]):
                    if act[(h, y)] != act[(mul[(h, g)], x)]:
                        rep.add("associativity", f"{glab[h]}({glab[g]}x) != ({glab[h]}{glab[g]})x at x={lab[x]}",
                                lab[x], glab[g], glab[h])
    image = sorted(set(a.structure))
    rep.info["surjective"] = len(image) == G.n_objects
    rep.info["image"] = [G.objects[o] for o in image]
    rep.info["missing"] = [G.objects[o] for o in range(G.n_objects) if o not in set(image)]
    return rep


def require_action(a: GroupoidAction) -> None:
    rep = validate_action(a)
    if not rep.ok:
        v = rep.violations[0]
        raise InvalidAction(f"{v.axiom}: {v.message}")


def translation_groupoid(a: GroupoidAction, check: bool = True) -> tuple[FiniteGroupoid, GroupoidMorphism]:
    """Translation groupoid of ``a`` and its canonical functor to the acting groupoid.

    Right case: arrow ``(x, g)`` runs from ``xg`` to ``x``; the functor is
    ``(x, g) -> g``.  Left case: arrow ``(h, z)`` runs from ``hz`` to ``z``
    and the functor is ``(h, z) -> h^-1``.
    """
    if check:
        require_action(a)
    G = a.groupoid
    n = len(a.carrier)
    pairs = [(x, g) for x in range(n) for g in a.admissible(x)]
    index = {p: k for k, p in enumerate(pairs)}
    right = a.side is Side.RIGHT
    if right:
        labels = tuple(tuple_label(a.carrier[x], G.arrows[g]) for x, g in pairs)
    else:
        labels = tuple(tuple_label(G.arrows[g], a.carrier[x]) for x, g in pairs)
    src = tuple(a.apply(x, g) for x, g in pairs)
    tgt = tuple(x for x, _ in pairs)
    ident = tuple(index[(x, G.ident[a.structure[x]])] for x in range(n))
    inv = tuple(index[(a.apply(x, g), G.inv[g])] for x, g in pairs)
    comp = {}
    for k, (x, g) in enumerate(pairs):
        y = a.apply(x, g)
        for g2 in a.admissible(y):
            gg = G.mul(g, g2) if right else G.mul(g2, g)
            comp[(k, index[(y, g2)])] = index[(x, gg)]
    T = FiniteGroupoid(a.carrier, labels, src, tgt, ident, inv, comp,
                       name=f"{a.name}#{G.name}" if a.name else "")
    arr_map = tuple(g if right else G.inv[g] for _, g in pairs)
    return T, GroupoidMorphism(T, G, a.structure, arr_map)


def orbits(a: GroupoidAction) -> tuple[Partition, tuple[int, ...]]:
    """Orbit partition of the carrier and its minimal-index representatives."""
    part = partition_from_neighbours(len(a.carrier), lambda x: (y for _, y in a.moves(x)))
    return part, part.reps


@dataclass(frozen=True)
class StabilizerGroup:
    base: int
    subgroup: Subgroupoid

    @property
    def arrows(self) -> frozenset:
        return self.subgroup.arrs


def stabilizer(a: GroupoidAction, x) -> StabilizerGroup:
    x = a.elem(x)
    G = a.groupoid
    o = a.structure[x]
    fix = [g for g in G.loops(o) if a.apply(x, g) == x]
    return StabilizerGroup(x, Subgroupoid(G, frozenset([o]), frozenset(fix)))


def stabilizer_via_translation(a: GroupoidAction, x) -> frozenset:
    """Image of the translation groupoid's isotropy at ``x`` under the canonical functor."""
    x = a.elem(x)
    T, sigma = translation_groupoid(a, check=False)
    return frozenset(sigma.arr_map[t] for t in T.loops(x))


# ---------------------------------------------------------------------------
# equivariant maps


@dataclass(frozen=True, eq=False)
class EquivariantMap:
    dom: GroupoidAction
    cod: GroupoidAction
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_bijective(self) -> bool:
        return len(self.map) == len(self.cod.carrier) and len(set(self.map)) == len(self.map)


def check_equivariant(f: EquivariantMap) -> ValidationReport:
    A, B = f.dom, f.cod
    rep = ValidationReport()
    if A.groupoid is not B.groupoid or A.side is not B.side:
        rep.add("compatibility", "domain and codomain act by different groupoids or sides")
        return rep
    if len(f.map) != len(A.carrier) or any(not 0 <= y < len(B.carrier) for y in f.map):
        rep.add("table-sizes", "map not sized to the domain or out of range")
        return rep
    glab = A.groupoid.arrows
    for x in range(len(A.carrier)):
        fx = f.map[x]
        if B.structure[fx] != A.structure[x]:
            rep.add("structure", f"structure not preserved at {A.carrier[x]}", A.carrier[x])
            continue
        for g, y in A.moves(x):
            if f.map[y] != B.apply(fx, g):
                rep.add("action", f"f(x.g) != f(x).g at x={A.carrier[x]}, g={glab[g]}", A.carrier[x], glab[g])
    rep.info["bijective"] = f.is_bijective()
    return rep


def invert_equivariant(f: EquivariantMap) -> EquivariantMap:
    if not f.is_bijective():
        raise NotBijective("underlying map is not a bijection")
    inv = [0] * len(f.map)
    for x, y in enumerate(f.map):
        inv[y] = x
    return EquivariantMap(f.cod, f.dom, tuple(inv))


def restrict_action(a: GroupoidAction, subset: Iterable, name: str = "") -> GroupoidAction:
    """Restriction to an invariant subset, keeping the original carrier order."""
    keep = sorted({a.elem(x) for x in subset})
    inside = set(keep)
    for y in keep:
        for g, z in a.moves(y):
            if z not in inside:
                w = (a.carrier[y], a.groupoid.arrows[g])
                raise NotInvariantSubset(f"subset not invariant: ({w[0]},{w[1]}) leaves it", witness=w)
    new = {old: i for i, old in enumerate(keep)}
    right = a.side is Side.RIGHT
    act = {}
    for y in keep:
        for g, z in a.moves(y):
            act[(new[y], g) if right else (g, new[y])] = new[z]
    return GroupoidAction(a.side, a.groupoid, tuple(a.carrier[y] for y in keep),
                          tuple(a.structure[y] for y in keep), act, name or a.name)


def embedding(sub: GroupoidAction, whole: GroupoidAction) -> EquivariantMap:
    """Label-based inclusion of a restricted action into the original."""
    return EquivariantMap(sub, whole, tuple(whole.elem(lab) for lab in sub.carrier))


def reversed_action(a: GroupoidAction, G: FiniteGroupoid | None = None) -> GroupoidAction:
    """Same action with carrier order reversed; optionally over a relabelled copy ``G``."""
    n = len(a.carrier)
    old_G = a.groupoid
    G = G or old_G
    amap = [G.arr(lab) for lab in old_G.arrows]
    omap = [G.obj(lab) for lab in old_G.objects]
    r = lambda x: n - 1 - x  # noqa: E731
    right = a.side is Side.RIGHT
    act = {}
    for (p, q), v in a.act.items():
        act[(r(p), amap[q]) if right else (amap[p], r(q))] = r(v)
    return GroupoidAction(a.side, G, tuple(reversed(a.carrier)),
                          tuple(omap[o] for o in reversed(a.structure)), act, a.name)


def action_check_groupoid(a: GroupoidAction) -> ValidationReport:
    """Validate the translation groupoid (used by tests as a second opinion)."""
    T, _ = translation_groupoid(a)
    return validate_groupoid(T)
