"""Coset spaces of a groupoid by a subgroupoid and the orbit-stabilizer isomorphism.

Right cosets live on raw pairs ``(a, g)`` with ``a = t(g)`` an object of the
subgroupoid; ``(a, g) ~ (t(h), hg)``.  Left cosets live on raw pairs
``(g, u)`` with ``u = s(g)``; ``(g, u) ~ (gh, s(h))``.  Raw pairs are listed
in arrow-index order, so the minimal index in a class is the canonical
representative.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .actions import (
    EquivariantMap,
    GroupoidAction,
    Side,
    orbits,
    restrict_action,
    stabilizer,
)
from .common import Partition, partition_from_neighbours, tuple_label
from .errors import NotInCarrier
from .groupoid import FiniteGroupoid, Subgroupoid, require_subgroupoid


@dataclass(frozen=True)
class CosetClass:
    side: Side
    rep: tuple[int, int]
    members: tuple[tuple[int, int], ...]


@dataclass(frozen=True, eq=False)
class CosetSpace:
    groupoid: FiniteGroupoid
    sub: Subgroupoid
    side: Side
    raw: tuple[tuple[int, int], ...]
    partition: Partition
    action: GroupoidAction

    @cached_property
    def raw_index(self) -> dict[tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.raw)}

    @cached_property
    def class_of_raw(self) -> tuple[int, ...]:
        out = [0] * len(self.raw)
        for c, block in enumerate(self.partition.blocks):
            for i in block:
                out[i] = c
        return tuple(out)

    @cached_property
    def classes(self) -> tuple[CosetClass, ...]:
        return tuple(CosetClass(self.side, self.raw[b[0]], tuple(self.raw[i] for i in b))
                     for b in self.partition.blocks)

    def __len__(self):
        return len(self.partition)

    def class_of(self, pair) -> int:
        """Class index of a raw pair given by indices or labels."""
        return self.class_of_raw[self._raw(pair)]

    def rep_arrow(self, c: int) -> int:
        return self._arrow(self.raw[self.partition.blocks[c][0]])

    def _arrow(self, pair) -> int:
        return pair[1] if self.side is Side.RIGHT else pair[0]

    def _raw(self, pair) -> int:
        G = self.groupoid
        p, q = pair
        try:
            if self.side is Side.RIGHT:
                key = (G.obj(p) if isinstance(p, str) else p, G.arr(q) if isinstance(q, str) else q)
            else:
                key = (G.arr(p) if isinstance(p, str) else p, G.obj(q) if isinstance(q, str) else q)
        except KeyError:
            raise NotInCarrier(pair) from None
        try:
            return self.raw_index[key]
        except KeyError:
            raise NotInCarrier(pair) from None

    def raw_label(self, pair) -> str:
        G = self.groupoid
        if self.side is Side.RIGHT:
            return tuple_label(G.objects[pair[0]], G.arrows[pair[1]])
        return tuple_label(G.arrows[pair[0]], G.objects[pair[1]])


def _class_label(G: FiniteGroupoid, side: Side, pair, sub_name: str) -> str:
    if side is Side.RIGHT:
        return f"{sub_name}[{G.objects[pair[0]]},{G.arrows[pair[1]]}]"
    return f"[{G.arrows[pair[0]]},{G.objects[pair[1]]}]{sub_name}"


def coset_space(G: FiniteGroupoid, H: Subgroupoid, side=Side.RIGHT, check: bool = True) -> CosetSpace:
    """Cosets of ``G`` by ``H`` with their induced action.

    Right side: ``H[(a, g1)] . g2 = H[(a, g1 g2)]``, structure ``s(g)``.
    Left side: ``g1 . [(g2, u)]H = [(g1 g2, u)]H``, structure ``t(g)``.
    """
    side = Side.parse(side)
    if check:
        require_subgroupoid(H)
    if H.parent is not G:
        raise NotInCarrier("subgroupoid does not live in this groupoid")
    arrs = H.arrs
    if side is Side.RIGHT:
        raw = tuple((G.tgt[g], g) for g in range(G.n_arrows) if G.tgt[g] in H.objs)
    else:
        raw = tuple((g, G.src[g]) for g in range(G.n_arrows) if G.src[g] in H.objs)
    index = {p: i for i, p in enumerate(raw)}

    if side is Side.RIGHT:
        def nbrs(i):
            a, g = raw[i]
            for h in G.arrows_from(a):
                if h in arrs:
                    yield index[(G.tgt[h], G.mul(h, g))]
    else:
        def nbrs(i):
            g, u = raw[i]
            for h in G.arrows_to(u):
                if h in arrs:
                    yield index[(G.mul(g, h), G.src[h])]

    part = partition_from_neighbours(len(raw), nbrs)
    cls = [0] * len(raw)
    for c, block in enumerate(part.blocks):
        for i in block:
            cls[i] = c
    reps = [raw[b[0]] for b in part.blocks]
    sub_name = H.name or "H"
    labels = tuple(_class_label(G, side, p, sub_name) for p in reps)
    act = {}
    if side is Side.RIGHT:
        struct = tuple(G.src[g] for _, g in reps)
        for c, (a, g1) in enumerate(reps):
            for g2 in G.arrows_to(G.src[g1]):
                act[(c, g2)] = cls[index[(a, G.mul(g1, g2))]]
    else:
        struct = tuple(G.tgt[g] for g, _ in reps)
        for c, (g2, u) in enumerate(reps):
            for g1 in G.arrows_from(G.tgt[g2]):
                act[(g1, c)] = cls[index[(G.mul(g1, g2), u)]]
    action = GroupoidAction(side, G, labels, struct, act, name=f"cosets({sub_name})")
    return CosetSpace(G, H, side, raw, part, action)


def coset_action_consistent(space: CosetSpace) -> bool:
    """Recompute the induced action from every member of every class."""
    G = space.groupoid
    index = space.raw_index
    cls = space.class_of_raw
    for c, block in enumerate(space.partition.blocks):
        for i in block:
            if space.side is Side.RIGHT:
                a, g1 = space.raw[i]
                for g2 in G.arrows_to(G.src[g1]):
                    if cls[index[(a, G.mul(g1, g2))]] != space.action.act[(c, g2)]:
                        return False
            else:
                g2, u = space.raw[i]
                for g1 in G.arrows_from(G.tgt[g2]):
                    if cls[index[(G.mul(g1, g2), u)]] != space.action.act[(g1, c)]:
                        return False
    return True


def coset_eq(space: CosetSpace, p1, p2) -> bool:
    """Equality of classes by the membership criterion, without the class table.

    Right: ``g1 g2^-1`` lies in H.  Left: ``g2^-1 g1`` lies in H.
    """
    G = space.groupoid
    a1, a2 = space.raw[space._raw(p1)], space.raw[space._raw(p2)]
    if space.side is Side.RIGHT:
        g1, g2 = a1[1], a2[1]
        if G.src[g1] != G.src[g2]:
            return False
        return G.mul(g1, G.inv[g2]) in space.sub.arrs
    g1, g2 = a1[0], a2[0]
    if G.tgt[g1] != G.tgt[g2]:
        return False
    return G.mul(G.inv[g2], g1) in space.sub.arrs


def orbit_stabilizer_iso(a: GroupoidAction, x) -> EquivariantMap:
    """Equivariant bijection from the cosets by ``Stab(x)`` onto the orbit of ``x``.

    Right: ``H[(a, g)] -> xg``.  Left: ``[(g, u)]H -> gx``.
    """
    x = a.elem(x)
    G = a.groupoid
    stab = stabilizer(a, x).subgroup
    space = coset_space(G, stab, a.side, check=False)
    part, _ = orbits(a)
    orbit = part.blocks[part.block_of[x]]
    target = restrict_action(a, orbit)
    pos = {old: i for i, old in enumerate(orbit)}
    fmap = []
    for p in (space.raw[b[0]] for b in space.partition.blocks):
        g = p[1] if a.side is Side.RIGHT else p[0]
        fmap.append(pos[a.apply(x, g)])
    return EquivariantMap(space.action, target, tuple(fmap))


def orbit_decomposition(a: GroupoidAction) -> list[EquivariantMap]:
    _, reps = orbits(a)
    return [orbit_stabilizer_iso(a, r) for r in reps]
