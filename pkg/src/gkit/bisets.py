"""Bisets: one carrier with commuting left and right groupoid actions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .actions import GroupoidAction, Side, orbits, validate_action
from .common import Partition, ValidationReport, partition_from_neighbours, tuple_label
from .errors import InvalidBiset, InvalidMorphism, MalformedParams, NotProductGroupoid, UnknownElement
from .groupoid import (
    FiniteGroupoid,
    GroupoidMorphism,
    Subgroupoid,
    check_morphism,
    opposite,
    product,
    require_subgroupoid,
)


@dataclass(frozen=True, eq=False)
class Biset:
    """An (H, G)-biset.

    ``left_act[(h, x)] = hx`` needs ``src[h] == theta[x]``;
    ``right_act[(x, g)] = xg`` needs ``tgt[g] == sigma[x]``.
    """

    left_groupoid: FiniteGroupoid
    right_groupoid: FiniteGroupoid
    carrier: tuple[str, ...]
    theta: tuple[int, ...]
    sigma: tuple[int, ...]
    left_act: Mapping[tuple[int, int], int]
    right_act: Mapping[tuple[int, int], int]
    name: str = ""

    def __repr__(self):
        return f"<Biset {self.name or ''} |X|={len(self.carrier)}>"

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

    def left(self, h: int, x: int) -> int:
        return self.left_act[(h, x)]

    def right(self, x: int, g: int) -> int:
        return self.right_act[(x, g)]

    def left_admissible(self, x: int) -> tuple[int, ...]:
        return self.left_groupoid.arrows_from(self.theta[x])

    def right_admissible(self, x: int) -> tuple[int, ...]:
        return self.right_groupoid.arrows_to(self.sigma[x])

    @cached_property
    def left_action(self) -> GroupoidAction:
        return GroupoidAction(Side.LEFT, self.left_groupoid, self.carrier, self.theta, self.left_act, self.name)

    @cached_property
    def right_action(self) -> GroupoidAction:
        return GroupoidAction(Side.RIGHT, self.right_groupoid, self.carrier, self.sigma, self.right_act, self.name)

    def tables(self) -> tuple:
        return (self.carrier, self.theta, self.sigma,
                tuple(sorted(self.left_act.items())), tuple(sorted(self.right_act.items())))

    @classmethod
    def from_labels(cls, H: FiniteGroupoid, G: FiniteGroupoid, carrier: Sequence[str],
                    theta: Mapping[str, str], sigma: Mapping[str, str],
                    left: Mapping[tuple[str, str], str], right: Mapping[tuple[str, str], str],
                    fill_identities: bool = False, name: str = "") -> "Biset":
        la = GroupoidAction.from_labels(Side.LEFT, H, carrier, theta, left, fill_identities)
        ra = GroupoidAction.from_labels(Side.RIGHT, G, carrier, sigma, right, fill_identities)
        return cls(H, G, la.carrier, la.structure, ra.structure, la.act, ra.act, name)


def validate_biset(b: Biset) -> ValidationReport:
    rep = ValidationReport()
    lrep = validate_action(b.left_action)
    rrep = validate_action(b.right_action)
    rep.extend(lrep, "left:")
    rep.extend(rrep, "right:")
    rep.info = {"left": lrep.info, "right": rrep.info}
    if not rep.ok:
        return rep
    H, G = b.left_groupoid, b.right_groupoid
    lab = b.carrier
    for x in range(len(lab)):
        for g in b.right_admissible(x):
            if b.theta[b.right(x, g)] != b.theta[x]:
                rep.add("theta-invariant", f"theta(x.g) != theta(x) at x={lab[x]}, g={G.arrows[g]}",
                        lab[x], G.arrows[g])
        for h in b.left_admissible(x):
            if b.sigma[b.left(h, x)] != b.sigma[x]:
                rep.add("sigma-invariant", f"sigma(h.x) != sigma(x) at h={H.arrows[h]}, x={lab[x]}",
                        H.arrows[h], lab[x])
    if not rep.ok:
        return rep
    la, ra = b.left_act, b.right_act
    for x in range(len(lab)):
        hs = b.left_admissible(x)
        for g in b.right_admissible(x):
            xg = ra[(x, g)]
            for h in hs:
                if la[(h, xg)] != ra[(la[(h, x)], g)]:
                    rep.add("commute", f"h(xg) != (hx)g at h={H.arrows[h]}, x={lab[x]}, g={G.arrows[g]}",
                            H.arrows[h], lab[x], G.arrows[g])
    return rep


def require_biset(b: Biset) -> None:
    rep = validate_biset(b)
    if not rep.ok:
        v = rep.violations[0]
        raise InvalidBiset(f"{v.axiom}: {v.message}")


# ---------------------------------------------------------------------------
# biset <-> left set over H x G^op


def to_left_product_set(b: Biset) -> GroupoidAction:
    """Left action of ``H x G^op``: ``(h, g) . x = h(xg)``, structure ``(theta, sigma)``."""
    H, G = b.left_groupoid, b.right_groupoid
    P = product(H, opposite(G))
    nb = G.n_arrows
    ob = G.n_objects
    alpha = tuple(t * ob + s for t, s in zip(b.theta, b.sigma))
    act = {}
    for x in range(len(b.carrier)):
        hs = b.left_admissible(x)
        for g in b.right_admissible(x):
            xg = b.right(x, g)
            for h in hs:
                act[(h * nb + g, x)] = b.left(h, xg)
    return GroupoidAction(Side.LEFT, P, b.carrier, alpha, act, b.name)


def from_left_product_set(a: GroupoidAction) -> Biset:
    P = a.groupoid
    if a.side is not Side.LEFT or P.factors is None:
        raise NotProductGroupoid("expected a left action of a product H x G^op")
    H, Gop = P.factors
    G = opposite(Gop)
    nb, ob = G.n_arrows, G.n_objects
    theta = tuple(o // ob for o in a.structure)
    sigma = tuple(o % ob for o in a.structure)
    left, right = {}, {}
    for x in range(len(a.carrier)):
        eg = G.ident[sigma[x]]
        for h in H.arrows_from(theta[x]):
            left[(h, x)] = a.act[(h * nb + eg, x)]
        eh = H.ident[theta[x]]
        for g in G.arrows_to(sigma[x]):
            right[(x, g)] = a.act[(eh * nb + g, x)]
    return Biset(H, G, a.carrier, theta, sigma, left, right, a.name)


# ---------------------------------------------------------------------------
# orbits


def two_sided_translation(b: Biset, check: bool = True) -> FiniteGroupoid:
    """Arrows ``(h, x, g)`` from ``x`` to ``h x g^-1``; ``(h,x,g)(h',x',g') = (hh', x', gg')``."""
    if check:
        require_biset(b)
    H, G = b.left_groupoid, b.right_groupoid
    trip = [(h, x, g) for x in range(len(b.carrier))
            for h in b.left_admissible(x) for g in G.arrows_from(b.sigma[x])]
    index = {t: k for k, t in enumerate(trip)}

    def end(h, x, g):
        return b.left(h, b.right(x, G.inv[g]))

    labels = tuple(tuple_label(H.arrows[h], b.carrier[x], G.arrows[g]) for h, x, g in trip)
    src = tuple(x for _, x, _ in trip)
    tgt = tuple(end(*t) for t in trip)
    ident = tuple(index[(H.ident[b.theta[x]], x, G.ident[b.sigma[x]])] for x in range(len(b.carrier)))
    inv = tuple(index[(H.inv[h], end(h, x, g), G.inv[g])] for h, x, g in trip)
    by_target: dict[int, list[int]] = {}
    for k, t in enumerate(tgt):
        by_target.setdefault(t, []).append(k)
    comp = {}
    for k, (h, x, g) in enumerate(trip):
        for k2 in by_target.get(x, ()):
            h2, x2, g2 = trip[k2]
            comp[(k, k2)] = index[(H.mul(h, h2), x2, G.mul(g, g2))]
    return FiniteGroupoid(b.carrier, labels, src, tgt, ident, inv, comp)


def double_orbits(b: Biset) -> Partition:
    """Partition of the carrier into (H, G)-orbits; reps are minimal indices."""
    def nbrs(x):
        for h in b.left_admissible(x):
            yield b.left(h, x)
        for g in b.right_admissible(x):
            yield b.right(x, g)
    return partition_from_neighbours(len(b.carrier), nbrs)


DoubleOrbitPartition = Partition


def quotient_actions(b: Biset) -> tuple[GroupoidAction, GroupoidAction]:
    """Right G-action on H\\X and left H-action on X/G, checked on every representative."""
    lpart, _ = orbits(b.left_action)
    rpart, _ = orbits(b.right_action)
    G, H = b.right_groupoid, b.left_groupoid

    def build(part: Partition, side: Side, structure, moves, groupoid):
        blk = part.block_of
        labels = tuple("[" + b.carrier[r] + "]" for r in part.reps)
        struct = tuple(structure[r] for r in part.reps)
        act = {}
        for i, block in enumerate(part.blocks):
            for x in block:
                for g, y in moves(x):
                    key = (i, g) if side is Side.RIGHT else (g, i)
                    prev = act.setdefault(key, blk[y])
                    if prev != blk[y]:
                        raise InvalidBiset(f"quotient action not well defined at {b.carrier[x]}")
        return GroupoidAction(side, groupoid, labels, struct, act)

    right_q = build(lpart, Side.RIGHT, b.sigma,
                    lambda x: ((g, b.right(x, g)) for g in b.right_admissible(x)), G)
    left_q = build(rpart, Side.LEFT, b.theta,
                   lambda x: ((h, b.left(h, x)) for h in b.left_admissible(x)), H)
    return right_q, left_q


# ---------------------------------------------------------------------------
# constructions


def regular_biset(G: FiniteGroupoid) -> Biset:
    """Arrows of G with multiplication on both sides; theta = t, sigma = s."""
    left = {(h, x): G.mul(h, x) for x in range(G.n_arrows) for h in G.arrows_from(G.tgt[x])}
    right = {(x, g): G.mul(x, g) for x in range(G.n_arrows) for g in G.arrows_to(G.src[x])}
    return Biset(G, G, G.arrows, G.tgt, G.src, left, right, name=f"reg({G.name})" if G.name else "reg")


def double_coset_biset(H: FiniteGroupoid, A: Subgroupoid, B: Subgroupoid) -> Biset:
    """Arrows ``h`` of H with ``t(h)`` in A and ``s(h)`` in B, acted on by A and B."""
    if A.parent is not H or B.parent is not H:
        raise MalformedParams("subgroupoids must live in the given groupoid")
    require_subgroupoid(A)
    require_subgroupoid(B)
    GA, GB = A.as_groupoid(), B.as_groupoid()
    elems = [h for h in range(H.n_arrows) if H.tgt[h] in A.objs and H.src[h] in B.objs]
    idx = {h: i for i, h in enumerate(elems)}
    carrier = tuple(tuple_label(H.objects[H.tgt[h]], H.arrows[h], H.objects[H.src[h]]) for h in elems)
    theta = tuple(GA.obj(H.objects[H.tgt[h]]) for h in elems)
    sigma = tuple(GB.obj(H.objects[H.src[h]]) for h in elems)
    a_arr = [H.arr(lab) for lab in GA.arrows]
    b_arr = [H.arr(lab) for lab in GB.arrows]
    left, right = {}, {}
    for i, h in enumerate(elems):
        for r in GA.arrows_from(theta[i]):
            left[(r, i)] = idx[H.mul(a_arr[r], h)]
        for q in GB.arrows_to(sigma[i]):
            right[(i, q)] = idx[H.mul(h, b_arr[q])]
    return Biset(GA, GB, carrier, theta, sigma, left, right)


def morphism_induced_bisets(phi: GroupoidMorphism) -> tuple[Biset, Biset]:
    """The (H, G)-biset on ``H0 x_{phi,t} G1`` and the (G, H)-biset on ``G1 x_{s,phi} H0``."""
    rep = check_morphism(phi)
    if not rep.ok:
        raise InvalidMorphism(rep.violations[0].message)
    H, G = phi.dom, phi.cod
    f0, f1 = phi.obj_map, phi.arr_map

    first = [(u, g) for u in range(H.n_objects) for g in G.arrows_to(f0[u])]
    i1 = {p: k for k, p in enumerate(first)}
    left1, right1 = {}, {}
    for k, (u, g) in enumerate(first):
        for h in H.arrows_from(u):
            left1[(h, k)] = i1[(H.tgt[h], G.mul(f1[h], g))]
        for g2 in G.arrows_to(G.src[g]):
            right1[(k, g2)] = i1[(u, G.mul(g, g2))]
    b1 = Biset(H, G, tuple(tuple_label(H.objects[u], G.arrows[g]) for u, g in first),
               tuple(u for u, _ in first), tuple(G.src[g] for _, g in first), left1, right1)

    second = [(g, u) for u in range(H.n_objects) for g in G.arrows_from(f0[u])]
    i2 = {p: k for k, p in enumerate(second)}
    left2, right2 = {}, {}
    for k, (g, u) in enumerate(second):
        for h in H.arrows_to(u):
            right2[(k, h)] = i2[(G.mul(g, f1[h]), H.src[h])]
        for g2 in G.arrows_from(G.tgt[g]):
            left2[(g2, k)] = i2[(G.mul(g2, g), u)]
    b2 = Biset(G, H, tuple(tuple_label(G.arrows[g], H.objects[u]) for g, u in second),
               tuple(G.tgt[g] for g, _ in second), tuple(u for _, u in second), left2, right2)
    return b1, b2


def disjoint_union(parts: Sequence[Biset], tags: Sequence[str] | None = None,
                   H: FiniteGroupoid | None = None, G: FiniteGroupoid | None = None) -> tuple[Biset, list[int]]:
    """Tagged disjoint union; returns the union and each part's carrier offset."""
    if parts:
        H = H or parts[0].left_groupoid
        G = G or parts[0].right_groupoid
    if H is None or G is None:
        raise MalformedParams("empty union needs explicit groupoids")
    if any(p.left_groupoid is not H or p.right_groupoid is not G for p in parts):
        raise MalformedParams("all parts must be bisets over the same pair of groupoids")
    tags = list(tags) if tags is not None else [str(i) for i in range(len(parts))]
    carrier, theta, sigma, left, right, offsets = [], [], [], {}, {}, []
    for tag, p in zip(tags, parts):
        off = len(carrier)
        offsets.append(off)
        carrier.extend(f"{tag}:{lab}" for lab in p.carrier)
        theta.extend(p.theta)
        sigma.extend(p.sigma)
        left.update({(h, x + off): y + off for (h, x), y in p.left_act.items()})
        right.update({(x + off, g): y + off for (x, g), y in p.right_act.items()})
    return Biset(H, G, tuple(carrier), tuple(theta), tuple(sigma), left, right), offsets


@dataclass(frozen=True, eq=False)
class BisetMap:
    dom: Biset
    cod: Biset
    map: tuple[int, ...]

    def is_bijective(self) -> bool:
        return len(self.map) == len(self.cod.carrier) and len(set(self.map)) == len(self.map)


def check_biset_map(f: BisetMap) -> ValidationReport:
    A, B = f.dom, f.cod
    rep = ValidationReport()
    if A.left_groupoid is not B.left_groupoid or A.right_groupoid is not B.right_groupoid:
        rep.add("compatibility", "bisets over different groupoids")
        return rep
    if len(f.map) != len(A.carrier) or any(not 0 <= y < len(B.carrier) for y in f.map):
        rep.add("table-sizes", "map not sized to the domain or out of range")
        return rep
    for x, fx in enumerate(f.map):
        if B.theta[fx] != A.theta[x] or B.sigma[fx] != A.sigma[x]:
            rep.add("structure", f"structure maps not preserved at {A.carrier[x]}", A.carrier[x])
            continue
        for h in A.left_admissible(x):
            if f.map[A.left(h, x)] != B.left(h, fx):
                rep.add("left-action", f"f(hx) != h f(x) at {A.carrier[x]}", A.carrier[x],
                        A.left_groupoid.arrows[h])
        for g in A.right_admissible(x):
            if f.map[A.right(x, g)] != B.right(fx, g):
                rep.add("right-action", f"f(xg) != f(x) g at {A.carrier[x]}", A.carrier[x],
                        A.right_groupoid.arrows[g])
    rep.info["bijective"] = f.is_bijective()
    return rep
