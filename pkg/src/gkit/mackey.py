"""Mackey formula for groupoid-bisets, checked element by element.

For groupoids K, H, G and wide subgroupoids M <= K x H, L <= H x G the
tensor product ``(K x H / M)^L (x)_H (H x G / L)^L`` is compared with the
disjoint union, over orbit representatives ``(w, u, h, v, a)`` of the
(M, L)-biset X, of ``(K x G / D)^L`` where ``D`` is the star product of
``M^(w,u)`` with the conjugate ``(h, 1_a) L^(v,a) (h, 1_a)^-1``.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Callable

from .actions import Side
from .bisets import (
    Biset,
    BisetMap,
    check_biset_map,
    disjoint_union,
    double_orbits,
    validate_biset,
)
from .common import Partition, tuple_label
from .cosets import CosetSpace, coset_space
from .errors import (
    EndpointMismatch,
    GroupoidMismatch,
    InvalidSubgroupoid,
    MiddleGroupoidMismatch,
    MiddleNotOneObject,
    NotProductGroupoid,
    NotWide,
    UnknownElement,
)
from .groupoid import (
    FiniteGroupoid,
    Subgroupoid,
    opposite,
    product,
    reversed_groupoid,
    subgroupoid_check,
)
from .tensor import TensorProductBiset, tensor_product


@dataclass(frozen=True, eq=False)
class MackeyInstance:
    k: FiniteGroupoid
    h: FiniteGroupoid
    g: FiniteGroupoid
    m: Subgroupoid
    l: Subgroupoid
    name: str = ""
    meta: dict = field(default_factory=dict, repr=False)


def check_instance(inst: MackeyInstance) -> None:
    """Raise unless the theorem's hypotheses hold for ``inst``."""
    for sub, (a, b), nm in ((inst.m, (inst.k, inst.h), "M"), (inst.l, (inst.h, inst.g), "L")):
        if sub.parent.factors is None or sub.parent.factors[0] is not a or sub.parent.factors[1] is not b:
            raise GroupoidMismatch(f"{nm} must be a subgroupoid of the product of its two groupoids")
        rep = subgroupoid_check(sub)
        if not rep.ok:
            raise InvalidSubgroupoid(f"{nm}: {rep.violations[0].message}")
        if not sub.wide:
            raise NotWide(f"{nm} must contain every object of its product")


def _factors(P: FiniteGroupoid):
    if P.factors is None:
        raise NotProductGroupoid("expected a subgroupoid of a product groupoid")
    return P.factors


def star_product(m: Subgroupoid, l: Subgroupoid) -> Subgroupoid:
    """Pairs ``(k, g)`` linked through some ``h`` with ``(k, h)`` in M and ``(h, g)`` in L.

    The middle groupoid must have one object, or both subgroupoids must
    each touch a single middle object (the isotropy situation).
    """
    PM, PL = m.parent, l.parent
    K, H = _factors(PM)
    H2, G = _factors(PL)
    if H is not H2:
        raise MiddleGroupoidMismatch("M and L do not share the middle groupoid")
    mid_m = {PM.split_object(o)[1] for o in m.objs}
    mid_l = {PL.split_object(o)[0] for o in l.objs}
    if H.n_objects != 1 and (len(mid_m) > 1 or len(mid_l) > 1):
        raise MiddleNotOneObject("star product needs a one-object middle groupoid")
    via_m: dict[int, set[int]] = defaultdict(set)
    for p in m.arrs:
        k, h = PM.split_arrow(p)
        via_m[h].add(k)
    via_l: dict[int, set[int]] = defaultdict(set)
    for p in l.arrs:
        h, g = PL.split_arrow(p)
        via_l[h].add(g)
    P = product(K, G)
    arrs = {P.pair_arrow(k, g) for h in via_m.keys() & via_l.keys() for k in via_m[h] for g in via_l[h]}
    om: dict[int, set[int]] = defaultdict(set)
    for o in m.objs:
        v, u = PM.split_object(o)
        om[u].add(v)
    ol: dict[int, set[int]] = defaultdict(set)
    for o in l.objs:
        u, a = PL.split_object(o)
        ol[u].add(a)
    objs = {P.pair_object(v, a) for u in om.keys() & ol.keys() for v in om[u] for a in ol[u]}
    return Subgroupoid(P, frozenset(objs), frozenset(arrs))


def isotropy_of(sub: Subgroupoid, obj: int) -> Subgroupoid:
    """Loops of ``sub`` at ``obj`` as a one-object subgroupoid of the same parent."""
    return Subgroupoid(sub.parent, frozenset([obj]), frozenset(sub.loops(obj)))


def conjugated_isotropy(l: Subgroupoid, h: int, a: int) -> Subgroupoid:
    """Conjugate of the loops of L at ``(s(h), a)`` by ``c = (h, 1_a)``.

    Each loop ``z`` becomes ``c z c^-1``, a loop at ``(t(h), a)``.
    """
    P = l.parent
    H, G = _factors(P)
    base = P.pair_object(H.src[h], a)
    if base not in l.objs:
        raise EndpointMismatch(f"({H.objects[H.src[h]]},{G.objects[a]}) is not an object of L")
    c = P.pair_arrow(h, G.ident[a])
    ci = P.inv[c]
    arrs = frozenset(P.mul(P.mul(c, z), ci) for z in l.loops(base))
    return Subgroupoid(P, frozenset([P.pair_object(H.tgt[h], a)]), arrs)


def left_quotient(l: Subgroupoid, check: bool = True) -> tuple[Biset, CosetSpace]:
    """Left cosets of ``A x B`` by ``l`` as an (A, G)-biset, with the coset space.

    ``B`` is either ``G`` or ``G^op``.  Left action ``h1 [(h, g)] = [(h1 h, g)]``.
    Right action ``[(h, g)] g1 = [(h, g1^-1 g)]`` when ``B = G`` and
    ``[(h, g)] g1 = [(h, g g1)]`` (composition in G) when ``B = G^op``.
    Structure maps read off the target of a representative.
    """
    P = l.parent
    A, B = _factors(P)
    op = B.opposite_of is not None
    G = B.opposite_of if op else B
    space = coset_space(P, l, Side.LEFT, check=check)
    nB, oB = B.n_arrows, B.n_objects
    reps = [space.raw[blk[0]] for blk in space.partition.blocks]
    theta, sigma = [], []
    for p, _ in reps:
        ta, tb = divmod(P.tgt[p], oB)
        theta.append(ta)
        sigma.append(tb)
    act = space.action.act
    left, right = {}, {}
    for c in range(len(reps)):
        ta, tb = theta[c], sigma[c]
        eB, eA = B.ident[tb], A.ident[ta]
        for h1 in A.arrows_from(ta):
            left[(h1, c)] = act[(h1 * nB + eB, c)]
        for g1 in G.arrows_to(tb):
            q = g1 if op else B.inv[g1]
            right[(c, g1)] = act[(eA * nB + q, c)]
    b = Biset(A, G, space.action.carrier, tuple(theta), tuple(sigma), left, right, name=l.name)
    return b, space


def left_quotient_biset(l: Subgroupoid) -> Biset:
    return left_quotient(l)[0]


# ---------------------------------------------------------------------------
# biset stabilizers


def stabilizer_subgroupoids(b: Biset, x) -> tuple[Subgroupoid, Subgroupoid]:
    """``L_x = {(h, g): hx = xg}`` in H x G and ``K_x = {(h, g): h x g = x}`` in H x G^op."""
    x = b.elem(x)
    H, G = b.left_groupoid, b.right_groupoid
    P, Pop = product(H, G), product(H, opposite(G))
    t, s = b.theta[x], b.sigma[x]
    obj = P.pair_object(t, s)
    hs, gs = H.loops(t), G.loops(s)
    L = {P.pair_arrow(h, g) for h in hs for g in gs if b.left(h, x) == b.right(x, g)}
    K = {Pop.pair_arrow(h, g) for h in hs for g in gs if b.left(h, b.right(x, g)) == x}
    return (Subgroupoid(P, frozenset([obj]), frozenset(L), "Lx"),
            Subgroupoid(Pop, frozenset([obj]), frozenset(K), "Kx"))


def phi_x_map(b: Biset, x) -> tuple[BisetMap, bool]:
    """The map ``[(h, g)]K_x -> [(h, g^-1)]L_x`` and whether it is well defined."""
    Lx, Kx = stabilizer_subgroupoids(b, x)
    BL, SL = left_quotient(Lx, check=False)
    BK, SK = left_quotient(Kx, check=False)
    G = b.right_groupoid
    P = Lx.parent
    Pop = Kx.parent
    consistent = True
    fmap = []
    for blk in SK.partition.blocks:
        images = set()
        for i in blk:
            p, o = SK.raw[i]
            h, g = Pop.split_arrow(p)
            images.add(SL.class_of((P.pair_arrow(h, G.inv[g]), o)))
        if len(images) != 1:
            consistent = False
        fmap.append(min(images))
    return BisetMap(BK, BL, tuple(fmap)), consistent


def phi_x_check(b: Biset, x) -> bool:
    f, consistent = phi_x_map(b, x)
    return consistent and f.is_bijective() and check_biset_map(f).ok


# ---------------------------------------------------------------------------
# the (M, L)-biset X


@dataclass(frozen=True, eq=False)
class MackeyX:
    biset: Biset
    elems: tuple[tuple[int, int, int, int, int], ...]
    index: dict

    def find(self, w: int, h: int, a: int) -> int:
        return self.index[(w, h, a)]


def mackey_X(inst: MackeyInstance) -> MackeyX:
    """Carrier ``(w, u, h, v, a)`` with ``u = t(h)``, ``v = s(h)``.

    ``(k, h1)(w, u, h, v, a) = (t(k), t(h1), h1 h, v, a)`` and
    ``(w, u, h, v, a)(h2, g) = (w, u, h h2, s(h2), s(g))``.
    """
    m, l = inst.m, inst.l
    if not (m.wide and l.wide):
        raise NotWide("M and L must be wide")
    K, H, G = inst.k, inst.h, inst.g
    PM, PL = m.parent, l.parent
    Mg, Lg = m.as_groupoid(name="M"), l.as_groupoid(name="L")
    m_arr, l_arr = sorted(m.arrs), sorted(l.arrs)
    elems = tuple((w, H.tgt[h], h, H.src[h], a)
                  for w in range(K.n_objects) for h in range(H.n_arrows) for a in range(G.n_objects))
    index = {(w, h, a): i for i, (w, _, h, _, a) in enumerate(elems)}
    theta = tuple(PM.pair_object(w, u) for w, u, _, _, _ in elems)
    sigma = tuple(PL.pair_object(v, a) for _, _, _, v, a in elems)
    left, right = {}, {}
    for i, (w, u, h, v, a) in enumerate(elems):
        for j in Mg.arrows_from(theta[i]):
            k, h1 = PM.split_arrow(m_arr[j])
            left[(j, i)] = index[(K.tgt[k], H.mul(h1, h), a)]
        for j in Lg.arrows_to(sigma[i]):
            h2, g = PL.split_arrow(l_arr[j])
            right[(i, j)] = index[(w, H.mul(h, h2), G.src[g])]
    labels = tuple(tuple_label(K.objects[w], H.objects[u], H.arrows[h], H.objects[v], G.objects[a])
                   for w, u, h, v, a in elems)
    return MackeyX(Biset(Mg, Lg, labels, theta, sigma, left, right, name="X"), elems, index)


def mackey_X_biset(inst: MackeyInstance) -> Biset:
    return mackey_X(inst).biset


# ---------------------------------------------------------------------------
# both sides


@dataclass(frozen=True, eq=False)
class Summand:
    rep: int
    rep_tuple: tuple[int, int, int, int, int]
    label: str
    denominator: Subgroupoid
    biset: Biset
    space: CosetSpace


@dataclass(eq=False)
class MackeySides:
    inst: MackeyInstance
    V: Biset
    V_space: CosetSpace
    U: Biset
    U_space: CosetSpace
    lhs: TensorProductBiset
    X: MackeyX
    x_orbits: Partition
    summands: list[Summand]
    rhs: Biset
    offsets: list[int]


def _summand(inst: MackeyInstance, X: MackeyX, r: int) -> Summand:
    m, l = inst.m, inst.l
    PM = m.parent
    w, u, h, v, a = X.elems[r]
    Mi = isotropy_of(m, PM.pair_object(w, u))
    Lc = conjugated_isotropy(l, h, a)
    D = star_product(Mi, Lc)
    S, space = left_quotient(D, check=False)
    return Summand(r, (w, u, h, v, a), X.biset.carrier[r], D, S, space)


def mackey_sides(inst: MackeyInstance, mutate: Callable[[list], list] | None = None,
                 check: bool = True) -> MackeySides:
    if check:
        check_instance(inst)
    V, Vs = left_quotient(inst.m, check=False)
    U, Us = left_quotient(inst.l, check=False)
    lhs = tensor_product(V, U)
    X = mackey_X(inst)
    xpart = double_orbits(X.biset)
    summands = [_summand(inst, X, r) for r in xpart.reps]
    if mutate is not None:
        summands = list(mutate(list(summands)))
    rhs, offsets = disjoint_union([s.biset for s in summands], [f"x{s.rep}" for s in summands],
                                  H=inst.k, G=inst.g)
    return MackeySides(inst, V, Vs, U, Us, lhs, X, xpart, summands, rhs, offsets)


# ---------------------------------------------------------------------------
# maps and verification


def _phi_raw(sides: MackeySides, iv: int, iu: int) -> int:
    """X-orbit of ``(w, u, h^-1 h', v, a)`` for raw V pair ``iv`` and raw U pair ``iu``."""
    inst = sides.inst
    H = inst.h
    PM, PL = inst.m.parent, inst.l.parent
    p, o = sides.V_space.raw[iv]
    q, o2 = sides.U_space.raw[iu]
    _, h = PM.split_arrow(p)
    w, _ = PM.split_object(o)
    h2, _ = PL.split_arrow(q)
    _, a = PL.split_object(o2)
    x = sides.X.find(w, H.mul(H.inv[h], h2), a)
    return sides.x_orbits.block_of[x]


def _psi_elem(sides: MackeySides, r: int) -> int:
    """Tensor class of ``[(1_w, 1_u)]M (x) [(h, 1_a)]L`` for X element ``r``."""
    inst = sides.inst
    K, H, G = inst.k, inst.h, inst.g
    PM, PL = inst.m.parent, inst.l.parent
    w, u, h, v, a = sides.X.elems[r]
    cv = sides.V_space.class_of((PM.pair_arrow(K.ident[w], H.ident[u]), PM.pair_object(w, u)))
    cu = sides.U_space.class_of((PL.pair_arrow(h, G.ident[a]), PL.pair_object(v, a)))
    return sides.lhs.class_of(cv, cu)


@dataclass(frozen=True)
class MackeyMaps:
    phi: dict[int, int]      # lhs orbit -> X orbit
    psi: dict[int, int]      # X orbit -> lhs orbit
    lhs_orbits: Partition
    phi_well_defined: bool
    psi_well_defined: bool
    psi_elems: dict[int, int]  # X rep -> lhs element


def _maps(sides: MackeySides) -> MackeyMaps:
    lhs = sides.lhs
    lpart = double_orbits(lhs.result)
    Vb, Ub = sides.V_space.partition.blocks, sides.U_space.partition.blocks
    phi: dict[int, int] = {}
    phi_ok = True
    for i, (cv, cu) in enumerate(lhs.raw):
        orb = lpart.block_of[lhs.class_of_raw[i]]
        seen = {_phi_raw(sides, mv, Ub[cu][0]) for mv in Vb[cv]}
        seen |= {_phi_raw(sides, Vb[cv][0], mu) for mu in Ub[cu]}
        val = phi.setdefault(orb, min(seen))
        if seen != {val}:
            phi_ok = False
    psi: dict[int, int] = {}
    psi_elems: dict[int, int] = {}
    psi_ok = True
    xb = sides.x_orbits.block_of
    for r in range(len(sides.X.elems)):
        y = _psi_elem(sides, r)
        orb = xb[r]
        val = psi.setdefault(orb, lpart.block_of[y])
        if val != lpart.block_of[y]:
            psi_ok = False
    for r in sides.x_orbits.reps:
        psi_elems[r] = _psi_elem(sides, r)
    return MackeyMaps(phi, psi, lpart, phi_ok, psi_ok, psi_elems)


def mackey_maps(inst: MackeyInstance) -> tuple[dict[int, int], dict[int, int]]:
    """Orbit-level tables for phi (lhs orbits -> X orbits) and psi (its inverse)."""
    mp = _maps(mackey_sides(inst))
    return mp.phi, mp.psi


@dataclass
class MackeyReport:
    lhs: TensorProductBiset
    rhs: Biset
    summands: list[Summand]
    phi: dict[int, int]
    psi: dict[int, int]
    class_map: tuple[int | None, ...]
    checks: dict[str, bool]
    sizes: dict[str, object]
    verdict: bool
    counterexample: dict | None = None
    sides: MackeySides | None = field(default=None, repr=False)


def _class_level(sides: MackeySides, mp: MackeyMaps):
    """Send ``z = k y g`` in the orbit of ``y = psi(x)`` to ``[(k, g^-1)]D_x``."""
    inst = sides.inst
    K, G = inst.k, inst.g
    lhs = sides.lhs.result
    P = product(K, G)
    n = len(lhs.carrier)
    cmap: list[int | None] = [None] * n
    stab_ok = True
    stab_bad = None
    for idx, s in enumerate(sides.summands):
        off = sides.offsets[idx]
        w, _, _, _, a = s.rep_tuple
        y = mp.psi_elems.get(s.rep)
        if y is None:
            continue
        Ly, _ = stabilizer_subgroupoids(lhs, y)
        if Ly.arrs != s.denominator.arrs:
            stab_ok = False
            stab_bad = stab_bad or s.label
        coords = {y: (K.ident[w], G.ident[a])}
        queue = deque([y])
        while queue:
            z = queue.popleft()
            k, g = coords[z]
            for k1 in lhs.left_admissible(z):
                z2 = lhs.left(k1, z)
                if z2 not in coords:
                    coords[z2] = (K.mul(k1, k), g)
                    queue.append(z2)
            for g1 in lhs.right_admissible(z):
                z2 = lhs.right(z, g1)
                if z2 not in coords:
                    coords[z2] = (k, G.mul(g, g1))
                    queue.append(z2)
        obj = P.pair_object(w, a)
        for z, (k, g) in coords.items():
            c = s.space.class_of((P.pair_arrow(k, G.inv[g]), obj))
            if cmap[z] is None:
                cmap[z] = off + c
    return tuple(cmap), stab_ok, stab_bad


def verify_mackey(inst: MackeyInstance, mutate: Callable[[list], list] | None = None,
                  independent: bool = True, validate: bool = True) -> MackeyReport:
    """Build both sides, the maps phi/psi and a class-level isomorphism, then certify.

    ``mutate`` may rewrite the list of right-hand summands before assembly
    (used to confirm that a broken right-hand side is rejected).
    """
    sides = mackey_sides(inst, mutate=mutate)
    mp = _maps(sides)
    lhs, rhs = sides.lhs.result, sides.rhs
    checks: dict[str, bool] = {}
    if validate:
        checks["lhs_valid"] = validate_biset(lhs).ok
        checks["rhs_valid"] = validate_biset(rhs).ok
        checks["x_valid"] = validate_biset(sides.X.biset).ok
    checks["cardinality"] = len(lhs.carrier) == len(rhs.carrier)
    checks["phi_well_defined"] = mp.phi_well_defined
    checks["psi_well_defined"] = mp.psi_well_defined
    n_lorb, n_xorb = len(mp.lhs_orbits), len(sides.x_orbits)
    checks["psi_phi_identity"] = len(mp.phi) == n_lorb and all(mp.psi.get(mp.phi[o]) == o for o in range(n_lorb))
    checks["phi_psi_identity"] = len(mp.psi) == n_xorb and all(mp.phi.get(mp.psi[o]) == o for o in range(n_xorb))
    rep_orbits = {sides.x_orbits.block_of[s.rep] for s in sides.summands}
    checks["summands_cover_orbits"] = rep_orbits == set(range(n_xorb)) and len(sides.summands) == n_xorb
    cmap, stab_ok, stab_bad = _class_level(sides, mp)
    checks["stabilizer_matches_denominator"] = stab_ok
    total = all(c is not None for c in cmap)
    bij = total and len(set(cmap)) == len(cmap) == len(rhs.carrier)
    checks["class_map_bijective"] = bij
    equiv = total and len(lhs.carrier) == len(cmap) and check_biset_map(BisetMap(lhs, rhs, cmap)).ok
    checks["class_map_equivariant"] = bool(equiv)
    if independent:
        checks["independent_isomorphism"] = biset_isomorphic(lhs, rhs)[0]
    verdict = all(checks.values())
    sizes = {
        "V": len(sides.V.carrier),
        "U": len(sides.U.carrier),
        "raw_pairs": len(sides.lhs.raw),
        "lhs": len(lhs.carrier),
        "X": len(sides.X.elems),
        "X_orbits": n_xorb,
        "lhs_orbits": n_lorb,
        "rhs": len(rhs.carrier),
        "summands": [len(s.biset.carrier) for s in sides.summands],
    }
    counter = None
    if not verdict:
        failed = [k for k, v in checks.items() if not v]
        counter = {"failed": failed}
        if "cardinality" in failed:
            counter["lhs_size"] = len(lhs.carrier)
            counter["rhs_size"] = len(rhs.carrier)
        if stab_bad is not None:
            counter["summand"] = stab_bad
        missing = [i for i, c in enumerate(cmap) if c is None]
        if missing:
            counter["unmapped_class"] = lhs.carrier[missing[0]]
    return MackeyReport(sides.lhs, rhs, sides.summands, mp.phi, mp.psi, cmap, checks, sizes,
                        verdict, counter, sides)


# ---------------------------------------------------------------------------
# independent isomorphism test


def _product_stabilizer(b: Biset, x: int) -> frozenset:
    """Arrows ``(h, g)`` of ``H x G^op`` at ``(theta(x), sigma(x))`` with ``h x g = x``."""
    H, G = b.left_groupoid, b.right_groupoid
    nb = G.n_arrows
    la, ra = b.left_act, b.right_act
    hs, gs = H.loops(b.theta[x]), G.loops(b.sigma[x])
    return frozenset(h * nb + g for g in gs for h in hs if la[(h, ra[(x, g)])] == x)


def biset_isomorphic(A: Biset, B: Biset) -> tuple[bool, BisetMap | None]:
    """Decide whether two (H, G)-bisets are isomorphic; return a witness if so.

    Viewed as left (H x G^op)-sets, both split into orbits, and an orbit is
    determined up to isomorphism by its base object and the stabilizer of
    one point.  An orbit of A matches an unused orbit of B of the same size
    when some element of the latter sits over the same object with the same
    stabilizer as A's representative; running through the whole orbit of B
    covers every conjugate.  The witness sends ``h x g`` to ``h y g``.
    """
    if A.left_groupoid is not B.left_groupoid or A.right_groupoid is not B.right_groupoid:
        raise GroupoidMismatch("bisets over different groupoids")
    if len(A.carrier) != len(B.carrier):
        return False, None
    pa, pb = double_orbits(A), double_orbits(B)
    stab_b: dict[int, frozenset] = {}

    def sb(y):
        if y not in stab_b:
            stab_b[y] = _product_stabilizer(B, y)
        return stab_b[y]

    used = [False] * len(pb)
    mapping: list[int | None] = [None] * len(A.carrier)
    for blk in pa.blocks:
        x = blk[0]
        sx = _product_stabilizer(A, x)
        base = (A.theta[x], A.sigma[x])
        found = None
        for j, bblk in enumerate(pb.blocks):
            if used[j] or len(bblk) != len(blk):
                continue
            for y in bblk:
                if (B.theta[y], B.sigma[y]) == base and sb(y) == sx:
                    found = (j, y)
                    break
            if found:
                break
        if found is None:
            return False, None
        j, y = found
        used[j] = True
        mapping[x] = y
        queue = deque([x])
        while queue:
            x1 = queue.popleft()
            y1 = mapping[x1]
            step = [(A.left(h, x1), B.left(h, y1)) for h in A.left_admissible(x1)]
            step += [(A.right(x1, g), B.right(y1, g)) for g in A.right_admissible(x1)]
            for x2, y2 in step:
                if mapping[x2] is None:
                    mapping[x2] = y2
                    queue.append(x2)
                elif mapping[x2] != y2:
                    return False, None
    f = BisetMap(A, B, tuple(mapping))
    if not f.is_bijective() or not check_biset_map(f).ok:
        return False, None
    return True, f


# ---------------------------------------------------------------------------
# instance helpers


def relabel_sub(sub: Subgroupoid, parent: FiniteGroupoid) -> Subgroupoid:
    """Same subgroupoid, by labels, inside another groupoid with the same labels."""
    P = sub.parent
    return Subgroupoid(parent, frozenset(parent.obj(P.objects[o]) for o in sub.objs),
                       frozenset(parent.arr(P.arrows[a]) for a in sub.arrs), sub.name)


def reversed_instance(inst: MackeyInstance) -> MackeyInstance:
    """The same instance with every object and arrow list reversed."""
    K, H, G = (reversed_groupoid(X) for X in (inst.k, inst.h, inst.g))
    return MackeyInstance(K, H, G, relabel_sub(inst.m, product(K, H)),
                          relabel_sub(inst.l, product(H, G)), inst.name, dict(inst.meta))

