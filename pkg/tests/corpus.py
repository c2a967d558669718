"""Fixture corpus shared by the test modules."""
from __future__ import annotations

import random
from functools import lru_cache

from gkit.actions import GroupoidAction, Side, regular_action, restrict_action
from gkit.bisets import Biset, disjoint_union, double_coset_biset, morphism_induced_bisets, regular_biset
from gkit.cosets import coset_space
from gkit.generate import RandomConfig, random_instance, random_wide_subgroupoid
from gkit.groupoid import (
    FiniteGroupoid,
    GroupoidMorphism,
    Subgroupoid,
    action_groupoid,
    cyclic_group,
    eqrel,
    fibre,
    induced,
    one_object_group,
    opposite,
    pairs,
    product,
    trivial,
)
from gkit.mackey import left_quotient_biset, mackey_sides
from gkit.tensor import tensor_product


def klein() -> FiniteGroupoid:
    els = ["e", "a", "b", "ab"]
    return one_object_group(els, [[i ^ j for j in range(4)] for i in range(4)], name="V4")


def s3() -> FiniteGroupoid:
    from itertools import permutations

    perms = list(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
    return one_object_group(["".join(map(str, p)) for p in perms], table, name="S3")


@lru_cache(maxsize=None)
def groupoids() -> tuple[FiniteGroupoid, ...]:
    C2, C3 = cyclic_group(2, name="C2"), cyclic_group(3, name="C3")
    P2 = pairs(["x", "y"], name="P2")
    E = eqrel(["a", "b", "c"], [["a", "b"], ["c"]], name="E")
    cyc = {"p": "q", "q": "r", "r": "p", "s": "s"}
    act = {}
    for x in cyc:
        y = x
        for g in C3.arrows:
            act[(x, g)] = y
            y = cyc[y]
    C3_on = action_groupoid(C3, list(cyc), act, name="AG")
    return (
        trivial(["u", "v"], name="T2"),
        P2,
        pairs(["1", "2", "3"], name="P3"),
        E,
        fibre(["a", "b", "c", "d"], {"a": 0, "b": 0, "c": 1, "d": 1}, name="F"),
        C2,
        C3,
        cyclic_group(4, name="C4"),
        klein(),
        s3(),
        C3_on,
        induced(C2, ["m", "n"], {"m": "*", "n": "*"}, name="IC2"),
        product(C2, P2),
        product(E, C2),
        opposite(E),
    )


def subgroupoids(G: FiniteGroupoid, seed: int = 0) -> list[Subgroupoid]:
    rng = random.Random(f"corpus:{G.name}:{seed}")
    subs = [Subgroupoid.identities(G, name="I"), Subgroupoid.full(G, name="F")]
    for k in range(2):
        s = random_wide_subgroupoid(rng, G)
        subs.append(Subgroupoid(s.parent, s.objs, s.arrs, name=f"W{k}"))
    out, seen = [], set()
    for s in subs:
        if s.arrs not in seen:
            seen.add(s.arrs)
            out.append(s)
    return out


def rotation_action() -> GroupoidAction:
    """C4 acting on the corners of a square and its two diagonals."""
    C4 = groupoids()[7]
    carrier = ["0", "1", "2", "3", "d0", "d1"]
    act = {}
    for g, k in zip(C4.arrows, range(4)):
        for i in range(4):
            act[(str(i), g)] = str((i + k) % 4)
        for i in range(2):
            act[(f"d{i}", g)] = f"d{(i + k) % 2}"
    return GroupoidAction.from_labels("right", C4, carrier, {x: "*" for x in carrier}, act, name="square")


def nonsurjective_fixture(s_prime=("a",), classes=(("a",), ("b", "c"))) -> GroupoidAction:
    """``X = S' x_{tau,t} R`` for an equivalence relation R on S = {a, b, c}.

    Elements are pairs ``(s', r)`` with ``t(r) = s'``, acted on by R from the
    right; the structure map is ``s(r)``.
    """
    R = eqrel(["a", "b", "c"], [list(c) for c in classes], name="R")
    carrier, structure, act = [], {}, {}
    for sp in s_prime:
        for r in range(R.n_arrows):
            if R.objects[R.tgt[r]] == sp:
                lab = f"({sp},{R.arrows[r]})"
                carrier.append(lab)
                structure[lab] = R.objects[R.src[r]]
    for sp in s_prime:
        for r in range(R.n_arrows):
            if R.objects[R.tgt[r]] != sp:
                continue
            for g in R.arrows_to(R.src[r]):
                act[(f"({sp},{R.arrows[r]})", R.arrows[g])] = f"({sp},{R.arrows[R.mul(r, g)]})"
    return GroupoidAction.from_labels("right", R, carrier, structure, act, name="nonsurjective")


@lru_cache(maxsize=None)
def actions() -> tuple[GroupoidAction, ...]:
    out: list[GroupoidAction] = []
    for G in groupoids():
        out.append(regular_action(G, Side.RIGHT))
        out.append(regular_action(G, Side.LEFT))
        for H in subgroupoids(G)[1:]:
            for side in (Side.RIGHT, Side.LEFT):
                out.append(coset_space(G, H, side).action)
    sq = rotation_action()
    out += [sq, restrict_action(sq, ["d0", "d1"], name="diagonals"), nonsurjective_fixture(),
            nonsurjective_fixture(("a", "c"), (("a", "c"), ("b",)))]
    return tuple(out)


@lru_cache(maxsize=None)
def small_instances(count: int = 12):
    cfg = RandomConfig(11, max_objects=2, max_group_order=3)
    return tuple(random_instance(cfg, i) for i in range(count))


@lru_cache(maxsize=None)
def bisets() -> tuple[Biset, ...]:
    out: list[Biset] = []
    gs = groupoids()
    for G in gs:
        out.append(regular_biset(G))
    for G in (gs[1], gs[3], gs[6], gs[12]):
        subs = subgroupoids(G)
        out.append(double_coset_biset(G, subs[0], subs[-1]))
        out.append(double_coset_biset(G, subs[-1], subs[1]))
    C2, C4 = gs[5], gs[7]
    sq = GroupoidMorphism.from_labels(C4, C2, {"*": "*"}, {"e": "e", "c": "c", "c2": "e", "c3": "c"})
    out += list(morphism_induced_bisets(sq))
    E = gs[3]
    proj = GroupoidMorphism.from_labels(E, gs[0], {"a": "u", "b": "u", "c": "v"},
                                        {a: "1_v" if a == "(c,c)" else "1_u" for a in E.arrows})
    out += list(morphism_induced_bisets(proj))
    for inst in small_instances(8):
        out.append(left_quotient_biset(inst.m))
        out.append(left_quotient_biset(inst.l))
    out.append(disjoint_union([regular_biset(gs[6]), regular_biset(gs[6])], ["p", "q"])[0])
    return tuple(out)


@lru_cache(maxsize=None)
def tensor_pairs() -> tuple[tuple[Biset, Biset], ...]:
    gs = groupoids()
    out = []
    for G in (gs[1], gs[3], gs[5], gs[6], gs[12]):
        R = regular_biset(G)
        out.append((R, R))
        H = subgroupoids(G)[-1]
        D = double_coset_biset(G, Subgroupoid.full(G), H)
        # D is a (G', H')-biset over fresh groupoids; pair it with regular bisets on both sides
        out.append((regular_biset(D.left_groupoid), D))
        out.append((D, regular_biset(D.right_groupoid)))
    for inst in small_instances(12):
        s = mackey_sides(inst)
        out.append((s.V, s.U))
    return tuple(out)


def small_tensor_pairs(bound: int = 12):
    for X, Y in tensor_pairs():
        tp = tensor_product(X, Y)
        if len(tp) <= bound:
            yield X, Y, tp


def relation_instance(K_set, H_set, G_set, R_classes, Q_classes):
    """Mackey instance over pairs groupoids from equivalence relations R on K x H and Q on H x G.

    Classes are given as lists of ``(k, h)`` / ``(h, g)`` label pairs.
    """
    from gkit.mackey import MackeyInstance

    K, H, G = pairs(K_set, name="K"), pairs(H_set, name="H"), pairs(G_set, name="G")

    def sub(A, B, classes, name):
        cls = {p: i for i, c in enumerate(classes) for p in c}
        P = product(A, B)
        arrows = [f"(({a},{a2}),({b},{b2}))" for a in A.objects for a2 in A.objects for b in B.objects
                  for b2 in B.objects if cls[(a, b)] == cls[(a2, b2)]]
        return Subgroupoid.from_labels(P, arrows, wide=True, name=name)

    return MackeyInstance(K, H, G, sub(K, H, R_classes, "M"), sub(H, G, Q_classes, "L"), name="relation")


def full_identity_instance():
    """Pairs groupoids with R the full relation on K x H and Q the identity relation on H x G."""
    K, H, G = ["k1", "k2"], ["h1", "h2", "h3"], ["g1", "g2"]
    R = [[(k, h) for k in K for h in H]]
    Q = [[(h, g)] for h in H for g in G]
    return relation_instance(K, H, G, R, Q)
