import networkx as nx
import pytest

from corpus import actions, nonsurjective_fixture, rotation_action
from gkit.actions import (
    EquivariantMap,
    GroupoidAction,
    Side,
    action_check_groupoid,
    check_equivariant,
    embedding,
    invert_equivariant,
    orbits,
    regular_action,
    restrict_action,
    reversed_action,
    stabilizer,
    stabilizer_via_translation,
    translation_groupoid,
    validate_action,
)
from gkit.errors import NotBijective, NotInvariantSubset
from gkit.groupoid import check_morphism, connected_components, cyclic_group, pairs, trivial


def swap_action() -> GroupoidAction:
    C2 = cyclic_group(2)
    return GroupoidAction.from_labels("right", C2, ["1", "2", "3"], {"1": "*", "2": "*", "3": "*"},
                                      {("1", "c"): "2", ("2", "c"): "1", ("3", "c"): "3"}, fill_identities=True)


def nx_orbits(a: GroupoidAction):
    g = nx.Graph()
    g.add_nodes_from(range(len(a.carrier)))
    g.add_edges_from((x, y) for x in range(len(a.carrier)) for _, y in a.moves(x))
    return sorted(sorted(c) for c in nx.connected_components(g))


class TestValidate:
    def test_corpus(self):
        assert len(actions()) >= 50
        for a in actions():
            assert validate_action(a).ok, a.name

    def test_regular_right_action_pass(self):
        G = pairs(["a", "b", "c"])
        a = regular_action(G, Side.RIGHT)
        assert a.structure == G.src
        assert validate_action(a).ok

    def test_wrong_fibre(self):
        a = regular_action(pairs(["a", "b"]), Side.RIGHT)
        G = a.groupoid
        act = dict(a.act)
        x, g = G.arr("(a,b)"), G.arr("(b,b)")
        act[(x, g)] = G.arr("(a,a)")  # lands in fibre a, not s(g) = b
        rep = validate_action(GroupoidAction(Side.RIGHT, G, a.carrier, a.structure, act))
        assert "structure" in rep.axioms()

    def test_missing_entry(self):
        a = swap_action()
        act = dict(a.act)
        del act[(0, 1)]
        rep = validate_action(GroupoidAction(a.side, a.groupoid, a.carrier, a.structure, act))
        assert "domain" in rep.axioms()

    def test_nonsurjective_structure_map(self):
        a = nonsurjective_fixture()
        rep = validate_action(a)
        assert rep.ok
        assert rep.info["surjective"] is False
        assert "b" in rep.info["missing"]

    def test_translation_groupoid_is_groupoid(self):
        for a in actions()[:30]:
            assert action_check_groupoid(a).ok


class TestTranslation:
    def test_trivial(self):
        a = regular_action(trivial(["x"]), Side.RIGHT)
        T, _ = translation_groupoid(a)
        assert (T.n_objects, T.n_arrows) == (1, 1)

    def test_swap(self):
        T, phi = translation_groupoid(swap_action())
        assert (T.n_objects, T.n_arrows) == (3, 6)
        assert connected_components(T).labelled(T.objects) == [["1", "2"], ["3"]]
        assert check_morphism(phi).ok

    def test_regular_pairs(self):
        T, _ = translation_groupoid(regular_action(pairs(["a", "b"]), Side.RIGHT))
        assert (T.n_objects, T.n_arrows) == (4, 8)

    def test_left_functor(self):
        for a in actions():
            if a.side is Side.LEFT:
                T, phi = translation_groupoid(a)
                assert check_morphism(phi).ok


class TestOrbits:
    def test_swap(self):
        a = swap_action()
        part, reps = orbits(a)
        assert part.labelled(a.carrier) == [["1", "2"], ["3"]]
        assert [a.carrier[r] for r in reps] == ["1", "3"]

    def test_identity_only(self):
        a = regular_action(trivial(["u", "v", "w"]), Side.LEFT)
        assert len(orbits(a)[0]) == 3

    def test_corpus_against_networkx(self):
        for a in actions():
            part, _ = orbits(a)
            assert [list(b) for b in part.blocks] == nx_orbits(a), a.name

    def test_orbits_are_components(self):
        for a in actions():
            T, _ = translation_groupoid(a, check=False)
            assert connected_components(T) == orbits(a)[0]


class TestStabilizer:
    def test_swap(self):
        a = swap_action()
        assert stabilizer(a, "3").arrows == {0, 1}
        assert stabilizer(a, "1").arrows == {0}

    def test_free(self):
        a = regular_action(cyclic_group(4), Side.RIGHT)
        for x in range(4):
            assert stabilizer(a, x).arrows == {a.groupoid.ident[0]}

    def test_two_routes_agree(self):
        for a in actions():
            for x in range(len(a.carrier)):
                assert stabilizer(a, x).arrows == stabilizer_via_translation(a, x)

    def test_square(self):
        sq = rotation_action()
        C4 = sq.groupoid
        assert {C4.arrows[g] for g in stabilizer(sq, "d0").arrows} == {"e", "c2"}


class TestEquivariant:
    def test_identity_map(self):
        for a in actions()[:20]:
            f = EquivariantMap(a, a, tuple(range(len(a.carrier))))
            assert check_equivariant(f).ok
            assert invert_equivariant(f).map == f.map

    def test_orbit_inclusion(self):
        sq = rotation_action()
        sub = restrict_action(sq, ["d0", "d1"])
        assert check_equivariant(embedding(sub, sq)).ok
        with pytest.raises(NotInvariantSubset) as exc:
            restrict_action(sq, ["0", "1"])
        assert exc.value.witness[0] in ("0", "1")

    def test_swap_two_free_orbits(self):
        C2 = cyclic_group(2)
        carrier = ["p", "q", "r", "s"]
        a = GroupoidAction.from_labels("right", C2, carrier, {x: "*" for x in carrier},
                                       {("p", "c"): "q", ("q", "c"): "p", ("r", "c"): "s", ("s", "c"): "r"},
                                       fill_identities=True)
        f = EquivariantMap(a, a, tuple(a.elem(y) for y in ["r", "s", "p", "q"]))
        assert check_equivariant(f).ok and check_equivariant(f).info["bijective"]
        assert check_equivariant(invert_equivariant(f)).ok

    def test_not_equivariant(self):
        a = swap_action()
        f = EquivariantMap(a, a, (0, 0, 2))
        rep = check_equivariant(f)
        assert not rep.ok
        with pytest.raises(NotBijective):
            invert_equivariant(f)

    def test_reversed_action_isomorphic(self):
        for a in actions()[:30]:
            b = reversed_action(a)
            assert validate_action(b).ok
            n = len(a.carrier)
            assert check_equivariant(EquivariantMap(a, b, tuple(n - 1 - x for x in range(n)))).ok


class TestInvariants:
    def test_stabilizer_conjugation(self):
        for a in actions():
            G = a.groupoid
            for x in range(len(a.carrier)):
                sx = stabilizer(a, x).arrows
                for g, y in a.moves(x):
                    # right: y = xg, Stab(y) = g^-1 Stab(x) g; left: y = gx, Stab(y) = g Stab(x) g^-1
                    if a.side is Side.RIGHT:
                        conj = {G.mul(G.mul(G.inv[g], s), g) for s in sx}
                    else:
                        conj = {G.mul(G.mul(g, s), G.inv[g]) for s in sx}
                    assert conj == set(stabilizer(a, y).arrows)

    def test_invert_twice(self):
        for a in actions()[:20]:
            n = len(a.carrier)
            f = EquivariantMap(a, a, tuple(range(n)))
            assert invert_equivariant(invert_equivariant(f)).map == f.map

    def test_restrict_to_orbits(self):
        for a in actions():
            for blk in orbits(a)[0].blocks:
                assert validate_action(restrict_action(a, [a.carrier[x] for x in blk])).ok

    def test_empty_carrier(self):
        a = GroupoidAction.from_labels("right", pairs(["a"]), [], {}, {})
        assert validate_action(a).ok
        assert len(orbits(a)[0]) == 0
