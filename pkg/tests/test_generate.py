import json
from pathlib import Path

import pytest

from gkit.errors import MalformedParams
from gkit.generate import RandomConfig, instance_to_dict, random_instance, random_instances
from gkit.groupoid import subgroupoid_check, validate_groupoid
from gkit.mackey import check_instance, verify_mackey

GOLDEN = Path(__file__).parent / "golden" / "random_seed0_2_2.json"


def test_golden_seed0():
    want = json.loads(GOLDEN.read_text())
    inst = random_instance(RandomConfig(0, 2, 2), 0)
    assert instance_to_dict(inst) == want
    assert verify_mackey(inst).verdict


def test_same_seed_same_instance():
    cfg = RandomConfig(123, 3, 4)
    for i in range(10):
        assert instance_to_dict(random_instance(cfg, i)) == instance_to_dict(random_instance(cfg, i))


def test_seeds_differ():
    a = [instance_to_dict(random_instance(RandomConfig(1, 3, 4), i)) for i in range(10)]
    b = [instance_to_dict(random_instance(RandomConfig(2, 3, 4), i)) for i in range(10)]
    assert a != b


def test_count():
    assert len(list(random_instances(RandomConfig(5, 2, 2, count=7)))) == 7


def test_bounds_rejected():
    with pytest.raises(MalformedParams):
        RandomConfig(0, 0, 2)


def test_200_draws_wide_and_closed():
    cfg = RandomConfig(0, 3, 3)
    for i in range(200):
        inst = random_instance(cfg, i)
        for G in (inst.k, inst.h, inst.g):
            assert G.n_objects <= 3
        for S in (inst.m, inst.l):
            rep = subgroupoid_check(S)
            assert rep.ok and rep.info["wide"]
        check_instance(inst)


def test_draws_are_valid_groupoids():
    cfg = RandomConfig(9, 3, 4)
    for i in range(40):
        inst = random_instance(cfg, i)
        for G in (inst.k, inst.h, inst.g):
            assert validate_groupoid(G).ok
