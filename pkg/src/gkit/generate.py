"""Seeded random Mackey instances."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import MalformedParams
from .groupoid import FiniteGroupoid, Subgroupoid, cyclic_group, eqrel, pairs, product, trivial
from .mackey import MackeyInstance


@dataclass(frozen=True)
class RandomConfig:
    seed: int
    max_objects: int = 3
    max_group_order: int = 4
    count: int = 1

    def __post_init__(self):
        if min(self.max_objects, self.max_group_order, self.count) < 1:
            raise MalformedParams("random bounds must be at least 1")


def _random_partition(rng: random.Random, items: list[str]) -> list[list[str]]:
    blocks: list[list[str]] = []
    for it in items:
        k = rng.randrange(len(blocks) + 1)
        if k == len(blocks):
            blocks.append([it])
        else:
            blocks[k].append(it)
    return blocks


def _base(rng: random.Random, prefix: str, n: int, q: int) -> tuple[FiniteGroupoid, dict]:
    objs = [f"{prefix}{i + 1}" for i in range(n)]
    kind = rng.choice(["trivial", "pairs", "eqrel", "cyclic"])
    if kind == "trivial":
        return trivial(objs), {"kind": "trivial", "objects": objs}
    if kind == "pairs":
        return pairs(objs), {"kind": "pairs", "objects": objs}
    if kind == "eqrel":
        classes = _random_partition(rng, objs)
        return eqrel(objs, classes), {"kind": "eqrel", "objects": objs, "classes": classes}
    order = rng.randint(1, q)
    return cyclic_group(order), {"kind": "cyclic", "order": order}


def random_groupoid(rng: random.Random, prefix: str, max_objects: int, max_group_order: int,
                    name: str = "") -> tuple[FiniteGroupoid, dict]:
    """One of trivial / pairs / eqrel / cyclic, or a product of a cyclic group with one of those."""
    n = rng.randint(1, max_objects)
    if rng.random() < 0.25:
        order = rng.randint(1, max_group_order)
        C = cyclic_group(order)
        B, desc = _base(rng, prefix, n, 1)
        P = product(C, B)
        return P, {"kind": "product", "left": {"kind": "cyclic", "order": order}, "right": desc}
    G, desc = _base(rng, prefix, n, max_group_order)
    return G, desc


def random_wide_subgroupoid(rng: random.Random, P: FiniteGroupoid, max_seeds: int = 3) -> Subgroupoid:
    """Closure of a few random arrows together with every identity."""
    k = rng.randint(0, max_seeds)
    seeds = rng.sample(range(P.n_arrows), min(k, P.n_arrows))
    return Subgroupoid.from_arrows(P, seeds, close=True, wide=True)


def random_instance(cfg: RandomConfig, index: int = 0) -> MackeyInstance:
    """Instance number ``index`` of the stream determined by ``cfg.seed``."""
    rng = random.Random(f"gkit:{cfg.seed}:{index}")
    K, dk = random_groupoid(rng, "k", cfg.max_objects, cfg.max_group_order)
    H, dh = random_groupoid(rng, "h", cfg.max_objects, cfg.max_group_order)
    G, dg = random_groupoid(rng, "g", cfg.max_objects, cfg.max_group_order)
    M = random_wide_subgroupoid(rng, product(K, H))
    L = random_wide_subgroupoid(rng, product(H, G))
    meta = {"seed": cfg.seed, "index": index, "K": dk, "H": dh, "G": dg}
    return MackeyInstance(K, H, G, M, L, name=f"random-{cfg.seed}-{index}", meta=meta)


def random_instances(cfg: RandomConfig):
    for i in range(cfg.count):
        yield random_instance(cfg, i)


def instance_to_dict(inst: MackeyInstance) -> dict:
    """Label-level description, stable across runs."""
    def gdesc(G: FiniteGroupoid):
        return {"objects": list(G.objects), "arrows": len(G.arrows)}

    return {
        "name": inst.name,
        "builders": {k: inst.meta[k] for k in ("K", "H", "G") if k in inst.meta},
        "K": gdesc(inst.k),
        "H": gdesc(inst.h),
        "G": gdesc(inst.g),
        "M": sorted(inst.m.labels()),
        "L": sorted(inst.l.labels()),
    }
