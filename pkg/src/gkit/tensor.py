"""Tensor product of bisets over a shared middle groupoid."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .bisets import Biset, BisetMap, check_biset_map
from .common import Partition, partition_from_neighbours
from .errors import DoesNotCoequalize, MiddleGroupoidMismatch, MalformedParams


@dataclass(frozen=True)
class TensorClass:
    rep: tuple[int, int]
    members: tuple[tuple[int, int], ...]


@dataclass(frozen=True, eq=False)
class TensorProductBiset:
    """``X (x)_G Y`` together with the raw pairs it was built from."""

    left: Biset
    right: Biset
    raw: tuple[tuple[int, int], ...]
    partition: Partition
    result: Biset

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

    def class_of(self, x: int, y: int) -> int:
        return self.class_of_raw[self.raw_index[(x, y)]]

    @cached_property
    def classes(self) -> tuple[TensorClass, ...]:
        return tuple(TensorClass(self.raw[b[0]], tuple(self.raw[i] for i in b))
                     for b in self.partition.blocks)

    def __len__(self):
        return len(self.partition)


def _raw_pairs(X: Biset, Y: Biset) -> tuple[tuple[int, int], ...]:
    by_obj: dict[int, list[int]] = {}
    for y, o in enumerate(Y.theta):
        by_obj.setdefault(o, []).append(y)
    return tuple((x, y) for x in range(len(X.carrier)) for y in by_obj.get(X.sigma[x], ()))


def tensor_product(X: Biset, Y: Biset) -> TensorProductBiset:
    """Orbits of ``(x, y) -> (xg, g^-1 y)`` on pairs with ``sigma(x) = theta(y)``.

    The outer actions are ``h(x (x) y) = hx (x) y`` and ``(x (x) y)k = x (x) yk``.
    """
    if X.right_groupoid is not Y.left_groupoid:
        raise MiddleGroupoidMismatch("the right groupoid of X must be the left groupoid of Y")
    G = X.right_groupoid
    raw = _raw_pairs(X, Y)
    index = {p: i for i, p in enumerate(raw)}

    def nbrs(i):
        x, y = raw[i]
        for g in X.right_admissible(x):
            yield index[(X.right(x, g), Y.left(G.inv[g], y))]

    part = partition_from_neighbours(len(raw), nbrs)
    cls = [0] * len(raw)
    for c, block in enumerate(part.blocks):
        for i in block:
            cls[i] = c
    reps = [raw[b[0]] for b in part.blocks]
    carrier = tuple(f"{X.carrier[x]}⊗{Y.carrier[y]}" for x, y in reps)
    left, right = {}, {}
    for c, (x, y) in enumerate(reps):
        for h in X.left_admissible(x):
            left[(h, c)] = cls[index[(X.left(h, x), y)]]
        for k in Y.right_admissible(y):
            right[(c, k)] = cls[index[(x, Y.right(y, k))]]
    result = Biset(X.left_groupoid, Y.right_groupoid, carrier,
                   tuple(X.theta[x] for x, _ in reps), tuple(Y.sigma[y] for _, y in reps),
                   left, right, name=f"{X.name}⊗{Y.name}" if X.name and Y.name else "")
    return TensorProductBiset(X, Y, raw, part, result)


def tensor_well_defined(tp: TensorProductBiset) -> bool:
    """Recompute the outer actions from every member of every class."""
    X, Y, R = tp.left, tp.right, tp.result
    for c, block in enumerate(tp.partition.blocks):
        for i in block:
            x, y = tp.raw[i]
            if X.theta[x] != R.theta[c] or Y.sigma[y] != R.sigma[c]:
                return False
            for h in X.left_admissible(x):
                if tp.class_of(X.left(h, x), y) != R.left(h, c):
                    return False
            for k in Y.right_admissible(y):
                if tp.class_of(x, Y.right(y, k)) != R.right(c, k):
                    return False
    return True


def raw_pair_biset(X: Biset, Y: Biset) -> Biset:
    """The (H, K)-biset on ``X x_G Y`` before quotienting."""
    if X.right_groupoid is not Y.left_groupoid:
        raise MiddleGroupoidMismatch("the right groupoid of X must be the left groupoid of Y")
    raw = _raw_pairs(X, Y)
    index = {p: i for i, p in enumerate(raw)}
    left, right = {}, {}
    for i, (x, y) in enumerate(raw):
        for h in X.left_admissible(x):
            left[(h, i)] = index[(X.left(h, x), y)]
        for k in Y.right_admissible(y):
            right[(i, k)] = index[(x, Y.right(y, k))]
    return Biset(X.left_groupoid, Y.right_groupoid,
                 tuple(f"({X.carrier[x]},{Y.carrier[y]})" for x, y in raw),
                 tuple(X.theta[x] for x, _ in raw), tuple(Y.sigma[y] for _, y in raw), left, right)


def quotient_map(tp: TensorProductBiset) -> tuple[int, ...]:
    return tp.class_of_raw


def coequalizer_factorization(X: Biset, Y: Biset, f: Sequence[int], Z: Biset,
                              tp: TensorProductBiset | None = None) -> BisetMap:
    """Factor ``f: X x_G Y -> Z`` through the tensor product.

    ``f`` is indexed like the raw pairs of :func:`raw_pair_biset`.  Raises
    :class:`DoesNotCoequalize` with a witness ``(x, g, y)`` when
    ``f(xg, y) != f(x, gy)`` for some admissible triple.
    """
    tp = tp or tensor_product(X, Y)
    G = X.right_groupoid
    if len(f) != len(tp.raw):
        raise MalformedParams("map must be defined on every raw pair")
    index = tp.raw_index
    for x in range(len(X.carrier)):
        for g in X.right_admissible(x):
            xg = X.right(x, g)
            for y in (y for y in range(len(Y.carrier)) if Y.theta[y] == G.src[g]):
                if f[index[(xg, y)]] != f[index[(x, Y.left(g, y))]]:
                    w = (X.carrier[x], G.arrows[g], Y.carrier[y])
                    raise DoesNotCoequalize(f"f(xg,y) != f(x,gy) at x={w[0]}, g={w[1]}, y={w[2]}", witness=w)
    first = tuple(f[b[0]] for b in tp.partition.blocks)
    last = tuple(f[b[-1]] for b in tp.partition.blocks)
    if first != last:
        raise DoesNotCoequalize("factorization depends on the class representative")
    induced = BisetMap(tp.result, Z, first)
    rep = check_biset_map(induced)
    if not rep.ok:
        raise DoesNotCoequalize(f"induced map is not a biset map: {rep.violations[0].message}")
    return induced
