from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import lcm
from typing import List, Tuple

from .errors import MembershipError
from .perm_group import PermGroup
from .permutation import Images, Permutation, compose, element_order, identity, invert

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassData:
    """共轭类数据。类按最小元素的字典序排列，因此第 0 类是单位元。

    - ``reps[i]``: 第 i 类中字典序最小的元素
    - ``class_index[k]``: 第 k 个元素（按 ``group.elements`` 顺序）所在的类
    - ``witness[k]``: w 使得 reps[class_index[k]]^w 等于第 k 个元素
    """

    group: PermGroup
    reps: Tuple[Permutation, ...]
    sizes: Tuple[int, ...]
    rep_orders: Tuple[int, ...]
    class_index: Tuple[int, ...]
    witness: Tuple[Images, ...] = field(repr=False)
    powers: Tuple[Tuple[int, ...], ...] = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.reps)

    @property
    def exponent(self) -> int:
        return lcm(*self.rep_orders)

    def class_of(self, g) -> int:
        images = g.images if isinstance(g, Permutation) else g
        try:
            return self.class_index[self.group.element_index[images]]
        except KeyError:
            raise MembershipError("元素不在群中") from None

    def conjugator(self, g: Permutation) -> Permutation:
        """返回 w，满足 reps[class_of(g)]^w = g"""
        k = self.group.index_of(g.images)
        return Permutation._trusted(self.witness[k])

    def power_map(self, i: int, j: int) -> int:
        row = self.powers[i]
        return row[j % len(row)]

    def centralizer_order(self, i: int) -> int:
        return self.group.order // self.sizes[i]

    def inverse_class(self, i: int) -> int:
        return self.power_map(i, -1)

    def members(self, i: int) -> List[Images]:
        elems = self.group.elements
        return [elems[k] for k, c in enumerate(self.class_index) if c == i]


def _compute_classes(G: PermGroup) -> ClassData:
    elems = G.elements
    index = G.element_index
    gens = [(g.images, invert(g.images)) for g in G.generators]
    n = len(elems)
    class_index = [-1] * n
    witness: List[Images] = [()] * n
    reps: List[Permutation] = []
    sizes: List[int] = []
    ident = identity(G.degree)
    for start in range(n):
        if class_index[start] != -1:
            continue
        c = len(reps)
        rep = elems[start]
        reps.append(Permutation._trusted(rep))
        class_index[start] = c
        witness[start] = ident
        queue = [start]
        for k in queue:
            x, w = elems[k], witness[k]
            for g, g_inv in gens:
                y = index[compose(compose(g_inv, x), g)]
                if class_index[y] == -1:
                    class_index[y] = c
                    witness[y] = compose(w, g)
                    queue.append(y)
        sizes.append(len(queue))

    rep_orders = [element_order(r.images) for r in reps]
    powers = []
    for rep, order in zip(reps, rep_orders):
        row = []
        x = ident
        for _ in range(order):
            row.append(class_index[index[x]])
            x = compose(x, rep.images)
        powers.append(tuple(row))
    logger.debug("|G|=%d: %d classes", G.order, len(reps))
    return ClassData(
        group=G,
        reps=tuple(reps),
        sizes=tuple(sizes),
        rep_orders=tuple(rep_orders),
        class_index=tuple(class_index),
        witness=tuple(witness),
        powers=tuple(powers),
    )


def conjugacy_classes(G: PermGroup) -> ClassData:
    return G.memo("classes", lambda: _compute_classes(G))


def element_orders(G: PermGroup) -> List[int]:
    """与 ``G.elements`` 对齐的元素阶"""

    def build() -> List[int]:
        cd = conjugacy_classes(G)
        return [cd.rep_orders[c] for c in cd.class_index]

    return G.memo("element_orders", build)


def spectrum(G: PermGroup) -> List[int]:
    return sorted(set(conjugacy_classes(G).rep_orders))
