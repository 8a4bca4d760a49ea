from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import FrozenSet, List, Tuple

from sympy import factorint, isprime

from .conjugacy import conjugacy_classes, element_orders
from .errors import GroupDataError, InvariantViolation, MembershipError, PreconditionError
from .perm_group import (
    PermGroup,
    center,
    derived_series,
    derived_subgroup,
    normal_closure,
    quotient,
    subgroup_from_elements,
    trivial_subgroup,
)
from .permutation import Images, Permutation, compose, invert

logger = logging.getLogger(__name__)


def p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def is_p_power(n: int, p: int) -> bool:
    return n >= 1 and p_part(n, p) == n


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise GroupDataError(f"需要素数，得到 {p}")


def is_p_group(H: PermGroup, p: int) -> bool:
    return is_p_power(H.order, p)


def is_cyclic(H: PermGroup) -> bool:
    if H.order == 1 or isprime(H.order):
        return True
    if not H.is_abelian():
        return False
    return H.order in set(element_orders(H))


def is_elementary_abelian(H: PermGroup, p: int) -> bool:
    if not is_p_group(H, p) or not H.is_abelian():
        return False
    return all((g ** p).is_identity() for g in H.generators)


# ---- Sylow 与特征子群 ----

def _normalizes(g: Images, P: PermGroup) -> bool:
    g_inv = invert(g)
    return all(P.chain.contains(compose(compose(g_inv, h.images), g)) for h in P.generators)


def sylow_subgroup(G: PermGroup, p: int) -> PermGroup:
    """从阶最大的 p-元出发，逐步用正规化 P 的 p-元扩张"""
    _require_prime(p)

    def build() -> PermGroup:
        target = p_part(G.order, p)
        if target == 1:
            return trivial_subgroup(G)
        cd = conjugacy_classes(G)
        candidates = [
            (order, rep) for rep, order in zip(cd.reps, cd.rep_orders) if order > 1 and is_p_power(order, p)
        ]
        best = max(order for order, _ in candidates)
        start = min(rep for order, rep in candidates if order == best)
        gens = [start]
        P = G.subgroup(gens)
        orders = element_orders(G)
        while P.order < target:
            ext = None
            for g, order in zip(G.elements, orders):
                if order > 1 and is_p_power(order, p) and not P.chain.contains(g) and _normalizes(g, P):
                    ext = g
                    break
            if ext is None:
                raise InvariantViolation(f"Sylow {p} 扩张失败于 |P|={P.order}")
            gens.append(Permutation._trusted(ext))
            P = G.subgroup(gens)
        if P.order != target:
            raise InvariantViolation(f"Sylow {p}-子群阶 {P.order} != {target}")
        return P

    return G.memo(f"sylow:{p}", build)


def p_residual(G: PermGroup, p: int) -> PermGroup:
    """O^{p'}(G) = Sylow p-子群的正规闭包"""
    _require_prime(p)

    def build() -> PermGroup:
        P = sylow_subgroup(G, p)
        N = normal_closure(G, P.generators)
        if (G.order // N.order) % p == 0:
            raise InvariantViolation(f"|G : O^{p}'(G)| = {G.order // N.order} 被 {p} 整除")
        return N

    return G.memo(f"residual:{p}", build)


def p_core(G: PermGroup, p: int) -> PermGroup:
    """O_p(G)：对生成元反复取 C ∩ C^g 直到稳定"""
    _require_prime(p)

    def build() -> PermGroup:
        P = sylow_subgroup(G, p)
        core = set(P.elements)
        while True:
            new = core
            for g in G.generators:
                gi, g_inv = g.images, invert(g.images)
                new = new & {compose(compose(g_inv, c), gi) for c in core}
            if new == core:
                break
            core = new
        return subgroup_from_elements(G.degree, sorted(core))

    return G.memo(f"core:{p}", build)


def _subgroup_key(H: PermGroup) -> Tuple[int, Images]:
    elems = H.elements
    return (H.order, elems[1] if len(elems) > 1 else elems[0])


def minimal_normal_subgroups(G: PermGroup) -> List[PermGroup]:
    """素数阶类代表的正规闭包中按包含关系极小者"""

    def build() -> List[PermGroup]:
        cd = conjugacy_classes(G)
        candidates = {}
        for rep, order in zip(cd.reps, cd.rep_orders):
            if order > 1 and isprime(order):
                M = normal_closure(G, [rep])
                candidates.setdefault(frozenset(M.elements), M)
        sets = list(candidates)
        minimal = [candidates[s] for s in sets if not any(t < s for t in sets)]
        return sorted(minimal, key=_subgroup_key)

    return G.memo("minimal_normal", build)


def p_prime_core(G: PermGroup, p: int) -> PermGroup:
    """O_{p'}(G)：取最小的 p'-极小正规子群，商群中递归，再拉回"""
    _require_prime(p)

    def build() -> PermGroup:
        if G.order % p and G.order > 1:
            return G
        minimal = [M for M in minimal_normal_subgroups(G) if M.order % p]
        if not minimal:
            return trivial_subgroup(G)
        M = minimal[0]
        Q, phi = quotient(G, M)
        return phi.preimage(p_prime_core(Q, p))

    return G.memo(f"pprime_core:{p}", build)


def fitting_subgroup(G: PermGroup) -> PermGroup:
    def build() -> PermGroup:
        gens: List[Permutation] = []
        for r in sorted(factorint(G.order)):
            gens.extend(p_core(G, r).generators)
        return G.subgroup(gens)

    return G.memo("fitting", build)


# ---- 单、可解、拟单 ----

def is_solvable(G: PermGroup) -> bool:
    return G.memo("solvable", lambda: derived_series(G)[-1].order == 1)


def is_perfect(G: PermGroup) -> bool:
    return G.memo("perfect", lambda: derived_subgroup(G).order == G.order)


def is_simple(G: PermGroup) -> bool:
    def build() -> bool:
        if G.order == 1:
            return False
        if G.is_abelian():
            return bool(isprime(G.order))
        cd = conjugacy_classes(G)
        return all(normal_closure(G, [rep]).order == G.order for rep in cd.reps[1:])

    return G.memo("simple", build)


def is_quasisimple(G: PermGroup) -> bool:
    def build() -> bool:
        if G.order == 1 or not is_perfect(G):
            return False
        Z = center(G)
        if Z.order == 1:
            return is_simple(G)
        Q, _ = quotient(G, Z)
        return is_simple(Q)

    return G.memo("quasisimple", build)


def is_nonabelian_simple(G: PermGroup) -> bool:
    return is_simple(G) and not isprime(G.order)


# ---- T.I.、Frobenius、传递性 ----

def _conjugate_set(elems: FrozenSet[Images], g: Images) -> FrozenSet[Images]:
    g_inv = invert(g)
    return frozenset(compose(compose(g_inv, x), g) for x in elems)


def subgroup_conjugates(G: PermGroup, H: PermGroup) -> List[FrozenSet[Images]]:
    """H 的全部共轭（元素集合），BFS 顺序，第一个是 H 自身"""
    start = frozenset(H.elements)
    seen = {start}
    queue = [start]
    for C in queue:
        for g in G.generators:
            D = _conjugate_set(C, g.images)
            if D not in seen:
                seen.add(D)
                queue.append(D)
    return queue


def is_ti_subgroup(G: PermGroup, H: PermGroup) -> bool:
    if not H.is_subgroup_of(G):
        raise MembershipError("H 不是 G 的子群")
    conjugates = subgroup_conjugates(G, H)
    base = conjugates[0]
    return all(len(C & base) == 1 for C in conjugates[1:])


def is_frobenius_with_kernel(G: PermGroup, K: PermGroup) -> bool:
    if not K.is_normal_in(G):
        raise PreconditionError("K 在 G 中不正规")
    if not 1 < K.order < G.order:
        raise PreconditionError(f"需要 1 < K < G，得到 |K|={K.order}, |G|={G.order}")
    cd = conjugacy_classes(G)
    elems = G.elements
    for rep in cd.reps[1:]:
        if not K.contains(rep):
            continue
        x = rep.images
        for g in elems:
            if compose(g, x) == compose(x, g) and not K.chain.contains(g):
                return False
    if gcd(K.order, G.order // K.order) != 1:
        raise InvariantViolation(f"Frobenius 核阶 {K.order} 与补阶 {G.order // K.order} 不互素")
    return True


@dataclass(frozen=True)
class OrbitReport:
    transitive: bool
    orbit_sizes: Tuple[int, ...]

    @property
    def sizes_with_identity(self) -> Tuple[int, ...]:
        return tuple(sorted((1,) + self.orbit_sizes))


def _conjugation_orbits(G: PermGroup, V: PermGroup) -> List[List[Images]]:
    points = set(V.elements[1:])
    gens = [(g.images, invert(g.images)) for g in G.generators]
    orbits = []
    while points:
        start = min(points)
        points.discard(start)
        orbit = [start]
        for x in orbit:
            for g, g_inv in gens:
                y = compose(compose(g_inv, x), g)
                if y in points:
                    points.discard(y)
                    orbit.append(y)
        orbits.append(orbit)
    return orbits


def nonidentity_orbits(G: PermGroup, V: PermGroup) -> OrbitReport:
    """G 通过共轭作用在 V 的非单位元上的轨道"""
    if not V.is_normal_in(G):
        raise PreconditionError("V 在 G 中不正规")
    sizes = sorted(len(orbit) for orbit in _conjugation_orbits(G, V))
    return OrbitReport(transitive=len(sizes) == 1, orbit_sizes=tuple(sizes))


def acts_transitively_on_nonidentity(G: PermGroup, V: PermGroup) -> bool:
    return nonidentity_orbits(G, V).transitive


def is_minimal_normal(G: PermGroup, V: PermGroup) -> bool:
    """任一非单位元的正规闭包都是 V"""
    if V.order == 1 or not V.is_normal_in(G):
        return False
    reps = [orbit[0] for orbit in _conjugation_orbits(G, V)]
    return all(normal_closure(G, [Permutation._trusted(x)]).order == V.order for x in reps)


def commute(A: PermGroup, B: PermGroup) -> bool:
    """[A, B] = 1"""
    return all(a * b == b * a for a in A.generators for b in B.generators)


def normal_subgroups_from_classes(G: PermGroup) -> List[PermGroup]:
    """各非平凡类代表的正规闭包（去重，按阶排序）"""

    def build() -> List[PermGroup]:
        cd = conjugacy_classes(G)
        found = {}
        for rep in cd.reps[1:]:
            M = normal_closure(G, [rep])
            found.setdefault(frozenset(M.elements), M)
        return sorted(found.values(), key=_subgroup_key)

    return G.memo("class_closures", build)
