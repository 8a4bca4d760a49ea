from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup as SympyPermutationGroup

from codeglab.algo.constructors import build_builtin
from codeglab.algo.corpus import DEFAULT_MANIFEST, load_manifest
from codeglab.algo.errors import EnumerationCapExceeded, MembershipError, PreconditionError
from codeglab.algo.perm_group import (
    PermGroup,
    build_group,
    center,
    centralizer,
    closure_elements,
    derived_series,
    derived_subgroup,
    intersection,
    normal_closure,
    quotient,
)
from codeglab.algo.permutation import Permutation
from codeglab.algo.structure import p_core, sylow_subgroup

ORACLE_SPECS = [
    "symmetric:5",
    "alternating:6",
    "dihedral:10",
    "quaternion8",
    "sl2:3",
    "sl2:4",
    "psl2:7",
    "gl2_3",
    "asl2:3",
    "gamma_family:2,2",
]


def sympy_order(G: PermGroup) -> int:
    gens = [SympyPermutation(list(g.images)) for g in G.generators] or [SympyPermutation(list(range(G.degree)))]
    return int(SympyPermutationGroup(gens).order())


@pytest.mark.parametrize("spec", ORACLE_SPECS)
def test_order_matches_sympy(group, spec):
    G = group(spec)
    assert G.order == sympy_order(G)


@pytest.mark.parametrize("spec", ["symmetric:4", "quaternion8", "sl2:3", "dihedral:8"])
def test_order_matches_closure(group, spec):
    G = group(spec)
    elems = closure_elements(G.degree, G.generators)
    assert len(elems) == G.order
    assert elems == G.elements


CLOSURE_ORDER_LIMIT = 10 ** 5


def _corpus_entries():
    manifest = load_manifest(DEFAULT_MANIFEST)
    for entry in manifest.entries:
        marks = [pytest.mark.slow] if entry.slow else []
        yield pytest.param(entry, manifest.base_dir, marks=marks, id=entry.id)


@pytest.mark.parametrize("entry, base_dir", list(_corpus_entries()))
def test_corpus_orders_match_closure(entry, base_dir):
    G = entry.build(base_dir)
    if G.order > CLOSURE_ORDER_LIMIT:
        pytest.skip(f"|G|={G.order}")
    elems = closure_elements(G.degree, G.generators)
    assert len(elems) == G.order


def test_build_group():
    a = Permutation.from_cycles(4, [(1, 2, 3, 4)])
    b = Permutation.from_cycles(4, [(1, 3)])
    G = build_group(4, [a, b])
    assert G.order == 8
    assert G.same_as(build_builtin("dihedral:8"))
    assert not build_group(4, [a]).same_as(G)
    assert not G.is_abelian()


def test_trivial_group():
    G = PermGroup(1)
    assert G.order == 1
    assert G.elements == [(0,)]
    assert G.is_abelian()


def test_membership(group):
    G = group("alternating:4")
    assert Permutation.from_cycles(4, [(1, 2, 3)]) in G
    odd = Permutation.from_cycles(4, [(1, 2)])
    assert odd not in G
    with pytest.raises(MembershipError):
        G.require_member(odd)


def test_derived_series_of_s4(group):
    assert [H.order for H in derived_series(group("symmetric:4"))] == [24, 12, 4, 1]
    assert derived_subgroup(group("sl2:3")).order == 8


def test_centers(group):
    assert center(group("sl2:3")).order == 2
    assert center(group("quaternion8")).order == 2
    assert center(group("dihedral:8")).order == 2
    assert center(group("symmetric:4")).order == 1


def test_normal_closure_rejects_outsiders(group):
    G = group("alternating:4")
    with pytest.raises(MembershipError):
        normal_closure(G, [Permutation.from_cycles(4, [(1, 2)])])


def test_normal_closure_of_transposition_is_whole_group(group):
    G = group("symmetric:5")
    assert normal_closure(G, [Permutation.from_cycles(5, [(1, 2)])]).order == 120


def test_quotient_s4_by_klein(group):
    G = group("symmetric:4")
    V = p_core(G, 2)
    Q, phi = quotient(G, V)
    assert Q.order == 6
    assert not Q.is_abelian()
    assert phi.preimage(Q).order == 24
    assert phi.image(G).order == 6


def test_quotient_requires_normal(group):
    G = group("symmetric:4")
    with pytest.raises(PreconditionError):
        quotient(G, sylow_subgroup(G, 3))


def test_intersection_of_sylows(group):
    G = group("symmetric:4")
    P = sylow_subgroup(G, 2)
    assert intersection(P, p_core(G, 2)).order == 4


def test_enumeration_cap():
    G = build_builtin("symmetric:10")
    assert G.order == 3628800
    with pytest.raises(EnumerationCapExceeded) as info:
        G.elements
    assert info.value.cap == 1_000_000


def _word(G: PermGroup):
    return st.lists(st.sampled_from(G.generators), min_size=1, max_size=12).map(
        lambda gens: _product(G, gens)
    )


def _product(G: PermGroup, gens):
    x = G.identity()
    for g in gens:
        x = x * g
    return x


S5 = build_builtin("symmetric:5")


@settings(max_examples=40, deadline=None)
@given(_word(S5))
def test_random_words_obey_lagrange(x):
    assert x in S5
    assert S5.order % x.order() == 0
    C = centralizer(S5, x)
    assert S5.order % C.order == 0


@settings(max_examples=25, deadline=None)
@given(_word(S5), _word(S5))
def test_quotient_is_homomorphism(x, y):
    Q, phi = quotient(S5, derived_subgroup(S5))
    assert Q.order == 2
    assert phi(x * y) == phi(x) * phi(y)
