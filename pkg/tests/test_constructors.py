from __future__ import annotations

import pytest
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup as SympyPermutationGroup

from codeglab.algo import constructors
from codeglab.algo.constructors import available_constructors, build_builtin, group_constructor, parse_builtin
from codeglab.algo.errors import EnumerationCapExceeded, GroupDataError
from codeglab.algo.perm_group import PermGroup
from codeglab.algo.recognition import recognize_named
from codeglab.algo.structure import is_minimal_normal, is_simple, nonidentity_orbits, p_core


@pytest.mark.parametrize(
    "spec, order",
    [
        ("symmetric:5", 120),
        ("alternating:7", 2520),
        ("cyclic:6", 6),
        ("dihedral:8", 8),
        ("quaternion8", 8),
        ("sl2:4", 60),
        ("sl2:9", 720),
        ("psl2:7", 168),
        ("psl2:8", 504),
        ("gl2_3", 48),
        ("asl2:3", 216),
        ("asl2:4", 960),
        ("gamma_family:2,1", 24),
        ("gamma_family:2,2", 160),
        ("gamma_family:3,1", 1053),
        ("sl2_5_module", 9720),
    ],
)
def test_orders(group, spec, order):
    assert group(spec).order == order


@pytest.mark.parametrize("spec", ["psl2:8", "gamma_family:3,1", "asl2:4"])
def test_orders_against_sympy(group, spec):
    G = group(spec)
    oracle = SympyPermutationGroup([SympyPermutation(list(g.images)) for g in G.generators])
    assert oracle.order() == G.order


def test_parse_builtin():
    assert parse_builtin("gamma_family:3,1") == ("gamma_family", [3, 1])
    assert parse_builtin(" Mathieu11 ") == ("mathieu11", [])
    with pytest.raises(GroupDataError):
        parse_builtin("sl2:x")


def test_unknown_and_bad_arguments():
    with pytest.raises(GroupDataError):
        build_builtin("nonsense:3")
    with pytest.raises(GroupDataError):
        build_builtin("symmetric:3,4")
    with pytest.raises(GroupDataError):
        build_builtin("dihedral:7")
    with pytest.raises(GroupDataError):
        build_builtin("gamma_family:4,1")
    with pytest.raises(GroupDataError):
        build_builtin("sl2:6")


@pytest.mark.parametrize("spec", ["gamma_family:5,1", "gamma_family:3,3", "gamma_family:2,8"])
def test_gamma_family_cap_checked_before_field(spec, monkeypatch):
    def no_field(*args):
        raise AssertionError("field built")

    monkeypatch.setattr(constructors, "finite_field", no_field)
    with pytest.raises(EnumerationCapExceeded):
        build_builtin(spec)


def test_gamma_family_huge_parameters():
    with pytest.raises(GroupDataError):
        build_builtin("gamma_family:1000003,1")
    with pytest.raises(GroupDataError):
        build_builtin("gamma_family:2,10")


def test_registry():
    assert {"symmetric", "sl2", "psl3_4", "sl2_5_module"} <= set(available_constructors())
    with pytest.raises(ValueError):

        @group_constructor("symmetric")
        def again(n: int) -> PermGroup:
            return PermGroup(n)


def test_quaternion_has_unique_involution(group):
    Q = group("quaternion8")
    assert not Q.is_abelian()
    assert sum(1 for g in Q.permutations() if g.order() == 2) == 1


@pytest.mark.parametrize("q", [3, 4, 5])
def test_affine_translations_are_minimal_normal(group, q):
    G = group(f"asl2:{q}")
    r = {3: 3, 4: 2, 5: 5}[q]
    V = p_core(G, r)
    assert V.order == q * q
    assert is_minimal_normal(G, V)
    assert nonidentity_orbits(G, V).transitive


@pytest.mark.parametrize(
    "spec, name",
    [("psl2:8", "PSL_2(q)"), ("sl2:5", "SL_2(q)"), ("sl2:3", "SL_2(3)"), ("asl2:3", "ASL_2(3)")],
)
def test_constructors_recognized_by_label(group, spec, name):
    assert recognize_named(group(spec)).name == name


@pytest.mark.slow
def test_mathieu11_is_simple(group):
    assert is_simple(group("mathieu11"))


@pytest.mark.slow
def test_psl3_4(group):
    G = group("psl3_4")
    assert G.order == 20160
    assert G.degree == 21
    assert recognize_named(G).name == "PSL_3(4)"
