from __future__ import annotations

import pytest

from codeglab.algo.constants import TITS_GROUP_ORDER
from codeglab.algo.perm_group import PermGroup
from codeglab.algo.recognition import (
    OTHER,
    NamedGroupRecognizer,
    fingerprint,
    is_asl2_3,
    is_named,
    is_psl2,
    is_sl2,
    named_group,
    psl2_parameters,
    recognize_all,
    recognize_named,
    registered_names,
    sl2_parameters,
    square_root_prime_power,
)


def test_order_parameters():
    assert psl2_parameters(60) == [4, 5]
    assert psl2_parameters(360) == [9]
    assert psl2_parameters(168) == [7]
    assert sl2_parameters(120) == [5]
    assert sl2_parameters(24) == [3]
    assert sl2_parameters(720) == [9]


def test_square_root_prime_power():
    assert square_root_prime_power(16) == 4
    assert square_root_prime_power(81) == 9
    assert square_root_prime_power(36) is None
    assert square_root_prime_power(27) is None


def test_fingerprint_identifies_s4_as_affine_semilinear(group):
    assert fingerprint(group("gamma_family:2,1")) == fingerprint(group("symmetric:4"))
    assert fingerprint(group("symmetric:4")) != fingerprint(group("sl2:3"))


@pytest.mark.parametrize(
    "spec, name",
    [
        ("alternating:5", "PSL_2(q)"),
        ("psl2:7", "PSL_2(q)"),
        ("alternating:6", "PSL_2(q)"),
        ("sl2:5", "SL_2(q)"),
        ("sl2:9", "SL_2(q)"),
        ("sl2:3", "SL_2(3)"),
        ("asl2:3", "ASL_2(3)"),
        ("symmetric:4", OTHER),
        ("cyclic:1", OTHER),
    ],
)
def test_recognize_named(group, spec, name):
    assert recognize_named(group(spec)).name == name


def test_recognition_params(group):
    assert recognize_named(group("alternating:5")).params == {"q": [4, 5]}
    assert recognize_named(group("sl2:4")).name == "PSL_2(q)"
    names = [r.name for r in recognize_all(group("sl2:4"))]
    assert names == ["PSL_2(q)", "SL_2(q)"]


def test_parameterized_predicates(group):
    assert is_sl2(group("sl2:9"), 9)
    assert is_sl2(group("sl2:3"), 3)
    assert is_sl2(group("alternating:5"), 4)
    assert not is_sl2(group("alternating:6"), 9)
    assert is_psl2(group("alternating:6"), 9)
    assert not is_psl2(group("symmetric:5"), 5)
    assert is_asl2_3(group("asl2:3"))
    assert not is_asl2_3(group("symmetric:4"))


@pytest.mark.slow
def test_sporadic_names(group):
    assert recognize_named(group("mathieu11")).name == "M_11"
    assert recognize_named(group("psl3_4")).name == "PSL_3(4)"
    assert not is_named(group("alternating:8"), "PSL_3(4)")


def test_registry_rules():
    assert registered_names()[0] == "TitsPrime"
    with pytest.raises(ValueError):

        @named_group("M_11")
        class Again(NamedGroupRecognizer):
            def match(self, G: PermGroup):
                return None

    with pytest.raises(TypeError):
        named_group("NotARecognizer")(object)


def test_tits_order_alone_is_not_enough(abelian_of_tits_order):
    G = abelian_of_tits_order
    assert G.order == TITS_GROUP_ORDER
    assert recognize_named(G).name == OTHER
    assert not is_named(G, "TitsPrime")
