from setgrad_leibniz.services.algebra import Algebra
from setgrad_leibniz.services.corpus import gen_abelian
from setgrad_leibniz.services.decomposer import (
    L_S_o,
    class_ideal,
    decompose,
    simple_implies_connected,
)
from setgrad_leibniz.services.exactlin import RATIONALS
from setgrad_leibniz.services.idealkit import simplicity_oracle
from setgrad_leibniz.services.supportgraph import connection_classes


def test_n2_single_ideal(n2):
    report = decompose(n2)
    assert len(report.ideals) == 1
    assert report.ideals[0].total.total == n2.full
    assert report.U.is_zero
    assert report.direct
    assert report.consistent
    check = report.check("direct_when_o_empty")
    assert check.applicable and check.holds


def test_n2_with_distinguished(n2_o):
    report = decompose(n2_o)
    (ideal,) = report.ideals
    assert ideal.cls.members == ("a",)
    assert ideal.head == n2_o.label_component("b")
    assert ideal.total.total == n2_o.full
    assert L_S_o(n2_o) == n2_o.label_component("b")
    assert report.U.is_zero
    assert not report.check("direct_when_o_empty").applicable
    assert report.consistent


def test_two_summands(n2_sum):
    report = decompose(n2_sum)
    assert [ci.cls.members for ci in report.ideals] == [("a1", "b1"), ("a2", "b2")]
    assert report.direct
    assert report.check("cross_class_products_vanish").holds


def test_abelian_three_ideals():
    alg = gen_abelian({"a": [0], "b": [1], "c": [0]})
    report = decompose(alg)
    assert len(report.ideals) == 3
    assert report.direct


def test_untouched_distinguished_goes_to_U():
    alg = Algebra.build(RATIONALS, [("x", "a", 0), ("y", "b", 0)], distinguished="b")
    report = decompose(alg)
    assert report.U == alg.label_component("b")
    assert report.L_S_o.is_zero
    assert report.direct
    assert report.consistent


def test_class_ideal_is_ideal(hsd_pair):
    classes = connection_classes(hsd_pair)
    assert len(classes) == 2
    for cls in classes:
        ideal = class_ideal(hsd_pair, cls)
        assert ideal.head.is_zero
        assert ideal.total.dim == 6


def test_simple_implies_single_class(n2, hsd_pair):
    check = simple_implies_connected(n2, simplicity_oracle(n2))
    assert check.applicable and check.holds
    check = simple_implies_connected(hsd_pair, simplicity_oracle(hsd_pair))
    assert not check.applicable
    assert decompose(hsd_pair).consistent
