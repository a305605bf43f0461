import pytest

from setgrad_leibniz.services.algebra import Algebra
from setgrad_leibniz.services.corpus import gen_abelian, gen_n2_family
from setgrad_leibniz.services.exactlin import RATIONALS, Field, Subspace
from setgrad_leibniz.services.idealkit import (
    NOT_SIMPLE,
    PROBABLY_SIMPLE,
    SIMPLE,
    brute_force_simplicity,
    center,
    enumerate_graded_ideals,
    frak_I,
    frak_I_support,
    ideal_closure,
    is_ideal,
    is_tight,
    lie_annihilator,
    o_pair_span,
    simplicity_oracle,
)
from setgrad_leibniz.utils.errors import NonHomogeneousError, PreconditionError

from conftest import GF5, vec


def test_frak_i_of_n2(n2):
    ideal = frak_I(n2)
    assert ideal.total == n2.label_component("b")
    assert ideal.is_graded
    assert frak_I_support(n2) == {"b"}


def test_frak_i_vanishes_in_char_two():
    assert frak_I(gen_n2_family(1, Field.prime(2))).is_zero


def test_frak_i_of_lie_is_zero(so3):
    assert frak_I(so3).is_zero


def test_frak_i_of_hemisemidirect_is_module(hsd):
    module = Subspace.coordinate(hsd.field, hsd.dim, [3, 4, 5])
    assert frak_I(hsd).total == module


def test_center_and_lie_annihilator(n2, so3):
    y = n2.label_component("b")
    assert center(n2) == y
    assert lie_annihilator(n2) == y
    assert center(so3).is_zero
    assert lie_annihilator(so3).is_zero


def test_ideal_closure(n2):
    result = ideal_closure(n2, [n2.basis_vector("x")])
    assert result.subspace.total == n2.full
    assert ideal_closure(n2, [n2.basis_vector("y")]).subspace.total == n2.label_component("b")
    with pytest.raises(NonHomogeneousError):
        ideal_closure(n2, [vec(RATIONALS, 1, 1)])


def test_tightness(n2, n2_o):
    assert is_tight(n2)
    assert o_pair_span(n2_o) == n2_o.label_component("b")
    assert is_tight(n2_o)
    loose = Algebra.build(RATIONALS, [("x", "a", 0), ("y", "b", 0)], distinguished="b")
    assert not is_tight(loose)


def test_is_ideal(n2):
    assert is_ideal(n2, n2.label_component("b"))
    assert not is_ideal(n2, n2.label_component("a"))


def test_oracle_verdicts(n2, n2_sum, so3, hsd):
    assert simplicity_oracle(n2).verdict == SIMPLE
    assert simplicity_oracle(so3).verdict == SIMPLE
    assert simplicity_oracle(hsd).verdict == SIMPLE
    verdict = simplicity_oracle(n2_sum)
    assert verdict.verdict == NOT_SIMPLE
    assert verdict.witness is not None and verdict.witness.dim == 2


def test_abelian_is_not_simple():
    verdict = simplicity_oracle(gen_abelian({"a": [0]}))
    assert verdict.verdict == NOT_SIMPLE
    assert verdict.reason == "[L, L] = 0"
    # 一维时除 0 与 L 外没有理想
    assert verdict.witness is not None and verdict.witness.is_zero
    wider = simplicity_oracle(gen_abelian({"a": [0], "b": [0]}))
    assert wider.witness is not None and wider.witness.dim == 1


def test_rational_sampling_is_flagged():
    # 两个 x 在同一分量中：采样路径
    alg = Algebra.build(
        RATIONALS,
        [("x1", "a", 0), ("x2", "a", 0), ("y", "b", 0)],
        {("x1", "x1"): {"y": 1}, ("x2", "x2"): {"y": 1}},
    )
    verdict = simplicity_oracle(alg, seed=3, samples=4)
    assert verdict.sampled
    assert verdict.verdict in (PROBABLY_SIMPLE, NOT_SIMPLE)


def test_oracle_matches_enumeration():
    for alg in (gen_n2_family(1, GF5), gen_n2_family(2, GF5), gen_abelian({"a": [0]}, GF5)):
        assert simplicity_oracle(alg).is_simple == brute_force_simplicity(alg)


def test_enumeration_preconditions(n2):
    with pytest.raises(PreconditionError):
        enumerate_graded_ideals(n2)
    with pytest.raises(PreconditionError):
        enumerate_graded_ideals(gen_n2_family(2, GF5), limit=2)
    ideals = enumerate_graded_ideals(gen_n2_family(1, GF5))
    assert len(ideals) == 3
