import pytest

from setgrad_leibniz.services import maxlen
from setgrad_leibniz.services.corpus import gen_abelian, gen_cyclic_pair
from setgrad_leibniz.services.exactlin import RATIONALS
from setgrad_leibniz.services.idealkit import NOT_SIMPLE, SimplicityVerdict
from setgrad_leibniz.services.maxlen import (
    I_PART,
    NOT_I_PART,
    SETTINGS,
    all_neg_I_connected,
    frakI_partition,
    is_maximal_length,
    is_S_multiplicative,
    neg_I_connected,
    property_checks,
    proposition_trichotomy,
    theorem_simplicity_check,
)
from setgrad_leibniz.services.supportgraph import plain
from setgrad_leibniz.utils.errors import (
    EndpointMismatchError,
    NotMaximalLengthError,
    PreconditionError,
)

from conftest import GF7, hsd_so3


def test_maximal_length(n2, so3):
    assert is_maximal_length(n2)
    assert is_maximal_length(so3)
    wide = gen_abelian({"a": [0, 0]})
    assert not is_maximal_length(wide)
    with pytest.raises(NotMaximalLengthError):
        frakI_partition(wide)


def test_partition(n2, hsd):
    part = frakI_partition(n2)
    assert part.S_I_0 == {"b"}
    assert part.S_notI_0 == {"a"}
    part = frakI_partition(hsd)
    assert part.S_I_1 == {"A'", "B'", "C'"}
    assert part.S_notI_0 == {"A", "B", "C"}
    assert part.upsilon_of("A'", 1) == I_PART
    assert part.upsilon_of("A", 0) == NOT_I_PART
    assert part.upsilon_of("A", 1) is None


def test_neg_i_connection_chain(so3):
    chain = neg_I_connected(so3, "A", 0, "C", 0)
    assert chain == [(plain("A"), 0), (plain("B"), 0)]
    assert neg_I_connected(so3, "A", 0, "A", 0) == []


def test_neg_i_connection_inside_module(hsd):
    chain = neg_I_connected(hsd, "A'", 1, "C'", 1)
    assert chain is not None
    assert chain[0] == (plain("A'"), 1)
    assert all(k == 0 for _, k in chain[1:])


def test_neg_i_endpoint_errors(hsd):
    with pytest.raises(EndpointMismatchError):
        neg_I_connected(hsd, "A", 0, "A'", 1)
    with pytest.raises(PreconditionError):
        neg_I_connected(hsd, "A", 1, "B", 0)


def test_all_connected(hsd, hsd_pair):
    assert all_neg_I_connected(hsd, I_PART) == (True, None)
    assert all_neg_I_connected(hsd, NOT_I_PART) == (True, None)
    ok, bad = all_neg_I_connected(hsd_pair, NOT_I_PART)
    assert not ok
    assert bad is not None


def test_s_multiplicative(n2, so3, hsd):
    assert is_S_multiplicative(n2).holds
    assert is_S_multiplicative(so3).holds
    assert is_S_multiplicative(hsd).holds


def test_s_multiplicative_counterexample(parity_gap):
    result = is_S_multiplicative(parity_gap)
    assert not result.holds
    assert result.counterexample == {
        "condition": 1, "a": "a", "i": 0, "b": "b", "j": 0, "r": "r", "k": 0,
    }


def test_theorem_vacuous_for_n2(n2):
    report = theorem_simplicity_check(n2)
    assert [(r.include_o, r.allow_tilde) for r in report.rows] == list(SETTINGS)
    assert not report.applicable
    assert report.consistent
    assert not report.row(True, False).hypotheses["notI_more_than_one"]


@pytest.mark.parametrize("parity", [0, 1])
def test_theorem_simple_hemisemidirect(parity):
    report = theorem_simplicity_check(hsd_so3(GF7, parity))
    assert report.applicable
    assert report.consistent
    row = report.row(True, False)
    assert row.hypotheses_hold
    assert row.lhs and row.rhs


def test_theorem_non_simple_pair(hsd_pair):
    report = theorem_simplicity_check(hsd_pair)
    row = report.row(True, False)
    assert row.hypotheses_hold
    assert not row.lhs
    assert not row.rhs
    assert report.consistent


def test_theorem_shared_labels_vacuous():
    # 模与 g 共用标签时 𝒵_Lie ≠ 0
    alg = hsd_so3(GF7, 1, labels=["A", "B", "C"])
    report = theorem_simplicity_check(alg)
    assert not report.row(True, False).hypotheses["lie_annihilator_zero"]
    assert report.consistent


def test_theorem_requires_maximal_length():
    with pytest.raises(NotMaximalLengthError):
        theorem_simplicity_check(gen_abelian({"a": [0, 0]}))


def test_property_checks_pass(hsd, hsd_pair, so3):
    for alg in (hsd, hsd_pair, so3):
        checks = property_checks(alg)
        assert not [c.name for c in checks if c.failed]


def test_trichotomy_simple_case(cyclic):
    result = proposition_trichotomy(cyclic)
    assert result.case == "Case1"
    assert (result.include_o, result.allow_tilde) == (True, False)
    assert result.consistent


def test_trichotomy_preconditions(n2, hsd):
    with pytest.raises(PreconditionError):
        proposition_trichotomy(hsd)
    with pytest.raises(PreconditionError):
        proposition_trichotomy(n2)


def test_same_label_other_parity_needs_a_chain(parity_gap):
    assert neg_I_connected(parity_gap, "b", 0, "b", 0) == []
    assert neg_I_connected(parity_gap, "b", 0, "b", 1) is None
    ok, bad = all_neg_I_connected(parity_gap, NOT_I_PART)
    assert not ok
    assert bad is not None


@pytest.mark.parametrize("fld", [RATIONALS, GF7])
def test_trichotomy_simple_cyclic_pair(fld):
    alg = gen_cyclic_pair(fld, 2)
    part = frakI_partition(alg)
    assert part.S_I == {"b1", "b2"}
    assert part.S_notI == {"a"}
    result = proposition_trichotomy(alg)
    assert result.case == "Case1"
    assert result.verdict.is_simple
    assert result.consistent


def test_trichotomy_second_case_checks(monkeypatch, cyclic):
    # 强制判定器给出非单纯，走第二种情形的结构检查
    forced = SimplicityVerdict(NOT_SIMPLE, cyclic.label_component("b"), False, "forced")
    monkeypatch.setattr(maxlen, "simplicity_oracle", lambda alg, seed=None: forced)
    result = proposition_trichotomy(cyclic)
    assert result.case == "Case2"
    checks = {c.name: c for c in result.checks}
    assert list(checks) == [
        "small_I_with_large_notI_impossible", "L_is_Lo_plus_La_plus_I", "La_is_subalgebra",
    ]
    assert checks["small_I_with_large_notI_impossible"].holds
    assert checks["L_is_Lo_plus_La_plus_I"].holds
    # [e, e] = m ∉ L_a
    assert not checks["La_is_subalgebra"].holds
    assert not result.dim_discrepancy
    assert not result.consistent
