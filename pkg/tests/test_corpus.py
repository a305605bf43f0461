import pytest

from setgrad_leibniz.services.algebra import validate
from setgrad_leibniz.services.corpus import (
    adjoint_action,
    build_corpus,
    check_module_law,
    gen_abelian,
    gen_affine_line,
    gen_cyclic_pair,
    gen_hemisemidirect,
    gen_n2_family,
    gen_perturb,
    gen_relabel,
    gen_so3,
    random_relabel,
    theorem_family,
    zero_action,
)
from setgrad_leibniz.services.exactlin import RATIONALS, sum_spaces
from setgrad_leibniz.services.idealkit import frak_I
from setgrad_leibniz.services.maxlen import proposition_trichotomy, theorem_simplicity_check
from setgrad_leibniz.utils.errors import GenerationError

from conftest import GF5


def test_abelian_omits_empty_labels():
    alg = gen_abelian({"a": [0], "b": [], "c": [1, 0]})
    assert alg.labels == ("a", "c")
    assert alg.products == {}
    assert validate(alg).valid


def test_n2_family_naming():
    assert [b.name for b in gen_n2_family(1).basis] == ["x", "y"]
    assert [b.label for b in gen_n2_family(2).basis] == ["a1", "b1", "a2", "b2"]
    assert frak_I(gen_n2_family(3)).dim == 3
    with pytest.raises(GenerationError):
        gen_n2_family(0)


def test_hemisemidirect_trivial():
    lie = gen_abelian({"s": [0]})
    alg = gen_hemisemidirect(lie, zero_action(lie), 0)
    assert alg.dim == 2
    assert alg.products == {}


def test_hemisemidirect_affine_odd_module():
    lie = gen_affine_line()
    alg = gen_hemisemidirect(lie, adjoint_action(lie), 1)
    assert alg.dim == 4
    assert validate(alg).valid
    module = alg.parity_component(1)
    assert frak_I(alg).total.is_subspace_of(module)


def test_module_law_violation():
    lie = gen_affine_line()
    one = RATIONALS(1)
    action = [[(one,)], [(one,)]]
    assert not check_module_law(lie, action)
    with pytest.raises(GenerationError):
        gen_hemisemidirect(lie, action, 0, labels=["m"], names=["m"])


def test_relabel_merge_can_break_grading():
    # [x1, x1] = y1 与 [x2, x2] = y2 落在不同标签上
    with pytest.raises(GenerationError):
        gen_relabel(gen_n2_family(2), {"a1": "a", "a2": "a"})


def test_relabel_merge_can_keep_grading():
    # so(3) 的 ℤ₂×ℤ₂ 分次合并两条线后仍是集合分次
    alg = gen_relabel(gen_so3(), {"A": "AB", "B": "AB"})
    assert alg.labels == ("AB", "C")
    assert validate(alg).valid


def test_random_relabel_keeps_structure():
    base = gen_n2_family(2, GF5)
    alg = random_relabel(base, seed=3)
    assert validate(alg).valid
    assert alg.dim == base.dim
    assert len(alg.labels) == len(base.labels)
    assert frak_I(alg).dim == frak_I(base).dim
    assert random_relabel(base, seed=3) == alg


def test_perturb():
    base = gen_n2_family(1)
    same, valid = gen_perturb(base, 0, seed=1)
    assert same == base
    assert valid
    _, valid_a = gen_perturb(base, 2, seed=5)
    _, valid_b = gen_perturb(base, 2, seed=5)
    assert valid_a == valid_b


def test_build_corpus_mix():
    corpus = build_corpus(seed=0)
    families = [e.spec.family for e in corpus]
    assert families.count("Abelian") == 50
    assert families.count("N2Family") == 50
    assert families.count("Hemisemidirect") == 50
    assert families.count("Relabel") == 30
    assert families.count("Perturb") == 20
    assert families.count("Cyclic") == 16
    for entry in corpus:
        assert validate(entry.algebra).valid == entry.expected_valid
    hsd = [e for e in corpus if e.spec.family == "Hemisemidirect"]
    assert {e.algebra.field.characteristic for e in hsd} == {5, 7}


def test_build_corpus_is_reproducible():
    assert build_corpus(seed=4) == build_corpus(seed=4)


def test_theorem_family_satisfies_hypotheses():
    family = theorem_family()
    assert len(family) >= 25
    for entry in family[:6]:
        report = theorem_simplicity_check(entry.algebra)
        assert report.applicable
        assert report.consistent


def test_cyclic_pair():
    alg = gen_cyclic_pair(GF5, 3)
    assert validate(alg).valid
    assert frak_I(alg).total == sum_spaces(alg.label_component("b1"), alg.label_component("b2"))
    with pytest.raises(GenerationError):
        gen_cyclic_pair(GF5, 5)


def test_corpus_reaches_small_cardinality_case():
    cyclic = [e for e in build_corpus(seed=0) if e.spec.family == "Cyclic"]
    for entry in cyclic:
        result = proposition_trichotomy(entry.algebra)
        assert result.case == "Case1"
        assert result.consistent
