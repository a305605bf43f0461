import pytest

from setgrad_leibniz.services.corpus import gen_abelian
from setgrad_leibniz.services.supportgraph import (
    SupportSymbol,
    chain_search_connected,
    connection_classes,
    is_connected,
    node_symbols,
    phi,
    plain,
    star,
    step_graph,
    support,
    tilde,
    verify_connection,
)
from setgrad_leibniz.utils.errors import PreconditionError


def test_support_sets(parity_gap):
    sets = support(parity_gap)
    assert sets.support == {"a", "b", "r"}
    assert sets.even == {"a", "b", "r"}
    assert sets.odd == {"b", "r"}


def test_symbol_parse():
    assert SupportSymbol.parse("a~") == tilde("a")
    assert SupportSymbol.parse("a") == plain("a")
    assert str(tilde("b")) == "b~"


def test_star_table(n2):
    assert star(n2, plain("a"), plain("a")) == {"b"}
    assert star(n2, plain("b"), plain("a")) == frozenset()
    assert star(n2, plain("b"), tilde("a")) == {"a"}
    assert star(n2, tilde("a"), plain("b")) == {"a"}
    assert star(n2, tilde("a"), tilde("a")) == frozenset()


def test_tilde_on_left_reads_second_argument_as_target(n2):
    # b̃ ⋆ a = a ⋆ b̃ = {c : 0 ≠ [L_c, L_b] ⊆ L_a}，[L_a, L_b] = [L_b, L_b] = 0
    assert star(n2, tilde("b"), plain("a")) == frozenset()
    assert star(n2, tilde("b"), plain("a")) == star(n2, plain("a"), tilde("b"))
    assert phi(n2, [tilde("b")], plain("a")) == frozenset()


def test_phi_drops_distinguished(n2, n2_o):
    assert phi(n2, [plain("a")], plain("a")) == {plain("b"), tilde("b")}
    assert phi(n2_o, [plain("a")], plain("a")) == frozenset()
    with pytest.raises(PreconditionError):
        phi(n2_o, [plain("b")], plain("a"))


def test_node_symbols_exclude_distinguished(n2_o):
    assert node_symbols(n2_o) == [plain("a"), tilde("a")]


def test_connection_witnesses(n2):
    assert is_connected(n2, "a", "b") == [plain("a"), plain("a")]
    assert is_connected(n2, "b", "a") == [plain("b"), tilde("a")]
    assert is_connected(n2, "a", "a") == [plain("a")]
    assert verify_connection(n2, "b", "a", [plain("b"), tilde("a")])
    assert not verify_connection(n2, "b", "a", [plain("b"), plain("a")])


def test_no_connection_between_summands(n2_sum):
    assert is_connected(n2_sum, "a1", "a2") is None
    assert not chain_search_connected(n2_sum, "a1", "b2")


def test_endpoint_checks(n2_o):
    with pytest.raises(PreconditionError):
        is_connected(n2_o, "a", "b")
    with pytest.raises(PreconditionError):
        is_connected(n2_o, "a", "zzz")


def test_classes(n2, n2_o, n2_sum, so3):
    assert [c.members for c in connection_classes(n2)] == [("a", "b")]
    assert [c.members for c in connection_classes(n2_o)] == [("a",)]
    assert [c.members for c in connection_classes(n2_sum)] == [("a1", "b1"), ("a2", "b2")]
    assert [c.members for c in connection_classes(so3)] == [("A", "B", "C")]


def test_abelian_classes_are_singletons():
    alg = gen_abelian({"a": [0], "b": [1], "c": [0, 1]})
    assert [c.members for c in connection_classes(alg)] == [("a",), ("b",), ("c",)]


def test_graph_agrees_with_chain_search(so3, n2_sum, hsd):
    for alg in (so3, n2_sum, hsd):
        graph = step_graph(alg)
        for a in alg.labels:
            for b in alg.labels:
                found = is_connected(alg, a, b, graph) is not None
                assert found == chain_search_connected(alg, a, b)
