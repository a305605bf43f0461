"""
支撑集组合结构：⋆ 运算、φ 映射、连接与连接等价类

连接的存在性归结为符号图上的可达性：当 t ∈ φ({s}, r) 时连一条 s -> t 的边，
边属性 via 记录第一个产生它的 r。由于 φ 对 U 的并可分配，迭代 φ 的取值恰好是
从起点出发沿路径可达的符号集合。
"""

import logging
from dataclasses import dataclass
from itertools import pairwise
from typing import Iterable, Optional

import networkx as nx

from ..utils.errors import InternalInconsistencyError, PreconditionError
from .algebra import Algebra

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SupportSymbol:
    """支撑标签 a 或其形式伴随 ã"""

    base: str
    tilded: bool = False

    def tilde(self) -> "SupportSymbol":
        return SupportSymbol(self.base, not self.tilded)

    @property
    def sort_key(self) -> tuple[bool, str]:
        return (self.tilded, self.base)

    def __str__(self) -> str:
        return f"{self.base}~" if self.tilded else self.base

    @classmethod
    def parse(cls, text: str) -> "SupportSymbol":
        """解析命令行符号：末尾的 ~ 表示 tilde 伴随"""
        text = text.strip()
        if text.endswith("~"):
            return cls(text[:-1], True)
        return cls(text, False)


def plain(label: str) -> SupportSymbol:
    return SupportSymbol(label, False)


def tilde(label: str) -> SupportSymbol:
    return SupportSymbol(label, True)


def sort_symbols(symbols: Iterable[SupportSymbol]) -> list[SupportSymbol]:
    return sorted(symbols, key=lambda s: s.sort_key)


def format_symbols(symbols: Iterable[SupportSymbol]) -> list[str]:
    return [str(s) for s in sort_symbols(symbols)]


@dataclass(frozen=True)
class SupportSets:
    support: frozenset
    even: frozenset
    odd: frozenset

    def to_dict(self) -> dict:
        return {
            "support": sorted(self.support),
            "even": sorted(self.even),
            "odd": sorted(self.odd),
        }


def support(alg: Algebra) -> SupportSets:
    """(𝔖, 𝔖^0, 𝔖^1)"""
    even = frozenset(label for (label, parity) in alg.cells if parity == 0)
    odd = frozenset(label for (label, parity) in alg.cells if parity == 1)
    return SupportSets(frozenset(alg.labels), even, odd)


def star(alg: Algebra, x: SupportSymbol, y: SupportSymbol) -> frozenset[str]:
    """
    ⋆ 运算
    a ⋆ b = {c} 当 0 ≠ [L_a, L_b] ⊆ L_c，否则 ∅
    a ⋆ b̃ = b̃ ⋆ a = {c ∈ 𝔖 : 0 ≠ [L_c, L_b] ⊆ L_a}
    ã ⋆ b̃ = ∅
    """
    if x.tilded and y.tilded:
        return frozenset()
    if not x.tilded and not y.tilded:
        return alg.label_targets.get((x.base, y.base), frozenset())
    a, b = (x.base, y.base) if not x.tilded else (y.base, x.base)
    return frozenset(
        c for c in alg.labels if alg.label_targets.get((c, b)) == frozenset({a})
    )


def all_symbols(alg: Algebra) -> list[SupportSymbol]:
    """𝔖 ∪̇ 𝔖̃，普通符号在前"""
    return [plain(a) for a in alg.labels] + [tilde(a) for a in alg.labels]


def node_symbols(alg: Algebra) -> list[SupportSymbol]:
    """(𝔖 ∪̇ 𝔖̃) \\ {𝔬, 𝔬̃}"""
    return [s for s in all_symbols(alg) if s.base != alg.distinguished]


def phi(alg: Algebra, symbols: Iterable[SupportSymbol], r: SupportSymbol) -> frozenset[SupportSymbol]:
    """φ(U, r) = (⋃_{x∈U} x ⋆ r \\ {𝔬}) 及其 tilde 副本"""
    labels: set[str] = set()
    for x in symbols:
        if alg.distinguished is not None and x.base == alg.distinguished:
            raise PreconditionError("φ 的参数 U 不能含 𝔬 或 𝔬̃")
        labels |= star(alg, x, r)
    labels.discard(alg.distinguished)
    return frozenset([plain(c) for c in labels] + [tilde(c) for c in labels])


def step_graph(alg: Algebra) -> nx.DiGraph:
    """符号单步图：t ∈ φ({s}, r) 时连边 s -> t，via = 最先出现的 r"""
    graph = nx.DiGraph()
    nodes = node_symbols(alg)
    graph.add_nodes_from(nodes)
    rs = all_symbols(alg)
    for s in nodes:
        for r in rs:
            for t in sort_symbols(phi(alg, (s,), r)):
                if not graph.has_edge(s, t):
                    graph.add_edge(s, t, via=r)
    logger.debug(f"符号图: {graph.number_of_nodes()} 个节点, {graph.number_of_edges()} 条边")
    return graph


def _check_endpoint(alg: Algebra, label: str) -> None:
    if label not in alg.labels:
        raise PreconditionError(f"{label!r} 不在支撑集中")
    if label == alg.distinguished:
        raise PreconditionError(f"{label!r} 是特殊标签 𝔬，不参与连接")


def verify_connection(alg: Algebra, a: str, b: str, chain: list[SupportSymbol]) -> bool:
    """按定义直接迭代 φ 检查一条连接"""
    if not chain or chain[0].base != a:
        return False
    if len(chain) == 1:
        return chain[0] == plain(a) and a == b
    current: frozenset = frozenset({chain[0]})
    for r in chain[1:]:
        if not current:
            return False
        current = phi(alg, current, r)
    return plain(b) in current


def is_connected(
    alg: Algebra, a: str, b: str, graph: Optional[nx.DiGraph] = None
) -> Optional[list[SupportSymbol]]:
    """返回 a 到 b 的一条连接 {r1,...,rn}，不存在时返回 None"""
    _check_endpoint(alg, a)
    _check_endpoint(alg, b)
    if a == b:
        return [plain(a)]
    graph = graph if graph is not None else step_graph(alg)
    best: Optional[list[SupportSymbol]] = None
    for source in (plain(a), tilde(a)):
        try:
            path = nx.shortest_path(graph, source, plain(b))
        except nx.NetworkXNoPath:
            continue
        if best is None or len(path) < len(best):
            best = path
    if best is None:
        return None
    chain = [best[0]] + [graph.edges[u, v]["via"] for u, v in pairwise(best)]
    if not verify_connection(alg, a, b, chain):
        raise InternalInconsistencyError(
            f"连接 {format_symbols(chain)} 未通过直接 φ 迭代验证"
        )
    return chain


def chain_search_connected(alg: Algebra, a: str, b: str, depth: Optional[int] = None) -> bool:
    """穷举迭代 φ 的取值（深度 <= 2|𝔖|），与符号图结果互相印证"""
    _check_endpoint(alg, a)
    _check_endpoint(alg, b)
    if a == b:
        return True
    depth = 2 * len(alg.labels) if depth is None else depth
    rs = all_symbols(alg)
    frontier = {frozenset({plain(a)}), frozenset({tilde(a)})}
    seen = set(frontier)
    for _ in range(depth - 1):
        nxt = set()
        for state in frontier:
            for r in rs:
                image = phi(alg, state, r)
                if not image:
                    continue
                if plain(b) in image:
                    return True
                if image not in seen:
                    seen.add(image)
                    nxt.add(image)
        if not nxt:
            break
        frontier = nxt
    return False


@dataclass(frozen=True)
class ConnectionClass:
    representative: str
    members: tuple[str, ...]

    def __contains__(self, label: str) -> bool:
        return label in self.members

    def to_dict(self) -> dict:
        return {"representative": self.representative, "members": list(self.members)}


def reachable_labels(alg: Algebra, a: str, graph: nx.DiGraph) -> frozenset[str]:
    """{a} ∪ ({a, ã} 出发可达的普通符号)"""
    reach = {plain(a), tilde(a)}
    for source in (plain(a), tilde(a)):
        reach |= nx.descendants(graph, source)
    return frozenset({s.base for s in reach if not s.tilded} | {a})


def connection_relation(alg: Algebra, graph: Optional[nx.DiGraph] = None) -> dict[str, frozenset[str]]:
    graph = graph if graph is not None else step_graph(alg)
    return {
        a: reachable_labels(alg, a, graph) for a in alg.labels if a != alg.distinguished
    }


def connection_classes(alg: Algebra, graph: Optional[nx.DiGraph] = None) -> list[ConnectionClass]:
    """𝔖 \\ {𝔬} 在 ∼ 下的划分，按代表元排序"""
    relation = connection_relation(alg, graph)
    merged = nx.Graph()
    merged.add_nodes_from(relation)
    for a, reach in relation.items():
        for b in reach:
            if b != a:
                merged.add_edge(a, b)
    if any(a not in relation[b] for a, reach in relation.items() for b in reach):
        logger.warning("连接关系不对称，按等价闭包合并类")
    classes = [tuple(sorted(comp)) for comp in nx.connected_components(merged)]
    classes.sort()
    logger.debug(f"连接等价类: {classes}")
    return [ConnectionClass(members[0], members) for members in classes]


def class_of(classes: list[ConnectionClass], label: str) -> Optional[ConnectionClass]:
    return next((c for c in classes if label in c.members), None)
