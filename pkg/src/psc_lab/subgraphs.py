"""Biregular stage graphs and their nested regular subgraphs.

A stage graph pairs the t target projection directions (left vertices) with
the candidate monomials of one removal stage restricted to one partition
monomial over the non-target variables (right vertices).  Removing a
(y, l)-biregular set of right vertices lowers every target projection by the
same amount, which is what keeps partially symmetric codes symmetric.

Subgraph levels come in quanta: level j selects x = j*lcm(t,l)/l rights with
left degree y = j*lcm(t,l)/t.  Feasibility is certified by a max-flow bound
(source->left capacity y, edges capacity 1, right->sink capacity l); the
actual all-or-nothing selection is found by a deterministic backtracking
search, since an arbitrary maximum flow may split flow across partially
used right vertices and therefore does not always induce a valid selection.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class BipartiteStageGraph:
    """Stage graph for one partition monomial; edge (j, g) iff x_j | g."""

    m: int
    t: int
    lhat: int
    partition: int  # monomial mask over variables >= t
    rights: tuple[int, ...]  # full monomial masks, descending

    @property
    def left_degree(self) -> int:
        return math.comb(self.t - 1, self.lhat - 1)

    @property
    def quantum(self) -> int:
        """Smallest removable number of right vertices (at j = 1)."""
        return math.lcm(self.t, self.lhat) // self.lhat

    @property
    def unit_left_degree(self) -> int:
        return math.lcm(self.t, self.lhat) // self.t

    @property
    def jstar(self) -> int:
        q, r = divmod(len(self.rights), self.quantum)
        assert r == 0, "right vertex count must be a multiple of the quantum"
        return q

    def lefts_of(self, mask: int) -> list[int]:
        return [j for j in range(self.t) if mask >> j & 1]


def build_stage_graph(
    m: int, t: int, lhat: int, partition: int = 0, dhat: int | None = None
) -> BipartiteStageGraph:
    """All monomials with exactly lhat target variables times the partition.

    The optional dhat parameter asserts the total degree of the stage slice
    (lhat plus the partition degree).
    """
    if not 1 <= lhat <= t <= m:
        raise ValueError(f"need 1 <= lhat <= t <= m, got l={lhat} t={t} m={m}")
    if partition & ((1 << t) - 1):
        raise ValueError("partition monomial must use only variables >= t")
    if partition >> m:
        raise ValueError(f"partition monomial out of range for m={m}")
    deg = lhat + partition.bit_count()
    if dhat is not None and dhat != deg:
        raise ValueError(f"stage degree mismatch: expected {deg}, got {dhat}")
    rights = tuple(
        sorted((s | partition for s in _subsets_of_size(t, lhat)), reverse=True)
    )
    return BipartiteStageGraph(m, t, lhat, partition, rights)


def _subsets_of_size(t: int, size: int) -> list[int]:
    out = []
    for mask in range(1 << t):
        if mask.bit_count() == size:
            out.append(mask)
    return out


# --- max-flow feasibility certificate ---------------------------------------


class FlowNetwork:
    """Small integer-capacity flow network with Dinic's algorithm."""

    def __init__(self, n_nodes: int):
        self.n = n_nodes
        self.head: list[list[int]] = [[] for _ in range(n_nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, cap: int) -> int:
        idx = len(self.to)
        self.head[u].append(idx)
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(idx + 1)
        self.to.append(u)
        self.cap.append(0)
        return idx

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for idx in self.head[u]:
                    v = self.to[idx]
                    if self.cap[idx] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return flow
            it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, float("inf"), level, it)
                if not pushed:
                    break
                flow += pushed

    def _dfs(self, u, t, limit, level, it):
        if u == t:
            return limit
        while it[u] < len(self.head[u]):
            idx = self.head[u][it[u]]
            v = self.to[idx]
            if self.cap[idx] > 0 and level[v] == level[u] + 1:
                pushed = self._dfs(v, t, min(limit, self.cap[idx]), level, it)
                if pushed:
                    self.cap[idx] -= pushed
                    self.cap[idx ^ 1] += pushed
                    return pushed
            it[u] += 1
        return 0


def stage_flow_network(graph: BipartiteStageGraph, y: int) -> tuple[FlowNetwork, int, int]:
    """Flow network of the stage graph: returns (network, source, sink)."""
    t, rights = graph.t, graph.rights
    source, sink = 0, 1 + t + len(rights)
    net = FlowNetwork(sink + 1)
    for j in range(t):
        net.add_edge(source, 1 + j, y)
    for i, g in enumerate(rights):
        for j in graph.lefts_of(g):
            net.add_edge(1 + j, 1 + t + i, 1)
        net.add_edge(1 + t + i, sink, graph.lhat)
    return net, source, sink


def flow_certificate(graph: BipartiteStageGraph, j: int) -> int:
    """Max-flow value for level j; must saturate the source cut."""
    y = j * graph.unit_left_degree
    net, s, t = stage_flow_network(graph, y)
    return net.max_flow(s, t)


# --- all-or-nothing selection ------------------------------------------------


def _unit_solutions(order: tuple[int, ...], t: int, y1: int, quantum: int):
    """Yield every quantum-sized subset of `order` covering each left vertex
    exactly y1 times, in deterministic lexicographic order."""
    suffix = [[0] * t for _ in range(len(order) + 1)]
    for idx in range(len(order) - 1, -1, -1):
        row = suffix[idx + 1][:]
        g = order[idx]
        for j in range(t):
            if g >> j & 1:
                row[j] += 1
        suffix[idx] = row
    rem = [y1] * t
    chosen: list[int] = []

    def rec(idx: int, need: int):
        if need == 0:
            yield tuple(chosen)
            return
        if len(order) - idx < need:
            return
        suf = suffix[idx]
        for j in range(t):
            if rem[j] > suf[j]:
                return
        g = order[idx]
        bits = [j for j in range(t) if g >> j & 1]
        if all(rem[j] > 0 for j in bits):
            for j in bits:
                rem[j] -= 1
            chosen.append(g)
            yield from rec(idx + 1, need - 1)
            chosen.pop()
            for j in bits:
                rem[j] += 1
        yield from rec(idx + 1, need)

    yield from rec(0, quantum)


@lru_cache(maxsize=None)
def _baranyai_chain(t: int, lhat: int) -> tuple[tuple[int, ...], ...]:
    """Partition all lhat-subsets of [t] into jstar classes of quantum
    subsets, each class covering every element exactly y1 times.

    Classical flow induction: elements are introduced one at a time while
    every class holds a multiset of partial subsets; a transportation
    max-flow decides which partial subsets absorb the new element.  The
    proportional fractional solution is feasible, so the integral max flow
    saturates and the invariants (class size, per-class regularity, global
    subset counts) carry through all t steps.
    """
    lcm = math.lcm(t, lhat)
    quantum = lcm // lhat
    y1 = lcm // t
    n_classes = math.comb(t, lhat) // quantum
    classes: list[dict[int, int]] = [{0: quantum} for _ in range(n_classes)]
    for i in range(t):
        shapes = sorted({s for cls in classes for s in cls})
        shape_idx = {s: n for n, s in enumerate(shapes)}
        source = 0
        sink = 1 + n_classes + len(shapes)
        net = FlowNetwork(sink + 1)
        class_arcs: list[list[tuple[int, int, int]]] = [[] for _ in range(n_classes)]
        for c in range(1, n_classes + 1):
            net.add_edge(source, c, y1)
        for c, cls in enumerate(classes):
            for s, mult in sorted(cls.items()):
                need = lhat - s.bit_count()
                if need <= 0:
                    continue  # subset already complete, cannot absorb
                idx = net.add_edge(1 + c, 1 + n_classes + shape_idx[s], mult)
                class_arcs[c].append((idx, s, mult))
        for s in shapes:
            missing = lhat - s.bit_count() - 1
            cap = math.comb(t - i - 1, missing) if missing >= 0 else 0
            if cap > 0:
                net.add_edge(1 + n_classes + shape_idx[s], sink, cap)
        value = net.max_flow(source, sink)
        assert value == n_classes * y1, "transportation step failed to saturate"
        for c, arcs in enumerate(class_arcs):
            for idx, s, mult in arcs:
                x = mult - net.cap[idx]
                if x == 0:
                    continue
                cls = classes[c]
                cls[s] -= x
                if cls[s] == 0:
                    del cls[s]
                grown = s | (1 << i)
                cls[grown] = cls.get(grown, 0) + x
    out = []
    for cls in classes:
        assert all(mult == 1 and s.bit_count() == lhat for s, mult in cls.items())
        out.append(tuple(sorted(cls, reverse=True)))
    return tuple(out)


def unit_chain(graph: BipartiteStageGraph) -> tuple[frozenset[int], ...]:
    """The canonical nested decomposition of the whole stage graph into
    jstar unit quanta (full monomial masks, partition applied)."""
    return tuple(
        frozenset(s | graph.partition for s in cls)
        for cls in _baranyai_chain(graph.t, graph.lhat)
    )


def _available(graph: BipartiteStageGraph, selected) -> tuple[int, ...]:
    return tuple(g for g in graph.rights if g not in selected)


def _chain_prefix_level(graph: BipartiteStageGraph, selected) -> int | None:
    """Level j if selected equals the union of the first j canonical units."""
    chain = unit_chain(graph)
    union: set[int] = set()
    if not selected:
        return 0
    for j, unit in enumerate(chain, start=1):
        union |= unit
        if len(union) == len(selected):
            return j if union == set(selected) else None
    return None


def regular_subgraph(graph: BipartiteStageGraph, j: int) -> frozenset[int]:
    """Level-j biregular subgraph, returned as its set of right vertices.

    The selection carries all edges of each chosen right vertex, giving a
    (y, lhat)-biregular subgraph with exactly x = j*quantum right vertices.
    Built as j nested unit extensions; every valid level extends by one more
    unit, so the chain never needs global backtracking.
    """
    if not 0 <= j <= graph.jstar:
        raise ValueError(f"level j={j} out of range 0..{graph.jstar}")
    if j == 0:
        return frozenset()
    if j == graph.jstar:
        return frozenset(graph.rights)
    value = flow_certificate(graph, j)
    assert value == j * math.lcm(graph.t, graph.lhat), "max flow below saturation"
    chain = unit_chain(graph)
    return frozenset(g for unit in chain[:j] for g in unit)


def grow(graph: BipartiteStageGraph, selected: frozenset[int]) -> frozenset[int]:
    """Extend a level-j subgraph to a containing level-(j+1) subgraph.

    A selection on the canonical chain gains the next canonical unit, so
    repeated calls from the empty graph always reach the full graph.  Other
    valid selections get a searched single-unit extension; such an
    extension need not exist (a valid level can be a dead end), in which
    case a ValueError reports it.
    """
    j = _level_of(graph, selected)
    if j >= graph.jstar:
        raise ValueError("already at the full graph")
    if _chain_prefix_level(graph, selected) == j:
        return selected | unit_chain(graph)[j]
    unit = next(
        _unit_solutions(
            _available(graph, selected), graph.t, graph.unit_left_degree, graph.quantum
        ),
        None,
    )
    if unit is None:
        raise ValueError("no biregular extension exists for this subgraph")
    return selected | frozenset(unit)


def shrink(graph: BipartiteStageGraph, selected: frozenset[int]) -> frozenset[int]:
    """Shrink a level-j subgraph to a contained level-(j-1) subgraph.

    Chain-prefix selections drop their last canonical unit; other valid
    selections lose a searched unit quantum.
    """
    j = _level_of(graph, selected)
    if j < 1:
        raise ValueError("already empty")
    if _chain_prefix_level(graph, selected) == j:
        return selected - unit_chain(graph)[j - 1]
    sel_order = tuple(g for g in graph.rights if g in selected)
    unit = next(
        _unit_solutions(sel_order, graph.t, graph.unit_left_degree, graph.quantum),
        None,
    )
    if unit is None:
        raise ValueError("no biregular restriction exists for this subgraph")
    return selected - frozenset(unit)


def _level_of(graph: BipartiteStageGraph, selected: frozenset[int]) -> int:
    j, r = divmod(len(selected), graph.quantum)
    if r:
        raise ValueError("selection size is not a whole number of quanta")
    return j


def left_degrees(graph: BipartiteStageGraph, selected) -> list[int]:
    deg = [0] * graph.t
    for g in selected:
        for j in graph.lefts_of(g):
            deg[j] += 1
    return deg


def is_biregular(graph: BipartiteStageGraph, selected, j: int | None = None) -> bool:
    """Check the (y, lhat)-biregularity contract for a level-j selection."""
    if j is None:
        try:
            j = _level_of(graph, selected)
        except ValueError:
            return False
    if len(selected) != j * graph.quantum:
        return False
    y = j * graph.unit_left_degree
    if any(g not in graph.rights for g in selected):
        return False
    return left_degrees(graph, selected) == [y] * graph.t


def edges_of(graph: BipartiteStageGraph, selected) -> frozenset[tuple[int, int]]:
    return frozenset((j, g) for g in selected for j in graph.lefts_of(g))
