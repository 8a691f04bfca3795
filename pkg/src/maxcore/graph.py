"""Digraph view of a matrix: strongly connected components, the reduced graph
of classes, access relations and cyclicity."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .matrix import TropicalMatrix


@dataclass(frozen=True)
class Digraph:
    """Weighted digraph on nodes ``0..n-1``; ``succ[i]`` maps ``j`` to ``w(i, j)``."""

    n: int
    succ: tuple

    @property
    def edges(self) -> list:
        return [(i, j) for i in range(self.n) for j in sorted(self.succ[i])]

    def has_loop(self, i: int) -> bool:
        return i in self.succ[i]

    def subgraph(self, nodes: Iterable[int]) -> "Digraph":
        keep = set(nodes)
        return Digraph(
            self.n,
            tuple({j: w for j, w in s.items() if j in keep} if i in keep else {} for i, s in enumerate(self.succ)),
        )


def build_digraph(A: TropicalMatrix) -> Digraph:
    return Digraph(A.n, tuple(dict(r) for r in A.rows))


def digraph_from_edges(n: int, edges: Iterable[tuple]) -> Digraph:
    succ = [dict() for _ in range(n)]
    for e in edges:
        succ[e[0]][e[1]] = e[2] if len(e) > 2 else 0
    return Digraph(n, tuple(succ))


def strongly_connected_components(n: int, succ: Sequence[Mapping]) -> list:
    """Tarjan's algorithm, iterative; returns a list of node sets."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if root in index:
            continue
        work = [(root, iter(sorted(succ[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(succ[w]))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    return comps


@dataclass(frozen=True)
class SccPartition:
    """Classes ``N_mu`` ordered so that arcs only go from a class to an
    earlier-or-equal one (block lower triangular Frobenius form)."""

    classes: tuple
    class_of: tuple

    @property
    def order(self) -> list:
        """Node permutation bringing the matrix to Frobenius normal form."""
        return [i for c in self.classes for i in sorted(c)]


@dataclass(frozen=True)
class ReducedGraph:
    """Graph of classes.  ``access[mu]`` is the set of classes reachable from
    ``mu`` (reflexive); ``accessed_by[nu]`` its transpose."""

    edges: frozenset
    trivial: tuple
    access: tuple
    accessed_by: tuple

    @property
    def r(self) -> int:
        return len(self.trivial)

    def accesses(self, mu: int, nu: int) -> bool:
        return nu in self.access[mu]

    def is_initial(self, mu: int) -> bool:
        return self.accessed_by[mu] == {mu}

    def is_final(self, mu: int) -> bool:
        return self.access[mu] == {mu}


def scc_condense(g: Digraph) -> tuple:
    """SCC partition in Frobenius order plus the reduced graph.

    Classes are sorted topologically with sinks first; among classes that are
    ready at the same time the one with the smallest node comes first.
    """
    comps = strongly_connected_components(g.n, g.succ)
    cid = {}
    for k, c in enumerate(comps):
        for v in c:
            cid[v] = k
    out = [set() for _ in comps]
    for i in range(g.n):
        for j in g.succ[i]:
            if cid[i] != cid[j]:
                out[cid[i]].add(cid[j])
    pending = [len(o) for o in out]
    preds = [set() for _ in comps]
    for k, o in enumerate(out):
        for m in o:
            preds[m].add(k)
    heap = [(min(comps[k]), k) for k in range(len(comps)) if pending[k] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, k = heapq.heappop(heap)
        order.append(k)
        for p in preds[k]:
            pending[p] -= 1
            if pending[p] == 0:
                heapq.heappush(heap, (min(comps[p]), p))
    new_id = {k: mu for mu, k in enumerate(order)}
    classes = tuple(comps[k] for k in order)
    class_of = tuple(new_id[cid[v]] for v in range(g.n))
    edges = frozenset((new_id[k], new_id[m]) for k in range(len(comps)) for m in out[k])
    trivial = tuple(len(c) == 1 and not g.has_loop(next(iter(c))) for c in classes)
    r = len(classes)
    adj = [[] for _ in range(r)]
    for mu, nu in edges:
        adj[mu].append(nu)
    access = []
    # classes only reach earlier classes, so closures can be built in order
    for mu in range(r):
        reach = {mu}
        for nu in adj[mu]:
            reach |= access[nu]
        access.append(reach)
    accessed_by = [set() for _ in range(r)]
    for mu in range(r):
        for nu in access[mu]:
            accessed_by[nu].add(mu)
    partition = SccPartition(classes, class_of)
    reduced = ReducedGraph(edges, trivial, tuple(frozenset(a) for a in access), tuple(frozenset(a) for a in accessed_by))
    return partition, reduced


def component_cyclicity(g: Digraph, component: Iterable[int]) -> int:
    """Cyclicity (gcd of cycle lengths) of a strongly connected node set.

    Uses BFS levels: the gcd over internal edges ``(u, v)`` of
    ``level(u) + 1 - level(v)``.  A single node without a loop has cyclicity 1.
    """
    comp = set(component)
    root = min(comp)
    level = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.succ[u]:
            if v in comp and v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    if len(level) != len(comp):
        raise ValueError("component is not strongly connected")
    d = 0
    for u in comp:
        for v in g.succ[u]:
            if v in comp:
                d = gcd(d, level[u] + 1 - level[v])
    return d if d else 1


@dataclass(frozen=True)
class CyclicityInfo:
    per_component: tuple
    overall: int


def graph_cyclicity(cyclicities: Iterable[int]) -> CyclicityInfo:
    """Combine per-component cyclicities (lcm; 1 for no components)."""
    per = tuple(cyclicities)
    return CyclicityInfo(per, lcm(*per) if per else 1)


def is_primitive(c: CyclicityInfo | int) -> bool:
    return (c.overall if isinstance(c, CyclicityInfo) else c) == 1


def reachable_from(g: Digraph, sources: Iterable[int]) -> set:
    seen = set(sources)
    stack = list(seen)
    while stack:
        u = stack.pop()
        for v in g.succ[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen
