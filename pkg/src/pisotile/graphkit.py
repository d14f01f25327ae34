"""Directed-multigraph algorithms: Tarjan SCCs, reverse reachability,
out-degree-1 cycle-extension subgraphs, and exact Perron-root comparison
against an algebraic target.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy import Poly, Symbol

from .numberfield import AlgebraicReal

_X = Symbol("x")


@dataclass(frozen=True)
class Digraph:
    """edges are (src, dst, multiplicity) with 0-based vertices."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if w < 1:
                raise ValueError("edge multiplicities must be >= 1")

    def successors(self):
        adj = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
        return adj

    def predecessors(self):
        adj = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[v].append((u, w))
        return adj


def scc(g: Digraph):
    """Tarjan partition (list of vertex lists, reverse topological order)
    and the condensation digraph."""
    adj = [sorted({v for v, _ in succ}) for succ in g.successors()]
    index = [None] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = [0]

    for root in range(g.n):
        if index[root] is not None:
            continue
        # Iterative Tarjan to avoid recursion limits.
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] is None:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))

    comp_of = [0] * g.n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    cond_edges = sorted(
        {
            (comp_of[u], comp_of[v])
            for u, v, _ in g.edges
            if comp_of[u] != comp_of[v]
        }
    )
    condensation = Digraph(len(comps), tuple((u, v, 1) for u, v in cond_edges))
    return comps, condensation


def reachable_to(g: Digraph, targets) -> set[int]:
    """Vertices with a (possibly empty) path into targets, by reverse BFS."""
    pred = g.predecessors()
    seen = set(targets)
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for u, _ in pred[v]:
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen


def distances_to(g: Digraph, targets) -> dict[int, int]:
    """Shortest path length into targets per vertex (BFS on the reverse graph)."""
    pred = g.predecessors()
    dist = {v: 0 for v in targets}
    frontier = sorted(dist)
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for u, _ in pred[v]:
                if u not in dist:
                    dist[u] = d
                    nxt.append(u)
        frontier = nxt
    return dist


def is_strongly_connected(g: Digraph) -> bool:
    comps, _ = scc(g)
    return len(comps) == 1


def functional_cycles(succ: list[int]) -> list[tuple[int, ...]]:
    """Cycles of an out-degree-1 graph, each rotated to start at its minimum."""
    n = len(succ)
    color = [0] * n  # 0 unvisited, 1 in progress, 2 done
    cycles = []
    for start in range(n):
        if color[start]:
            continue
        path = []
        v = start
        while color[v] == 0:
            color[v] = 1
            path.append(v)
            v = succ[v]
        if color[v] == 1:
            cyc = path[path.index(v):]
            k = cyc.index(min(cyc))
            cycles.append(tuple(cyc[k:] + cyc[:k]))
        for u in path:
            color[u] = 2
    return sorted(cycles)


def canonical_cycle(cycle) -> tuple[int, ...]:
    cyc = list(cycle)
    k = cyc.index(min(cyc))
    return tuple(cyc[k:] + cyc[:k])


def cycle_extension(g: Digraph, cycles) -> Digraph:
    """Out-degree-1 subgraph of a strongly connected g whose cycle set is exactly
    ``cycles`` (vertex-disjoint simple cycles of g).

    Construction: start from the union of the cycles, then repeatedly attach
    an outside vertex that has an edge into the current subgraph, giving it
    that single outgoing edge.  Ties pick the smallest vertex, then smallest
    target, for determinism.
    """
    if not cycles:
        raise ValueError("need at least one cycle")
    if not is_strongly_connected(g):
        raise ValueError("graph is not strongly connected")
    edge_set = {(u, v) for u, v, _ in g.edges}
    chosen: dict[int, int] = {}
    seen_vertices: set[int] = set()
    for cyc in cycles:
        cyc = tuple(cyc)
        if set(cyc) & seen_vertices:
            raise ValueError("cycles are not vertex-disjoint")
        seen_vertices.update(cyc)
        for a, b in zip(cyc, cyc[1:] + (cyc[0],)):
            if (a, b) not in edge_set:
                raise ValueError(f"cycle edge ({a},{b}) not in graph")
            chosen[a] = b
    attached = set(seen_vertices)
    while len(attached) < g.n:
        progress = False
        for u in range(g.n):
            if u in attached:
                continue
            targets = sorted(v for (x, v) in edge_set if x == u and v in attached)
            if targets:
                chosen[u] = targets[0]
                attached.add(u)
                progress = True
                break
        if not progress:
            raise ValueError("no attachable vertex; graph not strongly connected")
    edges = tuple(sorted((u, v, 1) for u, v in chosen.items()))
    return Digraph(g.n, edges)


# -- exact Perron comparison ---------------------------------------------------


def _char_poly(matrix_rows) -> Poly:
    return sympy.Matrix([[int(e) for e in row] for row in matrix_rows]).charpoly(_X)


def _eval_poly_at(poly: Poly, x: AlgebraicReal) -> AlgebraicReal:
    acc = x.field.zero()
    for c in poly.all_coeffs():
        acc = acc * x + x.field.from_rational(Fraction(int(c.p), int(c.q)))
    return acc


def _root_equals(root, target: AlgebraicReal, factor: Poly) -> bool:
    """Whether a real CRootOf/Rational of an irreducible factor equals target,
    given that the factor vanishes at target (so target is one of its roots)."""
    if root.is_rational:
        return (target - Fraction(int(root.p), int(root.q))).is_zero()
    tol = sympy.Rational(1, 2**20)
    while True:
        approx = root.eval_rational(tol)
        a = Fraction(int(approx.p), int(approx.q))
        t = Fraction(tol.p, tol.q)
        lo, hi = a - t, a + t
        # target enclosure
        width = Fraction(hi - lo) / 4 if hi > lo else Fraction(1, 2**20)
        tlo, thi = _enclose(target, width)
        if thi < lo or tlo > hi:
            return False
        if lo <= tlo and thi <= hi and factor.count_roots(lo, hi) == 1:
            return True
        tol /= 2**8


def _enclose(x: AlgebraicReal, width: Fraction):
    from .numberfield import _interval_poly_eval

    w = width
    while True:
        lo, hi = _interval_poly_eval(x.coeffs, *x.field.enclosure(w))
        if hi - lo <= width:
            return lo, hi
        w /= 4


def _compare_root_target(root, target: AlgebraicReal) -> int:
    """sign(root - target) for a sympy real root known to differ from target."""
    if root.is_rational:
        s = (target - Fraction(int(root.p), int(root.q))).sign()
        return -s
    tol = sympy.Rational(1, 2**16)
    while True:
        approx = root.eval_rational(tol)
        a = Fraction(int(approx.p), int(approx.q))
        t = Fraction(tol.p, tol.q)
        lo, hi = a - t, a + t
        tlo, thi = _enclose(target, t)
        if thi < lo:
            return 1
        if tlo > hi:
            return -1
        tol /= 2**8


def perron_equals(matrix_rows, target: AlgebraicReal) -> bool:
    """Exactly decide whether the spectral radius of a nonnegative integer
    matrix equals ``target``.

    True iff target is a root of the characteristic polynomial (exact zero
    test in Q(beta)) and no real root exceeds it.
    """
    chi = _char_poly(matrix_rows)
    if not _eval_poly_at(chi, target).is_zero():
        return False
    for factor, _ in chi.factor_list()[1]:
        vanishes = _eval_poly_at(factor, target).is_zero()
        for root in factor.real_roots(radicals=False):
            if vanishes and _root_equals(root, target, factor):
                continue
            if _compare_root_target(root, target) > 0:
                return False
    return True
