"""Overlap classes, the overlap graph with multiplicities, and the overlap
coincidence decision.

An overlap class (i, j, t) stands for a color-i tile at 0 together with a
color-j tile at t whose interiors meet; it is a coincidence when i = j and
t = 0.  Inflating both tiles and pairing intersecting subtiles generates the
edges of a finite directed multigraph (finiteness comes from the Meyer
property of the return vectors, enforced here by a vertex cap).  Overlap
coincidence holds iff every vertex reaches a coincidence vertex.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .graphkit import Digraph, distances_to, reachable_to, scc, perron_equals
from .numberfield import AlgebraicReal, fast_cmp
from .tiling import Patch, TilingSystem


class CapExceededError(RuntimeError):
    """Closure grew past the configured vertex cap."""


@dataclass(frozen=True)
class OverlapClass:
    color_u: int
    color_v: int
    shift: AlgebraicReal

    @property
    def is_coincidence(self) -> bool:
        return self.color_u == self.color_v and self.shift.is_zero()

    def key(self):
        return (self.color_u, self.color_v, self.shift.coeffs)

    def label(self) -> str:
        return f"({self.color_u},{self.color_v},{self.shift})"


@dataclass
class OverlapGraph:
    vertices: list[OverlapClass]
    edges: dict[tuple[int, int], int]  # (src index, dst index) -> multiplicity
    inflation_level: int

    def digraph(self) -> Digraph:
        return Digraph(
            len(self.vertices),
            tuple((u, v, w) for (u, v), w in sorted(self.edges.items())),
        )

    def coincidence_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.vertices) if c.is_coincidence]


def make_class(system: TilingSystem, cu: int, cv: int, shift: AlgebraicReal) -> OverlapClass:
    if (shift + system.length(cv)).sign() <= 0 or (system.length(cu) - shift).sign() <= 0:
        raise ValueError("tiles do not share an interior point")
    return OverlapClass(cu, cv, shift)


def inflate_class(system: TilingSystem, c: OverlapClass, level: int = 1) -> Counter:
    """Multiset of overlap classes produced by inflating both tiles of c."""
    return Counter(dict(
        (child, mult) for child, mult in _inflate_children(system, c, level)
    ))


def seed_overlaps(system: TilingSystem, patch: Patch, ys) -> list[OverlapClass]:
    """All overlap classes realized by tile pairs of the patch shifted by the
    given return vectors.

    Candidate pairs are pre-filtered by a float window (with slack exceeding
    the rigorous approximation error) and confirmed exactly, so the result is
    identical to the all-pairs exact scan.
    """
    from bisect import bisect_left
    from math import lcm

    field = system.field
    d = field.degree
    # Common denominator turns position coordinates into int tuples, so the
    # quadratic dedup loop below runs on ints instead of Fractions.
    den = 1
    for t in patch.tiles:
        for c in t.pos.coeffs:
            den = lcm(den, c.denominator)
    for y in ys:
        for c in y.coeffs:
            den = lcm(den, c.denominator)

    def to_int(x: AlgebraicReal):
        return tuple(int(c * den) for c in x.coeffs)

    def from_int(v):
        return field.element([Fraction(c, den) for c in v])

    # Distinct values of pos(V) - pos(U) per ordered color pair.
    by_color: dict[int, list[tuple]] = {}
    for t in patch.tiles:
        by_color.setdefault(t.color, []).append(to_int(t.pos))
    diff_sets: dict[tuple[int, int], set[tuple]] = {}
    for cu, pus in by_color.items():
        for cv, pvs in by_color.items():
            ds = diff_sets.setdefault((cu, cv), set())
            for pu in pus:
                for pv in pvs:
                    ds.add(tuple(a - b for a, b in zip(pv, pu)))

    pairs = sorted({to_int(y) for y in ys})
    ys_objs = [from_int(v) for v in pairs]
    ys_decorated = sorted(zip([float(o) for o in ys_objs], pairs), key=lambda z: z[0])
    ys_float = [z[0] for z in ys_decorated]
    ys_int = [z[1] for z in ys_decorated]
    slack = 1e-6
    classes: dict[tuple, OverlapClass] = {}
    decided: set[tuple] = set()
    for (cu, cv), ds in sorted(diff_sets.items()):
        len_u, len_v = system.length(cu), system.length(cv)
        flu, flv = float(len_u), float(len_v)
        for dv in sorted(ds):
            fd = float(from_int(dv))
            # overlap iff -len_v < d - y < len_u
            i = bisect_left(ys_float, fd - flu - slack)
            while i < len(ys_int) and ys_float[i] <= fd + flv + slack:
                shift_int = tuple(a - b for a, b in zip(dv, ys_int[i]))
                key = (cu, cv, shift_int)
                if key not in decided:
                    decided.add(key)
                    fs = fd - ys_float[i]
                    if -flv + slack < fs < flu - slack:
                        ok = True
                    elif fs < -flv - slack or fs > flu + slack:
                        ok = False
                    else:
                        shift = from_int(shift_int)
                        ok = (shift + len_v).sign() > 0 and (len_u - shift).sign() > 0
                    if ok:
                        c = OverlapClass(cu, cv, from_int(shift_int))
                        classes[c.key()] = c
                i += 1
    return [classes[k] for k in sorted(classes)]


def build_graph(
    system: TilingSystem,
    seeds,
    level: int = 1,
    cap: int = 10**4,
) -> OverlapGraph:
    """Breadth-first closure of the seeds under inflate_class."""
    if not seeds:
        raise ValueError("need at least one seed overlap class")
    order: dict[tuple, int] = {}
    vertices: list[OverlapClass] = []

    def intern(c: OverlapClass) -> int:
        k = c.key()
        if k not in order:
            if len(vertices) >= cap:
                raise CapExceededError(
                    f"overlap closure exceeded vertex cap {cap}; "
                    "either the input is not Meyer or the cap is too small"
                )
            order[k] = len(vertices)
            vertices.append(c)
        return order[k]

    edges: dict[tuple[int, int], int] = {}
    frontier = [intern(c) for c in seeds]
    done: set[int] = set()
    while frontier:
        nxt = []
        for ui in frontier:
            if ui in done:
                continue
            done.add(ui)
            for child, mult in _inflate_children(system, vertices[ui], level):
                vi = intern(child)
                edges[(ui, vi)] = edges.get((ui, vi), 0) + mult
                if vi not in done:
                    nxt.append(vi)
        frontier = nxt
    return OverlapGraph(vertices, edges, level)


def _inflate_children(system: TilingSystem, c: OverlapClass, level: int):
    from .tiling import Tile

    upatch = system.inflate(Tile(c.color_u, system.field.zero()), level)
    vpatch = system.inflate(Tile(c.color_v, c.shift), level)
    counts: dict[tuple, int] = {}
    objs: dict[tuple, OverlapClass] = {}
    for a in upatch.tiles:
        a_end = system.end(a)
        for b in vpatch.tiles:
            if fast_cmp(system.end(b), a.pos) > 0 and fast_cmp(a_end, b.pos) > 0:
                child = OverlapClass(a.color, b.color, b.pos - a.pos)
                k = child.key()
                counts[k] = counts.get(k, 0) + 1
                objs.setdefault(k, child)
    return [(objs[k], counts[k]) for k in sorted(counts)]


def overlap_coincidence(g: OverlapGraph):
    """(verdict, certificate).

    verdict True: certificate maps each vertex index to its shortest path
    length into a coincidence.  verdict False: certificate is the sorted list
    of vertex indices from which no coincidence is reachable.
    """
    coins = g.coincidence_indices()
    if not coins:
        if not g.vertices:
            raise ValueError("empty overlap graph")
        return False, sorted(range(len(g.vertices)))
    dg = g.digraph()
    reach = reachable_to(dg, coins)
    if len(reach) == len(g.vertices):
        return True, distances_to(dg, coins)
    return False, sorted(set(range(len(g.vertices))) - reach)


def stuck_scc_indices(g: OverlapGraph) -> list[list[int]]:
    """Nontrivial SCCs none of whose vertices reach a coincidence."""
    dg = g.digraph()
    reach = reachable_to(dg, g.coincidence_indices())
    comps, _ = scc(dg)
    has_self = {(u, v) for (u, v) in g.edges}
    out = []
    for comp in comps:
        if any(v in reach for v in comp):
            continue
        nontrivial = len(comp) > 1 or (comp[0], comp[0]) in has_self
        if nontrivial:
            out.append(comp)
    return out


def expansive_sccs(system: TilingSystem, g: OverlapGraph):
    """For each coincidence-avoiding SCC, whether the Perron root of its
    multiplicity matrix equals beta^inflation_level (decided exactly)."""
    target = system.beta ** g.inflation_level
    descriptors = []
    for comp in stuck_scc_indices(g):
        idx = {v: i for i, v in enumerate(comp)}
        mat = [[0] * len(comp) for _ in comp]
        for (u, v), w in g.edges.items():
            if u in idx and v in idx:
                mat[idx[u]][idx[v]] += w
        descriptors.append(
            {
                "vertices": comp,
                "matrix": mat,
                "perron_is_expansion": perron_equals(mat, target),
            }
        )
    return descriptors


# -- seeding with radius stability ---------------------------------------------


def stable_overlap_graph(
    system: TilingSystem,
    radius=None,
    level: int = 1,
    cap: int = 10**4,
    max_doublings: int = 10,
):
    """Builds the overlap graph from a central patch, doubling the seeding
    radius until two consecutive doublings yield identical closed vertex
    sets.  Returns (graph, radius_used).
    """
    if radius is None:
        max_len = system.lengths[0]
        for l in system.lengths[1:]:
            if l > max_len:
                max_len = l
        radius = 8 * max_len
    prev_keys = None
    for _ in range(max_doublings + 1):
        patch = system.central_patch(radius)
        ys = system.return_vectors(patch)
        seeds = seed_overlaps(system, patch, ys)
        graph = build_graph(system, seeds, level, cap)
        keys = frozenset(c.key() for c in graph.vertices)
        if keys == prev_keys:
            return graph, radius
        prev_keys = keys
        radius = 2 * radius
    raise CapExceededError(
        f"overlap-graph vertex set did not stabilize within {max_doublings} "
        "radius doublings"
    )


# -- DOT export ------------------------------------------------------------------


def to_dot(g: OverlapGraph, reach_info=None) -> str:
    """Deterministic DOT rendering; coincidence vertices are double-circled,
    vertices that cannot reach a coincidence are shaded."""
    ordering = sorted(range(len(g.vertices)), key=lambda i: g.vertices[i].key())
    rank = {v: r for r, v in enumerate(ordering)}
    stuck = set()
    if reach_info is not None and isinstance(reach_info, list):
        stuck = set(reach_info)
    lines = ["digraph overlaps {"]
    for i in ordering:
        c = g.vertices[i]
        attrs = [f'label="{c.label()}"']
        if c.is_coincidence:
            attrs.append("shape=doublecircle")
        else:
            attrs.append("shape=circle")
        if i in stuck:
            attrs.append('style=filled fillcolor=lightgray')
        lines.append(f"  v{rank[i]} [{' '.join(attrs)}];")
    for (u, v), w in sorted(g.edges.items(), key=lambda e: (rank[e[0][0]], rank[e[0][1]])):
        lines.append(f'  v{rank[u]} -> v{rank[v]} [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
