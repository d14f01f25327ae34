"""Overlap classes, graph closure, coincidence verdicts, and DOT export."""

import pytest

from pisotile import (
    CapExceededError,
    OverlapClass,
    Substitution,
    TilingSystem,
    build_graph,
    expansive_sccs,
    inflate_class,
    make_class,
    overlap_coincidence,
    seed_overlaps,
    stable_overlap_graph,
    stuck_scc_indices,
    to_dot,
)


@pytest.fixture(scope="module")
def fib():
    return TilingSystem(Substitution(2, ((1, 2), (1,))))


@pytest.fixture(scope="module")
def tm():
    return TilingSystem(Substitution(2, ((1, 2), (2, 1))))


def test_make_class(fib):
    c = make_class(fib, 1, 1, fib.field.zero())
    assert c.is_coincidence
    c2 = make_class(fib, 1, 2, fib.field.one())
    assert not c2.is_coincidence
    with pytest.raises(ValueError):
        make_class(fib, 2, 2, fib.field.from_rational(2))  # disjoint supports


def test_inflate_class_coincidence(fib):
    c = make_class(fib, 1, 1, fib.field.zero())
    children = inflate_class(fib, c)
    assert all(ch.is_coincidence for ch in children)
    assert sum(children.values()) == 2  # the two subtiles of sigma(1)


def test_seed_overlaps_self(fib):
    p = fib.central_patch(4)
    ys = [fib.field.zero()]
    seeds = seed_overlaps(fib, p, ys)
    # y = 0 produces exactly the self-coincidence classes present.
    assert {(c.color_u, c.color_v) for c in seeds} == {(1, 1), (2, 2)}
    assert all(c.is_coincidence for c in seeds)


def test_seed_overlaps_shift(tm):
    p = tm.central_patch(4)
    seeds = seed_overlaps(tm, p, [tm.field.one()])
    keys = {(c.color_u, c.color_v, c.shift.coeffs) for c in seeds}
    zero = tm.field.zero().coeffs
    assert (1, 2, zero) in keys or (2, 1, zero) in keys


def test_seed_symmetry(fib):
    p = fib.central_patch(6)
    ys = fib.return_vectors(p)
    seeds = seed_overlaps(fib, p, ys)
    keys = {c.key() for c in seeds}
    # (i, j, t) realized -> (j, i, -t) realized (with y replaced by -y).
    for c in seeds:
        assert (c.color_v, c.color_u, (-c.shift).coeffs) in keys


def test_fibonacci_graph(fib):
    g, radius = stable_overlap_graph(fib)
    assert len(g.vertices) == 10
    oc, cert = overlap_coincidence(g)
    assert oc
    assert set(cert) == set(range(10))
    assert max(cert.values()) <= 3
    assert stuck_scc_indices(g) == []


def test_thue_morse_graph(tm):
    g, _ = stable_overlap_graph(tm)
    oc, cert = overlap_coincidence(g)
    assert not oc
    labels = {g.vertices[i].label() for i in cert}
    assert labels == {"(1,2,0)", "(2,1,0)"}
    sccs = stuck_scc_indices(g)
    assert len(sccs) == 1
    descs = expansive_sccs(tm, g)
    assert len(descs) == 1
    assert sorted(map(sorted, descs[0]["matrix"])) == [[1, 1], [1, 1]]
    assert descs[0]["perron_is_expansion"] is True


def test_closure_idempotence(fib, tm):
    for system in (fib, tm):
        g, _ = stable_overlap_graph(system)
        g2 = build_graph(system, list(g.vertices), level=g.inflation_level)
        assert {c.key() for c in g2.vertices} == {c.key() for c in g.vertices}


def test_multiplicity_conservation(fib, tm):
    for system in (fib, tm):
        g, _ = stable_overlap_graph(system)
        for ui, c in enumerate(g.vertices):
            out = sum(w for (u, _), w in g.edges.items() if u == ui)
            children = inflate_class(system, c, g.inflation_level)
            assert out == sum(children.values())


def test_absorbing_coincidences(fib, tm):
    for system in (fib, tm):
        g, _ = stable_overlap_graph(system)
        coins = set(g.coincidence_indices())
        for (u, v), _ in g.edges.items():
            if u in coins:
                assert v in coins


def test_verdict_radius_stability(fib, tm):
    for system, expected in ((fib, True), (tm, False)):
        g, radius = stable_overlap_graph(system)
        g2 = build_graph(
            system,
            seed_overlaps(
                system,
                system.central_patch(2 * radius),
                system.return_vectors(system.central_patch(2 * radius)),
            ),
            level=1,
        )
        assert overlap_coincidence(g2)[0] == expected
        assert {c.key() for c in g2.vertices} == {c.key() for c in g.vertices}


def test_vertex_cap(fib):
    p = fib.central_patch(6)
    seeds = seed_overlaps(fib, p, fib.return_vectors(p))
    with pytest.raises(CapExceededError):
        build_graph(fib, seeds, cap=3)


def test_level_two_edges(fib):
    g1, _ = stable_overlap_graph(fib, level=1)
    g2, _ = stable_overlap_graph(fib, level=2)
    # The verdict is invariant under inflation powers.
    assert overlap_coincidence(g1)[0] == overlap_coincidence(g2)[0]
    assert g2.inflation_level == 2


def test_build_graph_requires_seeds(fib):
    with pytest.raises(ValueError):
        build_graph(fib, [])


def test_dot_deterministic(tm):
    g, _ = stable_overlap_graph(tm)
    _, cert = overlap_coincidence(g)
    d1 = to_dot(g, cert)
    d2 = to_dot(g, cert)
    assert d1 == d2
    assert d1.startswith("digraph overlaps {")
    assert "doublecircle" in d1  # coincidences marked
    assert "fillcolor=lightgray" in d1  # stuck vertices shaded
    assert d1.count("->") == len(g.edges)
