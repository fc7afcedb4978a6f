import numpy as np
import pytest

from cohcfg.cc import CoherentConfiguration
from cohcfg.errors import ResourceLimitError, UsageError
from cohcfg.perm import PermGroup
from cohcfg.wl import (coherence_violations, coherent_closure, extend_points,
                       stabilize, two_extension)

from test_cc import cycle_partition, thin_scheme, trivial_scheme


def dihedral(n):
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return PermGroup(n, [rot, ref])


def refines(fine, coarse):
    """every class of `fine` lies inside one class of `coarse`"""
    pairs = set(zip(fine.colors.ravel().tolist(), coarse.colors.ravel().tolist()))
    return len(pairs) == len({f for f, _ in pairs})


def test_closure_of_coherent_input_is_identity(hollmann8):
    cfg, _ = hollmann8
    assert coherent_closure(cfg.colors).same_partition(cfg)
    penta = CoherentConfiguration(cycle_partition(5))
    assert coherent_closure(penta.colors).same_partition(penta)


def test_closure_of_pentagon_equals_dihedral_orbitals():
    closed = coherent_closure(cycle_partition(5))
    assert closed.rank == 3
    assert closed.same_partition(dihedral(5).orbitals())


def test_closure_of_hexagon():
    raw = CoherentConfiguration(cycle_partition(6))
    assert not raw.validate("full").passed
    assert coherence_violations(raw.colors)
    closed = coherent_closure(cycle_partition(6))
    assert closed.rank == 4
    assert closed.same_partition(dihedral(6).orbitals())
    assert closed.validate("full").passed


def test_closure_of_trivial_partition():
    for n in (2, 5, 9):
        M = np.ones((n, n), dtype=int)
        closed = coherent_closure(M)
        assert closed.is_trivial_scheme()


def test_closure_idempotent():
    first = coherent_closure(cycle_partition(6))
    again = coherent_closure(first.colors)
    assert again.same_partition(first)


def test_closure_normalizes_transpose_and_diagonal():
    # one-directional cycle arcs: the class is not transpose closed as given
    n = 7
    M = np.full((n, n), 2)
    np.fill_diagonal(M, 0)
    for i in range(n):
        M[i, (i + 1) % n] = 1
    closed = coherent_closure(M)
    assert closed.validate("full").passed
    assert closed.same_partition(PermGroup(n, [tuple((i + 1) % n for i in range(n))]).orbitals())


def test_closure_monotone_under_merging(hollmann8, passman_schemes):
    for cfg in (hollmann8[0], passman_schemes[3][0]):
        merged = cfg.colors.copy()
        merged[merged == 2] = 1        # merge two same-fiber classes
        closed = coherent_closure(merged)
        assert refines(cfg, closed)


def test_extend_discrete_unchanged():
    disc = PermGroup(4, []).orbitals()
    assert extend_points(disc, [2]).same_partition(disc)


def test_extend_guards(hollmann8):
    cfg, _ = hollmann8
    with pytest.raises(UsageError):
        extend_points(cfg, [0, 0])
    with pytest.raises(UsageError):
        extend_points(cfg, [99])


def test_extend_hollmann8_fibers(hollmann8):
    cfg, _ = hollmann8
    xa = extend_points(cfg, [0])
    assert sorted(len(f) for f in xa.fibers()) == [1, 9, 9, 9]
    assert xa.validate("full").passed
    assert refines(xa, cfg)


def test_extension_order_independence(hollmann8, passman_schemes):
    rng = np.random.default_rng(7)
    for cfg in (hollmann8[0], passman_schemes[3][0]):
        for _ in range(3):
            pts = [int(p) for p in
                   rng.choice(cfg.degree, size=int(rng.integers(2, 4)),
                              replace=False)]
            joint = extend_points(cfg, pts)
            stepwise = extend_points(extend_points(cfg, pts[:1]), pts[1:])
            assert joint.same_partition(stepwise)


def test_point_stabilizer_generators_fix_extension(hollmann8):
    cfg, G = hollmann8
    xa = extend_points(cfg, [0])
    stab = G.point_stabilizer(0)
    M = xa.colors
    for g in stab.generators:
        f = np.asarray(g)
        assert np.array_equal(M[np.ix_(f, f)], M)


def test_matched_singleton_propagation(hollmann8):
    # extending by a point matched to beta splits exactly the same cells
    cfg, _ = hollmann8
    xa = extend_points(cfg, [0])
    delta_idx = next(i for i, f in enumerate(xa.fibers()) if len(f) > 1)
    other_idx = next(i for i, f in enumerate(xa.fibers())
                     if len(f) > 1 and i != delta_idx)
    m = xa.matchings_between(delta_idx, other_idx)[0]
    beta = int(xa.fibers()[delta_idx][0])
    # partner of beta under the matching
    row_cells = np.flatnonzero(xa.colors[beta] == m)
    gamma = int(row_cells[0])
    left = extend_points(xa, [beta])
    right = extend_points(xa, [gamma])
    assert left.same_partition(right)


def test_passman_special_pair_extension_partly_regular(passman_schemes):
    cfg, _, _ = passman_schemes[5]
    t = int(cfg.colors[0, 6])
    a, b = cfg.first_pair(t)
    ext = extend_points(cfg, [a, b])
    assert ext.is_partly_regular()[0]


def test_two_extension_degree_one():
    cfg = CoherentConfiguration(np.zeros((1, 1), dtype=int))
    assert two_extension(cfg).degree == 1


def test_two_extension_trivial_scheme_on_three_points():
    te = two_extension(trivial_scheme(3))
    g1, g2 = (1, 0, 2), (1, 2, 0)

    def coord_square(g):
        return tuple(g[i // 3] * 3 + g[i % 3] for i in range(9))

    oracle = PermGroup(9, [coord_square(g1), coord_square(g2)]).orbitals()
    assert te.degree == 9
    assert te.same_partition(oracle)


def test_two_extension_thin_cyclic_four():
    te = two_extension(thin_scheme(4))
    c4 = tuple((i + 1) % 4 for i in range(4))
    diag = PermGroup(16, [tuple(c4[i // 4] * 4 + c4[i % 4] for i in range(16))])
    assert te.same_partition(diag.orbitals())
    off = [i for i in range(16) if i // 4 != i % 4]
    assert te.restriction(off).is_semiregular()


def test_two_extension_guard():
    with pytest.raises(ResourceLimitError):
        two_extension(trivial_scheme(31))


def test_stabilize_is_deterministic(hollmann8):
    cfg, _ = hollmann8
    M = cfg.colors.copy()
    M[0, 0] = cfg.rank
    a = stabilize(M)
    b = stabilize(M)
    assert np.array_equal(a, b)
