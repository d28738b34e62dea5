"""Module construction, layered graphs, isomorphism and transport."""

import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fixture_path
from corpus import cases
from uniserial import (IdealBasis, PointError, QuiverError, build_module, decide_iso,
                       detour_bijection, enumerate_detours, enumerate_masts, iso_system,
                       layered_graph, load_presentation, parse_path, transport_mast,
                       variety_generators)
from uniserial.groebner import groebner_basis, reduce
from uniserial.linear import mat_mul
from uniserial.modules import intertwines, module_violations, witness_map
from uniserial.polynomial import parse_polynomial

FAMILY_MAST = "beta*alpha*gamma*beta*alpha"
SINGLE_MAST = "epsilon*gamma*beta*alpha*delta*alpha"


def setup(name, mast):
    pres = load_presentation(fixture_path(name))
    return pres, parse_path(mast, pres.quiver)


def ints(m):
    return [[c for c in row] for row in m]


# -- building modules -------------------------------------------------------------


@pytest.mark.parametrize("c", [0, 1, F(-2, 3)])
def test_loop_module_matrices(c):
    pres, p = setup("square-zero-loop.quiver", "beta*alpha")
    m = build_module(pres, p, (c,))
    assert ints(m.matrices["alpha"]) == [[0, 0, 0], [1, 0, 0], [0, 0, 0]]
    assert ints(m.matrices["beta"]) == [[0, 0, 0], [0, 0, 0], [c, 1, 0]]


def test_vertex_mast_gives_simple_module():
    pres, _ = setup("square-zero-loop.quiver", "alpha")
    m = build_module(pres, pres.quiver.vertex_path("2"), ())
    assert m.dimension == 1
    assert all(not any(row) for mat in m.matrices.values() for row in mat)


@pytest.mark.parametrize("c", [0, 3, F(1, 2)])
def test_single_class_module_kills_relations(c):
    pres, p = setup("single-class.quiver", SINGLE_MAST)
    m = build_module(pres, p, (c, c, 1))
    for r in pres.relations:
        assert not any(any(row) for row in m.element_matrix(r))
    assert not module_violations(m)


def test_point_off_variety_rejected():
    pres, p = setup("single-class.quiver", SINGLE_MAST)
    with pytest.raises(PointError):
        build_module(pres, p, (1, 2, 1))
    with pytest.raises(PointError):
        build_module(pres, p, (1, 1))


def test_violations_are_reported():
    pres, p = setup("square-zero-loop.quiver", "beta*alpha")
    m = build_module(pres, p, (1,))
    broken = dict(m.matrices)
    broken["alpha"] = ((0, 0, 0), (0, 0, 0), (0, 0, 0))
    bad = type(m)(m.presentation, m.table, m.point, broken)
    problems = module_violations(bad)
    assert any("alpha" in s for s in problems)
    assert any("annihilates" in s for s in problems)


def test_every_corpus_point_builds_a_sound_module():
    for _, pres, p in cases("GF(2)"):
        v = variety_generators(pres, p)
        for k in pres.field.points(v.nvars):
            if v.contains(k):
                m = build_module(pres, p, k, v)
                assert m.dimension == p.length + 1
                assert not module_violations(m)


# -- layered graphs ---------------------------------------------------------------


def test_graph_exports():
    pres, p = setup("one-parameter.quiver", FAMILY_MAST)
    m = build_module(pres, p, (1, 2, 0, 0, 3))
    g = layered_graph(m)
    dot = g.to_dot()
    assert dot.startswith("digraph") and 'label="e(1)"' in dot
    assert "L1 -> L3" in dot and "dashed" in dot
    text = g.to_text()
    assert "beta -> layer 3" in text
    assert len(g.mast_edges) == 5


def test_graph_of_zero_point_has_only_mast_edges():
    for name, mast, n in [("one-parameter.quiver", FAMILY_MAST, 5), ("square-zero-loop.quiver", "beta*alpha", 1)]:
        pres, p = setup(name, mast)
        assert layered_graph(build_module(pres, p, (0,) * n)).extra_edges == ()


def test_graph_for_another_top_element():
    pres, p = setup("one-parameter.quiver", FAMILY_MAST)
    m = build_module(pres, p, (1, 2, 0, 0, 3))
    # beta kills the b2 component of y = b0 - b1, so its edge from layer 1 drops to layer 6
    assert (1, 6, "beta") in layered_graph(m, (1, -1, 0, 0, 0, 0)).extra_edges
    assert (1, 3, "beta") in layered_graph(m).extra_edges
    with pytest.raises(PointError):
        layered_graph(m, (0, 1, 0, 0, 0, 0))
    with pytest.raises(PointError):
        layered_graph(m, (1, 0, 1, 0, 0, 0))


# -- isomorphism systems -------------------------------------------------------------


def test_single_class_system_modulo_the_variety():
    pres, p = setup("single-class.quiver", SINGLE_MAST)
    system = iso_system(pres, p)
    assert system.t == 1 and system.nvars == 7
    fam = {"X": 0, "Y": 3, "Z": 6}

    def P(t):
        return parse_polynomial(t, 7, variables=fam)

    assert [eq.difference for eq in system.equations] == [
        P("X[1] - Y[1] - Z[1]"), P("X[2] - Y[3]*Z[1] - Y[2]"), P("X[3] - Y[3]")]
    vanish = groebner_basis(IdealBasis(tuple(P(t) for t in
                                             ["X[2]-X[1]", "X[3]-1", "Y[2]-Y[1]", "Y[3]-1"]), 7))
    reduced = {reduce(eq.difference, vanish.polys).monic() for eq in system.equations}
    assert reduced == {reduce(P("X[1] - Y[1] - Z[1]"), vanish.polys).monic(), P("0")}


def test_acyclic_mast_system_is_equality():
    pres, p = setup("two-components.quiver", "epsilon*delta*gamma*beta*alpha")
    system = iso_system(pres, p)
    assert system.t == 0
    n = system.n
    expected = {parse_polynomial(f"X[{i}] - Y[{i}]", 2 * n, variables={"X": 0, "Y": n})
                for i in range(1, n + 1)}
    assert {eq.difference for eq in system.equations} == expected


def test_cycle_count_matches_returns_to_start():
    for _, pres, p in cases("Q"):
        system = iso_system(pres, p)
        assert system.t == sum(1 for v in p.vertices[1:] if v == p.source)
        n = system.n
        for eq in system.equations:
            assert all(eq.difference.degree_in(2 * n + j) <= 1 for j in range(system.t))


def test_identical_points_need_no_correction():
    pres, p = setup("one-parameter.quiver", FAMILY_MAST)
    system = iso_system(pres, p)
    result = decide_iso(system, (1, 2, 0, 0, 3), (1, 2, 0, 0, 3))
    assert result.isomorphic and all(c == 0 for c in result.witness)


def test_listed_verdicts():
    pres, p = setup("one-parameter.quiver", FAMILY_MAST)
    system = iso_system(pres, p)
    assert decide_iso(system, (1, 2, 0, 0, 3), (4, 5, 0, 0, 3)).isomorphic
    assert not decide_iso(system, (1, 2, 0, 0, 3), (1, 2, 0, 0, 4)).isomorphic


def test_decide_iso_rejects_bad_points():
    pres, p = setup("single-class.quiver", SINGLE_MAST)
    system = iso_system(pres, p)
    with pytest.raises(PointError):
        decide_iso(system, (1, 1, 1), (1, 2, 1))
    with pytest.raises(PointError):
        decide_iso(system, (1, 1), (1, 1, 1))


def _sample_points(pres, p, rng, count):
    v = variety_generators(pres, p)
    pts = [k for k in pres.field.points(v.nvars) if v.contains(k)]
    return v, [rng.choice(pts) for _ in range(count)] if pts else []


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_isomorphism_is_an_equivalence(rng):
    _, pres, p = rng.choice(list(cases("GF(3)")))
    v, pts = _sample_points(pres, p, rng, 3)
    if not pts:
        return
    system = iso_system(pres, p, v)
    a, b, c = pts

    def iso(x, y):
        return decide_iso(system, x, y).isomorphic

    assert iso(a, a)
    assert iso(a, b) == iso(b, a)
    if iso(a, b) and iso(b, c):
        assert iso(a, c)


def test_without_cycles_isomorphism_is_equality():
    for _, pres, p in cases("GF(3)"):
        if p.source in p.vertices[1:]:
            continue
        v = variety_generators(pres, p)
        system = iso_system(pres, p, v)
        pts = [k for k in pres.field.points(v.nvars) if v.contains(k)]
        for a, b in itertools.product(pts[:12], repeat=2):
            assert decide_iso(system, a, b).isomorphic == (a == b)


def test_witness_is_a_module_isomorphism():
    checked = 0
    for _, pres, p in cases("GF(3)"):
        v = variety_generators(pres, p)
        system = iso_system(pres, p, v)
        pts = [k for k in pres.field.points(v.nvars) if v.contains(k)][:8]
        mods = {k: build_module(pres, p, k, v) for k in pts}
        for a, b in itertools.product(pts, repeat=2):
            result = decide_iso(system, a, b)
            if result.isomorphic:
                f = witness_map(mods[a], mods[b], result.witness, system.cycles)
                assert intertwines(mods[a], mods[b], f)
                checked += 1
    assert checked > 50


# -- transport ---------------------------------------------------------------------


def test_transport_to_the_same_mast_is_identity():
    pres, p = setup("parallel-pair.quiver", "beta*alpha")
    t = transport_mast(pres, p, p, (2, F(1, 2)))
    assert t.point == (2, F(1, 2))


def test_transport_requires_same_vertices():
    pres, p = setup("one-parameter.quiver", FAMILY_MAST)
    q = parse_path("beta*alpha", pres.quiver)
    with pytest.raises(QuiverError):
        transport_mast(pres, p, q, (0,) * 5)


def _parallel_cases(field):
    for name, pres, p in cases(field):
        for q in enumerate_masts(pres, p.vertices):
            if q != p:
                yield name, pres, p, q


def test_transport_round_trip_and_compatibility():
    moved = 0
    for _, pres, p, q in _parallel_cases("GF(3)"):
        vp, vq = variety_generators(pres, p), variety_generators(pres, q)
        field = pres.field
        for k in pres.field.points(vp.nvars):
            if not vp.contains(k):
                continue
            t = transport_mast(pres, p, q, k, vp, vq)
            if t is None:
                continue
            moved += 1
            assert vq.contains(t.point)
            back = transport_mast(pres, q, p, t.point, vq, vp)
            assert back is not None and back.point == tuple(k)
            mp = build_module(pres, p, k, vp)
            mq = build_module(pres, q, t.point, vq)
            c = t.basis_change
            for a in mp.matrices:
                assert mat_mul(mp.matrices[a], c, field) == mat_mul(c, mq.matrices[a], field)
    assert moved > 20


def test_transport_over_q_round_trip():
    pres = load_presentation(fixture_path("two-components.quiver"))
    p = parse_path("epsilon*delta*gamma*beta*alpha", pres.quiver)
    q = parse_path("epsilon'*delta*gamma*beta'*alpha", pres.quiver)
    vp, vq = variety_generators(pres, p), variety_generators(pres, q)
    rng = random.Random(1)
    for _ in range(5):
        s = F(rng.choice([1, 2, -3, 5]), rng.choice([1, 2, 7]))
        k = (s ** 2, s ** 2, s ** 2, s ** 3, s ** 3)
        assert vp.contains(k)
        t = transport_mast(pres, p, q, k, vp, vq)
        assert t is not None and vq.contains(t.point)
        assert transport_mast(pres, q, p, t.point, vq, vp).point == k


# -- detour bijection ------------------------------------------------------------------


def test_bijection_identity():
    pres, p = setup("one-parameter.quiver", FAMILY_MAST)
    rho = detour_bijection(pres, p, p)
    assert all(k == v for k, v in rho.items())


def test_bijection_examples():
    pres = load_presentation(fixture_path("parallel-pair.quiver"))
    p, q = (parse_path(s, pres.quiver) for s in ("beta*alpha", "beta'*alpha"))
    rho = detour_bijection(pres, p, q)
    assert rho == {("alpha'", 0): ("alpha'", 0), ("beta'", 1): ("beta", 1)}
    assert [d.size for d in enumerate_detours(pres, q)] == [1, 1]
    pres = load_presentation(fixture_path("two-components.quiver"))
    p = parse_path("epsilon*delta*gamma*beta*alpha", pres.quiver)
    q = parse_path("epsilon'*delta*gamma*beta'*alpha", pres.quiver)
    rho = detour_bijection(pres, p, q)
    tp, tq = enumerate_detours(pres, p), enumerate_detours(pres, q)
    assert tp.nvars == tq.nvars == 5
    assert sorted(rho.values()) == sorted((d.arrow, d.u_length) for d in tq)


def test_bijection_on_all_parallel_pairs():
    for _, pres, p, q in _parallel_cases("Q"):
        rho = detour_bijection(pres, p, q)
        tp, tq = enumerate_detours(pres, p), enumerate_detours(pres, q)
        assert tp.nvars == tq.nvars
        for key, image in rho.items():
            assert tp.lookup(*key).size == tq.lookup(*image).size
