"""The eleven numbered acceptance criteria.

Each test carries an ``acceptance`` marker; a one-line PASS/FAIL summary per
criterion is printed at the end of the pytest run.  Running this file as a
script prints the same lines.
"""

import itertools
import random
from fractions import Fraction as F

import pytest

from oracles import (all_routes, brute_force_isomorphic, direct_matrices, intersect_ideals,
                     renumbered, random_normal_form, raw_detours, satisfies_relations)
from corpus import cases

from uniserial import (QQ, AlgebraElement, IdealBasis, Path, Polynomial, Presentation, Quiver,
                       build_module, decide_iso, enumerate_detours, groebner_basis,
                       ideal_equal, is_nonempty_variety, is_unit_ideal, iso_system,
                       layered_graph, normal_form, parse_element, point_on_variety,
                       realize_variety, transport_mast, variety_generators,
                       verify_realization)
from uniserial.groebner import reduce
from uniserial.modules import module_violations
from uniserial.polynomial import parse_polynomial

CUBIC_MAST = "alpha4*alpha3*alpha2*gamma^2*alpha1"
FAMILY_MAST = "beta*alpha*gamma*beta*alpha"
SINGLE_MAST = "epsilon*gamma*beta*alpha*delta*alpha"
CUBIC_RENUMBER = {5: 6, 6: 5}
FAMILY_RENUMBER = {1: 1, 2: 2, 3: 5, 4: 3, 5: 4}


def _basis(polys, n):
    return IdealBasis(tuple(polys), n, QQ)


@pytest.mark.acceptance(1, "nodal cubic: ideal equals the nine reference generators; nonempty")
def test_criterion_01_alpha_curve(load):
    pres, p = load("nodal-cubic.quiver", CUBIC_MAST)
    v = variety_generators(pres, p)
    assert v.nvars == 10
    expected = renumbered(["X[3]", "X[6]", "X[7]", "X[8]-1", "X[5]*X[9]*X[10]-X[1]*X[4]-X[2]*X[5]",
                           "X[1]-X[4]", "X[2]-X[5]", "X[5]-X[9]", "X[5]-X[10]"], 10, CUBIC_RENUMBER)
    assert ideal_equal(v.ideal, _basis(expected, 10))
    assert is_nonempty_variety(pres, p)


@pytest.mark.acceptance(2, "empty variety: unit ideal, nonemptiness check false")
def test_criterion_02_empty(load):
    pres, p = load("empty.quiver", "delta*beta*alpha")
    v = variety_generators(pres, p)
    assert is_unit_ideal(v.ideal)
    assert not is_nonempty_variety(pres, p)
    gens = set(v.ideal.polys)
    assert parse_polynomial("X[2]", 2) in gens
    assert parse_polynomial("1 - X[1]*X[2]", 2) in gens


@pytest.mark.acceptance(3, "square-zero loop: zero ideal in one variable; all points isomorphic")
def test_criterion_03_loop(load):
    pres, p = load("square-zero-loop.quiver", "beta*alpha")
    v = variety_generators(pres, p)
    assert v.nvars == 1
    assert not groebner_basis(v.ideal).polys
    system = iso_system(pres, p, v)
    for c in [0, 1, -1, 2, 7, F(-1, 3)]:
        assert decide_iso(system, (c,), (0,)).isomorphic


def _extra_edges(pres, p, v, k):
    return set(layered_graph(build_module(pres, p, k, v)).extra_edges)


@pytest.mark.acceptance(4, "one-parameter family: ideal, isomorphism system, verdicts, graphs")
def test_criterion_04_one_parameter_family(load):
    pres, p = load("one-parameter.quiver", FAMILY_MAST)
    v = variety_generators(pres, p)
    assert ideal_equal(v.ideal, _basis(renumbered(["X[4]", "X[5]"], 5, FAMILY_RENUMBER), 5))

    system = iso_system(pres, p, v)
    assert system.t == 3
    n = system.nvars
    fam = {"X": 0, "Y": 5, "Z": 10}
    ren = {}
    for off in (0, 5):
        for src, dst in FAMILY_RENUMBER.items():
            ren[off + src - 1] = off + dst - 1
    ren.update({10 + j: 10 + j for j in range(3)})
    reference = [parse_polynomial(t, n, QQ, fam).rename(ren, n) for t in
             ["X[1] - Y[1] - Z[1]", "Z[2]*X[1] + X[2] - Y[2] - Z[2]*Y[3] - Z[3]", "X[3] - Y[3]"]]
    # the reference equations are already simplified on V_p x V_p
    vanish = groebner_basis(IdealBasis(tuple(
        parse_polynomial(t, n, QQ, fam) for t in ["X[3]", "X[4]", "Y[3]", "Y[4]"]), n, QQ))
    ours = {reduce(eq.difference, vanish.polys).monic() for eq in system.equations}
    ours.discard(Polynomial.zero(n, QQ))
    assert ours == {reduce(f, vanish.polys).monic() for f in reference}

    samples = [(1, 2, 0, 0, 3), (4, 5, 0, 0, 3), (0, F(1, 2), 0, 0, 0), (-2, 0, 0, 0, 3),
               (7, 7, 0, 0, -1)]
    for k in samples:
        assert point_on_variety(v.ideal, k)
    for k, k2 in itertools.product(samples, repeat=2):
        assert decide_iso(system, k, k2).isomorphic == (k[4] == k2[4])

    beta = "beta"
    assert _extra_edges(pres, p, v, (1, 2, 0, 0, 3)) == {(1, 3, beta), (4, 6, beta)}
    assert _extra_edges(pres, p, v, (0, 2, 0, 0, 3)) == {(1, 6, beta), (4, 6, beta)}
    assert _extra_edges(pres, p, v, (0, 0, 0, 0, 3)) == {(4, 6, beta)}
    assert _extra_edges(pres, p, v, (1, 2, 0, 0, 0)) == {(1, 3, beta)}
    assert _extra_edges(pres, p, v, (0, 2, 0, 0, 0)) == {(1, 6, beta)}
    assert _extra_edges(pres, p, v, (0, 0, 0, 0, 0)) == set()


@pytest.mark.acceptance(5, "single class: ideal and one isomorphism class")
def test_criterion_05_single_module(load):
    pres, p = load("single-class.quiver", SINGLE_MAST)
    v = variety_generators(pres, p)
    assert ideal_equal(v.ideal, _basis(renumbered(["X[2]-X[1]", "X[3]-1"], 3), 3))
    system = iso_system(pres, p, v)
    pts = [(c, c, 1) for c in [0, 1, -1, 2, -2, F(1, 2)]]
    for k, k2 in itertools.product(pts, repeat=2):
        assert decide_iso(system, k, k2).isomorphic


@pytest.mark.acceptance(6, "parallel pair: both ideals, transport and round trip")
def test_criterion_06_transport(load):
    pres = load("parallel-pair.quiver")
    from uniserial import parse_path
    p = parse_path("beta*alpha", pres.quiver)
    q = parse_path("beta'*alpha", pres.quiver)
    vp, vq = variety_generators(pres, p), variety_generators(pres, q)
    assert ideal_equal(vp.ideal, _basis(renumbered(["X[1]*X[2]-1"], 2), 2))
    assert ideal_equal(vq.ideal, _basis(renumbered(["X[1]-X[2]"], 2), 2))
    for a in [1, 2, -3, F(1, 5)]:
        a = F(a)
        there = transport_mast(pres, p, q, (a, 1 / a), vp, vq)
        assert there.point == (a, a)
        back = transport_mast(pres, q, p, there.point, vq, vp)
        assert back.point == (a, 1 / a)


@pytest.mark.acceptance(7, "two components: both ideals; the extra component misses p")
def test_criterion_07_components(load):
    pres = load("two-components.quiver")
    from uniserial import parse_path
    p = parse_path("epsilon*delta*gamma*beta*alpha", pres.quiver)
    q = parse_path("epsilon'*delta*gamma*beta'*alpha", pres.quiver)
    vp, vq = variety_generators(pres, p), variety_generators(pres, q)
    assert vp.nvars == vq.nvars == 5
    assert ideal_equal(vp.ideal, _basis(renumbered(
        ["X[4]*X[5]-X[1]*X[2]*X[3]", "X[2]-X[1]", "X[3]-X[1]", "X[4]-X[5]"], 5), 5))
    first = renumbered(["X[2]", "X[5]"], 5)
    second = renumbered(["X[4]*X[2]-X[5]*X[3]*X[1]", "X[1]*X[2]-1", "X[3]-X[1]",
                         "X[5]*X[4]-1"], 5)
    assert ideal_equal(vq.ideal, _basis(intersect_ideals(first, second), 5))
    for k in [(0, 0, 0, 0, 0), (1, 0, 2, 3, 0), (F(-1, 2), 0, 5, 0, 0), (4, 0, 4, 4, 0)]:
        assert point_on_variety(vq.ideal, k)
        assert transport_mast(pres, q, p, k, vq, vp) is None


CURVE_RELATIONS = [
    "gamma5*gamma4*{q3}*{q2}*{q1} - {q5}*{q4}*gamma3*gamma2*gamma1 + {q5}*{q4}*{q3}*{q2}*gamma1",
    "{q5}*{q4}*{q3}*{q2}*gamma1 - {q5}*{q4}*{q3}*gamma2*{q1}",
    "{q5}*{q4}*{q3}*{q2}*gamma1 - {q5}*{q4}*gamma3*{q2}*{q1}",
    "{q5}*gamma4*{q3}*{q2}*{q1} - gamma5*{q4}*{q3}*{q2}*{q1}",
]


@pytest.mark.acceptance(8, "cubic curve realization: four relations, verification passes")
def test_criterion_08_realization():
    f = parse_polynomial("X[2]^2 - X[1]*(X[1]^2 - 1)", 2)
    r = realize_variety([f])
    qs = {f"q{i}": f"beta{i}*alpha{i}" for i in range(1, 6)}
    expected = [parse_element(t.format(**qs), r.presentation.quiver) for t in CURVE_RELATIONS]
    assert len(r.presentation.relations) == 4
    assert set(r.presentation.relations) == set(expected)
    assert len(r.presentation.quiver.vertices) == 11
    assert verify_realization(r)


def _random_acyclic(rng):
    nv = rng.randint(2, 5)
    arrows = []
    for k in range(rng.randint(1, 7)):
        s = rng.randint(1, nv - 1)
        t = rng.randint(s + 1, nv)
        arrows.append((f"a{k}", str(s), str(t)))
    return Presentation(Quiver([str(i) for i in range(1, nv + 1)], arrows), (), QQ)


@pytest.mark.acceptance(9, "Relation-free presentations give the whole affine space")
def test_criterion_09_hereditary():
    rng = random.Random(20240901)
    for _ in range(20):
        pres = _random_acyclic(rng)
        assert pres.quiver.is_acyclic()
        for v in pres.quiver.vertices:
            for p in pres.quiver.paths_from(v, len(pres.quiver.vertices)):
                var = variety_generators(pres, p)
                assert not var.ideal.polys
                assert var.nvars == sum(len(ts) for _, _, ts in raw_detours(pres, p))


@pytest.mark.acceptance(10, "Finite-field oracle: membership, isomorphism and module checks")
def test_criterion_10_finite_fields():
    checked_pairs = 0
    for field_text in ("GF(2)", "GF(3)"):
        for name, pres, p in cases(field_text):
            v = variety_generators(pres, p)
            system = iso_system(pres, p, v)
            points = []
            for k in pres.field.points(v.nvars):
                direct = direct_matrices(pres, p, k)
                member = satisfies_relations(pres, p, direct)
                assert point_on_variety(v.ideal, k) == member, (name, p, k)
                if member:
                    m = build_module(pres, p, k, v)
                    assert not module_violations(m)
                    assert {a: [list(r) for r in mat] for a, mat in m.matrices.items()} == direct
                    points.append((k, direct))
            for (k, da), (k2, db) in itertools.product(points, repeat=2):
                expected = brute_force_isomorphic(pres, p, da, db)
                assert decide_iso(system, k, k2).isomorphic == expected, (name, p, k, k2)
                checked_pairs += 1
    assert checked_pairs > 500


def _confluence_cases():
    from uniserial import load_presentation, parse_path
    from conftest import fixture_path
    fixed = [("nodal-cubic.quiver", CUBIC_MAST), ("one-parameter.quiver", FAMILY_MAST), ("single-class.quiver", SINGLE_MAST),
             ("empty.quiver", "delta*beta*alpha"), ("two-components.quiver", "epsilon'*delta*gamma*beta'*alpha")]
    out = []
    for fname, m in fixed:
        pres = load_presentation(fixture_path(fname))
        out.append((pres, parse_path(m, pres.quiver)))
    out.extend((pres, p) for _, pres, p in cases("Q"))
    return out


@pytest.mark.acceptance(11, "Rightmost rewriting agrees with randomized strategies")
def test_criterion_11_confluence():
    rng = random.Random(7)
    pool = _confluence_cases()
    done = 0
    while done < 200:
        pres, p = rng.choice(pool)
        table = enumerate_detours(pres, p)
        paths = list(pres.quiver.paths_from(p.source, p.length + 1))
        routes = sorted(all_routes(pres, p) & set(paths), key=Path.sort_key)
        pick = [rng.choice(paths) for _ in range(rng.randint(1, 4))]
        pick += [rng.choice(routes) for _ in range(rng.randint(0, 3))]
        terms = {}
        for q in pick:
            terms[q] = terms.get(q, 0) + F(rng.randint(-3, 3), rng.randint(1, 3))
        z = AlgebraElement(terms, pres.field)
        if rng.random() < 0.3 and pres.relations:
            g = rng.choice(pres.relations)
            src = next(iter(g.terms)).source
            ws = [w for w in paths if w.target == src and w.length <= p.length]
            if ws:
                z = z + g * rng.choice(ws)
        n = table.nvars
        ours = normal_form(z, table)
        start = {q: Polynomial.constant(c, n, pres.field) for q, c in z.terms.items()}
        theirs = random_normal_form(start, pres, p, rng, n)
        assert {j: c for j, c in ours.coeffs.items() if c} == theirs
        done += 1


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
