import itertools
import random
from fractions import Fraction

import pytest

from wsdkit.linalg import solve_linear_system
from wsdkit.model import OutcomeSet, weighted_value
from wsdkit.rng import SplitMix64
from wsdkit.scalarization import SupportClass, classify, esn_vectors, weighted_sum_argmin
from wsdkit.wsd import (
    affine_dimension,
    check_common_faces,
    check_component_description,
    check_coverage,
    check_coverage_exact,
    check_dimension,
    check_dominated_containment,
    check_necessity,
    check_supported_intersection,
    common_face,
    component,
    contains,
    decompose,
    dimension,
    intersect,
    random_weight,
    recover_supported,
    simplex_component,
    vertices,
)

from conftest import FIXTURES, load, random_instance

h = Fraction(1, 2)
t = Fraction(1, 3)


def test_component_examples(fa):
    assert vertices(component(fa, (1, 3))) == [(h, h), (1, 0)]
    assert vertices(component(fa, (2, 2))) == [(h, h)]
    single = OutcomeSet.from_vectors([(5, 9)])
    assert vertices(component(single, (5, 9))) == [(0, 1), (1, 0)]
    with pytest.raises(ValueError):
        component(fa, (9, 9))


def test_contains(fa):
    ca = component(fa, (1, 3))
    assert contains(ca, (Fraction(3, 4), Fraction(1, 4)))
    assert not contains(ca, (Fraction(1, 4), Fraction(3, 4)))
    assert all(contains(ca, v) for v in vertices(ca))
    with pytest.raises(ValueError):
        contains(ca, (1, 0, 0))


def test_vertices_examples(fa, fc3):
    assert vertices(simplex_component(3)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert vertices(component(fc3, (1, 0, 0))) == [(0, 0, 1), (0, 1, 0), (t, t, t)]


def test_dimension_examples(fa, fb):
    assert dimension(component(fa, (1, 3))) == 1
    assert dimension(component(fa, (2, 2))) == 0
    assert dimension(component(fb, (3, 3))) == -1
    assert dimension(component(fa, (3, 3))) == -1


def test_common_face_examples(fa, fe):
    ca, cc = component(fa, (1, 3)), component(fa, (3, 1))
    face, ok = common_face(ca, cc)
    assert ok and face.vertices == ((h, h),)
    c1, c3 = component(fe, (0, 3)), component(fe, (3, 0))
    assert vertices(c1) == [(Fraction(2, 3), t), (1, 0)]
    assert vertices(c3) == [(0, 1), (t, Fraction(2, 3))]
    face, ok = common_face(c1, c3)
    assert ok and face.vertices == () and face.dim == -1
    face, ok = common_face(ca, ca)
    assert ok and list(face.vertices) == vertices(ca)


def test_common_face_rejects_overlap():
    # two overlapping intervals meet in a segment, not a face of both
    base = simplex_component(2)
    c1 = base.with_rows(ineq=[[0, 1]], ineq_rhs=[Fraction(2, 3)])
    c2 = base.with_rows(ineq=[[1, 0]], ineq_rhs=[Fraction(2, 3)])
    c1 = type(c1)((0, 1), (), c1.ineq, c1.ineq_rhs, c1.eq, c1.eq_rhs)
    c2 = type(c2)((1, 0), (), c2.ineq, c2.ineq_rhs, c2.eq, c2.eq_rhs)
    _, ok = common_face(c1, c2)
    assert not ok


def test_decompose_examples(fa, fb):
    d = decompose(fa)
    assert [(c.owner, c.vertices) for c in d.cells] == [((1, 3), ((h, h), (1, 0))), ((3, 1), ((0, 1), (h, h)))]
    assert d.extreme_weights == ((0, 1), (h, h), (1, 0))
    d = decompose(fb)
    assert [(c.owner, c.vertices) for c in d.cells] == [((1, 4), ((h, h), (1, 0))), ((4, 1), ((0, 1), (h, h)))]
    d = decompose(OutcomeSet.from_vectors([(1, 1, 1)]))
    assert len(d.cells) == 1 and d.cells[0].vertices == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def _vertices_by_rational_solve(c):
    p = c.p
    out = set()
    for combo in itertools.combinations(range(len(c.ineq)), p - 1):
        s = solve_linear_system(list(c.eq) + [c.ineq[i] for i in combo], list(c.eq_rhs) + [c.ineq_rhs[i] for i in combo])
        if s is None or s.nullspace_basis:
            continue
        if contains(c, s.particular):
            out.add(s.particular)
    return sorted(out)


def test_vertices_against_rational_route():
    for seed in range(80):
        ys = random_instance(seed, 2 + seed % 3, 15, 12, positive=bool(seed % 3))
        esn = esn_vectors(classify(ys))
        for v in {pt.y for pt in ys.points}:
            c = component(ys, v, esn)
            verts = vertices(c)
            assert verts == _vertices_by_rational_solve(c)
            assert dimension(c) == affine_dimension(verts)


def test_component_matches_definition():
    # lam in Lambda(y) iff y is weighted-sum optimal at lam
    grid = [(Fraction(a, 12), Fraction(b, 12), Fraction(12 - a - b, 12)) for a in range(13) for b in range(13 - a)]
    for seed in range(40):
        ys = random_instance(seed, 3, 12, 5, positive=bool(seed % 2))
        esn = esn_vectors(classify(ys))
        for v in {pt.y for pt in ys.points}:
            c = component(ys, v, esn)
            for lam in grid:
                assert contains(c, lam) == (v in {pt.y for pt in weighted_sum_argmin(ys, lam)})


def test_vertex_active_constraints():
    # every vertex tightens p - 1 linearly independent inequalities
    from wsdkit.linalg import matrix_rank

    for seed in range(40):
        ys = random_instance(seed, 3 + seed % 2, 12, 10)
        for cell in decompose(ys).cells:
            for v in cell.vertices:
                tight = [a for a, b in zip(cell.ineq, cell.ineq_rhs) if sum(x * y for x, y in zip(a, v)) == b]
                assert matrix_rank(list(cell.eq) + tight) == cell.p


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_decomposition_checks(name):
    ys = load(name)
    d = decompose(ys)
    for rep in (
        check_dimension(ys, d),
        check_coverage(d, 1000, 0),
        check_necessity(ys, d),
        check_common_faces(d),
        recover_supported(ys, d),
        check_component_description(ys, d),
        check_dominated_containment(ys, d),
        check_supported_intersection(ys, d),
    ):
        assert rep.passed, (rep.name, rep.failures)


def test_coverage_single_point():
    d = decompose(OutcomeSet.from_vectors([(2, 5, 1)]))
    assert check_coverage(d, 50, 3).passed
    with pytest.raises(ValueError):
        check_coverage(d, 0, 3)


def test_coverage_fast_path_matches_exact():
    for seed in range(20):
        ys = random_instance(seed, 2 + seed % 3, 15, 20, positive=bool(seed % 2))
        d = decompose(ys)
        rng = SplitMix64(seed)
        for _ in range(30):
            w = random_weight(rng, ys.p)
            assert check_coverage_exact(d, [Fraction(x, sum(w)) for x in w])
        assert check_coverage(d, 30, seed).passed


def test_coverage_exact_at_cell_boundaries(fa):
    d = decompose(fa)
    assert all(check_coverage_exact(d, lam) for lam in d.extreme_weights)


def test_necessity_witnesses(fa, fc3):
    for ys in (fa, fc3):
        rep = check_necessity(ys)
        assert rep.passed and all(all(x > 0 for x in w["weight"]) for w in rep.details["witnesses"])
    rep = check_necessity(OutcomeSet.from_vectors([(1, 2, 3)]))
    assert rep.details["witnesses"][0]["weight"] == (t, t, t)


def test_recover_supported_examples(fa, fb):
    assert recover_supported(fa).details["recovered"] == [(1, 3), (2, 2), (3, 1)]
    assert recover_supported(fb).details["recovered"] == [(1, 4), (4, 1)]
    assert {pt.id for pt in weighted_sum_argmin(fa, (h, h))} == {"a", "b", "c"}


def test_supported_intersection_fixture_a(fa):
    meet = intersect(component(fa, (1, 3)), component(fa, (3, 1)))
    assert vertices(meet) == vertices(component(fa, (2, 2))) == [(h, h)]


def test_supported_intersection_collinear_triples():
    rng = random.Random(17)
    checked = 0
    for _ in range(150):
        p = rng.randint(2, 3)
        a = [rng.randint(1, 20) for _ in range(p)]
        c = [rng.randint(1, 20) for _ in range(p)]
        mu = Fraction(rng.randint(1, 9), 10)
        b = [mu * x + (1 - mu) * y for x, y in zip(a, c)]
        extra = [[rng.randint(1, 40) for _ in range(p)] for _ in range(rng.randint(0, 4))]
        ys = OutcomeSet.from_vectors([a, c, b] + extra)
        classes = {r.vector: r.support_class for r in classify(ys)}
        qa, qb, qc = (tuple(Fraction(x) for x in v) for v in (a, b, c))
        if classes[qa] is not SupportClass.EXTREME or classes[qc] is not SupportClass.EXTREME or qa == qc:
            continue
        esn = esn_vectors(classify(ys))
        meet = intersect(component(ys, qa, esn), component(ys, qc, esn))
        assert vertices(component(ys, qb, esn)) == vertices(meet)
        checked += 1
    assert checked > 50


def test_random_decomposition_checks():
    for seed in range(60):
        ys = random_instance(seed, 2 + seed % 3, 15, [5, 20, 100][seed % 3], positive=bool(seed % 4))
        d = decompose(ys)
        for rep in (
            check_dimension(ys, d),
            check_component_description(ys, d),
            check_dominated_containment(ys, d),
            check_supported_intersection(ys, d),
            check_common_faces(d),
            recover_supported(ys, d),
        ):
            assert rep.passed, (seed, rep.name, rep.failures)
        # cells cover the simplex, so their vertices include all its corners
        corners = {tuple(Fraction(int(i == j)) for j in range(ys.p)) for i in range(ys.p)}
        assert corners <= set(d.extreme_weights)
        assert all(weighted_value(w, (1,) * ys.p) == 1 for w in d.extreme_weights)
