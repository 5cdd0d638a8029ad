import numpy as np
import pytest
from scipy.spatial import ConvexHull

from selfcomm import convexgeom as cg

SQRT3 = np.sqrt(3)


def _random_hull(rng):
    k = int(rng.integers(5, 41))
    return cg.ConvexPolygon.from_points(rng.standard_normal((k, 2)) * rng.uniform(0.1, 10, 2))


def test_shoelace_orientation():
    sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert cg.shoelace_area(sq) == 1.0
    assert cg.shoelace_area(sq[::-1]) == -1.0
    assert cg.shoelace_area(sq[:2]) == 0.0


def test_hull_matches_scipy():
    rng = np.random.default_rng(1)
    for _ in range(200):
        pts = rng.standard_normal((int(rng.integers(3, 60)), 2))
        ours = cg.convex_hull(pts)
        ref = ConvexHull(pts)
        assert len(ours) == len(ref.vertices)
        assert cg.shoelace_area(ours) == pytest.approx(ref.volume, rel=1e-12)
        assert {tuple(p) for p in ours} == {tuple(p) for p in pts[ref.vertices]}


def test_hull_normalization():
    pts = [(0, 0), (2, 0), (1, 0), (2, 2), (0, 2), (1, 1), (2, 2 + 1e-15)]
    hull = cg.convex_hull(pts)
    assert len(hull) == 4
    assert cg.shoelace_area(hull) > 0
    assert len(cg.convex_hull([(1, 1)] * 3)) == 1
    assert len(cg.convex_hull([(0, 0), (1, 1), (2, 2)])) == 2


def test_polygon_cross_products_nonnegative():
    rng = np.random.default_rng(2)
    for _ in range(100):
        V = _random_hull(rng).vertices
        e = np.roll(V, -1, axis=0) - V
        cross = e[:, 0] * np.roll(e[:, 1], -1) - e[:, 1] * np.roll(e[:, 0], -1)
        scale = np.max(np.abs(V))
        assert np.all(cross >= -1e-12 * scale**2)


def test_degenerate_bodies():
    seg = cg.ConvexPolygon.from_points([(0, 0), (1, 0)])
    assert seg.is_degenerate
    assert cg.width(seg, np.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert cg.min_width_product(seg)[1] == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(cg.DegeneratePolygonError):
        cg.width_ratio(seg)
    with pytest.raises(cg.DegeneratePolygonError):
        cg.witness_quadrilateral(seg)
    with pytest.raises(cg.DegeneratePolygonError):
        cg.ConvexPolygon.from_points(np.zeros((0, 2)))


def test_support_examples():
    sq = cg.rectangle(1, 1)
    assert cg.support(sq, 0.0) == pytest.approx(0.5)
    tri = cg.equilateral_triangle()
    assert cg.support(tri, 0.0) == pytest.approx(1.0)
    rng = np.random.default_rng(3)
    P = _random_hull(rng)
    th = rng.uniform(0, 2 * np.pi, 50)
    assert np.all(cg.support(P, th) + cg.support(P, th + np.pi) >= 0)


def test_width_examples():
    sq = cg.rectangle(1, 1)
    assert cg.width(sq, 0.0) == pytest.approx(1.0)
    assert cg.width(sq, np.pi / 4) == pytest.approx(np.sqrt(2))
    tri = cg.equilateral_triangle()
    t = np.linspace(0, np.pi / 6, 11)
    prod = cg.width(tri, t) * cg.width(tri, t + np.pi / 2)
    assert np.allclose(prod, 3 * np.sin(np.pi / 3 + t) * np.cos(t), atol=1e-12)
    assert cg.ellipse_width(cg.EllipseSpec(2, 1), 0.0).wk == pytest.approx(4.0)


def test_width_translation_invariance():
    P = _random_hull(np.random.default_rng(4))
    Q = P.translated(3.0, -7.5)
    th = np.linspace(0, np.pi, 33)
    assert np.allclose(cg.width(P, th), cg.width(Q, th), atol=1e-12)
    assert cg.polygon_area(Q) == pytest.approx(cg.polygon_area(P), abs=1e-12)


def test_area_examples():
    assert cg.polygon_area(cg.rectangle(1, 1)) == pytest.approx(1.0)
    assert cg.polygon_area(cg.equilateral_triangle()) == pytest.approx(3 * SQRT3 / 4, abs=1e-14)


def test_min_width_product_examples():
    sq = cg.rectangle(1, 1)
    assert cg.min_width_product(sq)[1] == pytest.approx(1.0, abs=1e-12)
    t, v = cg.min_width_product(cg.equilateral_triangle())
    assert v == pytest.approx(3 * SQRT3 / 2, abs=1e-6)
    # minimum at an endpoint of [0, pi/6] modulo the pi/6 symmetry of the triangle
    assert min(t % (np.pi / 6), np.pi / 6 - t % (np.pi / 6)) <= 1e-6
    disk = cg.regular_polygon(256)
    assert cg.min_width_product(disk)[1] == pytest.approx(4 * cg.polygon_area(disk) / np.pi, abs=1e-2)
    with pytest.raises(ValueError):
        cg.min_width_product(sq, 16)


def test_ellipse_widths():
    E = cg.EllipseSpec(1.5, 1.5)
    for t in (0.0, 0.3, 2.0):
        p = cg.ellipse_width(E, t)
        assert p.wk == pytest.approx(3.0) and p.wj == pytest.approx(3.0)
    p = cg.ellipse_width(cg.EllipseSpec(2, 1), 0.0)
    assert (p.wk, p.wj, p.product) == pytest.approx((4.0, 2.0, 8.0))
    t, v = cg.min_width_product(cg.EllipseSpec(2, 1))
    assert v == pytest.approx(8.0, abs=1e-9)
    assert min(t, abs(t - np.pi / 2)) <= 1e-6
    with pytest.raises(ValueError):
        cg.EllipseSpec(1, 2)


def test_ellipse_width_matches_polygon():
    for E in (cg.EllipseSpec(2, 1), cg.EllipseSpec(3, 0.5, (1, -2), 0.7), cg.EllipseSpec(1, 1)):
        P = E.to_polygon(4096)
        for t in np.linspace(0, np.pi, 13):
            p = cg.ellipse_width(E, t)
            assert cg.width(P, t) == pytest.approx(p.wk, abs=1e-4)
            assert cg.width(P, t + np.pi / 2) == pytest.approx(p.wj, abs=1e-4)


def test_width_ratio_examples():
    assert cg.width_ratio(cg.rectangle(3, 1)) == pytest.approx(1.0, abs=1e-9)
    assert cg.width_ratio(cg.equilateral_triangle()) == pytest.approx(2.0, abs=1e-6)
    assert cg.width_ratio(cg.regular_polygon(256)) == pytest.approx(4 / np.pi, abs=1e-2)


def test_reuleaux():
    R = cg.reuleaux_triangle(1.0, 200)
    w = cg.width(R, np.linspace(0, np.pi, 64))
    assert np.all(w >= 1 - 1e-3) and np.all(w <= 1 + 1e-12)
    assert cg.polygon_area(R) == pytest.approx((np.pi - SQRT3) / 2, abs=1e-3)
    assert cg.width_ratio(R) == pytest.approx(2 / (np.pi - SQRT3), abs=5e-3)
    for n in (30, 100, 500):
        r = cg.width_ratio(cg.reuleaux_triangle(2.0, n))
        assert 4 / np.pi - 5e-3 <= r <= 2 / (np.pi - SQRT3) + 5e-3
    with pytest.raises(ValueError):
        cg.reuleaux_triangle(1.0, 10)
    with pytest.raises(ValueError):
        cg.reuleaux_triangle(0.0)


def test_product_bounded_by_twice_area_on_random_hulls():
    # unit-scale hulls; 5-point hulls may be triangles, where equality holds
    rng = np.random.default_rng(5)
    for _ in range(1000):
        P = cg.ConvexPolygon.from_points(rng.standard_normal((int(rng.integers(5, 41)), 2)))
        S = cg.polygon_area(P)
        _, v = cg.min_width_product(P)
        assert v <= 2 * S + 1e-9
        assert 1 - 1e-6 <= v / S <= 2 + 1e-6


def test_scaling():
    rng = np.random.default_rng(6)
    for _ in range(20):
        P = _random_hull(rng)
        c = rng.uniform(0.1, 5)
        v, vc = cg.min_width_product(P)[1], cg.min_width_product(P.scaled(c))[1]
        assert vc == pytest.approx(c * c * v, rel=1e-9)


def _contained(Q, P, tol=1e-9):
    return all(cg._outside_distance(P, q) <= tol * max(1.0, np.max(np.abs(P.vertices))) for q in Q.vertices)


def test_witness_square_and_triangle():
    sq = cg.rectangle(1, 1)
    Q = cg.witness_quadrilateral(sq)
    assert _contained(Q, sq)
    assert cg.polygon_area(Q) >= 0.5 - 1e-9
    tri = cg.equilateral_triangle()
    Q = cg.witness_quadrilateral(tri)
    assert _contained(Q, tri)
    assert cg.polygon_area(Q) == pytest.approx(3 * SQRT3 / 4, abs=1e-9)


def _exact_least_width(P):
    # attained with one side flush against an edge
    V = P.vertices
    E = np.roll(V, -1, axis=0) - V
    best = np.inf
    for v, e in zip(V, E):
        normal = np.array([e[1], -e[0]]) / np.hypot(*e)
        best = min(best, np.max(np.abs((V - v) @ normal)))
    return best


def test_witness_on_random_hulls():
    rng = np.random.default_rng(7)
    dense = np.linspace(0, np.pi, 10_000, endpoint=False)
    for _ in range(100):
        P = cg.ConvexPolygon.from_points(rng.standard_normal((10, 2)))
        Q = cg.witness_quadrilateral(P)
        assert _contained(Q, P)
        assert cg.polygon_area(Q) <= cg.polygon_area(P) + 1e-12
        # exhaustive scan oracle for the least-width direction
        ws = cg.width(P, dense)
        k = int(np.argmin(ws))
        theta, least = cg.least_width_direction(P)
        assert least <= ws[k] + 1e-12
        assert least == pytest.approx(_exact_least_width(P), abs=1e-9)
        product = least * cg.width(P, theta + np.pi / 2)
        assert 2 * cg.polygon_area(Q) == pytest.approx(product, abs=1e-8)


def test_witness_area_bound():
    rng = np.random.default_rng(8)
    for _ in range(100):
        P = _random_hull(rng)
        Q = cg.witness_quadrilateral(P)
        # the witness shows min product <= 2 S(Q) <= 2 S(P)
        S = cg.polygon_area(P)
        assert cg.min_width_product(P)[1] <= 2 * cg.polygon_area(Q) + 1e-9 * max(1.0, S)


def test_read_polygon_file(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("# square\n0 0\n1 0\n\n1,1\n0 1\n0.5 0.5\n")
    P = cg.read_polygon_file(f)
    assert cg.polygon_area(P) == pytest.approx(1.0)
    for body, msg in (("1 2 3\n", "expected"), ("a b\n", "not a number"), ("\n", "no points"), ("inf 0\n", "non-finite")):
        f.write_text(body)
        with pytest.raises(ValueError, match=msg):
            cg.read_polygon_file(f)
