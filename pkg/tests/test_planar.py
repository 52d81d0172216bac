import math
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
import pytest
from scipy.spatial import Voronoi as ScipyVoronoi

from aperiodica.planar import (
    A4Point,
    PlanarConfig,
    UnsaturatedBoxError,
    area_audit,
    classify_tiles,
    generate_planar,
    planar_aperiodicity_witness,
    render_svg,
    rotation_matrix,
    tenfold_check,
    tile_signature,
    tiles_to_json,
    voronoi,
)
from aperiodica.quadfield import TAU

RADIUS = Fraction(43, 50)


@pytest.fixture(scope="module")
def small():
    return generate_planar(PlanarConfig(RADIUS, 12))


@pytest.fixture(scope="module")
def small_tiles(small):
    return voronoi(small.phys, 12)


def _rot(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


class TestProjections:
    def test_basis(self):
        v, u = A4Point(1, 0, 0, 0), A4Point(0, 0, 1, 0)
        assert np.allclose(v.phys(), [1, 0])
        assert np.allclose(u.phys(), [math.cos(4 * math.pi / 5), math.sin(4 * math.pi / 5)])
        assert np.allclose(u.star(), [math.cos(2 * math.pi / 5), math.sin(2 * math.pi / 5)])
        assert np.allclose(A4Point(0, 1, 0, 0).phys(), [float(TAU), 0])

    def test_exact_norms(self):
        for pt in (A4Point(1, 2, -3, 1), A4Point(0, -1, 4, 2), A4Point(5, 0, 0, -3)):
            assert math.isclose(float(pt.phys_norm2()), float(pt.phys() @ pt.phys()), rel_tol=1e-12)
            assert math.isclose(float(pt.star_norm2()), float(pt.star() @ pt.star()), rel_tol=1e-12, abs_tol=1e-12)


class TestGenerate:
    def test_origin_included(self, small):
        assert A4Point(0, 0, 0, 0) in small.index

    def test_membership(self, small):
        for pt in small.points[:300]:
            assert pt.star_norm2() < RADIUS**2
            assert float(pt.phys_norm2()) <= 144 + 1e-9

    def test_complete_against_brute_force(self):
        cfg = PlanarConfig(RADIUS, 4)
        ps = generate_planar(cfg)
        box = cfg.required_box()
        brute = set()
        r = np.arange(-box, box + 1)
        a, b, c, d = np.meshgrid(r, r, r, r, indexing="ij")
        grid = np.stack([a.ravel(), b.ravel(), c.ravel(), d.ravel()], axis=1)
        basis = np.array([A4Point(*e).phys() for e in np.eye(4, dtype=int)])
        sbasis = np.array([A4Point(*e).star() for e in np.eye(4, dtype=int)])
        phys_n2 = ((grid @ basis) ** 2).sum(axis=1)
        star_n2 = ((grid @ sbasis) ** 2).sum(axis=1)
        r2 = float(RADIUS**2)
        near = (star_n2 < r2 + 1e-6) & (phys_n2 < 16 + 1e-6)
        for row in grid[near]:
            pt = A4Point(*(int(x) for x in row))
            if pt.star_norm2() < RADIUS**2 and pt.phys_norm2() <= 16:
                brute.add(pt)
        assert set(ps.points) == brute

    def test_delone(self, small):
        from scipy.spatial import cKDTree

        inner = small.phys[np.hypot(*small.phys.T) < 8]
        dist = cKDTree(small.phys).query(inner, k=2)[0][:, 1]
        assert dist.min() > 0.3
        # every point of the inner disc is close to the set
        probe = np.random.default_rng(0).uniform(-6, 6, size=(500, 2))
        assert cKDTree(small.phys).query(probe)[0].max() < 2

    def test_density_scales_with_window_area(self):
        n1 = len(generate_planar(PlanarConfig(RADIUS, 20)))
        n2 = len(generate_planar(PlanarConfig(2 * RADIUS, 20)))
        assert abs(n2 / n1 - 4) < 0.4

    def test_box_too_small(self):
        with pytest.raises(UnsaturatedBoxError):
            PlanarConfig(RADIUS, 12, box=2)

    def test_bad_radius(self):
        with pytest.raises(ValueError):
            PlanarConfig(0, 12)


class TestSymmetry:
    def test_rotation_order_ten(self):
        R = rotation_matrix()
        assert np.array_equal(np.linalg.matrix_power(R, 10), np.eye(4, dtype=int))
        assert not np.array_equal(np.linalg.matrix_power(R, 5), np.eye(4, dtype=int))

    def test_rotation_acts_on_phys(self):
        R = rotation_matrix()
        for pt in (A4Point(1, 0, 0, 0), A4Point(2, -1, 3, 1)):
            img = A4Point(*(int(v) for v in R @ np.array(pt)))
            assert np.allclose(img.phys(), _rot(math.pi / 5) @ pt.phys())

    def test_centered_disc(self, small):
        assert tenfold_check(small)

    def test_off_center(self):
        ps = generate_planar(PlanarConfig(RADIUS, 12, center=(Fraction(3, 10), 0)))
        assert not tenfold_check(ps)


class TestVoronoi:
    def test_square_grid(self):
        g = np.array([(x, y) for x in range(-4, 5) for y in range(-4, 5)], dtype=float)
        vr = voronoi(g, 4)
        assert len(vr.tiles) >= 5
        for t in vr.tiles:
            assert math.isclose(t.area, 1.0)
            assert len(t.vertices) == 4
        assert len(classify_tiles(vr.tiles)) == 1

    def test_too_few(self):
        with pytest.raises(ValueError):
            voronoi(np.zeros((3, 2)))

    def test_matches_scipy(self, small, small_tiles):
        sv = ScipyVoronoi(small.phys)
        for t in small_tiles.tiles[:200]:
            region = sv.regions[sv.point_region[t.site]]
            ref = sv.vertices[region]
            for w in t.vertices:
                assert np.min(np.hypot(*(ref - w).T)) < 1e-9

    def test_sites_inside_convex(self, small_tiles):
        for t in small_tiles.tiles:
            v = t.vertices
            edges = np.roll(v, -1, axis=0) - v
            rel = t.center - v
            cross = edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0]
            assert (cross > 0).all() or (cross < 0).all()

    def test_area_audit(self, small_tiles):
        audit = area_audit(small_tiles.tiles, 6)
        assert audit["defect"] < 1e-9


class TestClassify:
    def test_signature_rotation_invariant(self, small_tiles):
        t = small_tiles.tiles[0]
        for j in range(10):
            rotated = (_rot(j * math.pi / 5) @ t.vertices.T).T + 3.0
            assert tile_signature(rotated)[0] == tile_signature(t.vertices)[0]

    def test_six_classes(self, small_tiles):
        assert len(classify_tiles(small_tiles.tiles)) == 6

    def test_rotation_permutes_classes(self, small_tiles):
        classes = classify_tiles(small_tiles.tiles, with_orientation=True)
        rot = _rot(math.pi / 5)
        turned = classify_tiles(
            [type(t)(t.site, rot @ t.center, (rot @ t.vertices.T).T) for t in small_tiles.tiles],
            with_orientation=True,
        )
        assert sorted(c.count for c in classes.values()) == sorted(c.count for c in turned.values())
        assert set(classes) == set(turned)

    def test_json(self, small_tiles):
        import json

        rows = json.loads(tiles_to_json(classify_tiles(small_tiles.tiles)))
        assert len(rows) == 6
        assert sum(r["count"] for r in rows) == len(small_tiles.tiles)


def test_aperiodicity(small):
    witness = planar_aperiodicity_witness(small, candidates=40)
    assert len(witness) == 40


class TestSvg:
    def test_empty(self):
        root = ET.fromstring(render_svg())
        assert root.tag.endswith("svg")

    def test_deterministic(self, small, small_tiles):
        a = render_svg(small.phys, small_tiles.tiles)
        b = render_svg(small.phys, small_tiles.tiles)
        assert a == b
        root = ET.fromstring(a)
        ns = "{http://www.w3.org/2000/svg}"
        assert len(root.findall(f".//{ns}circle")) == len(small)
        assert len(root.findall(f".//{ns}polygon")) == len(small_tiles.tiles)
