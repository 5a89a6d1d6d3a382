import json

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from app.core.exceptions import DegeneratePolygonError, InvalidInputError
from app.schemas.polygon import UnimodularAffineMap
from app.services.polygon_service import PolygonService, canonical_key, twice_area
from app.services.polytope_service import PolytopeService

UNIT = ((0, 0), (1, 0), (0, 1))
TRIPLE_1327 = ((4, 1, 0), (2, 1, 1), (1, 2, 0))


def hull(*points):
    return PolygonService.convex_hull(points)


@st.composite
def polygons(draw):
    """在 [-4, 4]² 內隨機取點的凸包（排除共線）"""
    points = draw(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=3, max_size=10, unique=True))
    try:
        return PolygonService.convex_hull(points)
    except DegeneratePolygonError:
        return PolygonService.convex_hull(UNIT)


class TestProjection:
    def test_triple_maps_to_standard_points(self, polytope):
        """測試三元組映到 (1,0)、(0,1)、(0,0)"""
        p = polytope(1, 3, 2, 7)

        images = PolygonService.project(p, TRIPLE_1327).image_map()

        assert images[(4, 1, 0)] == (1, 0)
        assert images[(2, 1, 1)] == (0, 1)
        assert images[(1, 2, 0)] == (0, 0)
        assert images[(7, 0, 0)] == (2, 0)

    def test_preserves_counts(self, polytope):
        """測試投影保持格點數與內點數"""
        projection = PolygonService.project(polytope(1, 3, 2, 7), TRIPLE_1327)

        assert projection.polygon.n == 8
        assert projection.polygon.interior == 1
        assert len(projection.polygon.vertices) == 4

    def test_cubic_projects_to_dilated_triangle(self, polytope):
        """測試 (1,1,1,3) 投影後等價於 (0,0),(3,0),(0,3)"""
        projection = PolygonService.project_polytope(polytope(1, 1, 1, 3))

        same, witness = PolygonService.equivalent(projection.polygon, hull((0, 0), (3, 0), (0, 3)))

        assert projection.polygon.n == 10 and projection.polygon.interior == 1
        assert same and witness is not None


class TestHullAndCounts:
    def test_square(self):
        """測試正方形的凸包由字典序最小點開始、逆時針"""
        poly = hull((1, 1), (0, 0), (1, 0), (0, 1))

        assert poly.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))

    def test_collinear_raises(self):
        """測試共線點集拋出退化錯誤"""
        with pytest.raises(DegeneratePolygonError):
            hull((0, 0), (1, 0), (2, 0))

    def test_boundary_points_are_not_vertices(self):
        """測試邊上的格點不列為頂點"""
        poly = hull((0, 0), (1, 0), (2, 0), (0, 2))

        assert poly.vertices == ((0, 0), (2, 0), (0, 2))

    @pytest.mark.parametrize(
        "vertices, expected",
        [
            (UNIT, (0, 3)),
            (((0, 0), (3, 0), (0, 3)), (1, 9)),
            (((0, 0), (2, 0), (2, 2), (0, 2)), (1, 8)),
        ],
    )
    def test_counts(self, vertices, expected):
        """測試 Pick 計數與直接列舉"""
        assert PolygonService.counts(hull(*vertices)) == expected

    @hyp_settings(max_examples=150, deadline=None)
    @given(polygons())
    def test_pick_identity(self, poly):
        """測試 2A = 2i + b - 2"""
        i, b = PolygonService.counts(poly)

        assert poly.twice_area == 2 * i + b - 2
        assert poly.n == len(poly.lattice_points)


class TestTriangulate:
    @pytest.mark.parametrize(
        "vertices, expected",
        [
            (UNIT, 1),
            (((0, 0), (3, 0), (0, 3)), 9),
            (((0, 0), (2, 0), (1, 1), (0, 1)), 3),
        ],
    )
    def test_piece_counts(self, vertices, expected):
        """測試剖分塊數 2i + b - 2"""
        assert len(PolygonService.triangulate(hull(*vertices))) == expected

    @hyp_settings(max_examples=100, deadline=None)
    @given(polygons())
    def test_pieces_are_primitive(self, poly):
        """測試每塊兩倍面積為 1 且總面積相等"""
        pieces = PolygonService.triangulate(poly)

        assert len(pieces) == 2 * poly.interior + poly.boundary - 2
        assert all(twice_area(t) == 1 for t in pieces)
        assert sum(twice_area(t) for t in pieces) == poly.twice_area

    @pytest.mark.parametrize("values", [(1, 1, 1, 3), (1, 3, 2, 7), (1, 2, 1, 5)])
    def test_distinguished_pieces(self, polytope, values):
        """測試特殊三角形剖分的每塊都是 ±d 子式"""
        p = polytope(*values)
        pieces = PolygonService.triangulate_distinguished(p)

        det = abs(PolytopeService.verify_case_identities(p).actual_det)
        assert pieces == det // p.quadruple.d


class TestCanonicalForm:
    def test_unit_triangle_is_fixed(self):
        """測試單位三角形的標準形為自身"""
        assert PolygonService.canonical_form(hull(*UNIT)).vertices == UNIT

    def test_shear_invariance(self):
        """測試剪切後標準形相同"""
        assert canonical_key(hull((0, 0), (1, 0), (1, 1)).vertices) == canonical_key(UNIT)

    def test_translation_invariance(self):
        """測試平移後標準形相同"""
        moved = hull((5, 7), (8, 7), (5, 10))
        base = hull((0, 0), (3, 0), (0, 3))

        assert PolygonService.canonical_form(moved) == PolygonService.canonical_form(base)

    @hyp_settings(max_examples=100, deadline=None)
    @given(polygons())
    def test_idempotent(self, poly):
        """測試標準形冪等"""
        once = PolygonService.canonical_form(poly)

        assert PolygonService.canonical_form(once) == once
        assert once.vertices[0] == (0, 0)

    @hyp_settings(max_examples=100, deadline=None)
    @given(polygons(), st.integers(0, 10_000), st.integers(0, 6))
    def test_invariant_under_random_maps(self, poly, seed, size):
        """測試隨機仿射單模映射不改變標準形"""
        mapping = PolygonService.random_unimodular_map(seed, size)

        image = PolygonService.apply_map(poly, mapping)

        assert PolygonService.canonical_form(image) == PolygonService.canonical_form(poly)

    def test_sl_only_separates_mirror_images(self):
        """測試只允許 det +1 時鏡像的非對稱多邊形可能不同"""
        poly = hull((0, 0), (3, 0), (1, 1), (0, 2))
        mirrored = PolygonService.apply_map(poly, UnimodularAffineMap(linear=((-1, 0), (0, 1))))

        assert PolygonService.canonical_form(poly) == PolygonService.canonical_form(mirrored)
        sl_forms = {
            PolygonService.canonical_form(poly, allow_reflections=False),
            PolygonService.canonical_form(mirrored, allow_reflections=False),
        }
        assert len(sl_forms) in (1, 2)
        assert PolygonService.equivalent(poly, mirrored, allow_reflections=False)[0] == (len(sl_forms) == 1)


class TestEquivalence:
    def test_translate(self):
        """測試多邊形與其平移等價"""
        poly = hull((0, 0), (2, 0), (1, 1), (0, 1))
        moved = hull((3, 4), (5, 4), (4, 5), (3, 5))

        same, witness = PolygonService.equivalent(poly, moved)

        assert same
        assert {witness.apply(v) for v in poly.lattice_points} == set(moved.lattice_points)

    def test_different_sizes(self):
        """測試點數不同時不等價"""
        same, witness = PolygonService.equivalent(hull(*UNIT), hull((0, 0), (2, 0), (0, 2)))

        assert not same and witness is None

    def test_equivalence_relation(self):
        """測試自反、對稱（反映射）與遞移（合成）"""
        a = hull((0, 0), (4, 0), (0, 2))
        b = PolygonService.apply_map(a, PolygonService.random_unimodular_map(7, 3))
        c = PolygonService.apply_map(b, PolygonService.random_unimodular_map(8, 3))

        assert PolygonService.equivalent(a, a)[0]
        _, ab = PolygonService.equivalent(a, b)
        _, bc = PolygonService.equivalent(b, c)
        ba = ab.inverse()
        assert {ba.apply(v) for v in b.lattice_points} == set(a.lattice_points)
        ac = bc.compose(ab)
        assert {ac.apply(v) for v in a.lattice_points} == set(c.lattice_points)

    def test_automorphisms_of_unit_triangle(self):
        """測試單位三角形有 6 個仿射單模自同構"""
        autos = PolygonService.automorphisms(hull(*UNIT))

        assert len(autos) == 6
        assert len({(a.linear, a.translation) for a in autos}) == 6

    def test_automorphisms_without_reflections(self):
        """測試只允許 det +1 時單位三角形有 3 個自同構"""
        autos = PolygonService.automorphisms(hull(*UNIT), allow_reflections=False)

        assert len(autos) == 3
        assert all(a.det == 1 for a in autos)


class TestRandomMap:
    def test_size_zero_is_identity(self):
        """測試 size = 0 回傳恆等映射"""
        assert PolygonService.random_unimodular_map(0, 0) == UnimodularAffineMap.identity()

    def test_size_one_is_shear(self):
        """測試 size = 1 的線性部分是單一剪切"""
        (a, b), (c, d) = PolygonService.random_unimodular_map(1, 1).linear

        assert (a, d) == (1, 1)
        assert (b == 0) != (c == 0)

    def test_deterministic(self):
        """測試相同種子得到相同映射"""
        assert PolygonService.random_unimodular_map(42, 5) == PolygonService.random_unimodular_map(42, 5)

    @given(st.integers(0, 100_000), st.integers(0, 8))
    def test_unimodular(self, seed, size):
        """測試任何輸出的 |det| = 1"""
        mapping = PolygonService.random_unimodular_map(seed, size)

        assert abs(mapping.det) == 1
        assert all(abs(t) <= 5 * size for t in mapping.translation)


class TestGenusZero:
    def test_four_points(self):
        """測試 n = 4 的無內點代表為 I_2 與單位正方形"""
        forms = PolygonService.genus_zero_representatives(4)

        assert len(forms) == 2
        assert {f.n for f in forms} == {4}
        assert all(f.interior == 0 for f in forms)

    def test_six_points_include_doubled_triangle(self):
        """測試 n = 6 時包含 2Δ"""
        forms = PolygonService.genus_zero_representatives(6)
        doubled = PolygonService.canonical_form(hull((0, 0), (2, 0), (0, 2)))

        assert doubled in forms
        assert len(forms) == 4


class TestJson:
    def test_read_any_order(self):
        """測試多邊形 JSON 的頂點可為任意順序"""
        poly = PolygonService.from_json(json.dumps({"vertices": [[1, 1], [0, 0], [0, 1], [1, 0]]}))

        assert poly.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))
        assert json.loads(PolygonService.to_json(poly)) == {"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}

    def test_malformed(self):
        """測試格式錯誤時拋出輸入錯誤"""
        with pytest.raises(InvalidInputError):
            PolygonService.from_json('{"points": []}')

    @pytest.mark.parametrize(
        "text",
        [
            '{"vertices": [[0, 0], [1.9, 0], [0, 1]]}',
            '{"vertices": [[0, 0], [1.0, 0], [0, 1]]}',
            '{"vertices": [[0, 0], [true, 0], [0, 1]]}',
            '{"vertices": [[0, 0], ["2", 0], [0, 1]]}',
        ],
    )
    def test_rejects_non_integer_coordinates(self, text):
        """測試座標為小數、布林或字串時拋出輸入錯誤，不做截斷"""
        with pytest.raises(InvalidInputError):
            PolygonService.from_json(text)
