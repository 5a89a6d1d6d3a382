import pytest

from app.core.config import settings
from app.core.exceptions import InvalidInputError
from app.services.polygon_enum_service import PolygonEnumService
from app.services.polygon_service import PolygonService


@pytest.fixture(scope="module")
def genus_one_classes():
    return PolygonEnumService.enumerate_classes(1, "inductive")


class TestGenusZero:
    def test_four_point_slice(self):
        """測試無內點、4 個格點的類只有 I_2 與單位正方形"""
        classes = PolygonEnumService.enumerate_classes(0, "inductive", nmax=4)

        assert len([c for c in classes if c.n == 4]) == 2

    def test_explicit_zero_margin(self):
        """測試明確指定 margin=0 時只在外框內加點，只找到單位正方形"""
        classes = PolygonEnumService.enumerate_classes(0, "inductive", nmax=4, margin=0)

        layer = [c for c in classes if c.n == 4]
        assert len(layer) == 1
        assert len(layer[0].vertices) == 4

    def test_matches_known_representatives(self):
        """測試 n <= 7 的每一層與已知代表一致"""
        classes = PolygonEnumService.enumerate_classes(0, "inductive", nmax=7)

        for n in range(3, 8):
            layer = [c for c in classes if c.n == n]
            assert layer == PolygonService.genus_zero_representatives(n), n


class TestGenusOne:
    def test_sixteen_classes(self, genus_one_classes):
        """測試恰有一個內點的多邊形共 16 類"""
        assert len(genus_one_classes) == 16
        assert all(c.interior == 1 for c in genus_one_classes)

    def test_counts_by_size(self, genus_one_classes):
        """測試依格點數的分布"""
        assert PolygonEnumService.count_by_n(genus_one_classes) == [
            (4, 1), (5, 3), (6, 2), (7, 4), (8, 2), (9, 3), (10, 1),
        ]

    def test_sorted_and_canonical(self, genus_one_classes):
        """測試輸出依 (n, 頂點) 排序且都是標準形"""
        assert genus_one_classes == sorted(genus_one_classes, key=lambda c: (c.n, c.vertices))
        for c in genus_one_classes:
            assert PolygonService.canonical_form(c) == c

    def test_box_matches_inductive(self, genus_one_classes):
        """測試預設盒子 2g+2 的結果與歸納法相同"""
        assert settings.box_size_for(1) == 4

        assert PolygonEnumService.enumerate_classes(1, "box") == genus_one_classes

    def test_small_box_misses_triangle(self, genus_one_classes):
        """測試 3x3 盒子放不下 (0,0),(4,0),(0,2)，只找到 15 類"""
        boxed = PolygonEnumService.enumerate_classes(1, "box", bound=3)

        assert len(boxed) == 15
        missing = {c.vertices for c in genus_one_classes} - {c.vertices for c in boxed}
        assert [PolygonService.from_vertices(v).n for v in missing] == [9]

    def test_parallel_matches_serial(self, genus_one_classes):
        """測試平行擴展的結果與單一程序相同"""
        assert PolygonEnumService.enumerate_classes(1, "inductive", parallelism=2) == genus_one_classes

    def test_fuzz_canonical(self, genus_one_classes):
        """測試隨機映射不改變標準形，並回傳檢查次數"""
        checked = PolygonEnumService.fuzz_canonical(genus_one_classes, seed=3, maps=5, size=4)

        assert checked == 16 * 5


class TestArguments:
    def test_unknown_method(self):
        """測試未知方法拋出輸入錯誤"""
        with pytest.raises(InvalidInputError):
            PolygonEnumService.enumerate_classes(1, "random")

    def test_negative_genus(self):
        """測試負的虧格拋出輸入錯誤"""
        with pytest.raises(InvalidInputError):
            PolygonEnumService.enumerate_classes(-1)

    def test_default_nmax(self):
        """測試預設點數上限 3g+7"""
        assert PolygonEnumService.default_nmax(2) == 13


@pytest.mark.slow
def test_genus_two_cross_check():
    """測試虧格 2 兩種列舉方法一致，共 45 類"""
    classes = PolygonEnumService.cross_check(2, box=6)

    assert len(classes) == 45
    assert max(c.n for c in classes) <= 13
