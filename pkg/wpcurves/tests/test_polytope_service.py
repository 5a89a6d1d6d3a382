import pytest

from app.core.exceptions import InvariantViolation, PreconditionError
from app.schemas.quadruple import Quadruple
from app.services.polytope_service import PolytopeService


class TestBuild:
    def test_cubic_has_ten_points(self, polytope):
        """測試 (1,1,1,3) 共 10 個單項式"""
        assert polytope(1, 1, 1, 3).n == 10

    def test_points_are_lexicographic(self, polytope):
        """測試 (1,3,2,7) 的點依字典序列出"""
        p = polytope(1, 3, 2, 7)

        assert p.points == (
            (0, 1, 2), (1, 0, 3), (1, 2, 0), (2, 1, 1),
            (3, 0, 2), (4, 1, 0), (5, 0, 1), (7, 0, 0),
        )

    def test_genus_two_example(self, polytope):
        """測試 (1,2,1,5) 共 12 個點"""
        assert polytope(1, 2, 1, 5).n == 12

    def test_requires_good(self):
        """測試非 good 四元組不能建構"""
        with pytest.raises(PreconditionError):
            PolytopeService.build(Quadruple(w0=1, w1=2, w2=5, d=8))

    def test_monomials_of_higher_degree(self):
        """測試次數 2d 的單項式列舉"""
        points = PolytopeService.monomials_of_degree((1, 1, 1), 6)

        assert len(points) == 28
        assert all(sum(p) == 6 for p in points)


class TestInteriorCount:
    @pytest.mark.parametrize(
        "values, expected, points",
        [
            ((1, 1, 1, 3), 1, ((1, 1, 1),)),
            ((1, 3, 2, 7), 1, ((2, 1, 1),)),
            ((1, 2, 1, 5), 2, ((1, 1, 2), (2, 1, 1))),
        ],
    )
    def test_known_interiors(self, polytope, values, expected, points):
        """測試內點數與內點本身"""
        p = polytope(*values)

        assert PolytopeService.interior_count(p) == expected
        assert p.interior == points


class TestMinors:
    def test_distinguished_minor(self):
        """測試 (1,3,2,7) 特殊三角形的行列式"""
        assert PolytopeService.minor_det((7, 0, 0), (1, 2, 0), (1, 0, 3)) == 42

    def test_unimodular_minor(self):
        """測試 |det| = d 的三元組"""
        assert PolytopeService.minor_det((4, 1, 0), (2, 1, 1), (1, 2, 0)) == -7

    def test_repeated_row(self):
        """測試重複列的行列式為 0"""
        assert PolytopeService.minor_det((1, 2, 0), (1, 2, 0), (7, 0, 0)) == 0

    def test_all_minors_divisible(self, polytope):
        """測試所有子行列式可被 d 整除"""
        checked, exhaustive = PolytopeService.check_minor_divisibility(polytope(1, 2, 1, 5))

        assert exhaustive
        assert checked == 220

    def test_sampled_mode_above_limit(self, polytope):
        """測試點數超過上限時改為抽查"""
        p = polytope(1, 1, 1, 3)

        checked, exhaustive = PolytopeService.check_minor_divisibility(p, limit=5)

        assert not exhaustive
        assert checked == 3 * p.n


class TestUnimodularTriple:
    def test_cubic(self, polytope):
        """測試 (1,1,1,3) 的第一個單模三元組"""
        triple = PolytopeService.find_unimodular_triple(polytope(1, 1, 1, 3))

        assert triple == ((0, 0, 3), (0, 1, 2), (1, 0, 2))

    def test_first_in_index_order(self, polytope):
        """測試 (1,3,2,7) 取索引字典序第一個三元組"""
        p = polytope(1, 3, 2, 7)

        triple = PolytopeService.find_unimodular_triple(p)

        assert triple == ((0, 1, 2), (1, 0, 3), (1, 2, 0))
        assert abs(PolytopeService.minor_det(*triple)) == 7

    def test_iterator_yields_only_unimodular(self, polytope):
        """測試所有列出的三元組 |det| = d"""
        p = polytope(1, 2, 1, 5)
        triples = list(PolytopeService.unimodular_triples(p))

        assert len(triples) > 1
        assert all(abs(PolytopeService.minor_det(*t)) == 5 for t in triples)


class TestDistinguishedTriangle:
    def test_diagonal_case(self, polytope):
        """測試所有權重整除 d 的情況 d"""
        t = PolytopeService.distinguished_triangle(polytope(1, 1, 1, 3))

        assert t.rows == ((3, 0, 0), (0, 3, 0), (0, 0, 3))
        assert t.case_tag == "d"
        assert t.k == 3 and t.l is None

    def test_case_b_iii(self, polytope):
        """測試 (1,3,2,7) 為情況 b.iii，k = 1"""
        t = PolytopeService.distinguished_triangle(polytope(1, 3, 2, 7))

        assert t.rows == ((7, 0, 0), (1, 2, 0), (1, 0, 3))
        assert t.case_tag == "b.iii"
        assert t.k == 1

    def test_case_c_permuted(self, polytope):
        """測試 (1,2,1,5) 為置換後的情況 c，k = 5、l = 2"""
        t = PolytopeService.distinguished_triangle(polytope(1, 2, 1, 5))

        assert t.rows == ((5, 0, 0), (1, 2, 0), (0, 0, 5))
        assert t.case_tag == "c"
        assert t.permutation == (0, 2, 1)
        assert (t.k, t.l) == (5, 2)


class TestCaseIdentities:
    @pytest.mark.parametrize(
        "values, det, lhs",
        [((1, 1, 1, 3), 27, None), ((1, 3, 2, 7), 42, 2), ((1, 2, 1, 5), 50, 10)],
    )
    def test_known_cases(self, polytope, values, det, lhs):
        """測試實際行列式與公式一致，且虧格恆等式成立"""
        report = PolytopeService.verify_case_identities(polytope(*values))

        assert report.actual_det == report.predicted_det == det
        assert report.det_matches and report.identity_holds
        if lhs is not None:
            assert report.identity_lhs == report.identity_rhs == lhs

    @pytest.mark.parametrize(
        "values, k, det, lhs",
        [((1, 2, 3, 13), 2, 312, 16), ((1, 2, 3, 19), 3, 1026, 42)],
    )
    def test_case_b_iii_with_larger_k(self, polytope, values, k, det, lhs):
        """測試情況 b.iii 在 k >= 2 時行列式為 k·d(d-w0)"""
        report = PolytopeService.verify_case_identities(polytope(*values))

        assert report.triangle.case_tag == "b.iii"
        assert report.triangle.k == k
        assert report.actual_det == report.predicted_det == det
        assert report.identity_lhs == report.identity_rhs == lhs


class TestDecompose:
    def test_basis_row(self, polytope):
        """測試三元組本身的分解"""
        p = polytope(1, 3, 2, 7)
        triple = ((4, 1, 0), (2, 1, 1), (1, 2, 0))

        assert PolytopeService.decompose(p, triple, (4, 1, 0)).alphas == (1, 0, 0)

    def test_pure_power(self, polytope):
        """測試 (7,0,0) = 2·v1 - v3"""
        p = polytope(1, 3, 2, 7)
        triple = ((4, 1, 0), (2, 1, 1), (1, 2, 0))

        assert PolytopeService.decompose(p, triple, (7, 0, 0)).alphas == (2, 0, -1)

    def test_degree_two_d(self, polytope):
        """測試次數 2d 的目標分解"""
        p = polytope(1, 1, 1, 3)
        triple = ((0, 0, 3), (0, 1, 2), (1, 0, 2))

        assert PolytopeService.decompose(p, triple, (2, 2, 2)).alphas == (-2, 2, 2)

    def test_rejects_wrong_degree(self, polytope):
        """測試目標次數不是 d 的倍數時拋出前置條件錯誤"""
        p = polytope(1, 1, 1, 3)
        with pytest.raises(PreconditionError):
            PolytopeService.decompose(p, ((0, 0, 3), (0, 1, 2), (1, 0, 2)), (1, 1, 0))

    def test_rejects_non_unimodular_triple(self, polytope):
        """測試三元組行列式不是 ±d 時拋出前置條件錯誤"""
        p = polytope(1, 1, 1, 3)
        with pytest.raises(PreconditionError):
            PolytopeService.decompose(p, ((3, 0, 0), (0, 3, 0), (0, 0, 3)), (1, 1, 1))


class TestLemmas:
    def test_cubic_is_exceptional(self, polytope):
        """測試 (1,1,1,3) 點數 10 = 3g+7，標記為 exceptional"""
        report = PolytopeService.verify_lemmas(polytope(1, 1, 1, 3))

        assert report.n == 10
        assert report.bound_status == "exceptional"

    def test_regular_bound(self, polytope):
        """測試 (1,3,2,7) 點數在 3g+6 內"""
        report = PolytopeService.verify_lemmas(polytope(1, 3, 2, 7))

        assert report.bound_status == "ok"
        assert report.case.triangle.case_tag == "b.iii"

    def test_bound_violation_raises(self, polytope):
        """測試點數超過 3g+7 視為矛盾"""
        with pytest.raises(InvariantViolation):
            PolytopeService.bound_status(polytope(1, 1, 1, 3), 0)
