"""
二維格多邊形服務

投影、凸包、Pick 計數、原始三角剖分、仿射單模等價的標準形與見證。
熱迴圈使用的函式直接處理頂點 tuple，方便在多行程中傳遞。
"""

import json
import logging
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from ..core.exceptions import DegeneratePolygonError, InvalidInputError, InvariantViolation
from ..schemas.polygon import LatticePolygon, Linear, Point, PolygonPayload, Projection, UnimodularAffineMap
from ..schemas.polytope import Row, Triple, WeightedPolytope
from ..utils.intmath import cross, det3, ext_gcd
from .polytope_service import PolytopeService

logger = logging.getLogger(__name__)

Vertices = Tuple[Point, ...]
Anchor = Tuple[Linear, Point]

MIRROR: Linear = ((-1, 0), (0, 1))
IDENTITY: Linear = ((1, 0), (0, 1))


# ===== 頂點層級的基本運算 =====

def hull_vertices(points: Iterable[Point]) -> Vertices:
    """Andrew monotone chain，回傳逆時針、由字典序最小點開始的嚴格凸頂點"""
    pts = sorted(set(points))
    if len(pts) < 3:
        raise DegeneratePolygonError(f"點數不足以形成多邊形: {pts}")
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegeneratePolygonError(f"點集共線: {pts[0]} … {pts[-1]}")
    return tuple(hull)


def twice_area(vertices: Sequence[Point]) -> int:
    m = len(vertices)
    return sum(
        vertices[i][0] * vertices[(i + 1) % m][1] - vertices[(i + 1) % m][0] * vertices[i][1]
        for i in range(m)
    )


def boundary_count(vertices: Sequence[Point]) -> int:
    m = len(vertices)
    return sum(
        gcd(abs(vertices[(i + 1) % m][0] - vertices[i][0]), abs(vertices[(i + 1) % m][1] - vertices[i][1]))
        for i in range(m)
    )


def pick_counts(vertices: Sequence[Point]) -> Tuple[int, int, int]:
    """回傳 (內點數, 邊界點數, 兩倍面積)"""
    area2 = twice_area(vertices)
    b = boundary_count(vertices)
    return (area2 - b + 2) // 2, b, area2


def locate(vertices: Sequence[Point], p: Point) -> int:
    """1 為嚴格內部，0 為邊界，-1 為外部（頂點須逆時針）"""
    on_edge = False
    m = len(vertices)
    for i in range(m):
        c = cross(vertices[i], vertices[(i + 1) % m], p)
        if c < 0:
            return -1
        if c == 0:
            on_edge = True
    return 0 if on_edge else 1


def lattice_points_of(vertices: Sequence[Point]) -> Tuple[Point, ...]:
    xs = [v[0] for v in vertices]
    ys = [v[1] for v in vertices]
    return tuple(
        (x, y)
        for x in range(min(xs), max(xs) + 1)
        for y in range(min(ys), max(ys) + 1)
        if locate(vertices, (x, y)) >= 0
    )


def _apply(linear: Linear, point: Point) -> Point:
    (a, b), (c, d) = linear
    return (a * point[0] + b * point[1], c * point[0] + d * point[1])


def _mul(m1: Linear, m2: Linear) -> Linear:
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def canonical_anchors(vertices: Vertices, allow_reflections: bool = True) -> Tuple[Vertices, List[Anchor]]:
    """
    邊錨定標準形

    對多邊形（與其鏡像）的每一條逆時針有向邊：起點平移到原點、
    邊方向轉到 +x、多邊形落在上半平面，再以剪切把最高列的最左點放到 [0, h)。
    取字典序最小的頂點循環，並回傳所有達到最小值的錨定映射。
    """
    variants: List[Tuple[Linear, Vertices]] = [(IDENTITY, tuple(vertices))]
    if allow_reflections:
        mirrored = tuple(reversed([_apply(MIRROR, v) for v in vertices]))
        variants.append((MIRROR, mirrored))

    best: Optional[Vertices] = None
    anchors: List[Anchor] = []
    for reflection, verts in variants:
        m = len(verts)
        for k in range(m):
            p0, p1 = verts[k], verts[(k + 1) % m]
            ex, ey = p1[0] - p0[0], p1[1] - p0[1]
            step = gcd(abs(ex), abs(ey))
            ux, uy = ex // step, ey // step
            _, s, t = ext_gcd(ux, uy)
            rotate: Linear = ((s, t), (-uy, ux))
            moved = [_apply(rotate, (v[0] - p0[0], v[1] - p0[1])) for v in verts[k:] + verts[:k]]
            height = max(y for _, y in moved)
            top_x = min(x for x, y in moved if y == height)
            shear_t = -(top_x // height)
            shear: Linear = ((1, shear_t), (0, 1))
            candidate = tuple((x + shear_t * y, y) for x, y in moved)

            if best is None or candidate < best:
                best = candidate
                anchors = []
            if candidate == best:
                linear = _mul(_mul(shear, rotate), reflection)
                shifted = _apply(_mul(shear, rotate), p0)
                anchors.append((linear, (-shifted[0], -shifted[1])))
    return best, anchors


def canonical_key(vertices: Vertices, allow_reflections: bool = True) -> Vertices:
    return canonical_anchors(vertices, allow_reflections)[0]


class PolygonService:
    """格多邊形服務"""

    @staticmethod
    def from_vertices(vertices: Sequence[Point]) -> LatticePolygon:
        """由已排好的逆時針嚴格凸頂點建立多邊形"""
        verts = tuple(tuple(v) for v in vertices)
        if len(verts) < 3 or twice_area(verts) <= 0:
            raise DegeneratePolygonError(f"頂點不構成逆時針的非退化多邊形: {verts}")
        interior, boundary, area2 = pick_counts(verts)
        return LatticePolygon(
            vertices=verts,
            lattice_points=lattice_points_of(verts),
            interior=interior,
            boundary=boundary,
            twice_area=area2,
        )

    @classmethod
    def convex_hull(cls, points: Iterable[Point]) -> LatticePolygon:
        return cls.from_vertices(hull_vertices(points))

    @staticmethod
    def counts(poly: LatticePolygon) -> Tuple[int, int]:
        """(內點, 邊界點)，Pick 公式與直接列舉交叉比對"""
        interior, boundary, _ = pick_counts(poly.vertices)
        direct_i = direct_b = 0
        for p in lattice_points_of(poly.vertices):
            if locate(poly.vertices, p) == 1:
                direct_i += 1
            else:
                direct_b += 1
        if (interior, boundary) != (direct_i, direct_b):
            raise InvariantViolation(
                "pick-counts",
                f"Pick 計數 {(interior, boundary)} 與直接列舉 {(direct_i, direct_b)} 不一致",
            )
        return interior, boundary

    @staticmethod
    def project(p: WeightedPolytope, triple: Triple) -> Projection:
        """每一列 v 分解為 α1·v1 + α2·v2 + α3·v3，取 (α1, α2)"""
        images: List[Tuple[Row, Point]] = []
        for row in p.points:
            alphas = PolytopeService.decompose(p, triple, row).alphas
            images.append((row, (alphas[0], alphas[1])))
        polygon = PolygonService.convex_hull(img for _, img in images)

        if sorted(img for _, img in images) != list(polygon.lattice_points):
            raise InvariantViolation(
                "projection-points",
                f"{p.quadruple} 投影後格點數 {polygon.n} 與列數 {p.n} 不一致",
            )
        interior = PolytopeService.interior_count(p)
        if polygon.interior != interior:
            raise InvariantViolation(
                "projection-interior",
                f"{p.quadruple} 投影後內點數 {polygon.interior} 與 {interior} 不一致",
            )
        return Projection(triple=triple, polygon=polygon, images=tuple(images))

    @classmethod
    def project_polytope(cls, p: WeightedPolytope) -> Projection:
        return cls.project(p, PolytopeService.find_unimodular_triple(p))

    @staticmethod
    def triangulate(poly: LatticePolygon) -> List[Tuple[Point, Point, Point]]:
        """
        原始三角剖分

        先由 v0 扇形剖分，依序插入邊上的格點（循環順序）與內點（字典序）。
        點落在三角形內部時分成三塊，落在邊上時鄰接的三角形各分成兩塊。
        """
        verts = poly.vertices
        m = len(verts)
        triangles = [(verts[0], verts[i], verts[i + 1]) for i in range(1, m - 1)]

        to_insert: List[Point] = []
        for i in range(m):
            a, b = verts[i], verts[(i + 1) % m]
            steps = gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))
            dx, dy = (b[0] - a[0]) // steps, (b[1] - a[1]) // steps
            to_insert.extend((a[0] + s * dx, a[1] + s * dy) for s in range(1, steps))
        to_insert.extend(p for p in poly.lattice_points if locate(verts, p) == 1)

        for p in to_insert:
            refined = []
            for a, b, c in triangles:
                sides = (cross(a, b, p), cross(b, c, p), cross(c, a, p))
                if min(sides) < 0:
                    refined.append((a, b, c))
                elif min(sides) > 0:
                    refined.extend([(a, b, p), (b, c, p), (c, a, p)])
                elif sides[0] == 0:
                    refined.extend([(a, p, c), (p, b, c)])
                elif sides[1] == 0:
                    refined.extend([(b, p, a), (p, c, a)])
                else:
                    refined.extend([(c, p, b), (p, a, b)])
            triangles = refined

        expected = 2 * poly.interior + poly.boundary - 2
        if len(triangles) != expected or any(twice_area(t) != 1 for t in triangles):
            raise InvariantViolation(
                "triangulation",
                f"剖分得到 {len(triangles)} 塊，預期 {expected} 塊且每塊兩倍面積為 1",
            )
        return triangles

    @classmethod
    def triangulate_distinguished(cls, p: WeightedPolytope) -> int:
        """剖分特殊三角形的像，確認每一小塊都對應行列式 ±d 的子式"""
        projection = cls.project_polytope(p)
        images = projection.image_map()
        rows_of = {img: row for row, img in projection.images}
        triangle = PolytopeService.distinguished_triangle(p)
        image_triangle = cls.convex_hull(images[r] for r in triangle.rows)
        pieces = cls.triangulate(image_triangle)

        d = p.quadruple.d
        for piece in pieces:
            rows = tuple(rows_of[v] for v in piece)
            if abs(det3(rows)) != d:
                raise InvariantViolation(
                    "distinguished-pieces",
                    f"{p.quadruple} 特殊三角形中的原始三角形 {rows} 行列式不是 ±{d}",
                )
        if len(pieces) * d != abs(det3(triangle.rows)):
            raise InvariantViolation(
                "distinguished-pieces",
                f"{p.quadruple} 特殊三角形剖分塊數 {len(pieces)} 與 |det|/d 不符",
            )
        return len(pieces)

    @classmethod
    def canonical_form(cls, poly: LatticePolygon, allow_reflections: bool = True) -> LatticePolygon:
        return cls.from_vertices(canonical_key(poly.vertices, allow_reflections))

    @staticmethod
    def _anchor_map(anchor: Anchor) -> UnimodularAffineMap:
        return UnimodularAffineMap(linear=anchor[0], translation=anchor[1])

    @classmethod
    def automorphisms(cls, poly: LatticePolygon, allow_reflections: bool = True) -> List[UnimodularAffineMap]:
        """所有把多邊形映到自身的仿射單模映射"""
        _, anchors = canonical_anchors(poly.vertices, allow_reflections)
        first = cls._anchor_map(anchors[0])
        return [cls._anchor_map(a).inverse().compose(first) for a in anchors]

    @classmethod
    def all_witnesses(
        cls, p1: LatticePolygon, p2: LatticePolygon, allow_reflections: bool = True
    ) -> List[UnimodularAffineMap]:
        """所有把 p1 映到 p2 的仿射單模映射；不等價時為空"""
        key1, anchors1 = canonical_anchors(p1.vertices, allow_reflections)
        key2, anchors2 = canonical_anchors(p2.vertices, allow_reflections)
        if key1 != key2:
            return []
        first = cls._anchor_map(anchors1[0])
        witnesses = [cls._anchor_map(a).inverse().compose(first) for a in anchors2]
        target = set(p2.lattice_points)
        for witness in witnesses:
            if {witness.apply(v) for v in p1.lattice_points} != target:
                raise InvariantViolation("witness", f"見證映射 {witness.to_json()} 未把格點集映到目標")
        return witnesses

    @classmethod
    def equivalent(
        cls, p1: LatticePolygon, p2: LatticePolygon, allow_reflections: bool = True
    ) -> Tuple[bool, Optional[UnimodularAffineMap]]:
        witnesses = cls.all_witnesses(p1, p2, allow_reflections)
        if not witnesses:
            return False, None
        return True, witnesses[0]

    @classmethod
    def apply_map(cls, poly: LatticePolygon, mapping: UnimodularAffineMap) -> LatticePolygon:
        return cls.convex_hull(mapping.apply(v) for v in poly.vertices)

    @staticmethod
    def random_unimodular_map(seed: int, size: int) -> UnimodularAffineMap:
        """
        以 numpy 亂數產生器合成 size 個因子的仿射單模映射

        第一個因子必為剪切，其後為剪切或鏡射；平移量介於 ±5·size。
        """
        if size < 0:
            raise InvalidInputError(f"size 必須 >= 0: {size}")
        if size == 0:
            return UnimodularAffineMap.identity()
        rng = np.random.default_rng(seed)
        reflections: List[Linear] = [((-1, 0), (0, 1)), ((1, 0), (0, -1)), ((0, 1), (1, 0))]
        linear: Linear = IDENTITY
        for step in range(size):
            if step == 0 or rng.random() < 0.7:
                amount = int(rng.choice([-3, -2, -1, 1, 2, 3]))
                factor: Linear = ((1, amount), (0, 1)) if rng.integers(2) == 0 else ((1, 0), (amount, 1))
            else:
                factor = reflections[int(rng.integers(len(reflections)))]
            linear = _mul(factor, linear)
        bound = 5 * size
        tx, ty = (int(v) for v in rng.integers(-bound, bound + 1, size=2))
        return UnimodularAffineMap(linear=linear, translation=(tx, ty))

    @classmethod
    def genus_zero_representatives(cls, n: int) -> List[LatticePolygon]:
        """n 個格點、無內點的標準代表：I_{n-2}、I_{k,l} 與 n = 6 時的 2Δ"""
        if n < 3:
            raise InvalidInputError(f"多邊形至少有 3 個格點: {n}")
        shapes: List[Vertices] = [((0, 0), (n - 2, 0), (0, 1))]
        for l in range(1, (n - 2) // 2 + 1):
            k = n - 2 - l
            shapes.append(((0, 0), (k, 0), (l, 1), (0, 1)))
        if n == 6:
            shapes.append(((0, 0), (2, 0), (0, 2)))
        return sorted(
            (cls.from_vertices(canonical_key(hull_vertices(s))) for s in shapes),
            key=lambda poly: poly.vertices,
        )

    # ===== JSON I/O =====

    @classmethod
    def from_json(cls, text: str) -> LatticePolygon:
        """{"vertices": [[x, y], ...]}，頂點可為任意順序"""
        try:
            payload = PolygonPayload.model_validate_json(text)
        except ValidationError as e:
            raise InvalidInputError(f"多邊形 JSON 格式錯誤: {str(e)}") from e
        return cls.convex_hull(payload.vertices)

    @staticmethod
    def to_json(poly: LatticePolygon) -> str:
        return json.dumps(poly.to_json())
