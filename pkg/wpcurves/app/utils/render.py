"""
多邊形 SVG 繪圖

固定 hash salt、移除日期中繼資料，同一輸入的輸出逐位元組一致。
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon as PolygonPatch  # noqa: E402

from ..schemas.polygon import LatticePolygon  # noqa: E402
from ..services.polygon_service import locate  # noqa: E402

PX_PER_UNIT = 24
DPI = 72


def render_polygon_svg(poly: LatticePolygon, path: Path) -> Path:
    xs = [v[0] for v in poly.vertices]
    ys = [v[1] for v in poly.vertices]
    min_x, max_x, min_y, max_y = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    width = (max_x - min_x) * PX_PER_UNIT / DPI
    height = (max_y - min_y) * PX_PER_UNIT / DPI

    with matplotlib.rc_context({"svg.hashsalt": "wpcurves", "svg.fonttype": "none"}):
        fig = plt.figure(figsize=(width, height), dpi=DPI)
        try:
            ax = fig.add_axes([0, 0, 1, 1])
            ax.set_xlim(min_x, max_x)
            ax.set_ylim(min_y, max_y)
            ax.set_aspect("equal")
            ax.axis("off")

            grid = [(x, y) for x in range(min_x, max_x + 1) for y in range(min_y, max_y + 1)]
            ax.scatter([p[0] for p in grid], [p[1] for p in grid], s=4, color="#cccccc")
            ax.add_patch(PolygonPatch(poly.vertices, closed=True, fill=False, edgecolor="#1f4e79", linewidth=1.5))

            boundary = [p for p in poly.lattice_points if locate(poly.vertices, p) == 0]
            interior = [p for p in poly.lattice_points if locate(poly.vertices, p) == 1]
            ax.scatter([p[0] for p in boundary], [p[1] for p in boundary], s=20, color="#000000")
            if interior:
                ax.scatter([p[0] for p in interior], [p[1] for p in interior], s=20, color="#c00000")

            path = Path(path)
            path.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    return path
