# 初始化指令資料夾
from . import quad, poly, classify, polygons, curve

# 匯出所有指令
commands = [
    quad.quad_group,
    poly.poly_group,
    classify.classify_command,
    polygons.polygons_group,
    curve.map_curve_command,
]
