"""
錯誤類別模組

輸入錯誤對應結束碼 1，已證明敘述的檢查失敗（不變量違反）對應結束碼 2。
"""

from typing import Any, Dict, Optional


class WPCurvesError(Exception):
    """所有錯誤的基底類別"""

    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class InvalidInputError(WPCurvesError):
    """輸入格式錯誤或非正整數"""

    exit_code = 1


class PreconditionError(InvalidInputError):
    """操作的前置條件不成立（例如四元組不是 good）"""


class DegeneratePolygonError(InvalidInputError):
    """點集共線或點數不足，無法形成多邊形"""


class InvariantViolation(WPCurvesError):
    """已證明的組合敘述在計算中不成立"""

    exit_code = 2

    def __init__(self, check: str, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(f"[{check}] {message}", details)
        self.check = check


class OverflowGuardError(InvariantViolation):
    """中間值超出有號 128 位元範圍"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__("overflow-guard", message, details)
