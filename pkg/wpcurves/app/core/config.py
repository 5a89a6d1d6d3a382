# 本設定檔所有欄位皆可用環境變數（.env）覆蓋，命令列參數優先於兩者
#
# 範例：
# LOG_LEVEL=DEBUG
# PARALLELISM=4
# ATLAS_DIR=atlas
# ATLAS_DB_URL=sqlite:///atlas/atlas.db
# OUTPUT_FORMAT=json
# FUZZ_SEED=20240101
# SL_ONLY=false

import logging
import sys
from typing import Optional, Union

from pydantic import field_validator
from pydantic_settings import BaseSettings

# 參數上限：d_max 不得超過此值
D_MAX_HARD_CAP = 200_000

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s - %(message)s"


class Settings(BaseSettings):
    APP_NAME: str = "wpcurves 加權平面曲線格多面體工具"

    # 列舉設定
    D_MAX_CAP: int = D_MAX_HARD_CAP
    PARALLELISM: int = 1

    # 圖譜輸出
    ATLAS_DIR: str = "atlas"
    ATLAS_DB_URL: Optional[str] = None
    OUTPUT_FORMAT: str = "text"

    # 隨機測試種子
    FUZZ_SEED: int = 0

    # 日誌設定
    LOG_LEVEL: str = "INFO"

    # 多邊形列舉
    INDUCTIVE_MARGIN: int = 2
    BOX_SIZE: Optional[int] = None
    # 只允許行列式 +1 的等價（不含鏡射）
    SL_ONLY: bool = False

    # 子行列式窮舉檢查上限（點數超過時改為抽查）
    MINOR_EXHAUSTIVE_LIMIT: int = 40

    @field_validator("D_MAX_CAP", mode="before")
    def check_d_max_cap(cls, v: Union[str, int]) -> int:
        value = int(v)
        if value < 3 or value > D_MAX_HARD_CAP:
            raise ValueError(f"D_MAX_CAP 必須介於 3 與 {D_MAX_HARD_CAP} 之間: {value}")
        return value

    @field_validator("PARALLELISM", mode="before")
    def check_parallelism(cls, v: Union[str, int]) -> int:
        value = int(v)
        if value < 1:
            raise ValueError(f"PARALLELISM 必須 >= 1: {value}")
        return value

    @field_validator("OUTPUT_FORMAT", mode="before")
    def check_output_format(cls, v: str) -> str:
        value = str(v).lower()
        if value not in ("text", "json"):
            raise ValueError(f"OUTPUT_FORMAT 只接受 text 或 json: {v}")
        return value

    @field_validator("LOG_LEVEL", mode="before")
    def check_log_level(cls, v: str) -> str:
        value = str(v).upper()
        if value not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"無效的 LOG_LEVEL: {v}")
        return value

    @field_validator("SL_ONLY", mode="before")
    def parse_sl_only(cls, v: Union[str, bool]) -> bool:
        if isinstance(v, str):
            return v.lower() in ("true", "1", "t", "yes")
        return bool(v)

    @field_validator("INDUCTIVE_MARGIN", mode="before")
    def check_margin(cls, v: Union[str, int]) -> int:
        value = int(v)
        if value < 1:
            raise ValueError(f"INDUCTIVE_MARGIN 必須 >= 1: {value}")
        return value

    @property
    def atlas_db_url(self) -> str:
        """未指定時使用圖譜目錄下的 sqlite 檔案"""
        if self.ATLAS_DB_URL:
            return self.ATLAS_DB_URL
        return f"sqlite:///{self.ATLAS_DIR}/atlas.db"

    def box_size_for(self, genus: int) -> int:
        """盒子法的預設邊長 2g+2"""
        return self.BOX_SIZE if self.BOX_SIZE is not None else 2 * genus + 2

    class Config:
        case_sensitive = True
        env_file = ".env"
        env_file_encoding = "utf-8"


def apply_settings(config: Settings) -> None:
    """將命令列合成的設定套用到全域 settings（各服務共用同一實例）"""
    for field, value in config.model_dump().items():
        setattr(settings, field, value)


def setup_logging(config: Settings) -> None:
    """設定日誌系統，輸出到 stderr 以免干擾 JSON 輸出"""
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


settings = Settings()
