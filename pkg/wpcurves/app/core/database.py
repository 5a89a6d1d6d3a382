from functools import lru_cache
from pathlib import Path

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import declarative_base, sessionmaker

# 創建Base類，所有模型將繼承此類
Base = declarative_base()


@lru_cache(maxsize=None)
def get_engine(database_url: str) -> Engine:
    """依連線字串建立（並快取）SQLAlchemy 引擎"""
    if database_url.startswith("sqlite:///"):
        # sqlite 檔案所在目錄需事先存在
        path = database_url[len("sqlite:///"):]
        if path and path != ":memory:":
            Path(path).parent.mkdir(parents=True, exist_ok=True)
    return create_engine(database_url, pool_pre_ping=True)


def get_session_factory(database_url: str) -> sessionmaker:
    return sessionmaker(autocommit=False, autoflush=False, bind=get_engine(database_url))


# 創建所有表格
def create_tables(database_url: str) -> None:
    # 註冊模型
    from ..models import atlas  # noqa: F401

    Base.metadata.create_all(bind=get_engine(database_url))
