import pytest

from app.core.config import settings
from app.schemas.quadruple import Quadruple
from app.services.polytope_service import PolytopeService


@pytest.fixture(autouse=True)
def restore_settings():
    """每個測試結束後還原全域設定"""
    snapshot = settings.model_dump()
    yield
    for field, value in snapshot.items():
        setattr(settings, field, value)


@pytest.fixture
def isolated_env(tmp_path, monkeypatch):
    """在空目錄中執行，避免讀到工作目錄的 .env"""
    monkeypatch.chdir(tmp_path)
    for name in ("ATLAS_DIR", "PARALLELISM", "D_MAX_CAP", "OUTPUT_FORMAT", "SL_ONLY", "LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    return tmp_path


@pytest.fixture
def polytope():
    """依 (w0, w1, w2, d) 建構多面體"""
    def _build(w0, w1, w2, d):
        return PolytopeService.build(Quadruple(w0=w0, w1=w1, w2=w2, d=d))
    return _build
