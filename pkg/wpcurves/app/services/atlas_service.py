import csv
import json
import logging
from pathlib import Path
from typing import Optional

from sqlalchemy.orm import Session

from ..core.database import create_tables, get_session_factory
from ..core.exceptions import InvalidInputError
from ..models.atlas import AtlasRun, ClassMember, PolygonClass
from ..schemas.atlas import AtlasClass, ClassAtlas
from ..schemas.quadruple import Quadruple

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["w0", "w1", "w2", "d", "n", "class_index"]


class AtlasService:
    """圖譜的 JSON、CSV 與資料庫存取"""

    @staticmethod
    def atlas_filename(genus: int, d_max: int) -> str:
        return f"atlas_g{genus}_d{d_max}.json"

    @staticmethod
    def dumps(atlas: ClassAtlas) -> str:
        return json.dumps(atlas.to_payload(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def write_json(cls, atlas: ClassAtlas, atlas_dir: str) -> Path:
        """寫入圖譜目錄；內容相同時重寫結果逐位元組一致"""
        directory = Path(atlas_dir)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / cls.atlas_filename(atlas.genus, atlas.d_max)
        path.write_text(cls.dumps(atlas), encoding="utf-8")
        logger.info(f"✅ 圖譜已寫入 {path}")
        return path

    @staticmethod
    def read_json(path: Path) -> ClassAtlas:
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as e:
            raise InvalidInputError(f"無法讀取圖譜 {path}: {str(e)}") from e
        return ClassAtlas.from_payload(payload)

    @staticmethod
    def export_csv(atlas: ClassAtlas, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for c in atlas.classes:
                for q in c.members:
                    writer.writerow([q.w0, q.w1, q.w2, q.d, c.n, c.class_index])
        logger.info(f"✅ CSV 已匯出 {path}")
        return path

    @classmethod
    def store(cls, atlas: ClassAtlas, database_url: str) -> int:
        """存入資料庫；相同 (genus, d_max) 的舊紀錄會被取代。回傳 run id"""
        create_tables(database_url)
        db: Session = get_session_factory(database_url)()
        try:
            existing = (
                db.query(AtlasRun)
                .filter(AtlasRun.genus == atlas.genus, AtlasRun.d_max == atlas.d_max)
                .first()
            )
            if existing:
                logger.info(f"取代既有圖譜紀錄 g={atlas.genus}, d_max={atlas.d_max}")
                db.delete(existing)
                db.flush()

            run = AtlasRun(genus=atlas.genus, d_max=atlas.d_max, class_count=len(atlas.classes))
            for c in atlas.classes:
                record = PolygonClass(
                    class_index=c.class_index,
                    n=c.n,
                    canonical=json.dumps([list(v) for v in c.canonical]),
                )
                for position, (q, triple) in enumerate(zip(c.members, c.triples)):
                    record.members.append(
                        ClassMember(
                            position=position,
                            w0=q.w0,
                            w1=q.w1,
                            w2=q.w2,
                            d=q.d,
                            triple=json.dumps([list(r) for r in triple]),
                        )
                    )
                run.classes.append(record)
            db.add(run)
            db.commit()
            return run.id
        except Exception as e:
            db.rollback()
            logger.error(f"❌ 圖譜寫入資料庫失敗: {str(e)}")
            raise
        finally:
            db.close()

    @staticmethod
    def load(genus: int, d_max: int, database_url: str) -> Optional[ClassAtlas]:
        create_tables(database_url)
        db: Session = get_session_factory(database_url)()
        try:
            run = (
                db.query(AtlasRun)
                .filter(AtlasRun.genus == genus, AtlasRun.d_max == d_max)
                .first()
            )
            if run is None:
                return None
            classes = []
            for record in run.classes:
                classes.append(
                    AtlasClass(
                        class_index=record.class_index,
                        canonical=tuple(tuple(v) for v in json.loads(record.canonical)),
                        n=record.n,
                        members=tuple(Quadruple(w0=m.w0, w1=m.w1, w2=m.w2, d=m.d) for m in record.members),
                        triples=tuple(
                            tuple(tuple(r) for r in json.loads(m.triple)) for m in record.members
                        ),
                    )
                )
            return ClassAtlas(genus=run.genus, d_max=run.d_max, classes=tuple(classes))
        finally:
            db.close()
