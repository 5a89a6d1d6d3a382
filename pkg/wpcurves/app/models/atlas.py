from sqlalchemy import Column, Integer, String, ForeignKey, DateTime, Text, UniqueConstraint
from sqlalchemy.orm import relationship
from sqlalchemy.sql import func
from ..core.database import Base


class AtlasRun(Base):
    """一次分類執行（genus, d_max）"""
    __tablename__ = "atlas_runs"

    id = Column(Integer, primary_key=True, index=True)
    genus = Column(Integer, nullable=False)
    d_max = Column(Integer, nullable=False)
    class_count = Column(Integer, nullable=False)
    created_at = Column(DateTime, default=func.now())

    # 關聯
    classes = relationship(
        "PolygonClass",
        back_populates="run",
        cascade="all, delete-orphan",
        order_by="PolygonClass.class_index",
    )

    __table_args__ = (UniqueConstraint("genus", "d_max", name="uq_atlas_run_genus_dmax"),)


class PolygonClass(Base):
    """多邊形等價類（以標準形表示）"""
    __tablename__ = "polygon_classes"

    id = Column(Integer, primary_key=True, index=True)
    run_id = Column(Integer, ForeignKey("atlas_runs.id"), index=True)
    class_index = Column(Integer, nullable=False)
    n = Column(Integer, nullable=False)
    canonical = Column(Text, nullable=False)  # JSON 頂點列表

    # 關聯
    run = relationship("AtlasRun", back_populates="classes")
    members = relationship(
        "ClassMember",
        back_populates="polygon_class",
        cascade="all, delete-orphan",
        order_by="ClassMember.position",
    )


class ClassMember(Base):
    """等價類中的四元組與其單模三元組"""
    __tablename__ = "class_members"

    id = Column(Integer, primary_key=True, index=True)
    class_id = Column(Integer, ForeignKey("polygon_classes.id"), index=True)
    position = Column(Integer, nullable=False)
    w0 = Column(Integer, nullable=False)
    w1 = Column(Integer, nullable=False)
    w2 = Column(Integer, nullable=False)
    d = Column(Integer, nullable=False)
    triple = Column(String(255), nullable=False)  # JSON

    # 關聯
    polygon_class = relationship("PolygonClass", back_populates="members")
