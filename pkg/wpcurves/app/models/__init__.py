from .atlas import AtlasRun, PolygonClass, ClassMember
