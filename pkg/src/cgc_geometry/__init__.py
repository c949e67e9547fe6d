"""CGC Geometry - embedding, projection, normals, parallel offsets and closed profiles."""

from .ambient import (
    AmbientPoint,
    Model,
    Signature,
    check_quadric,
    embed,
    inner,
    metric,
    project,
    rotation_matrix,
    signature_for,
)
from .errors import ConsistencyError, GeometryError, NoClosedCurveError, ProjectionError, SingularPointError
from .mesh import MeshQuality, SurfaceMesh, build_mesh, default_model
from .normal import NormalField, normal_field, orientation, unit_normal
from .parallel import BonnetOffset, LWFit, bonnet_scan, lw_fit, offset_normal, parallel_offset, sample_points
from .period import PeriodSolution, p_max, period_function, period_solve

__all__ = [
    "AmbientPoint",
    "Model",
    "Signature",
    "check_quadric",
    "embed",
    "inner",
    "metric",
    "project",
    "rotation_matrix",
    "signature_for",
    "ConsistencyError",
    "GeometryError",
    "NoClosedCurveError",
    "ProjectionError",
    "SingularPointError",
    "MeshQuality",
    "SurfaceMesh",
    "build_mesh",
    "default_model",
    "NormalField",
    "normal_field",
    "orientation",
    "unit_normal",
    "BonnetOffset",
    "LWFit",
    "bonnet_scan",
    "lw_fit",
    "offset_normal",
    "parallel_offset",
    "sample_points",
    "PeriodSolution",
    "p_max",
    "period_function",
    "period_solve",
]
