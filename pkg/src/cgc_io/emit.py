"""Writers for profile samples (CSV), meshes (OBJ, PLY) and verification reports (JSON)."""

import csv
import io
import logging
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from cgc_geometry import SurfaceMesh
from cgc_verify import VerificationReport

from .errors import OutputError

logger = logging.getLogger(__name__)


def fmt(x: float) -> str:
    """Shortest round-trip representation of a double (at most 17 significant digits)."""
    return repr(float(x))


def _write(path: Path, text: str) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}") from e
    logger.info("Wrote %s (%d bytes)", path, len(text))
    return path


# =============================================================================
# CSV
# =============================================================================

def csv_text(columns: Mapping[str, Sequence[float]]) -> str:
    names = list(columns)
    data = [np.atleast_1d(np.asarray(columns[name], dtype=float)) for name in names]
    if len({col.size for col in data}) > 1:
        raise OutputError(f"CSV columns differ in length: {[col.size for col in data]}")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(names)
    for row in zip(*data):
        writer.writerow([fmt(v) for v in row])
    return buffer.getvalue()


def emit_csv(columns: Mapping[str, Sequence[float]], path: Path) -> Path:
    """Header row plus one row per sample, columns in mapping order."""
    return _write(path, csv_text(columns))


def read_csv(path: Path) -> dict[str, np.ndarray]:
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    header, body = rows[0], rows[1:]
    return {name: np.array([float(row[i]) for row in body]) for i, name in enumerate(header)}


# =============================================================================
# MESHES
# =============================================================================

def obj_text(mesh: SurfaceMesh) -> str:
    lines = [f"# {mesh.n_s} x {mesh.n_theta} grid, model {mesh.model.value}"]
    lines += ["v " + " ".join(fmt(c) for c in vertex) for vertex in mesh.vertices]
    lines += ["f " + " ".join(str(int(i) + 1) for i in face) for face in mesh.faces]
    return "\n".join(lines) + "\n"


def ply_text(mesh: SurfaceMesh) -> str:
    coords = ["x", "y", "z", "w"][: mesh.vertices.shape[1]]
    header = [
        "ply",
        "format ascii 1.0",
        f"comment {mesh.n_s} x {mesh.n_theta} grid, model {mesh.model.value}",
        f"element vertex {len(mesh.vertices)}",
        *(f"property double {name}" for name in coords + ["K_est", "H_est", "K_int"]),
        f"element face {len(mesh.faces)}",
        "property list uchar int vertex_indices",
        "end_header",
    ]
    body = [
        " ".join(fmt(v) for v in (*vertex, k, h, ki))
        for vertex, k, h, ki in zip(mesh.vertices, mesh.K_est, mesh.H_est, mesh.K_int)
    ]
    body += [f"{len(face)} " + " ".join(str(int(i)) for i in face) for face in mesh.faces]
    return "\n".join(header + body) + "\n"


# Maps mesh format to its text renderer
_MESH_WRITERS = {
    "obj": obj_text,
    "ply": ply_text,
}


def emit_mesh(mesh: SurfaceMesh, format: str, path: Path) -> Path:
    writer = _MESH_WRITERS.get(format)
    if writer is None:
        raise OutputError(f"Unknown mesh format {format!r}. Valid formats: {list(_MESH_WRITERS)}")
    if mesh.faces.size and (mesh.faces.min() < 0 or mesh.faces.max() >= len(mesh.vertices)):
        raise OutputError("Mesh faces reference missing vertices")
    return _write(path, writer(mesh))


# =============================================================================
# REPORTS
# =============================================================================

def emit_report(report: VerificationReport, path: Path) -> Path:
    return _write(path, report.to_json())
