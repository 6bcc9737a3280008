"""Triangle meshes: construction, OBJ I/O, and unit-cube normalization."""

import numpy as np

from .exceptions import ZeroExtentMeshError

DEFAULT_MARGIN = 1.0 / 64.0


class Mesh:
    """An indexed triangle mesh with optional per-vertex UVs.

    Vertices are float64 (V, 3) in meters, faces int64 (F, 3) indexing
    vertices. UVs, when present, are float64 (V, 2) and follow their
    vertex through every operation; ``texture`` is an opaque reference
    (material or image name) passed through unchanged.
    """

    def __init__(self, vertices, faces, uv=None, texture=None):
        self.vertices = np.asarray(vertices, dtype=np.float64).reshape(-1, 3)
        self.faces = np.asarray(faces, dtype=np.int64).reshape(-1, 3)
        self.uv = None if uv is None else np.asarray(uv, dtype=np.float64).reshape(-1, 2)
        self.texture = texture
        self._validate()

    def _validate(self):
        if len(self.vertices) < 3:
            raise ValueError("mesh needs at least 3 vertices")
        if len(self.faces) and (self.faces.min() < 0 or self.faces.max() >= len(self.vertices)):
            raise ValueError("face index out of range")
        if len(self.faces):
            a, b, c = self.faces[:, 0], self.faces[:, 1], self.faces[:, 2]
            if np.any((a == b) | (b == c) | (a == c)):
                raise ValueError("face with repeated vertex")
        if self.uv is not None and len(self.uv) != len(self.vertices):
            raise ValueError("uv count must match vertex count")

    @property
    def num_vertices(self):
        return len(self.vertices)

    @property
    def num_faces(self):
        return len(self.faces)

    def bounds(self):
        """(min, max) corners of the axis-aligned bounding box."""
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    def bbox_diagonal(self):
        lo, hi = self.bounds()
        return float(np.linalg.norm(hi - lo))

    def with_vertices(self, vertices):
        """Copy of this mesh with replaced vertex positions."""
        return Mesh(vertices, self.faces, uv=self.uv, texture=self.texture)

    def __eq__(self, other):
        if not isinstance(other, Mesh):
            return NotImplemented
        same_uv = (self.uv is None) == (other.uv is None) and (
            self.uv is None or np.array_equal(self.uv, other.uv)
        )
        return (
            np.array_equal(self.vertices, other.vertices)
            and np.array_equal(self.faces, other.faces)
            and same_uv
            and self.texture == other.texture
        )

    def __repr__(self):
        return f"Mesh({self.num_vertices} vertices, {self.num_faces} faces)"


class NormalizationTransform:
    """Uniform scale + translation mapping a mesh into the unit cube.

    apply:  q = p * scale + translation
    invert: p = (q - translation) / scale
    """

    def __init__(self, scale, translation):
        if scale <= 0:
            raise ValueError("scale must be positive")
        self.scale = float(scale)
        self.translation = np.asarray(translation, dtype=np.float64).reshape(3)

    def apply(self, points):
        return np.asarray(points, dtype=np.float64) * self.scale + self.translation

    def invert(self, points):
        return (np.asarray(points, dtype=np.float64) - self.translation) / self.scale

    @classmethod
    def identity(cls):
        return cls(1.0, np.zeros(3))

    def __repr__(self):
        t = tuple(round(v, 6) for v in self.translation)
        return f"NormalizationTransform(scale={self.scale:.6g}, translation={t})"


def normalize_mesh(mesh, margin=DEFAULT_MARGIN):
    """Scale and translate a mesh into ``[margin, 1-margin]^3``.

    The scale is uniform (largest bounding-box extent governs) and the
    result is centered at (0.5, 0.5, 0.5). Returns the normalized mesh
    and the transform that produced it; the transform's ``invert``
    recovers original coordinates.
    """
    if not 0 <= margin < 0.5:
        raise ValueError("margin must be in [0, 0.5)")
    lo, hi = mesh.bounds()
    extent = float((hi - lo).max())
    if extent <= 0.0:
        raise ZeroExtentMeshError("all vertices coincide; cannot normalize")
    scale = (1.0 - 2.0 * margin) / extent
    center = (lo + hi) / 2.0
    translation = 0.5 - center * scale
    transform = NormalizationTransform(scale, translation)
    return mesh.with_vertices(transform.apply(mesh.vertices)), transform


def concat_meshes(meshes):
    """Concatenate meshes into one, offsetting face indices.

    UVs are kept only when every input carries them; the first non-None
    texture wins.
    """
    if not meshes:
        raise ValueError("no meshes to concatenate")
    verts, faces, uvs = [], [], []
    offset = 0
    keep_uv = all(m.uv is not None for m in meshes)
    texture = next((m.texture for m in meshes if m.texture is not None), None)
    for m in meshes:
        verts.append(m.vertices)
        faces.append(m.faces + offset)
        if keep_uv:
            uvs.append(m.uv)
        offset += m.num_vertices
    return Mesh(
        np.vstack(verts),
        np.vstack(faces),
        uv=np.vstack(uvs) if keep_uv else None,
        texture=texture,
    )


def load_obj(path):
    """Parse a Wavefront OBJ file into a Mesh.

    Reads ``v``, ``vt`` and ``f`` records; polygon faces are
    fan-triangulated. Per-corner UV indices are collapsed to per-vertex
    UVs (first corner referencing a vertex wins). ``usemtl`` is kept as
    the texture reference.
    """
    positions, texcoords, face_rows, uv_rows = [], [], [], []
    texture = None
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "v" and len(parts) >= 4:
                positions.append([float(parts[1]), float(parts[2]), float(parts[3])])
            elif parts[0] == "vt" and len(parts) >= 3:
                texcoords.append([float(parts[1]), float(parts[2])])
            elif parts[0] == "usemtl" and len(parts) >= 2 and texture is None:
                texture = parts[1]
            elif parts[0] == "f" and len(parts) >= 4:
                corners = []
                for term in parts[1:]:
                    fields = term.split("/")
                    vi = int(fields[0])
                    vi = vi - 1 if vi > 0 else len(positions) + vi
                    ti = None
                    if len(fields) > 1 and fields[1]:
                        ti = int(fields[1])
                        ti = ti - 1 if ti > 0 else len(texcoords) + ti
                    corners.append((vi, ti))
                for k in range(1, len(corners) - 1):  # fan triangulation
                    tri = (corners[0], corners[k], corners[k + 1])
                    face_rows.append([c[0] for c in tri])
                    uv_rows.append([c[1] for c in tri])
    uv = None
    if texcoords and any(t is not None for row in uv_rows for t in row):
        uv = np.zeros((len(positions), 2))
        seen = np.zeros(len(positions), dtype=bool)
        for frow, urow in zip(face_rows, uv_rows):
            for vi, ti in zip(frow, urow):
                if ti is not None and not seen[vi]:
                    uv[vi] = texcoords[ti]
                    seen[vi] = True
    return Mesh(np.array(positions), np.array(face_rows), uv=uv, texture=texture)


def save_obj(mesh, path):
    """Write a Mesh as OBJ, preserving UVs and the texture reference.

    Output is byte-stable for a fixed mesh: coordinates use %.9g.
    """
    with open(path, "w", encoding="utf-8") as fh:
        if mesh.texture is not None:
            fh.write(f"usemtl {mesh.texture}\n")
        for v in mesh.vertices:
            fh.write(f"v {v[0]:.9g} {v[1]:.9g} {v[2]:.9g}\n")
        if mesh.uv is not None:
            for t in mesh.uv:
                fh.write(f"vt {t[0]:.9g} {t[1]:.9g}\n")
        for f in mesh.faces:
            if mesh.uv is not None:
                fh.write(f"f {f[0]+1}/{f[0]+1} {f[1]+1}/{f[1]+1} {f[2]+1}/{f[2]+1}\n")
            else:
                fh.write(f"f {f[0]+1} {f[1]+1} {f[2]+1}\n")
