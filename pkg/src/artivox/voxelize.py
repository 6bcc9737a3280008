"""Surface voxelization of triangle meshes into boolean occupancy grids.

A cell is occupied iff at least one triangle overlaps the cell's
axis-aligned box, decided by the separating-axis test (13 axes: 3 box
axes, the triangle normal, and 9 edge cross products). Touching counts
as overlap, so a triangle lying exactly on a cell boundary marks both
neighbors. Only the surface shell is produced; there is no interior
fill.
"""

import struct

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .exceptions import (
    ResolutionMismatchError,
    ResolutionTooLargeError,
    ZeroExtentMeshError,
)
from .mesh import DEFAULT_MARGIN, Mesh, NormalizationTransform

RESOLUTION_CAP = 512

GRID_MAGIC = b"AVGX"


class OccupancyGrid:
    """Boolean voxel occupancy with x-major (x slowest) linearization."""

    def __init__(self, data):
        self.data = np.ascontiguousarray(data, dtype=bool)
        if self.data.ndim != 3:
            raise ValueError("occupancy grid must be 3-dimensional")

    @classmethod
    def empty(cls, shape):
        if isinstance(shape, int):
            shape = (shape, shape, shape)
        return cls(np.zeros(shape, dtype=bool))

    @property
    def shape(self):
        return self.data.shape

    @property
    def resolution(self):
        """Cubic resolution; raises for anisotropic grids."""
        nx, ny, nz = self.data.shape
        if not (nx == ny == nz):
            raise ValueError("grid is not cubic")
        return nx

    def count(self):
        return int(self.data.sum())

    def fraction(self):
        return float(self.data.mean())

    def occupied_centers(self):
        """Centers of occupied cells, each axis scaled to (0, 1)."""
        idx = np.argwhere(self.data)
        return (idx + 0.5) / np.asarray(self.data.shape, dtype=np.float64)

    def __eq__(self, other):
        if not isinstance(other, OccupancyGrid):
            return NotImplemented
        return self.data.shape == other.data.shape and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"OccupancyGrid{self.shape}({self.count()} occupied)"


def save_grid(grid, path):
    """Write the binary grid format.

    Layout: 16-byte header (magic ``AVGX`` + three little-endian u32
    axis resolutions) followed by the cells as a bit stream in x-major
    order, most significant bit first, zero-padded to a byte boundary.
    """
    nx, ny, nz = grid.shape
    packed = np.packbits(grid.data.reshape(-1))
    with open(path, "wb") as fh:
        fh.write(GRID_MAGIC)
        fh.write(struct.pack("<III", nx, ny, nz))
        fh.write(packed.tobytes())


def load_grid(path):
    with open(path, "rb") as fh:
        header = fh.read(16)
        if len(header) != 16 or header[:4] != GRID_MAGIC:
            raise ValueError(f"{path}: not an AVGX grid file")
        nx, ny, nz = struct.unpack("<III", header[4:])
        n = nx * ny * nz
        payload = np.frombuffer(fh.read(), dtype=np.uint8)
        if len(payload) != (n + 7) // 8:
            raise ValueError(f"{path}: truncated grid payload")
        bits = np.unpackbits(payload, count=n).astype(bool)
    return OccupancyGrid(bits.reshape(nx, ny, nz))


# --- separating-axis triangle/box overlap ---

_BOX_AXES = np.eye(3)


def triangle_box_overlap(tri, centers, half):
    """Vectorized SAT overlap of one triangle against many cell boxes.

    tri: (3, 3) vertices. centers: (M, 3) box centers. half: (3,) box
    half extents. Returns a boolean (M,) mask; touching contact counts
    as overlap.
    """
    centers = np.atleast_2d(centers)
    v = tri[None, :, :] - centers[:, None, :]  # (M, 3 verts, 3)

    # box axes: plain AABB interval test
    lo = v.min(axis=1)
    hi = v.max(axis=1)
    ok = np.all((lo <= half) & (hi >= -half), axis=1)

    edges = np.array([tri[1] - tri[0], tri[2] - tri[1], tri[0] - tri[2]])

    # triangle normal
    normal = np.cross(edges[0], edges[1])
    r = np.dot(np.abs(normal), half)
    s = v[:, 0, :] @ normal
    ok &= np.abs(s) <= r

    # 9 edge x box-axis cross products
    for e in edges:
        for q in range(3):
            axis = np.cross(e, _BOX_AXES[q])
            r = np.dot(np.abs(axis), half)
            p = v @ axis  # (M, 3)
            ok &= ~((p.min(axis=1) > r) | (p.max(axis=1) < -r))
    return ok


def voxelize_mesh(mesh, resolution=64):
    """Surface-voxelize a mesh normalized into [0, 1]^3.

    Candidate cells per triangle come from its bounding box (expanded
    one cell so boundary contact is never missed), then the SAT test
    decides occupancy. Deterministic for fixed input and invariant to
    vertex/face ordering.
    """
    if resolution < 1:
        raise ValueError("resolution must be positive")
    if resolution > RESOLUTION_CAP:
        raise ResolutionTooLargeError(
            f"resolution {resolution} exceeds cap {RESOLUTION_CAP}"
        )
    if mesh.num_faces == 0:
        raise ValueError("cannot voxelize a mesh with no faces")
    lo, hi = mesh.bounds()
    if lo.min() < -1e-9 or hi.max() > 1 + 1e-9:
        raise ValueError("mesh must be normalized into [0,1]^3 before voxelization")

    n = resolution
    occupancy = np.zeros((n, n, n), dtype=bool)
    half = np.full(3, 0.5 / n)
    cell = 1.0 / n
    tris = mesh.vertices[mesh.faces]  # (F, 3, 3)
    for tri in tris:
        tlo = np.clip(np.floor(tri.min(axis=0) * n).astype(int) - 1, 0, n - 1)
        thi = np.clip(np.floor(tri.max(axis=0) * n).astype(int) + 1, 0, n - 1)
        xs = np.arange(tlo[0], thi[0] + 1)
        ys = np.arange(tlo[1], thi[1] + 1)
        zs = np.arange(tlo[2], thi[2] + 1)
        gx, gy, gz = np.meshgrid(xs, ys, zs, indexing="ij")
        idx = np.stack([gx.ravel(), gy.ravel(), gz.ravel()], axis=1)
        centers = (idx + 0.5) * cell
        hit = triangle_box_overlap(tri, centers, half)
        occupancy[idx[hit, 0], idx[hit, 1], idx[hit, 2]] = True
    return OccupancyGrid(occupancy)


def grid_iou(a, b):
    """Intersection over union of two occupancy grids.

    Both-empty grids compare as identical (IoU 1).
    """
    if a.shape != b.shape:
        raise ResolutionMismatchError(f"grid shapes differ: {a.shape} vs {b.shape}")
    union = int(np.logical_or(a.data, b.data).sum())
    if union == 0:
        return 1.0
    inter = int(np.logical_and(a.data, b.data).sum())
    return inter / union


def transform_from_bounds(lo, hi, margin=DEFAULT_MARGIN):
    """Normalization transform mapping a bounding box into [margin, 1-margin]^3."""
    lo = np.asarray(lo, dtype=np.float64)
    hi = np.asarray(hi, dtype=np.float64)
    extent = float((hi - lo).max())
    if extent <= 0.0:
        raise ZeroExtentMeshError("bounding box has zero extent")
    scale = (1.0 - 2.0 * margin) / extent
    translation = 0.5 - (lo + hi) / 2.0 * scale
    return NormalizationTransform(scale, translation)


class MeshVoxelizer(BaseEstimator, TransformerMixin):
    """Estimator that voxelizes meshes in a shared normalized frame.

    ``fit`` learns a normalization transform from one mesh or a
    collection (their union bounding box), so several meshes can be
    co-voxelized into directly comparable grids. ``transform`` maps a
    mesh through the fitted frame and returns its OccupancyGrid.
    """

    def __init__(self, resolution=64, margin=DEFAULT_MARGIN):
        self.resolution = resolution
        self.margin = margin

    def fit(self, X, y=None):
        meshes = [X] if isinstance(X, Mesh) else list(X)
        if not meshes:
            raise ValueError("fit needs at least one mesh")
        lows = np.vstack([m.bounds()[0] for m in meshes])
        highs = np.vstack([m.bounds()[1] for m in meshes])
        self.normalization_ = transform_from_bounds(
            lows.min(axis=0), highs.max(axis=0), self.margin
        )
        return self

    def transform(self, X):
        if not hasattr(self, "normalization_"):
            raise ValueError("MeshVoxelizer is not fitted; call fit first")
        normalized = X.with_vertices(self.normalization_.apply(X.vertices))
        return voxelize_mesh(normalized, self.resolution)
