"""Synthetic surface shapes for fixtures, demos, and desk-scale training.

Two families live here: triangle meshes built directly inside the unit
cube (sphere shells, boxes, L-brackets) that exercise the voxelizer and
token statistics, and block-aligned occupancy grids whose surface
patterns stay within a small vocabulary, which keeps a per-block linear
codec trainable in a few hundred steps.
"""

import numpy as np

from .mesh import Mesh, concat_meshes
from .voxelize import OccupancyGrid

_BOX_CORNERS = np.array(
    [
        [0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0],
        [0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1],
    ],
    dtype=np.float64,
)

# two triangles per face, outward winding
_BOX_FACES = np.array(
    [
        [0, 2, 1], [1, 2, 3],  # -z
        [4, 5, 6], [5, 7, 6],  # +z
        [0, 1, 4], [1, 5, 4],  # -y
        [2, 6, 3], [3, 6, 7],  # +y
        [0, 4, 2], [2, 4, 6],  # -x
        [1, 3, 5], [3, 7, 5],  # +x
    ],
    dtype=np.int64,
)


def make_box(lo, hi):
    """Axis-aligned box surface spanning [lo, hi] as 12 triangles."""
    lo = np.asarray(lo, dtype=np.float64)
    hi = np.asarray(hi, dtype=np.float64)
    if np.any(hi <= lo):
        raise ValueError("box needs hi > lo on every axis")
    return Mesh(lo + _BOX_CORNERS * (hi - lo), _BOX_FACES.copy())


def make_sphere_shell(center, radius, rings=24, segments=32):
    """UV-sphere triangle mesh."""
    center = np.asarray(center, dtype=np.float64)
    verts = [center + [0, 0, radius]]
    for i in range(1, rings):
        phi = np.pi * i / rings
        for j in range(segments):
            theta = 2 * np.pi * j / segments
            verts.append(
                center
                + radius
                * np.array(
                    [np.sin(phi) * np.cos(theta), np.sin(phi) * np.sin(theta), np.cos(phi)]
                )
            )
    verts.append(center + [0, 0, -radius])
    faces = []
    ring = lambda i, j: 1 + (i - 1) * segments + (j % segments)
    for j in range(segments):  # top cap
        faces.append([0, ring(1, j), ring(1, j + 1)])
    for i in range(1, rings - 1):
        for j in range(segments):
            a, b = ring(i, j), ring(i, j + 1)
            c, d = ring(i + 1, j), ring(i + 1, j + 1)
            faces.append([a, c, b])
            faces.append([b, c, d])
    bottom = len(verts) - 1
    for j in range(segments):  # bottom cap
        faces.append([bottom, ring(rings - 1, j + 1), ring(rings - 1, j)])
    return Mesh(np.array(verts), np.array(faces))


def make_l_bracket(origin, length, thickness, height):
    """Two joined boxes forming an L profile."""
    o = np.asarray(origin, dtype=np.float64)
    base = make_box(o, o + [length, length, thickness])
    wall = make_box(o, o + [thickness, length, height])
    return concat_meshes([base, wall])


def fixture_suite():
    """Deterministic (name, mesh) fixtures inside [0, 1]^3 at varied sizes.

    Used for token statistics and voxelizer regression; meshes are
    already normalized, so they voxelize directly.
    """
    shapes = []
    for i, r in enumerate((0.18, 0.27, 0.36, 0.45)):
        shapes.append((f"sphere_r{i}", make_sphere_shell((0.5, 0.5, 0.5), r)))
    shapes.append(("box_cube", make_box((0.2, 0.2, 0.2), (0.8, 0.8, 0.8))))
    shapes.append(("box_flat", make_box((0.1, 0.2, 0.4), (0.9, 0.8, 0.55))))
    shapes.append(("box_slender", make_box((0.35, 0.1, 0.35), (0.6, 0.9, 0.6))))
    shapes.append(("box_tall", make_box((0.3, 0.3, 0.05), (0.7, 0.65, 0.95))))
    shapes.append(("bracket_small", make_l_bracket((0.15, 0.15, 0.15), 0.5, 0.12, 0.5)))
    shapes.append(("bracket_large", make_l_bracket((0.1, 0.1, 0.1), 0.75, 0.18, 0.8)))
    shapes.append(("bracket_thin", make_l_bracket((0.2, 0.25, 0.2), 0.6, 0.08, 0.6)))
    shapes.append(("bracket_wide", make_l_bracket((0.05, 0.2, 0.1), 0.8, 0.15, 0.55)))
    return shapes


def _draw_box_shell(data, lo, hi):
    """Mark the surface cells of the half-open cell range [lo, hi)."""
    x0, y0, z0 = lo
    x1, y1, z1 = hi
    data[x0, y0:y1, z0:z1] = True
    data[x1 - 1, y0:y1, z0:z1] = True
    data[x0:x1, y0, z0:z1] = True
    data[x0:x1, y1 - 1, z0:z1] = True
    data[x0:x1, y0:y1, z0] = True
    data[x0:x1, y0:y1, z1 - 1] = True


def training_grid_suite(count=20, resolution=64, block=8, seed=0):
    """Synthetic box/L-bracket shell grids aligned to codec blocks.

    Faces sit on block boundaries, so every occupied block shows one of
    a small set of plane-union patterns; a linear per-block codec can
    represent the whole suite, which makes desk-scale training land at
    high reconstruction IoU.
    """
    rng = np.random.default_rng(seed)
    nb = resolution // block
    grids = []
    for i in range(count):
        data = np.zeros((resolution, resolution, resolution), dtype=bool)
        kind = i % 3
        if kind == 0:  # box shell
            lo = rng.integers(0, nb - 2, size=3)
            ext = np.array([rng.integers(2, nb - a + 1) for a in lo])
            _draw_box_shell(data, lo * block, (lo + ext) * block)
        elif kind == 1:  # L-bracket: two overlapping box shells
            lo = rng.integers(0, nb - 3, size=3)
            depth = int(rng.integers(2, 4))
            arm1 = [int(rng.integers(3, nb - lo[0] + 1)), 2, depth]
            arm2 = [2, int(rng.integers(3, nb - lo[1] + 1)), depth]
            _draw_box_shell(data, lo * block, (lo + arm1) * block)
            _draw_box_shell(data, lo * block, (lo + arm2) * block)
        else:  # flat slab
            lo = rng.integers(0, nb - 2, size=3)
            ext = np.array([rng.integers(2, nb - a + 1) for a in lo[:2]] + [1])
            _draw_box_shell(data, lo * block, (lo + ext) * block)
        grids.append(OccupancyGrid(data))
    return grids
