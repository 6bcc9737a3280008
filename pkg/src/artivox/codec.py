"""Coordinate-aware sparse token codec for latent index grids.

An index grid over an X*Y*Z latent lattice is serialized as one triplet
per nonzero cell::

    <voxel> <xyz> <K>

where ``xyz`` is the linearized coordinate ``(Y*Z)*x + Z*y + z`` and
``K`` the codebook index. Index 0 is the reserved zero token for
unoccupied cells and is never emitted; parsing rejects it. Canonical
sequences are ordered by ascending xyz with no duplicates.
"""

import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import (
    DuplicateCoordinateError,
    IndexOutOfCodebookError,
    MalformedTokenError,
    OutOfRangeError,
)

VOXEL_MARKER = "<voxel>"


@dataclass(frozen=True)
class CodecProfile:
    """Latent lattice dims and codebook size of a token stream."""

    dims: tuple
    codebook_size: int

    @property
    def cell_count(self):
        x, y, z = self.dims
        return x * y * z

    def __post_init__(self):
        if len(self.dims) != 3 or any(d < 1 for d in self.dims):
            raise ValueError("dims must be three positive integers")
        if self.codebook_size < 2:
            raise ValueError("codebook must have at least the zero token and one entry")


# main-text profile: 8^3 lattice, 4096-entry codebook
PROFILE_MAIN = CodecProfile((8, 8, 8), 4096)
# extended profile: 16x8x8 lattice, 8192-entry codebook
PROFILE_EXTENDED = CodecProfile((16, 8, 8), 8192)

PROFILES = {"main": PROFILE_MAIN, "extended": PROFILE_EXTENDED}


def linearize(coord, dims):
    """(x, y, z) -> (Y*Z)*x + Z*y + z."""
    x, y, z = (int(c) for c in coord)
    dx, dy, dz = dims
    if not (0 <= x < dx and 0 <= y < dy and 0 <= z < dz):
        raise OutOfRangeError(f"coordinate {(x, y, z)} outside dims {dims}")
    return (dy * dz) * x + dz * y + z


def delinearize(index, dims):
    """Inverse of :func:`linearize`."""
    dx, dy, dz = dims
    index = int(index)
    if not 0 <= index < dx * dy * dz:
        raise OutOfRangeError(f"linear index {index} outside dims {dims}")
    x, rem = divmod(index, dy * dz)
    y, z = divmod(rem, dz)
    return (x, y, z)


class VoxelToken(NamedTuple):
    xyz: int
    k: int


@dataclass(frozen=True)
class TokenSequence:
    """Canonical ordered sparse token list for one latent grid."""

    tokens: tuple
    profile: CodecProfile

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(VoxelToken(*t) for t in self.tokens))
        last = -1
        for t in self.tokens:
            if not 0 <= t.xyz < self.profile.cell_count:
                raise OutOfRangeError(f"xyz {t.xyz} outside grid of {self.profile.cell_count} cells")
            if not 1 <= t.k < self.profile.codebook_size:
                raise OutOfRangeError(
                    f"codebook index {t.k} outside [1, {self.profile.codebook_size - 1}]"
                )
            if t.xyz == last:
                raise DuplicateCoordinateError(f"duplicate coordinate {t.xyz}")
            if t.xyz < last:
                raise ValueError("token sequence must be sorted by ascending xyz")
            last = t.xyz

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def tokenize_grid(indices, profile=PROFILE_MAIN):
    """Sparse tokens for every nonzero cell of an index grid.

    The grid is an integer array shaped like ``profile.dims``; cells
    holding the zero token are skipped. Output is canonical (ascending
    xyz).
    """
    indices = np.asarray(indices)
    if indices.shape != tuple(profile.dims):
        raise ValueError(f"index grid shape {indices.shape} != profile dims {profile.dims}")
    if indices.min() < 0 or indices.max() >= profile.codebook_size:
        raise IndexOutOfCodebookError(
            f"index grid values must lie in [0, {profile.codebook_size - 1}]"
        )
    flat = indices.reshape(-1)  # C order == ascending linearized xyz
    (nonzero,) = np.nonzero(flat)
    return TokenSequence(
        tuple(VoxelToken(int(i), int(flat[i])) for i in nonzero), profile
    )


def densify(seq):
    """Index grid with every non-listed cell set to the zero token."""
    grid = np.zeros(seq.profile.dims, dtype=np.int64)
    flat = grid.reshape(-1)
    for t in seq:
        flat[t.xyz] = t.k
    return grid


def serialize_tokens(seq):
    """Canonical single-space-separated token text; no trailing whitespace."""
    return " ".join(f"{VOXEL_MARKER} {t.xyz} {t.k}" for t in seq)


_INT_RE = re.compile(r"^-?\d+$")


def parse_tokens(text, profile=PROFILE_MAIN):
    """Parse token text under the strict triplet grammar.

    Tokens are whitespace-separated; every triplet must start with the
    literal ``<voxel>`` marker followed by two decimal integers.
    Duplicates and out-of-range values are rejected, and the result is
    canonicalized to ascending xyz.
    """
    words = [(m.start(), m.group()) for m in re.finditer(r"\S+", text)]
    if len(words) % 3 != 0:
        offset = words[(len(words) // 3) * 3][0]
        raise MalformedTokenError("incomplete token triplet", offset)
    seen = {}
    for i in range(0, len(words), 3):
        m_off, marker = words[i]
        x_off, xyz_text = words[i + 1]
        k_off, k_text = words[i + 2]
        if marker != VOXEL_MARKER:
            raise MalformedTokenError(f"expected {VOXEL_MARKER!r}, got {marker!r}", m_off)
        if not _INT_RE.match(xyz_text):
            raise MalformedTokenError(f"bad coordinate {xyz_text!r}", x_off)
        if not _INT_RE.match(k_text):
            raise MalformedTokenError(f"bad codebook index {k_text!r}", k_off)
        xyz, k = int(xyz_text), int(k_text)
        if not 0 <= xyz < profile.cell_count:
            raise OutOfRangeError(
                f"xyz {xyz} outside grid of {profile.cell_count} cells (byte offset {x_off})"
            )
        if not 1 <= k < profile.codebook_size:
            raise OutOfRangeError(
                f"codebook index {k} outside [1, {profile.codebook_size - 1}]"
                f" (byte offset {k_off})"
            )
        if xyz in seen:
            raise DuplicateCoordinateError(
                f"duplicate coordinate {xyz} (byte offset {x_off})"
            )
        seen[xyz] = k
    return TokenSequence(tuple(VoxelToken(x, seen[x]) for x in sorted(seen)), profile)


@dataclass(frozen=True)
class CompressionStats:
    sparse_count: int
    dense_count: int
    reduction: float


def compression_stats(seq):
    """Sparse vs dense triplet counts and the resulting reduction fraction."""
    dense = seq.profile.cell_count
    sparse = len(seq)
    return CompressionStats(sparse, dense, 1.0 - sparse / dense)
