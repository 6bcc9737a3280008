"""Exception hierarchy for artivox.

Everything raised by this package derives from :class:`ArtivoxError` so
callers (and the CLI) can distinguish input/validation problems from
genuine bugs.
"""


class ArtivoxError(Exception):
    """Base class for all artivox errors."""


# --- meshes and grids ---

class ZeroExtentMeshError(ArtivoxError):
    """Mesh bounding box has zero extent on every axis (all vertices coincide)."""


class ResolutionTooLargeError(ArtivoxError):
    """Requested voxel resolution exceeds the configured cap."""


class ResolutionMismatchError(ArtivoxError):
    """Two grids with different resolutions were combined."""


class DimensionMismatchError(ArtivoxError):
    """Array shapes are inconsistent with the configured grid/latent dims."""


# --- sparse token codec ---

class OutOfRangeError(ArtivoxError):
    """A coordinate or codebook index lies outside its declared range."""


class MalformedTokenError(ArtivoxError):
    """Token text violates the `<voxel> xyz K` grammar.

    Carries the byte offset of the offending token.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class DuplicateCoordinateError(ArtivoxError):
    """The same xyz coordinate appears more than once in a token stream."""


class IndexOutOfCodebookError(ArtivoxError):
    """An index grid references an entry beyond the codebook size."""


# --- VQ model ---

class EmptyCodebookError(ArtivoxError):
    """Codebook has fewer than two entries (zero token plus one usable)."""


class NoSamplesError(ArtivoxError):
    """No latent samples available for codebook initialization."""


class DivergedLossError(ArtivoxError):
    """Training produced a non-finite loss."""


class CheckpointFormatError(ArtivoxError):
    """Model checkpoint has a bad magic or an unsupported version."""


# --- segmentation ---

class EmptyPartError(ArtivoxError):
    """A part decoded to zero occupied voxels, so it has no seeds."""


# --- metadata / kinematics ---

class SchemaViolationError(ArtivoxError):
    """Asset metadata violates the expected JSON schema.

    Carries the JSON path of the offending element.
    """

    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class RangeViolationError(SchemaViolationError):
    """A quantized metadata value lies outside its declared range."""


class MultipleRootsError(ArtivoxError):
    """More than one part has no parent."""


class UnknownParentError(ArtivoxError):
    """A part references a parent id that does not exist."""


class CycleDetectedError(ArtivoxError):
    """The parent links contain a cycle.

    Carries the part ids along the detected cycle.
    """

    def __init__(self, cycle):
        super().__init__("cycle in kinematic tree: " + " -> ".join(cycle))
        self.cycle = list(cycle)


class ZeroAxisError(ArtivoxError):
    """A moving joint declared the zero vector as its axis."""


class InvalidLimitsError(ArtivoxError):
    """Joint limits with lower > upper."""


class MissingMeshError(ArtivoxError):
    """A kinematic tree part has no mesh reference for URDF emission."""


class UrdfValidationError(ArtivoxError):
    """Emitted URDF failed the bundled well-formedness/consistency checks."""


# --- evaluation ---

class EmptyGeometryError(ArtivoxError):
    """A part geometry with no faces/points cannot be evaluated."""
