"""
Schema definitions for funtf.

This module defines the Pydantic models used throughout funtf:
- FieldTag: which scalar field a frame lives over
- Tolerances: every numerical threshold in one overridable value set
- RunConfig: the knobs shared by the CLI commands
- FrameDocument / EigenstepsDocument: the on-disk JSON formats

Design Decisions:
    - Models are immutable (frozen=True) and reject unknown keys
    - Numerical objects (frames, tables) are numpy-backed dataclasses elsewhere;
      the documents here only describe the file formats and convert at the edges
    - Tolerances travel as a value, never as module-level mutable state
"""

from enum import Enum
from pathlib import Path
from typing import Any, TypeVar

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from funtf.errors import FileFormatError

DocumentT = TypeVar("DocumentT", bound=BaseModel)

# =============================================================================
# Enums
# =============================================================================


class FieldTag(str, Enum):
    """The scalar field of a frame or matrix."""

    REAL = "real"
    COMPLEX = "complex"


# =============================================================================
# Tolerances and Run Configuration
# =============================================================================


class Tolerances(BaseModel):
    """
    Numerical thresholds used across the library.

    Every public operation takes a ``tolerances`` argument defaulting to
    DEFAULT_TOLERANCES, so a caller can tighten or relax a single threshold
    without touching global state.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    sym: float = Field(default=1e-10, gt=0, description="Allowed asymmetry of self-adjoint input")
    unit: float = Field(default=1e-9, gt=0, description="Allowed |U*U - I| for unitary input")
    recon: float = Field(default=1e-9, gt=0, description="Eigen-reconstruction residual bound")
    eq: float = Field(default=1e-9, gt=0, description="Two spectral values closer than this are equal")
    validation: float = Field(default=1e-9, gt=0, description="Slack on each eigensteps condition")
    edge: float = Field(default=1e-8, gt=0, description="Correlation edge threshold |<f_i, f_j>|")
    rank: float = Field(default=1e-8, gt=0, description="Relative singular value cutoff for spark")
    radicand: float = Field(default=1e-12, gt=0, description="Negative radicands above -radicand clamp to 0")


DEFAULT_TOLERANCES = Tolerances()


class RunConfig(BaseModel):
    """
    Configuration shared by the CLI commands.

    Values come from defaults, then an optional YAML file, then flags.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    tol: float = Field(default=1e-8, gt=0, description="Verdict tolerance on FUNTF residuals")
    steps: int = Field(default=64, ge=2, description="Samples per path segment")
    seed: int = Field(default=0, ge=0, description="Seed for every random choice")
    field: FieldTag = Field(default=FieldTag.COMPLEX, description="Scalar field of generated frames")
    output: Path | None = Field(default=None, description="Where to write the command's artifact")
    tolerances: Tolerances = Field(default_factory=Tolerances)

    def merged(self, **overrides: Any) -> "RunConfig":
        """Return a copy with every non-None override applied."""
        updates = {key: value for key, value in overrides.items() if value is not None}
        if not updates:
            return self
        return RunConfig.model_validate({**self.model_dump(), **updates})


# =============================================================================
# File Formats
# =============================================================================


class FrameDocument(BaseModel):
    """
    Frame JSON: ``{"field", "d", "N", "columns": [[[re, im], ...], ...]}``.

    ``columns`` holds N entries of length d; REAL frames serialize im = 0.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    field: FieldTag
    d: int = Field(..., ge=1)
    N: int = Field(..., ge=1)
    columns: list[list[tuple[float, float]]]

    @model_validator(mode="after")
    def check_shape(self) -> "FrameDocument":
        """Columns must match the declared N and d."""
        if len(self.columns) != self.N:
            msg = f"expected {self.N} columns, found {len(self.columns)}"
            raise ValueError(msg)
        for index, column in enumerate(self.columns):
            if len(column) != self.d:
                msg = f"column {index} has {len(column)} entries, expected {self.d}"
                raise ValueError(msg)
            if self.field == FieldTag.REAL and any(im != 0.0 for _, im in column):
                msg = f"column {index} has a nonzero imaginary part in a real frame"
                raise ValueError(msg)
        return self


class EigenstepsDocument(BaseModel):
    """Eigensteps JSON: ``{"N", "d", "rows"}`` with N+1 rows of length d."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    N: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    rows: list[list[float]]

    @field_validator("rows")
    @classmethod
    def rows_not_empty(cls, v: list[list[float]]) -> list[list[float]]:
        """A table has at least the zero row."""
        if not v:
            raise ValueError("rows cannot be empty")
        return v

    @model_validator(mode="after")
    def check_shape(self) -> "EigenstepsDocument":
        """Rows must form an (N+1) x d table."""
        if len(self.rows) != self.N + 1:
            msg = f"expected {self.N + 1} rows, found {len(self.rows)}"
            raise ValueError(msg)
        for index, row in enumerate(self.rows):
            if len(row) != self.d:
                msg = f"row {index} has {len(row)} entries, expected {self.d}"
                raise ValueError(msg)
        return self


# =============================================================================
# Loaders
# =============================================================================


def load_config(path: Path | str) -> RunConfig:
    """
    Load a run configuration from a YAML file.

    Args:
        path: Path to the YAML file

    Returns:
        Validated RunConfig object

    Raises:
        FileNotFoundError: If the file doesn't exist
        ValidationError: If the YAML doesn't match the schema
    """
    path = Path(path)
    with path.open() as f:
        data = yaml.safe_load(f)

    return RunConfig.model_validate(data or {})


def load_config_from_string(content: str) -> RunConfig:
    """Load a run configuration from a YAML string."""
    data = yaml.safe_load(content)
    return RunConfig.model_validate(data or {})


def load_frame_document(path: Path | str) -> FrameDocument:
    """
    Read and validate a Frame JSON file.

    Raises:
        FileFormatError: If the file is unreadable or malformed
    """
    return _load_document(FrameDocument, path)


def load_eigensteps_document(path: Path | str) -> EigenstepsDocument:
    """
    Read and validate an Eigensteps JSON file.

    Raises:
        FileFormatError: If the file is unreadable or malformed
    """
    return _load_document(EigenstepsDocument, path)


def write_document(document: BaseModel, path: Path | str) -> Path:
    """Write a document as indented JSON and return the path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document.model_dump_json(indent=2) + "\n")
    return path


def _load_document(model: type[DocumentT], path: Path | str) -> DocumentT:
    path = Path(path)
    try:
        content = path.read_text()
    except OSError as e:
        raise FileFormatError(path=str(path), reason=str(e)) from e
    try:
        return model.model_validate_json(content)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "document"
        raise FileFormatError(path=str(path), reason=f"{location}: {first['msg']}") from e
