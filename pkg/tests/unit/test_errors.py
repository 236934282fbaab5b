"""
Unit tests for the error hierarchy.

Tests cover:
- Base FuntfError formatting and serialization
- Default messages, codes and suggestions of the subclasses
- Context dicts carrying the structured fields
"""

import pytest

from funtf.errors import (
    ERROR_DEGENERATE_ALIGNMENT,
    ERROR_EMPTY_INTERIOR,
    ERROR_FIELD_UNSUPPORTED,
    ERROR_INVALID_TABLE,
    ERROR_NOT_FUNTF,
    ERROR_TOO_LARGE,
    DegenerateAlignmentError,
    DimensionMismatchError,
    EigenstepsError,
    EmptyInteriorError,
    FieldUnsupportedError,
    FuntfError,
    InvalidTableError,
    LiftingError,
    MotionError,
    NegativeRadicandError,
    NoNODStartError,
    NotFUNTFError,
    TooLargeError,
    VanishingDenominatorError,
)


class TestFuntfError:
    """Tests for the base exception."""

    def test_str_includes_code(self) -> None:
        """The code prefixes the message."""
        error = FuntfError(message="boom", code=42)
        assert str(error) == "[E42] boom"

    def test_str_includes_suggestion(self) -> None:
        """A suggestion is rendered on its own line."""
        error = FuntfError(message="boom", code=1, suggestion="try again")
        assert str(error) == "[E1] boom\nSuggestion: try again"

    def test_to_dict(self) -> None:
        """to_dict exposes every field for JSON output."""
        error = FuntfError(message="boom", code=7, context={"k": 1})
        data = error.to_dict()
        assert data == {
            "error_type": "FuntfError",
            "message": "boom",
            "code": 7,
            "suggestion": None,
            "context": {"k": 1},
        }

    def test_is_exception(self) -> None:
        """FuntfError can be raised and caught."""
        with pytest.raises(FuntfError):
            raise FuntfError(message="boom")


class TestSubclasses:
    """Tests for default messages and codes."""

    def test_invalid_table(self) -> None:
        """InvalidTableError summarizes the first violations."""
        error = InvalidTableError(violations=["a", "b", "c", "d"])
        assert error.code == ERROR_INVALID_TABLE
        assert "a; b; c" in error.message
        assert "+1 more" in error.message
        assert error.context["violations"] == ["a", "b", "c", "d"]
        assert isinstance(error, EigenstepsError)

    def test_empty_interior(self) -> None:
        """EmptyInteriorError names N and d and suggests the bound."""
        error = EmptyInteriorError(N=4, d=3)
        assert error.code == ERROR_EMPTY_INTERIOR
        assert "N=4" in error.message
        assert error.suggestion is not None
        assert error.context == {"N": 4, "d": 3}

    def test_dimension_mismatch_context(self) -> None:
        """Shapes are stored as lists."""
        error = DimensionMismatchError(expected=(2, 3), actual=(3, 3), what="frame")
        assert error.context["expected"] == [2, 3]
        assert error.context["actual"] == [3, 3]

    def test_not_funtf(self) -> None:
        """NotFUNTFError carries both residuals."""
        error = NotFUNTFError(unit_norm_resid=0.5, tightness_resid=0.25, tolerance=1e-8)
        assert error.code == ERROR_NOT_FUNTF
        assert error.context["unit_norm_resid"] == 0.5

    def test_too_large(self) -> None:
        """TooLargeError reports required and budget."""
        error = TooLargeError(required=100, budget=10)
        assert error.code == ERROR_TOO_LARGE
        assert "100" in error.message

    def test_lifting_errors(self) -> None:
        """Lifting errors name the step and the quantity."""
        vanishing = VanishingDenominatorError(step=2, quantity="v[0]", value=0.0)
        negative = NegativeRadicandError(step=3, quantity="w[1]", value=-0.5)
        assert isinstance(vanishing, LiftingError)
        assert "v[0]" in vanishing.message
        assert negative.context["step"] == 3

    def test_motion_errors(self) -> None:
        """DegenerateAlignmentError is a MotionError with its own code."""
        error = DegenerateAlignmentError(index=1, value=0.0)
        assert isinstance(error, MotionError)
        assert error.code == ERROR_DEGENERATE_ALIGNMENT

    def test_custom_message_kept(self) -> None:
        """An explicit message is never overwritten."""
        error = FieldUnsupportedError(field_name="real", command="connect", message="custom")
        assert error.message == "custom"
        assert error.code == ERROR_FIELD_UNSUPPORTED

    def test_codes_are_distinct(self) -> None:
        """Every subclass default code is different."""
        codes = {
            InvalidTableError().code,
            EmptyInteriorError().code,
            NotFUNTFError().code,
            TooLargeError().code,
            VanishingDenominatorError().code,
            DegenerateAlignmentError().code,
            FieldUnsupportedError().code,
            NoNODStartError().code,
        }
        assert len(codes) == 8
