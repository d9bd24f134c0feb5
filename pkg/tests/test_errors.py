"""
Tests for error classes and error handling
"""

import pytest
from pydantic import BaseModel, Field
from pydantic import ValidationError as PydanticValidationError

from gwkit.errors import (
    EXIT_CONFIG,
    EXIT_INCONCLUSIVE,
    EXIT_VIOLATION,
    BudgetError,
    DomainError,
    GwkitError,
    InconclusiveError,
    PreconditionError,
    PropertyViolationError,
    UnknownVertexError,
    UnsupportedOperationError,
    ValidationError,
)


class _Knobs(BaseModel):
    radius: int = Field(..., ge=0)


class TestGwkitError:
    """Test base GwkitError class"""

    def test_basic_error(self):
        """Test basic error creation"""
        error = GwkitError("Test error", code="test_code")

        assert error.message == "Test error"
        assert error.code == "test_code"
        assert str(error) == "[test_code] Test error"

    def test_default_code(self):
        """Test the default error code"""
        assert GwkitError("boom").code == "internal_error"

    def test_error_repr(self):
        """Test error __repr__"""
        error = GwkitError("Test error", code="test_code")

        assert repr(error) == "GwkitError(code='test_code', message='Test error')"

    def test_from_pydantic_names_field(self):
        """Test converting a pydantic failure names the offending field"""
        with pytest.raises(PydanticValidationError) as info:
            _Knobs(radius=-1)

        error = GwkitError.from_pydantic(info.value, "config")

        assert isinstance(error, ValidationError)
        assert error.location == "radius"
        assert error.message.startswith("config: field 'radius':")


class TestErrorSubclasses:
    """Test the specific error subclasses"""

    def test_validation_error(self):
        """Test ValidationError defaults"""
        error = ValidationError("bad table", location="mul.0")

        assert error.code == "invalid_spec"
        assert error.location == "mul.0"
        assert error.exit_code == EXIT_CONFIG

    def test_domain_error(self):
        """Test DomainError code"""
        assert DomainError("mixed contexts").code == "domain_mismatch"

    def test_unknown_vertex_error(self):
        """Test UnknownVertexError is both a DomainError and a LookupError"""
        error = UnknownVertexError(9)

        assert isinstance(error, DomainError)
        assert isinstance(error, LookupError)
        assert error.vertex == 9
        assert str(error) == "[unknown_vertex] unknown vertex: 9"

    def test_unsupported_operation_error(self):
        """Test UnsupportedOperationError code"""
        assert UnsupportedOperationError("lazy").code == "unsupported_operation"

    def test_precondition_error(self):
        """Test PreconditionError code"""
        assert PreconditionError("isolated").code == "precondition_failed"

    def test_budget_error(self):
        """Test BudgetError keeps its budget and counts as inconclusive"""
        error = BudgetError("too many words", budget=100)

        assert error.budget == 100
        assert error.code == "budget_exceeded"
        assert error.exit_code == EXIT_INCONCLUSIVE

    def test_inconclusive_error(self):
        """Test InconclusiveError exit code"""
        assert InconclusiveError("unknown").exit_code == EXIT_INCONCLUSIVE

    def test_property_violation_error(self):
        """Test PropertyViolationError keeps its counterexample"""
        error = PropertyViolationError("inequality fails", counterexample="x=0:1")

        assert error.counterexample == "x=0:1"
        assert error.exit_code == EXIT_VIOLATION

    def test_all_errors_inherit_from_gwkit_error(self):
        """Test that all errors inherit from GwkitError"""
        errors = [
            ValidationError("test"),
            DomainError("test"),
            UnknownVertexError(0),
            UnsupportedOperationError("test"),
            PreconditionError("test"),
            BudgetError("test"),
            InconclusiveError("test"),
            PropertyViolationError("test"),
        ]

        for error in errors:
            assert isinstance(error, GwkitError)
            assert isinstance(error, Exception)


class TestErrorCatching:
    """Test error catching patterns"""

    def test_catch_specific_error(self):
        """Test catching specific error type"""
        with pytest.raises(BudgetError):
            raise BudgetError("exhausted")

    def test_catch_base_error(self):
        """Test catching base GwkitError"""
        with pytest.raises(GwkitError):
            raise UnknownVertexError(3)

    def test_error_message_in_exception(self):
        """Test error message is accessible in exception"""
        try:
            raise DomainError("graph-product elements come from different contexts")
        except GwkitError as e:
            assert e.message == "graph-product elements come from different contexts"
            assert e.code == "domain_mismatch"
