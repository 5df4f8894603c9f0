#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ocd {

enum class ErrorKind {
    ParseError,
    ValidationError,
    DegenerateColumn,
    InvalidNode,
    InapplicableMove,
    WouldCreateCycle,
    TooManyNodes,
    TooManyEdges,
    InvalidParentCode,
    DimensionMismatch,
    SeparationDetected,
    DegenerateTarget,
    NodeCountMismatch,
    LengthMismatch,
    DegenerateLabels,
    ShapeMismatch,
    NotNormalized,
    InvalidArgument,
    IoError,
    NumericalFailure,
};

std::string_view to_string(ErrorKind kind);

// Base exception for every failure the library reports. The kind is what
// callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ocd
