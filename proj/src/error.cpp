#include "ocd/error.hpp"

namespace ocd {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::DegenerateColumn: return "DegenerateColumn";
        case ErrorKind::InvalidNode: return "InvalidNode";
        case ErrorKind::InapplicableMove: return "InapplicableMove";
        case ErrorKind::WouldCreateCycle: return "WouldCreateCycle";
        case ErrorKind::TooManyNodes: return "TooManyNodes";
        case ErrorKind::TooManyEdges: return "TooManyEdges";
        case ErrorKind::InvalidParentCode: return "InvalidParentCode";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::SeparationDetected: return "SeparationDetected";
        case ErrorKind::DegenerateTarget: return "DegenerateTarget";
        case ErrorKind::NodeCountMismatch: return "NodeCountMismatch";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::DegenerateLabels: return "DegenerateLabels";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
    }
    return "Unknown";
}

}  // namespace ocd
