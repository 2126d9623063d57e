#pragma once

#include <stdexcept>
#include <string>

namespace diams {

/// Failure categories; the CLI maps each to an exit code.
enum class ErrorKind {
    IndexOutOfDomain,
    BoundaryVertex,
    DegenerateOrientation,
    DegenerateMetric,
    DegenerateGeometry,
    DegenerateDirection,
    InadmissibleVertex,
    NonGenericCell,
    ParameterOutOfRange,
    OutOfRange,
    SharedEdgeMismatch,
    ParseError,
    ValidationError,
    IoFailure,
};

inline const char *to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::IndexOutOfDomain: return "IndexOutOfDomain";
    case ErrorKind::BoundaryVertex: return "BoundaryVertex";
    case ErrorKind::DegenerateOrientation: return "DegenerateOrientation";
    case ErrorKind::DegenerateMetric: return "DegenerateMetric";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::InadmissibleVertex: return "InadmissibleVertex";
    case ErrorKind::NonGenericCell: return "NonGenericCell";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SharedEdgeMismatch: return "SharedEdgeMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), m_kind(kind) {}

    ErrorKind kind() const noexcept { return m_kind; }

private:
    ErrorKind m_kind;
};

} // namespace diams
