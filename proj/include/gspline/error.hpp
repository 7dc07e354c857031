#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gspline {

enum class ErrorKind {
    Shape,
    InvalidModulus,
    RingMismatch,
    InvalidRing,
    InvalidGraph,
    Disconnected,
    CycleContraction,
    NotComposable,
    BadStructure,
    UnsupportedRing,
    BadVertex,
    BadContraction,
    GraphMismatch,
    TooSmall,
    NotATree,
    NotCutVertex,
    BadOrder,
    NotABridgePath,
    NotDegreeTwoPath,
    NotDyck,
    ModeMismatch,
    NoClosedForm,
    PrefixTooShort,
    Parse,
};

std::string_view to_string(ErrorKind kind);

/// Input or precondition failure. Every operation reports bad input through
/// this type; internal inconsistencies are std::logic_error instead.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace gspline
