#pragma once

#include <stdexcept>
#include <string>

namespace padml {

/// Malformed input text: bad rational literal, ragged CSV, bad tree document.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical precondition does not hold: degenerate dataset,
/// inconsistent rows, hypothesis violations. Distinct from ParseError so
/// the CLI can map the two classes to different exit codes.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace padml
