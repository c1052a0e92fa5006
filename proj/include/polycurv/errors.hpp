#pragma once

#include <stdexcept>
#include <string>

namespace polycurv {

/// Bad numeric or structural input (degenerate curves, non-monotone partitions, ...).
struct invalid_argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation requested on a boundary edge or vertex that only makes sense in the interior.
struct boundary_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Mesh fails a manifoldness/orientation requirement.
struct topology_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A normal left the admissible (upper) hemisphere.
struct hemisphere_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Consecutive antipodal vertices: the connecting geodesic is not unique.
struct geodesic_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Stated precondition of an operation does not hold for this input.
struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Request exceeds a hard size limit.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Grid too coarse for the requested mollification radius.
struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number.
struct parse_error : std::runtime_error {
    int line;
    parse_error(const std::string& msg, int line_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ")"), line(line_) {}
};

}  // namespace polycurv
