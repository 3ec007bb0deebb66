#pragma once

#include <stdexcept>
#include <string>

namespace gsckit {

/// Bad caller-supplied data: unknown ids, malformed files, out-of-range knobs.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A stated invariant of the theory failed on data that passed input validation.
/// These indicate a broken instance (or a bug), not a bad argument.
class structural_error : public std::runtime_error {
public:
    explicit structural_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gsckit
