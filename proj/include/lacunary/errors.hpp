#pragma once

#include <stdexcept>
#include <string>

namespace lacunary {

/// Base for all "cap exceeded" failures (enumeration caps, grid caps,
/// construction caps).  The CLI maps these to exit code 3.
class CapError : public std::runtime_error {
public:
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lacunary
