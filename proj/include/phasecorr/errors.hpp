#pragma once

#include <stdexcept>
#include <string>

namespace phasecorr {

// Raised when a quantity is mathematically degenerate at the requested
// parameters (delta-function density at c=1, zero-variance estimator, ...).
// Distinct from std::domain_error so callers can map it to a dedicated
// exit code.
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace phasecorr
