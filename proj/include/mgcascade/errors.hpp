#pragma once

#include <stdexcept>
#include <string>

namespace mgc {

// Argument at (or too close to) a pole of a gamma-type kernel.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// No vertical line separates the left and right pole sets of a
// Mellin-Barnes integrand.
struct NoSeparatingContourError : std::domain_error {
    using std::domain_error::domain_error;
};

// An iterative scheme (series, contour tail, root polish) failed to
// reach its tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A built-in redundant evaluation (second path, doubled quadrature
// order) disagreed beyond tolerance.
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mgc
