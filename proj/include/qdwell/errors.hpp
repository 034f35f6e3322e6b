#ifndef QDWELL_ERRORS_HPP
#define QDWELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdwell {

// Potential has lost its second minimum (cubic discriminant failure).
struct DegeneratePotential : std::runtime_error {
    explicit DegeneratePotential(const std::string& msg) : std::runtime_error(msg) {}
};

// Doubling the grid moves a requested eigenvalue by more than the contract allows.
struct GridTooCoarse : std::runtime_error {
    explicit GridTooCoarse(const std::string& msg) : std::runtime_error(msg) {}
};

// A DVR point fell outside the grid that produced the eigenbasis.
struct TruncationInconsistent : std::runtime_error {
    explicit TruncationInconsistent(const std::string& msg) : std::runtime_error(msg) {}
};

// An adaptive quadrature exhausted its evaluation budget before reaching tolerance.
struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct IllConditionedGenerator : std::runtime_error {
    explicit IllConditionedGenerator(const std::string& msg) : std::runtime_error(msg) {}
};

// More than one eigenvalue of the rate matrix sits below the zero-mode cutoff.
struct DegenerateSpectrum : std::runtime_error {
    explicit DegenerateSpectrum(const std::string& msg) : std::runtime_error(msg) {}
};

// Escape-time curve varies too fast between adjacent grid points to localize features.
struct InsufficientResolution : std::runtime_error {
    explicit InsufficientResolution(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qdwell

#endif
