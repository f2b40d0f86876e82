#pragma once

#include <stdexcept>
#include <string>

namespace fmkdv {

// Grid sizes, lengths and dealiasing requirements that cannot be satisfied.
class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A field that must represent a real function is not Hermitian-symmetric.
class SymmetryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Parameter outside the admissible range of an operation.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input data (non-monotone times, mismatched trajectories, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Sampled data too coarse for the requested space-time decomposition.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fmkdv
