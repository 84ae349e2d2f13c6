#pragma once

#include <stdexcept>
#include <string>

namespace dppgap {

// Base for all numerical / contract failures raised by this library.
// Plain caller bugs (null functions, empty vectors, malformed arguments)
// throw std::invalid_argument instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// spectral density / kernel construction
struct RangeViolation : Error { using Error::Error; };
struct NotEven : Error { using Error::Error; };
struct DivergentMoment : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };

// correlation algebra
struct DegenerateTuple : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct PartitionAmbiguity : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };

// discretized operators
struct OrderTooSmall : Error { using Error::Error; };
struct EigOutOfRange : Error { using Error::Error; };
struct SingularBlock : Error { using Error::Error; };
struct TruncationNotConverged : Error { using Error::Error; };

// sampling and statistics
struct NumericalUnderflow : Error { using Error::Error; };
struct InsufficientTrials : Error { using Error::Error; };

// experiment configuration and IO
struct ConfigError : Error { using Error::Error; };

} // namespace dppgap
