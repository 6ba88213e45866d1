#pragma once

#include <stdexcept>
#include <string>

namespace qconv {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NonHermitianError : Error { using Error::Error; };
struct NotPsdError : Error { using Error::Error; };
struct NotDensityError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct BadDimensionsError : Error { using Error::Error; };
struct BadParameterError : Error { using Error::Error; };
struct BadProbabilityError : Error { using Error::Error; };
struct NotTracePreservingError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct ZeroOperatorError : Error { using Error::Error; };
struct SupportViolationError : Error { using Error::Error; };
struct NotConvergedError : Error { using Error::Error; };
struct RateBelowCapacityError : Error { using Error::Error; };
struct ConstraintViolatedError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace qconv
