#pragma once

#include <stdexcept>
#include <string>

namespace ctlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CTLAB_DECLARE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

CTLAB_DECLARE_ERROR(InvalidArgument);
CTLAB_DECLARE_ERROR(SupportError);
CTLAB_DECLARE_ERROR(RangeError);
CTLAB_DECLARE_ERROR(ResolutionError);
CTLAB_DECLARE_ERROR(DomainError);
CTLAB_DECLARE_ERROR(RegimeError);
CTLAB_DECLARE_ERROR(RootNotBracketedError);
CTLAB_DECLARE_ERROR(ZeroNormError);
CTLAB_DECLARE_ERROR(CalibrationError);
CTLAB_DECLARE_ERROR(OutOfTableError);
CTLAB_DECLARE_ERROR(DegenerateSeriesError);
CTLAB_DECLARE_ERROR(CoincidenceError);
CTLAB_DECLARE_ERROR(UncoveredHypothesisError);
CTLAB_DECLARE_ERROR(ConfigError);

#undef CTLAB_DECLARE_ERROR

}  // namespace ctlab
