#pragma once

#include <stdexcept>
#include <string>

namespace piq {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define PIQ_DEFINE_ERROR(Name)            \
  struct Name : Error {                   \
    using Error::Error;                   \
  }

// schema
PIQ_DEFINE_ERROR(ParseError);
PIQ_DEFINE_ERROR(SchemaError);

// metrics
PIQ_DEFINE_ERROR(DegenerateQuery);
PIQ_DEFINE_ERROR(DimensionMismatch);
PIQ_DEFINE_ERROR(EmptyQuerySet);
PIQ_DEFINE_ERROR(LengthMismatch);
PIQ_DEFINE_ERROR(EmptyGroundTruthSet);
PIQ_DEFINE_ERROR(RangeError);
PIQ_DEFINE_ERROR(EmptyHistogram);

// dedup
PIQ_DEFINE_ERROR(ImageDecodeError);
PIQ_DEFINE_ERROR(TooSmall);

// losses
PIQ_DEFINE_ERROR(ZeroRow);
PIQ_DEFINE_ERROR(NotUnit);
PIQ_DEFINE_ERROR(BatchTooSmall);
PIQ_DEFINE_ERROR(NoValidTriplet);
PIQ_DEFINE_ERROR(IndexOutOfRange);
PIQ_DEFINE_ERROR(EmptyInput);

// feature space
PIQ_DEFINE_ERROR(TooFewDims);
PIQ_DEFINE_ERROR(UnknownView);

// sampler
PIQ_DEFINE_ERROR(NotEnoughIdentities);

// synth
PIQ_DEFINE_ERROR(InfeasibleSeparation);
PIQ_DEFINE_ERROR(TooLarge);

// io
PIQ_DEFINE_ERROR(IoError);

#undef PIQ_DEFINE_ERROR

// Raised by the evaluation pipeline when input data violates schema or
// split invariants. Carries the formatted violation list for the CLI.
struct ValidationFailure : Error {
  explicit ValidationFailure(std::string report)
      : Error("input validation failed"), violations(std::move(report)) {}
  std::string violations;
};

}  // namespace piq
