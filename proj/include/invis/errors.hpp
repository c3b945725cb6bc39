#pragma once

#include <stdexcept>
#include <string>

namespace invis {

// Base of every domain error raised by the library. The CLI maps
// ProfileFormatError to exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define INVIS_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

INVIS_DEFINE_ERROR(ProfileFormatError);
INVIS_DEFINE_ERROR(QuadratureFailure);
INVIS_DEFINE_ERROR(IntegrationFailure);
INVIS_DEFINE_ERROR(SpectralSingularity);
INVIS_DEFINE_ERROR(NotPTSymmetric);
INVIS_DEFINE_ERROR(InvalidRationalIndex);
INVIS_DEFINE_ERROR(InvalidResonance);
INVIS_DEFINE_ERROR(RangeViolation);
INVIS_DEFINE_ERROR(NoAdmissibleResonance);
INVIS_DEFINE_ERROR(DegenerateFrequency);
INVIS_DEFINE_ERROR(BidirectionalLocus);
INVIS_DEFINE_ERROR(ComplexK1);
INVIS_DEFINE_ERROR(ConditionsUnmet);

#undef INVIS_DEFINE_ERROR

}  // namespace invis
