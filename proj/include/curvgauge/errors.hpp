#pragma once

#include <stdexcept>
#include <string>

namespace curvgauge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CURVGAUGE_DEFINE_ERROR(Name)      \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

CURVGAUGE_DEFINE_ERROR(ShapeError);
CURVGAUGE_DEFINE_ERROR(BianchiViolation);
CURVGAUGE_DEFINE_ERROR(DimensionError);
CURVGAUGE_DEFINE_ERROR(DimensionMismatch);
CURVGAUGE_DEFINE_ERROR(FrameError);
CURVGAUGE_DEFINE_ERROR(FrameMismatch);
CURVGAUGE_DEFINE_ERROR(NotAdmissible);
CURVGAUGE_DEFINE_ERROR(NotLcf);
CURVGAUGE_DEFINE_ERROR(UnclassifiableError);
CURVGAUGE_DEFINE_ERROR(DomainError);
CURVGAUGE_DEFINE_ERROR(ConstraintError);
CURVGAUGE_DEFINE_ERROR(NotAdmissibleForRotsym);

#undef CURVGAUGE_DEFINE_ERROR

}  // namespace curvgauge
