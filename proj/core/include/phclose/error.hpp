#pragma once

#include <stdexcept>
#include <string>

namespace phclose {

// Base class for all library failures. Subclasses name the contract that
// was violated so callers can dispatch on the failure kind.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define PHCLOSE_DEFINE_ERROR(Name)                                 \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

PHCLOSE_DEFINE_ERROR(ZeroVector);
PHCLOSE_DEFINE_ERROR(DimensionMismatch);
PHCLOSE_DEFINE_ERROR(NewtonDivergence);
PHCLOSE_DEFINE_ERROR(NotConverged);
PHCLOSE_DEFINE_ERROR(DegenerateFrame);
PHCLOSE_DEFINE_ERROR(DominationFailure);
PHCLOSE_DEFINE_ERROR(IllConditioned);
PHCLOSE_DEFINE_ERROR(NearTangency);
PHCLOSE_DEFINE_ERROR(NotContracting);
PHCLOSE_DEFINE_ERROR(BoxEscape);
PHCLOSE_DEFINE_ERROR(FieldGap);
PHCLOSE_DEFINE_ERROR(SelfIntersection);
PHCLOSE_DEFINE_ERROR(NoIntersection);
PHCLOSE_DEFINE_ERROR(OutOfChart);
PHCLOSE_DEFINE_ERROR(SamplingInconclusive);
PHCLOSE_DEFINE_ERROR(NoReturnFound);
PHCLOSE_DEFINE_ERROR(HolonomyFixedPointNotFound);
PHCLOSE_DEFINE_ERROR(SegmentTooLong);
PHCLOSE_DEFINE_ERROR(WindowExhausted);
PHCLOSE_DEFINE_ERROR(NotInvariant);
PHCLOSE_DEFINE_ERROR(OrientationUndefined);
PHCLOSE_DEFINE_ERROR(ChartTooSmall);
PHCLOSE_DEFINE_ERROR(NoClosingBridge);
PHCLOSE_DEFINE_ERROR(TubeOverlap);
PHCLOSE_DEFINE_ERROR(CoverageGap);
PHCLOSE_DEFINE_ERROR(ChartEscape);
PHCLOSE_DEFINE_ERROR(LostNormalHyperbolicity);
PHCLOSE_DEFINE_ERROR(NonUniqueIntersection);
PHCLOSE_DEFINE_ERROR(FoliationGap);
PHCLOSE_DEFINE_ERROR(HypothesisViolation);
PHCLOSE_DEFINE_ERROR(DegreeZeroUnexpected);
PHCLOSE_DEFINE_ERROR(BudgetExhausted);
PHCLOSE_DEFINE_ERROR(FamilyNotFound);
PHCLOSE_DEFINE_ERROR(BisectionBracketFailure);
PHCLOSE_DEFINE_ERROR(OrientationViolation);
PHCLOSE_DEFINE_ERROR(HolonomyUndefined);
PHCLOSE_DEFINE_ERROR(ConfigInvalid);

#undef PHCLOSE_DEFINE_ERROR

}  // namespace phclose
