#pragma once

#include <stdexcept>
#include <string>

/// Exception taxonomy for the library. Every failure mode that callers are
/// expected to branch on gets its own type; all derive from kappa::Error so
/// blanket handling stays possible.

namespace kappa {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define KAPPA_DEFINE_ERROR(NAME)                                    \
  struct NAME : Error {                                             \
    explicit NAME(const std::string& msg) : Error(#NAME ": " + msg) {} \
  }

// rational-core
KAPPA_DEFINE_ERROR(PoleHit);
KAPPA_DEFINE_ERROR(BoundaryPole);
KAPPA_DEFINE_ERROR(InteriorPole);
KAPPA_DEFINE_ERROR(NotGeneralizedSchur);
KAPPA_DEFINE_ERROR(DegenerateValue);

// forms-inertia
KAPPA_DEFINE_ERROR(DuplicatePoints);
KAPPA_DEFINE_ERROR(PointOnBoundary);
KAPPA_DEFINE_ERROR(SamplePole);
KAPPA_DEFINE_ERROR(SpectralRadiusTooLarge);
KAPPA_DEFINE_ERROR(NonConvergence);
KAPPA_DEFINE_ERROR(TruncationInsufficient);

// model-space
KAPPA_DEFINE_ERROR(DegreeZero);
KAPPA_DEFINE_ERROR(PoleNearDisk);
KAPPA_DEFINE_ERROR(SingularDenominator);
KAPPA_DEFINE_ERROR(NotInCommutant);

// boundary modules
KAPPA_DEFINE_ERROR(TruncationUnstable);
KAPPA_DEFINE_ERROR(NoCleanGap);
KAPPA_DEFINE_ERROR(NodeCoincidence);
KAPPA_DEFINE_ERROR(EvaluationTooCloseToLine);
KAPPA_DEFINE_ERROR(AssemblyMismatch);

// solvers
KAPPA_DEFINE_ERROR(RepeatedZeros);
KAPPA_DEFINE_ERROR(DegenerateNode);

// io
KAPPA_DEFINE_ERROR(SchemaViolation);

#undef KAPPA_DEFINE_ERROR

}  // namespace kappa
