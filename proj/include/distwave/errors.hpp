#pragma once

#include <stdexcept>
#include <string>

namespace distwave {

// Failure modes named after the contract they break. All are fatal for the
// computation that raised them; callers either fix the configuration or
// propagate.
struct NonDecayingTail : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FloorTooHigh : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IllConditionedFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SeedOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateWronskian : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundaryViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NyquistViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CFLViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ExclusionTooWide : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResonantPotential : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace distwave
