#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace packlim {

// Base class of every error this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EpsilonTooLarge : Error {
    using Error::Error;
};

struct IndexBeyondExplicit : Error {
    using Error::Error;
};

// A bracketed quantity could not be separated from the decision threshold
// within the refinement budget. Integer outputs are never silently wrong.
struct Indeterminate : Error {
    using Error::Error;
};

struct DepthCapExceeded : Error {
    using Error::Error;
};

struct SeparationViolated : Error {
    using Error::Error;
};

struct NTooLarge : Error {
    using Error::Error;
};

struct InstanceTooLarge : Error {
    using Error::Error;
};

struct DependentSystem : Error {
    using Error::Error;
};

struct NonPositiveArgument : Error {
    using Error::Error;
};

struct CertificateInvalid : Error {
    using Error::Error;
};

// The endpoint/interval-union sandwich did not close at the depth cap.
// Carries the open bracket so callers can fall back to interval arithmetic.
struct SandwichNotClosed : Error {
    std::uint64_t lower;
    std::uint64_t upper;
    int depth;

    SandwichNotClosed(std::uint64_t lo, std::uint64_t hi, int d)
        : Error("packing sandwich open at depth " + std::to_string(d) + ": [" +
                std::to_string(lo) + ", " + std::to_string(hi) + "]"),
          lower(lo), upper(hi), depth(d) {}
};

}  // namespace packlim
