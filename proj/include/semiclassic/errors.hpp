#pragma once
#include <stdexcept>
#include <string>
#include <utility>

namespace semiclassic {

// Base of every failure thrown by the library. variant() is the stable
// machine-readable name that the CLI prints in its error lines.
class Error : public std::runtime_error {
public:
    Error(std::string variant, const std::string& msg)
        : std::runtime_error(msg), variant_(std::move(variant)) {}
    const std::string& variant() const { return variant_; }

private:
    std::string variant_;
};

#define SEMICLASSIC_DEFINE_ERROR(NAME)                                  \
    class NAME : public Error {                                         \
    public:                                                             \
        explicit NAME(const std::string& msg) : Error(#NAME, msg) {}    \
    }

SEMICLASSIC_DEFINE_ERROR(DomainError);
SEMICLASSIC_DEFINE_ERROR(NonAdjacentWells);
SEMICLASSIC_DEFINE_ERROR(QuadratureFailure);
SEMICLASSIC_DEFINE_ERROR(FitUnstable);
SEMICLASSIC_DEFINE_ERROR(FitDegenerate);
SEMICLASSIC_DEFINE_ERROR(OverflowUnrepresentable);
SEMICLASSIC_DEFINE_ERROR(ToleranceNotMet);
SEMICLASSIC_DEFINE_ERROR(EnumerationTooLarge);
SEMICLASSIC_DEFINE_ERROR(Nonconvergence);
SEMICLASSIC_DEFINE_ERROR(ResolutionWarning);
SEMICLASSIC_DEFINE_ERROR(UnconvergedBoundary);

#undef SEMICLASSIC_DEFINE_ERROR

}  // namespace semiclassic
