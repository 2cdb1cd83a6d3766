#pragma once
#include <vector>

#include "semiclassic/errors.hpp"

namespace semiclassic {

enum class Family { TripleWell, DoubleWell, Harmonic };
enum class WellClass { Central, Lateral };

struct WellInfo {
    double location;
    double frequency;  // sqrt(V''(location))
    WellClass equivalence_class;
};

// Symmetric one-dimensional potential family with closed-form derivatives,
// particle mass fixed to 1.
//
//   TripleWell  V(x) = (omega^2/2) x^2 (x^2 - 1)^2    wells at -1, 0, +1
//   DoubleWell  V(x) = (omega^2/8) (x^2 - 1)^2        wells at -1, +1
//   Harmonic    V(x) = (omega^2/2) x^2                (omega doubles as nu)
struct PotentialModel {
    Family family;
    double omega;

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;
    std::vector<WellInfo> wells() const;
    double max_well_frequency() const;

    // sqrt(2 V(x)); the offset overload evaluates at x = well + delta through
    // the factored closed form, keeping full relative accuracy for tiny delta
    double sqrt_two_v(double x) const;
    double sqrt_two_v_offset(double well, double delta) const;
};

PotentialModel triple_well(double omega);
PotentialModel double_well(double omega);
PotentialModel harmonic(double nu);

}  // namespace semiclassic
