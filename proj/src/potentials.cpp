#include "semiclassic/potentials.hpp"

#include <cmath>

namespace semiclassic {

namespace {

PotentialModel make(Family family, double omega) {
    if (!(omega > 0.0)) throw DomainError("frequency parameter must be positive");
    return PotentialModel{family, omega};
}

}  // namespace

PotentialModel triple_well(double omega) { return make(Family::TripleWell, omega); }
PotentialModel double_well(double omega) { return make(Family::DoubleWell, omega); }
PotentialModel harmonic(double nu) { return make(Family::Harmonic, nu); }

double PotentialModel::value(double x) const {
    double x2 = x * x;
    switch (family) {
        case Family::TripleWell: {
            double w = x2 - 1.0;
            return 0.5 * omega * omega * x2 * w * w;
        }
        case Family::DoubleWell: {
            double w = x2 - 1.0;
            return 0.125 * omega * omega * w * w;
        }
        case Family::Harmonic:
            return 0.5 * omega * omega * x2;
    }
    return 0.0;
}

double PotentialModel::derivative(double x) const {
    double x2 = x * x;
    switch (family) {
        case Family::TripleWell:
            return omega * omega * x * (x2 - 1.0) * (3.0 * x2 - 1.0);
        case Family::DoubleWell:
            return 0.5 * omega * omega * x * (x2 - 1.0);
        case Family::Harmonic:
            return omega * omega * x;
    }
    return 0.0;
}

double PotentialModel::second_derivative(double x) const {
    double x2 = x * x;
    switch (family) {
        case Family::TripleWell:
            return 0.5 * omega * omega * (30.0 * x2 * x2 - 24.0 * x2 + 2.0);
        case Family::DoubleWell:
            return 0.5 * omega * omega * (3.0 * x2 - 1.0);
        case Family::Harmonic:
            return omega * omega;
    }
    return 0.0;
}

std::vector<WellInfo> PotentialModel::wells() const {
    switch (family) {
        case Family::TripleWell:
            return {{-1.0, 2.0 * omega, WellClass::Lateral},
                    {0.0, omega, WellClass::Central},
                    {1.0, 2.0 * omega, WellClass::Lateral}};
        case Family::DoubleWell:
            return {{-1.0, omega, WellClass::Lateral}, {1.0, omega, WellClass::Lateral}};
        case Family::Harmonic:
            return {{0.0, omega, WellClass::Central}};
    }
    return {};
}

double PotentialModel::max_well_frequency() const {
    double m = 0.0;
    for (const auto& w : wells()) m = std::max(m, w.frequency);
    return m;
}

double PotentialModel::sqrt_two_v(double x) const {
    switch (family) {
        case Family::TripleWell:
            return omega * std::fabs(x) * std::fabs(x * x - 1.0);
        case Family::DoubleWell:
            return 0.5 * omega * std::fabs(x * x - 1.0);
        case Family::Harmonic:
            return omega * std::fabs(x);
    }
    return 0.0;
}

double PotentialModel::sqrt_two_v_offset(double well, double delta) const {
    // factored forms: no cancellation even for subnormal delta
    switch (family) {
        case Family::TripleWell:
            if (well == 0.0)
                return omega * std::fabs(delta) * std::fabs(delta * delta - 1.0);
            // x = well + delta, well = +-1: |x^2 - 1| = |delta| |delta + 2 well|
            return omega * std::fabs(well + delta) * std::fabs(delta) *
                   std::fabs(delta + 2.0 * well);
        case Family::DoubleWell:
            return 0.5 * omega * std::fabs(delta) * std::fabs(delta + 2.0 * well);
        case Family::Harmonic:
            return omega * std::fabs(well + delta);
    }
    return 0.0;
}

}  // namespace semiclassic
