#pragma once
#include <cmath>
#include <string>

#include "semiclassic/errors.hpp"

namespace semiclassic {

// Positive-or-zero quantity held as mantissa * exp(log_scale), so results
// that grow like exp(omega T / 2) survive far beyond double range.
struct ScaledValue {
    double mantissa = 0.0;  // finite, may be any magnitude; sign lives here
    double log_scale = 0.0;

    static ScaledValue from(double v) { return ScaledValue{v, 0.0}; }
    static ScaledValue from_log(double log_magnitude) {
        return ScaledValue{1.0, log_magnitude};
    }

    bool zero() const { return mantissa == 0.0; }
    int sign() const { return mantissa > 0 ? 1 : (mantissa < 0 ? -1 : 0); }

    // natural log of |value|; meaningless for zero
    double log_abs() const {
        if (zero()) throw DomainError("log of zero scaled value");
        return std::log(std::fabs(mantissa)) + log_scale;
    }

    bool representable() const {
        if (zero()) return true;
        double l = log_abs();
        return l < 709.0 && l > -745.0;
    }

    // plain double, throws when the magnitude cannot be represented
    double value() const {
        if (zero()) return 0.0;
        if (log_scale == 0.0) return mantissa;
        double l = log_abs();
        if (l >= 709.0)
            throw OverflowUnrepresentable("scaled value exceeds double range, log=" +
                                          std::to_string(l));
        if (l <= -745.0) return 0.0;  // graceful underflow
        return (mantissa < 0 ? -1.0 : 1.0) * std::exp(l);
    }

    ScaledValue operator*(const ScaledValue& o) const {
        if (zero() || o.zero()) return ScaledValue{};
        return ScaledValue{mantissa * o.mantissa >= 0 ? 1.0 : -1.0,
                           log_abs() + o.log_abs()};
    }
    ScaledValue operator/(const ScaledValue& o) const {
        if (o.zero()) throw DomainError("division by zero scaled value");
        if (zero()) return ScaledValue{};
        return ScaledValue{mantissa * o.mantissa >= 0 ? 1.0 : -1.0,
                           log_abs() - o.log_abs()};
    }
};

}  // namespace semiclassic
