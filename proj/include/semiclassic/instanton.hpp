#pragma once
#include <functional>
#include <memory>
#include <utility>

#include "semiclassic/potentials.hpp"

namespace semiclassic {

namespace detail {
struct ProfileKernel;
}

// One topological solution of the euclidean equation of motion. position()
// and velocity() remain relatively accurate deep into the exponential tails
// (velocity is evaluated from the exact distance to the approached well, not
// from the rounded position).
class InstantonProfile {
public:
    double position(double tau) const;
    double velocity(double tau) const;  // dx_c/dtau, signed

    std::pair<double, double> endpoints() const;          // (x_i, x_f)
    double center() const { return center_; }             // tau_c
    double action() const;
    std::pair<double, double> decay_rates() const;        // (mu_-, mu_+)
    std::pair<double, double> amplitude_constants() const;// (D, C)
    const PotentialModel& model() const;

    InstantonProfile(std::shared_ptr<const detail::ProfileKernel> kernel,
                     double center, bool reversed, bool reflected);

private:
    friend InstantonProfile time_reverse(const InstantonProfile&);
    friend InstantonProfile space_reflect(const InstantonProfile&);
    friend InstantonProfile translate(const InstantonProfile&, double);
    friend std::pair<double, double> asymptotic_constants(const InstantonProfile&);

    std::shared_ptr<const detail::ProfileKernel> kernel_;
    double center_;
    bool reversed_;   // tau -> 2 tau_c - tau applied
    bool reflected_;  // x -> -x applied
};

// Triple-well 0 -> +1 instanton in closed form:
// x_c(tau) = sqrt([1 + tanh(omega (tau - tau_c))] / 2).
InstantonProfile closed_form_instanton(double omega, double tau_c);

// Instanton between two adjacent minima of any family, built by splitting
// tau(x) = tau_c + int dx / sqrt(2V) into its exact logarithmic endpoint
// parts plus a smooth remainder (panel quadrature), then inverting by Newton
// in the log-distance variable.
InstantonProfile numeric_instanton(const PotentialModel& model, double from_well,
                                   double to_well, double tau_c, double tolerance);

InstantonProfile time_reverse(const InstantonProfile& p);
InstantonProfile space_reflect(const InstantonProfile& p);
InstantonProfile translate(const InstantonProfile& p, double dtau);

struct ZeroMode {
    std::function<double(double)> values;  // x_o(tau) = |dx_c/dtau| / sqrt(S), positive branch
    double norm_check;                     // quadrature of int x_o^2 dtau
};

ZeroMode zero_mode(const InstantonProfile& p);

// sup over a uniform grid (spacing h, window |tau - tau_c| <= half_width) of
// the central-difference residual | -x_o'' + V''(x_c) x_o |
double zero_mode_residual_sup(const InstantonProfile& p, double h, double half_width);

// (D, C) from the plateaus of x_o e^{+mu (tau - tau_c)} over
// |tau - tau_c| in [8/omega, 15/omega]; closed-form profiles return the
// analytic constants directly.
std::pair<double, double> asymptotic_constants(const InstantonProfile& p);

}  // namespace semiclassic
