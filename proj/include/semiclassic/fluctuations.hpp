#pragma once
#include <functional>
#include <utility>

#include "semiclassic/instanton.hpp"
#include "semiclassic/scaled_value.hpp"

namespace semiclassic {

// -f'' + W(tau) f on a finite euclidean box; W(tau) = V''(x_c(tau))
struct StabilityOperator {
    std::function<double(double)> curvature;
    std::pair<double, double> interval;               // (-T/2, T/2)
    std::pair<double, double> asymptotic_curvatures;  // limits of W at -/+ infinity
};

StabilityOperator stability_operator(const InstantonProfile& profile, double big_t);
StabilityOperator constant_operator(double nu, double big_t);

// Terminal value f(T/2) of -f'' + W f = 0, f(-T/2) = 0, f'(-T/2) = 1.
// Grows like e^{mu T/2}, hence the scaled carrier.
ScaledValue gy_terminal(const StabilityOperator& op);

// Same terminal value for the constant-frequency operator: sinh(nu T)/nu.
ScaledValue reference_terminal(double nu, double big_t);

// (nu/pi)^{1/2} (2 sinh nu T)^{-1/2}: the normalized oscillator return
// amplitude at the origin (absorbs the path-integral prefactor N(T)).
double harmonic_propagator(double nu, double big_t);

// y_o(tau) = x_o(tau) int_0^tau ds / x_o(s)^2: the growing companion of the
// zero mode, unit Wronskian by construction.
struct SecondSolution {
    std::function<double(double)> values;
    std::function<double(double)> derivative;
};
SecondSolution second_solution(const InstantonProfile& profile);

// lambda = 2 omega D^2 e^{-omega T}: the would-be zero mode eigenvalue once
// the box makes it a true Dirichlet problem.
ScaledValue lowest_eigenvalue_analytic(double omega, double big_d, double big_t);

// Smallest Dirichlet eigenvalue of the central-difference discretization on
// `grid_points` interior nodes. Throws ResolutionWarning when the eigenvalue
// sits below 10x the estimated O(h^2) truncation error of the grid.
double lowest_eigenvalue_numeric(const StabilityOperator& op, int grid_points);

double collective_jacobian(double action);  // sqrt(S / 2 pi)

struct DeterminantReport {
    ScaledValue gy_value;          // f_o(T/2) for the instanton operator
    ScaledValue reference_value;   // sinh(nu T)/nu
    ScaledValue raw_ratio;         // gy_value / reference_value
    ScaledValue lowest_eigenvalue; // analytic 2 omega D^2 e^{-omega T}
    ScaledValue reduced_ratio;     // raw_ratio / lowest_eigenvalue
    double jacobian;               // sqrt(S / 2 pi)
};

// Full determinant bookkeeping for the triple-well 0 -> 1 instanton at the
// given omega, box size T, and reference frequency (default 3 omega / 2).
DeterminantReport determinant_report(double omega, double big_t,
                                     double reference_nu = -1.0);

}  // namespace semiclassic
