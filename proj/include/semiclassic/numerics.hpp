#pragma once
#include <functional>
#include <utility>
#include <vector>

#include "semiclassic/scaled_value.hpp"

// Shared numerical machinery: quadrature, the rescaled zero-energy IVP
// integrator, symmetric tridiagonal eigenproblems, exponential-rate fits.
namespace semiclassic::detail {

using Fn = std::function<double(double)>;

double gauss15(const Fn& f, double a, double b);

// Antiderivative of a smooth integrand on a fixed panel decomposition:
// F(x) = integral from knots.front() to x, with per-panel prefix sums so
// repeated evaluations cost one partial panel each.
class Antiderivative {
public:
    Antiderivative(Fn f, std::vector<double> knots);
    double operator()(double x) const;
    double span_begin() const { return knots_.front(); }
    double span_end() const { return knots_.back(); }

private:
    Fn f_;
    std::vector<double> knots_, prefix_;
};

// Adaptive bisection quadrature (Gauss 15 vs its two-half refinement).
double integrate_adaptive(const Fn& f, double a, double b, double tol,
                          int max_depth = 40);

// Cumulative integral of uniformly sampled data, Simpson-grade accuracy;
// returns the running integral at every sample.
std::vector<double> cumulative_integral(const std::vector<double>& y, double h);

struct IvpResult {
    ScaledValue terminal;             // f(T/2)
    ScaledValue terminal_derivative;  // f'(T/2)
};

// Integrates -f'' + W(t) f = 0 on [-T/2, T/2] with f = 0, f' = 1 at the left
// edge. Adaptive Dormand-Prince with running renormalization of (f, f'), the
// accumulated factor returned inside the scaled results.
IvpResult zero_energy_ivp(const Fn& W, double big_t, double rel_tol = 1e-12);

// All eigenvalues of the symmetric tridiagonal matrix (ascending).
std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& sub);

// Eigenvector for an isolated eigenvalue by inverse iteration, orthogonalized
// against previously found vectors; normalized to unit euclidean norm.
std::vector<double> tridiag_eigenvector(
    const std::vector<double>& diag, const std::vector<double>& sub,
    double eigenvalue, const std::vector<std::vector<double>>& previous);

// Decay rates of y(t) ~ A e^{-low t} + B e^{-high t} from uniform samples
// (Prony / linear recurrence); throws FitDegenerate when the two rates are
// not distinguishable on the grid.
std::pair<double, double> two_rate_fit(const std::vector<double>& y, double step);

// Least-squares coefficients of model sum_j c_j basis_j(x) via Householder QR.
std::vector<double> least_squares_fit(const std::vector<double>& x,
                                      const std::vector<double>& y,
                                      const std::vector<Fn>& basis);

}  // namespace semiclassic::detail
