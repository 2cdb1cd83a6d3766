#include "semiclassic/fluctuations.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "semiclassic/numerics.hpp"

namespace semiclassic {

StabilityOperator stability_operator(const InstantonProfile& profile, double big_t) {
    if (!(big_t > 0.0)) throw DomainError("box size T must be positive");
    InstantonProfile copy = profile;
    StabilityOperator op;
    op.curvature = [copy](double tau) {
        return copy.model().second_derivative(copy.position(tau));
    };
    op.interval = {-0.5 * big_t, 0.5 * big_t};
    auto [xi, xf] = profile.endpoints();
    const PotentialModel& m = profile.model();
    op.asymptotic_curvatures = {m.second_derivative(xi), m.second_derivative(xf)};
    return op;
}

StabilityOperator constant_operator(double nu, double big_t) {
    if (!(nu > 0.0)) throw DomainError("frequency must be positive");
    if (!(big_t > 0.0)) throw DomainError("box size T must be positive");
    double nu2 = nu * nu;
    StabilityOperator op;
    op.curvature = [nu2](double) { return nu2; };
    op.interval = {-0.5 * big_t, 0.5 * big_t};
    op.asymptotic_curvatures = {nu2, nu2};
    return op;
}

ScaledValue gy_terminal(const StabilityOperator& op) {
    double big_t = op.interval.second - op.interval.first;
    return detail::zero_energy_ivp(op.curvature, big_t).terminal;
}

ScaledValue reference_terminal(double nu, double big_t) {
    if (!(nu > 0.0)) throw DomainError("frequency must be positive");
    if (!(big_t >= 0.0)) throw DomainError("box size T must be nonnegative");
    double a = nu * big_t;
    if (a < 700.0) return ScaledValue::from(std::sinh(a) / nu);
    // sinh(a)/nu = e^a (1 - e^{-2a}) / (2 nu)
    return ScaledValue{(1.0 - std::exp(-2.0 * a)) / (2.0 * nu), a};
}

double harmonic_propagator(double nu, double big_t) {
    if (!(nu > 0.0) || !(big_t > 0.0)) throw DomainError("nu and T must be positive");
    double a = nu * big_t;
    if (a < 700.0) return std::sqrt(nu / M_PI) / std::sqrt(2.0 * std::sinh(a));
    double log_v = 0.5 * std::log(nu / M_PI) - 0.5 * (a + std::log1p(-std::exp(-2.0 * a)));
    return log_v > -745.0 ? std::exp(log_v) : 0.0;
}

SecondSolution second_solution(const InstantonProfile& profile) {
    double root_s = std::sqrt(profile.action());
    InstantonProfile copy = profile;
    auto xo = [copy, root_s](double t) {
        return std::fabs(copy.velocity(t)) / root_s;
    };
    auto dxo = [copy, root_s](double t) {
        // equation of motion: d(dx_c/dtau)/dtau = V'(x_c)
        double v = copy.velocity(t);
        double accel = copy.model().derivative(copy.position(t));
        return (v < 0.0 ? -accel : accel) / root_s;
    };
    auto inv_sq = [xo](double t) {
        double x = xo(t);
        double w = 1.0 / (x * x);
        if (!std::isfinite(w))
            throw QuadratureFailure("zero mode underflowed inside the window");
        return w;
    };
    auto weight = [inv_sq](double t) {
        if (t == 0.0) return 0.0;
        return detail::integrate_adaptive(inv_sq, 0.0, t, 1e-10);
    };
    SecondSolution s;
    s.values = [xo, weight](double t) { return xo(t) * weight(t); };
    s.derivative = [xo, dxo, weight](double t) {
        return dxo(t) * weight(t) + 1.0 / xo(t);
    };
    return s;
}

ScaledValue lowest_eigenvalue_analytic(double omega, double big_d, double big_t) {
    if (!(omega > 0.0) || !(big_d > 0.0) || !(big_t >= 0.0))
        throw DomainError("omega, D positive and T nonnegative required");
    return ScaledValue{2.0 * omega * big_d * big_d, -omega * big_t};
}

double lowest_eigenvalue_numeric(const StabilityOperator& op, int grid_points) {
    if (grid_points < 1000) throw DomainError("need at least 1000 grid points");
    double big_t = op.interval.second - op.interval.first;
    auto n = static_cast<std::size_t>(grid_points);
    double h = big_t / (grid_points + 1);

    std::vector<double> w(n), diag(n), sub(n - 1, -1.0 / (h * h));
    for (std::size_t j = 0; j < n; ++j) {
        w[j] = op.curvature(op.interval.first + h * (static_cast<double>(j) + 1.0));
        diag[j] = 2.0 / (h * h) + w[j];
    }
    double lambda = detail::tridiag_eigenvalues(diag, sub).front();
    std::vector<double> psi = detail::tridiag_eigenvector(diag, sub, lambda, {});

    // leading central-difference truncation of this eigenvalue:
    // (h^2/12) int f'''' f with f'''' ~ (W f)'' contracted back onto f
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += (w[j] * psi[j]) * (w[j] * psi[j]);
    double estimate = h * h / 12.0 * s;
    if (lambda < 10.0 * estimate)
        throw ResolutionWarning("eigenvalue " + std::to_string(lambda) +
                                " within 10x of the h^2 truncation estimate " +
                                std::to_string(estimate) +
                                "; refine the grid or shrink T");
    return lambda;
}

double collective_jacobian(double action) {
    if (!(action > 0.0)) throw DomainError("action must be positive");
    return std::sqrt(action / (2.0 * M_PI));
}

DeterminantReport determinant_report(double omega, double big_t, double reference_nu) {
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    if (!(omega * big_t >= 20.0))
        throw DomainError("determinant report requires the dilute regime omega T >= 20");
    double nu = reference_nu > 0.0 ? reference_nu : 1.5 * omega;

    InstantonProfile profile = closed_form_instanton(omega, 0.0);
    DeterminantReport r;
    r.gy_value = gy_terminal(stability_operator(profile, big_t));
    r.reference_value = reference_terminal(nu, big_t);
    r.raw_ratio = r.gy_value / r.reference_value;
    auto [big_d, big_c] = profile.amplitude_constants();
    (void)big_c;
    r.lowest_eigenvalue = lowest_eigenvalue_analytic(omega, big_d, big_t);
    r.reduced_ratio = r.raw_ratio / r.lowest_eigenvalue;
    r.jacobian = collective_jacobian(profile.action());
    return r;
}

}  // namespace semiclassic
