#include "semiclassic/spectral_oracle.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "semiclassic/dilute_gas.hpp"
#include "semiclassic/fluctuations.hpp"
#include "semiclassic/numerics.hpp"

namespace semiclassic {

void validate_grid(const GridSpec& grid, const PotentialModel& model) {
    if (grid.points < 200) throw DomainError("grid needs at least 200 points");
    if (!(grid.half_width > 0.0)) throw DomainError("half width must be positive");
    double h = grid.spacing();
    if (!(h < 0.2 / model.max_well_frequency()))
        throw DomainError("grid spacing " + std::to_string(h) +
                          " too coarse for well frequency " +
                          std::to_string(model.max_well_frequency()));
}

OracleSpectrum diagonalize(const PotentialModel& model, const GridSpec& grid, int m) {
    validate_grid(grid, model);
    if (m < 1 || m > grid.points / 10)
        throw DomainError("state count m must be in [1, N/10]");

    double h = grid.spacing();
    auto n = static_cast<std::size_t>(grid.points - 2);  // interior nodes
    std::vector<double> diag(n), sub(n - 1, -0.5 / (h * h));
    for (std::size_t i = 0; i < n; ++i) {
        double x = -grid.half_width + h * (static_cast<double>(i) + 1.0);
        diag[i] = 1.0 / (h * h) + model.value(x);
    }

    std::vector<double> all = detail::tridiag_eigenvalues(diag, sub);
    OracleSpectrum spec;
    spec.energies.assign(all.begin(), all.begin() + m);

    std::vector<std::vector<double>> vectors;
    for (int s = 0; s < m; ++s) {
        std::vector<double> psi =
            detail::tridiag_eigenvector(diag, sub, spec.energies[static_cast<std::size_t>(s)], vectors);

        double overlap = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            overlap += psi[i] * psi[n - 1 - i];  // grid is reflection symmetric
            peak = std::max(peak, std::fabs(psi[i]));
        }
        spec.parities.push_back(overlap > 0.0 ? Parity::Even : Parity::Odd);
        double leak = std::max(std::fabs(psi.front()), std::fabs(psi.back())) / peak;
        spec.boundary_leakage.push_back(leak);
        if (leak >= 1e-8) {
            char msg[96];
            std::snprintf(msg, sizeof msg,
                          "state %d leaks %.3g at the domain edge; enlarge the "
                          "half width L",
                          s, leak);
            throw UnconvergedBoundary(msg);
        }
        vectors.push_back(std::move(psi));
    }
    return spec;
}

double stability_eigenproduct_ratio(double omega, double big_t, int grid_points) {
    if (!(omega > 0.0) || !(big_t > 0.0))
        throw DomainError("omega and T must be positive");
    double h = big_t / (grid_points + 1);
    if (!(h < 0.05 / omega))
        throw DomainError("grid too coarse to resolve the instanton core");

    StabilityOperator inst = stability_operator(closed_form_instanton(omega, 0.0), big_t);
    double nu2 = 2.25 * omega * omega;  // reference (3 omega/2)^2

    auto n = static_cast<std::size_t>(grid_points);
    std::vector<double> diag_i(n), diag_r(n), sub(n - 1, -1.0 / (h * h));
    for (std::size_t j = 0; j < n; ++j) {
        double tau = -0.5 * big_t + h * (static_cast<double>(j) + 1.0);
        diag_i[j] = 2.0 / (h * h) + inst.curvature(tau);
        diag_r[j] = 2.0 / (h * h) + nu2;
    }
    std::vector<double> ei = detail::tridiag_eigenvalues(diag_i, sub);
    std::vector<double> er = detail::tridiag_eigenvalues(diag_r, sub);

    double log_ratio = 0.0;
    for (std::size_t j = 0; j < n; ++j) log_ratio += std::log(ei[j] / er[j]);
    return std::exp(log_ratio);
}

double predicted_splitting_slope(double omega) {
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    std::vector<double> xs{16.0, 20.0, 24.0, 28.0}, ys;
    for (double w : xs) ys.push_back(std::log(2.0 * w * instanton_density(w)));
    std::vector<detail::Fn> basis{[](double) { return 1.0; },
                                  [](double w) { return std::log(w); },
                                  [](double w) { return w; }};
    std::vector<double> c = detail::least_squares_fit(xs, ys, basis);
    return c[1] / omega + c[2];
}

ComparisonTable compare_report(double omega, const GridSpec& grid) {
    ComparisonTable t;
    t.omega = omega;

    OracleSpectrum oracle = diagonalize(triple_well(omega), grid, 3);
    for (int i = 0; i < 3; ++i) {
        auto iu = static_cast<std::size_t>(i);
        t.exact_levels[iu] = oracle.energies[iu];
        t.exact_parities[iu] = oracle.parities[iu];
    }

    DiluteGasSpectrum predicted = predicted_spectrum(omega);
    t.predicted_levels = predicted.levels;
    for (std::size_t i = 0; i < 3; ++i)
        t.differences[i] = t.exact_levels[i] - t.predicted_levels[i];

    t.exact_splitting = t.exact_levels[2] - t.exact_levels[0];
    t.predicted_splitting = 2.0 * omega * predicted.density;
    t.central_harmonic = 0.5 * omega;
    t.lateral_harmonic = omega;
    t.fitted_splitting_slope = predicted_splitting_slope(omega);
    t.analytic_splitting_slope = -0.25 + 1.5 / omega;
    return t;
}

}  // namespace semiclassic
