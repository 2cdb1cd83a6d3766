#pragma once
#include <array>
#include <vector>

#include "semiclassic/potentials.hpp"

namespace semiclassic {

struct GridSpec {
    double half_width;  // L, domain [-L, L]
    int points;         // N, spacing h = 2L/(N-1)

    double spacing() const { return 2.0 * half_width / (points - 1); }
};

// throws DomainError unless N >= 200 and h < 0.2 / max well frequency
void validate_grid(const GridSpec& grid, const PotentialModel& model);

enum class Parity { Even, Odd };

struct OracleSpectrum {
    std::vector<double> energies;          // ascending
    std::vector<Parity> parities;
    std::vector<double> boundary_leakage;  // max edge |psi| / max |psi| per state
};

// Lowest m eigenpairs of H = -1/2 d^2/dx^2 + V on the Dirichlet grid.
// Throws UnconvergedBoundary when any reported state leaks past 1e-8 at the
// domain edges (enlarge L).
OracleSpectrum diagonalize(const PotentialModel& model, const GridSpec& grid, int m);

// prod eps_j(instanton) / prod eps_j(reference) over the full discrete
// spectra of the identically discretized stability operators; the
// brute-force counterpart of the Gelfand-Yaglom raw ratio. grid_points
// counts interior nodes (= matrix dimension).
double stability_eigenproduct_ratio(double omega, double big_t, int grid_points);

// d ln(2 omega d)/d omega at `omega`, from a fit of ln(2 omega d) over
// omega in {16, 20, 24, 28} with basis {1, ln omega, omega}
double predicted_splitting_slope(double omega);

struct ComparisonTable {
    double omega;
    std::array<double, 3> exact_levels;
    std::array<Parity, 3> exact_parities;
    std::array<double, 3> predicted_levels;
    std::array<double, 3> differences;       // exact - predicted
    double exact_splitting;                  // E_2 - E_o (oracle)
    double predicted_splitting;              // 2 omega d
    double central_harmonic;                 // omega/2: harmonic guess, central well
    double lateral_harmonic;                 // omega: harmonic guess, lateral wells
    double fitted_splitting_slope;           // from predicted_splitting_slope
    double analytic_splitting_slope;         // -1/4 + 3/(2 omega)
};

// Side-by-side exact vs dilute-gas triplet. States discrepancies; asserts
// nothing about physical agreement between the two.
ComparisonTable compare_report(double omega, const GridSpec& grid);

}  // namespace semiclassic
