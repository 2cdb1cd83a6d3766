#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "semiclassic/scaled_value.hpp"

namespace semiclassic {

// d = sqrt(8/3pi) sqrt(S_eo) e^{-S_eo} with S_eo = omega/4: instantons per
// unit euclidean time
double instanton_density(double omega);

// mean instanton separation 1/d of at least 10 instanton widths 1/omega
bool dilute_regime(double omega);

struct GasConfigurationCount {
    int k;                          // jumps in the configuration
    std::pair<int, int> endpoints;  // well indices in {-1, 0, +1}
    std::uint64_t count;            // admissible orderings F
};

// Brute-force enumeration of all k-step walks on the path graph -1 - 0 - +1;
// the oracle for the combinatorial factor F. k capped at 30.
GasConfigurationCount count_configurations(int k, int from_well, int to_well);

// Same counts by adjacency-matrix power (no cap); secondary method.
std::uint64_t count_configurations_matrix(int k, int from_well, int to_well);

// 0 -> +-1 amplitude sqrt(3 omega/4pi) e^{-3 omega T/4} sinh(omega T d).
// terms < 0 sums the full series (sinh); otherwise that many odd-order terms.
ScaledValue transition_amplitude(double omega, double big_t, int terms = -1);

// 0 -> 0 amplitude: even-k companion of the above. The per-k weight comes
// from count_configurations, not from an assumed closed form.
ScaledValue return_amplitude(double omega, double big_t);

// (omega T)^k / k!: the ordered integral over k instanton centers
double translational_volume(int k, double omega, double big_t);
// the same by nested quadrature (verification only, k <= 4)
double translational_volume_quadrature(int k, double omega, double big_t);

struct DiluteGasSpectrum {
    double omega;
    double density;           // d
    double reference_energy;  // 3 omega / 4
    double splitting;         // omega * d
    std::array<double, 3> levels;  // (E_o, E_1, E_2)
    bool dilute;              // separation-vs-width validity flag
};

DiluteGasSpectrum predicted_spectrum(double omega);

// Fits A (e^{-E_low T} - e^{-E_high T}) samples on a strictly increasing
// T grid (>= 4 points) and returns (E_low, E_high); the round-trip partner
// of transition_amplitude. Log-linear regression on the dominant decay, the
// faster rate from the unit-prefactor correction term, iterated to a fixed
// point; this stays accurate even when the correction is ~1e-6 of the
// signal, where a recurrence-based fit would drown in rounding noise.
std::pair<double, double> extract_energies(
    const std::function<double(double)>& amplitude, const std::vector<double>& t_grid);

}  // namespace semiclassic
