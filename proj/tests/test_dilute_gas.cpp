#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "semiclassic/dilute_gas.hpp"

using namespace semiclassic;

namespace {
double rel(double a, double b) { return std::fabs(a / b - 1.0); }
}

TEST_CASE("instanton density") {
    CHECK(rel(instanton_density(4.0), 0.33893385236138042858) < 1e-14);
    CHECK(rel(instanton_density(10.0), 0.11957578189559146511) < 1e-14);
    CHECK(rel(instanton_density(20.0), 0.013881040535180179711) < 1e-14);
    CHECK(instanton_density(10.0) > instanton_density(20.0));
    CHECK(instanton_density(3500.0) == 0.0);  // e^{-875} underflows: suppression limit
    CHECK_THROWS_AS(instanton_density(0.0), DomainError);

    // ln d + S - ln(sqrt(8/3pi) sqrt(S)) = 0: the density decomposes exactly
    for (double omega : {4.0, 7.0, 13.0}) {
        double s = 0.25 * omega;
        double residue = std::log(instanton_density(omega)) + s -
                         std::log(std::sqrt(8.0 / (3.0 * M_PI)) * std::sqrt(s));
        CHECK(std::fabs(residue) < 1e-12);
    }

    CHECK(dilute_regime(10.0));
    CHECK(!dilute_regime(1.0));  // separation 1/d under 10 widths 1/omega
}

TEST_CASE("configuration counting by exhaustive enumeration") {
    CHECK(count_configurations(1, 0, 1).count == 1);
    CHECK(count_configurations(3, 0, 1).count == 2);
    CHECK(count_configurations(2, 0, 1).count == 0);
    CHECK(count_configurations(0, 0, 0).count == 1);
    CHECK(count_configurations(0, 0, 1).count == 0);

    for (int k = 1; k <= 15; k += 2)
        CHECK(count_configurations(k, 0, 1).count ==
              (std::uint64_t{1} << ((k - 1) / 2)));
    for (int k = 0; k <= 14; k += 2) CHECK(count_configurations(k, 0, 1).count == 0);

    // 0 -> 0 walks come back with an independent sign choice per excursion
    for (int k = 2; k <= 14; k += 2)
        CHECK(count_configurations(k, 0, 0).count == (std::uint64_t{1} << (k / 2)));

    GasConfigurationCount c = count_configurations(5, 0, -1);
    CHECK(c.k == 5);
    CHECK(c.endpoints == std::pair{0, -1});
    CHECK(c.count == 4);  // mirror symmetry of 0 -> +1

    CHECK_THROWS_AS(count_configurations(31, 0, 1), EnumerationTooLarge);
    CHECK_THROWS_AS(count_configurations(-1, 0, 1), DomainError);
    CHECK_THROWS_AS(count_configurations(2, 0, 2), DomainError);
}

TEST_CASE("matrix powers reproduce the enumeration") {
    for (int k = 0; k <= 15; ++k)
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                CHECK(count_configurations_matrix(k, a, b) ==
                      count_configurations(k, a, b).count);
    CHECK(count_configurations_matrix(40, 0, 0) == (std::uint64_t{1} << 20));
}

TEST_CASE("walk-weighted series reach the hyperbolic closed forms") {
    // sum_odd F_k z^k / k! = sinh(sqrt2 z)/sqrt2 and the even sum = cosh(sqrt2 z):
    // the bridge between enumeration and the closed-form amplitudes
    double z = 1.3;
    double odd = 0.0, even = 0.0, power = 1.0;  // z^k / k!
    for (int k = 0; k <= 29; ++k) {
        double term = static_cast<double>(count_configurations_matrix(k, 0, 1)) * power;
        double term_even =
            static_cast<double>(count_configurations_matrix(k, 0, 0)) * power;
        odd += term;
        even += term_even;
        power *= z / (k + 1);
    }
    CHECK(rel(odd, std::sinh(std::sqrt(2.0) * z) / std::sqrt(2.0)) < 1e-14);
    CHECK(rel(even, std::cosh(std::sqrt(2.0) * z)) < 1e-14);
}

TEST_CASE("transition amplitude") {
    CHECK(rel(transition_amplitude(10.0, 1.0).value(), 1.2833862559974457803e-3) <
          1e-13);

    // truncated series vs closed form: z = omega T d around 3 and up to 10
    double t3 = 3.0 / (10.0 * instanton_density(10.0));
    CHECK(rel(transition_amplitude(10.0, t3, 15).value(),
              transition_amplitude(10.0, t3).value()) < 1e-12);
    double t10 = 10.0 / (10.0 * instanton_density(10.0));
    CHECK(rel(transition_amplitude(10.0, t10, 30).value(),
              transition_amplitude(10.0, t10).value()) < 1e-12);

    // no instantons, no transition
    CHECK(transition_amplitude(3500.0, 1.0).value() == 0.0);

    // deep box: the scaled carrier keeps the exponent
    ScaledValue deep = transition_amplitude(10.0, 500.0);
    CHECK(!deep.zero());
    CHECK(deep.value() == 0.0);  // underflows as a plain double
    double z = 10.0 * 500.0 * instanton_density(10.0);
    double expect = std::log(std::sqrt(30.0 / (4.0 * M_PI)) * 0.5) + z - 3750.0;
    CHECK(std::fabs(deep.log_abs() - expect) < 1e-9);

    CHECK_THROWS_AS(transition_amplitude(-1.0, 1.0), DomainError);
}

TEST_CASE("return amplitude from enumerated weights") {
    // equals the cosh companion of the sinh closed form
    for (double big_t : {0.5, 1.0, 3.0}) {
        double z = 10.0 * big_t * instanton_density(10.0);
        double closed = std::sqrt(30.0 / (4.0 * M_PI)) * std::cosh(z) *
                        std::exp(-7.5 * big_t);
        CHECK(rel(return_amplitude(10.0, big_t).value(), closed) < 1e-12);
    }
    // k = 0 term alone survives when the density vanishes
    CHECK(rel(return_amplitude(3500.0, 1e-3).log_abs(),
              std::log(std::sqrt(3.0 * 3500.0 / (4.0 * M_PI))) - 0.75 * 3500.0 * 1e-3) <
          1e-12);
}

TEST_CASE("translational volume") {
    CHECK(translational_volume(0, 2.0, 9.0) == 1.0);
    CHECK(rel(translational_volume(3, 2.0, 1.0), 8.0 / 6.0) < 1e-15);
    CHECK(rel(translational_volume_quadrature(2, 1.0, 1.0), 0.5) < 1e-6);
    CHECK(rel(translational_volume_quadrature(3, 2.0, 1.0),
              translational_volume(3, 2.0, 1.0)) < 1e-5);
    CHECK(translational_volume_quadrature(0, 1.0, 1.0) == 1.0);
    CHECK_THROWS_AS(translational_volume_quadrature(5, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(translational_volume(-1, 1.0, 1.0), DomainError);
}

TEST_CASE("predicted spectrum") {
    DiluteGasSpectrum s = predicted_spectrum(10.0);
    CHECK(s.reference_energy == 7.5);
    CHECK(rel(s.levels[0], 6.3042421810440853489) < 1e-14);
    CHECK(s.levels[1] == 7.5);
    CHECK(rel(s.levels[2], 8.6957578189559146511) < 1e-14);
    CHECK(s.levels[0] < s.levels[1]);
    CHECK(s.levels[1] < s.levels[2]);
    CHECK(s.splitting == s.omega * s.density);
    CHECK(s.dilute);
    CHECK(!predicted_spectrum(1.0).dilute);

    // symmetric splitting: construction-level identity
    double up = s.levels[2] - s.levels[1];
    double down = s.levels[1] - s.levels[0];
    CHECK(std::fabs(up - down) <= 1e-15 * s.omega);

    DiluteGasSpectrum s4 = predicted_spectrum(4.0);
    CHECK(rel(s4.levels[0], 1.6442645905544782857) < 1e-14);
    CHECK(rel(s4.levels[2], 4.3557354094455217143) < 1e-14);
}

TEST_CASE("energy extraction round-trips the amplitude") {
    std::vector<double> grid{5.0, 10.0, 15.0, 20.0};
    for (double omega : {4.0, 10.0, 20.0}) {
        auto amp = [omega](double big_t) {
            return transition_amplitude(omega, big_t).value();
        };
        auto [lo, hi] = extract_energies(amp, grid);
        DiluteGasSpectrum s = predicted_spectrum(omega);
        CHECK(rel(lo, s.levels[0]) < 1e-6);
        CHECK(rel(hi, s.levels[2]) < 1e-6);
    }

    // more points than unknowns: least-squares branch
    std::vector<double> grid7{2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0};
    auto amp10 = [](double big_t) {
        return transition_amplitude(10.0, big_t).value();
    };
    auto [lo7, hi7] = extract_energies(amp10, grid7);
    CHECK(rel(lo7, predicted_spectrum(10.0).levels[0]) < 1e-6);
    CHECK(rel(hi7, predicted_spectrum(10.0).levels[2]) < 1e-6);
}

TEST_CASE("energy extraction degenerate and invalid inputs") {
    std::vector<double> grid{5.0, 10.0, 15.0, 20.0};
    CHECK_THROWS_AS(
        extract_energies([](double t) { return std::exp(-2.0 * t); }, grid),
        FitDegenerate);

    std::vector<double> short_grid{1.0, 2.0, 3.0};
    std::vector<double> backwards{4.0, 3.0, 2.0, 1.0};
    std::vector<double> nonpositive{0.0, 1.0, 2.0, 3.0};
    auto f = [](double t) { return std::exp(-t) - std::exp(-3.0 * t); };
    CHECK_THROWS_AS(extract_energies(f, short_grid), DomainError);
    CHECK_THROWS_AS(extract_energies(f, backwards), DomainError);
    CHECK_THROWS_AS(extract_energies(f, nonpositive), DomainError);

    // clean two-exponential input comes back to full precision
    auto [lo, hi] = extract_energies(f, grid);
    CHECK(rel(lo, 1.0) < 1e-9);
    CHECK(rel(hi, 3.0) < 1e-9);

    // the grid does not need to be uniform
    std::vector<double> uneven{1.0, 2.0, 4.0, 8.0};
    auto [ulo, uhi] = extract_energies(f, uneven);
    CHECK(rel(ulo, 1.0) < 1e-9);
    CHECK(rel(uhi, 3.0) < 1e-9);
}
