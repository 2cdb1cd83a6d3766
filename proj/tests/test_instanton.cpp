#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "semiclassic/instanton.hpp"
#include "semiclassic/numerics.hpp"

using namespace semiclassic;

namespace {
double rel(double a, double b) { return std::fabs(a / b - 1.0); }
}

TEST_CASE("panel quadrature machinery") {
    // Gauss 15 integrates degree <= 29 exactly
    double p = detail::gauss15([](double x) { return std::pow(x, 20.0); }, 0.0, 1.0);
    CHECK(rel(p, 1.0 / 21.0) < 1e-14);

    std::vector<double> knots;
    for (int i = 0; i <= 8; ++i) knots.push_back(0.25 * i);
    detail::Antiderivative f([](double x) { return 1.0 / (1.0 + x); }, knots);
    CHECK(rel(f(2.0), std::log(3.0)) < 1e-14);
    CHECK(rel(f(0.37), std::log(1.37)) < 1e-14);
    CHECK(f(0.0) == 0.0);
    CHECK_THROWS_AS(f(2.5), QuadratureFailure);

    CHECK(rel(detail::integrate_adaptive([](double x) { return std::exp(-x * x); },
                                         -8.0, 8.0, 1e-12),
              std::sqrt(M_PI)) < 1e-12);
}

TEST_CASE("closed form profile") {
    InstantonProfile p = closed_form_instanton(1.0, 0.0);
    CHECK(p.position(0.0) == std::sqrt(0.5));
    CHECK(rel(p.position(1.0), 0.93850789979513888163) < 1e-15);
    CHECK(p.action() == 0.25);
    CHECK(p.endpoints() == std::pair{0.0, 1.0});
    CHECK(p.decay_rates() == std::pair{1.0, 2.0});
    CHECK(p.amplitude_constants() == std::pair{2.0, 2.0});

    // x(tau)^2 + x(-tau)^2 = 1: logistic complement identity
    for (double t : {0.3, 1.0, 2.7, 6.0})
        CHECK(std::fabs(p.position(t) * p.position(t) +
                        p.position(-t) * p.position(-t) - 1.0) < 1e-15);

    // velocity is the tau derivative of position
    for (double t : {-3.0, -0.7, 0.0, 0.4, 2.2}) {
        double fd = (p.position(t + 5e-6) - p.position(t - 5e-6)) / 1e-5;
        CHECK(rel(p.velocity(t), fd) < 1e-9);
    }

    // deep tails: position on the left and velocity on the right keep full
    // relative accuracy (the right-side position itself must round to 1)
    CHECK(rel(p.position(-40.0), std::exp(-40.0)) < 1e-12);  // sqrt(u) ~ e^{omega tau}
    CHECK(p.position(40.0) == 1.0);
    CHECK(rel(p.velocity(40.0), std::exp(-80.0)) < 1e-12);  // omega (1-u) sqrt(u)
}

TEST_CASE("first-order equation of motion saturation") {
    InstantonProfile closed = closed_form_instanton(2.0, 0.0);
    InstantonProfile numeric = numeric_instanton(triple_well(2.0), 0.0, 1.0, 0.0, 1e-12);
    for (const InstantonProfile& p : {closed, numeric}) {
        double vmax = 0.0, worst = 0.0;
        for (double t = -20.0; t <= 20.0; t += 0.05) {
            double v = p.velocity(t);
            double s = p.model().sqrt_two_v(p.position(t));
            vmax = std::max(vmax, std::fabs(v));
            worst = std::max(worst, std::fabs(v - s));
        }
        CHECK(worst / vmax < 1e-10);
    }
}

TEST_CASE("numeric profile matches the closed form") {
    InstantonProfile closed = closed_form_instanton(1.0, 0.0);
    InstantonProfile numeric = numeric_instanton(triple_well(1.0), 0.0, 1.0, 0.0, 1e-12);
    double sup = 0.0;
    for (double t = -20.0; t <= 20.0; t += 0.125)
        sup = std::max(sup, std::fabs(closed.position(t) - numeric.position(t)));
    CHECK(sup < 1e-8);
    CHECK(std::fabs(numeric.action() - 0.25) < 1e-10);

    // action also equals the kinetic-energy time integral (Bogomol'nyi bound)
    InstantonProfile copy = numeric;
    double s_time = detail::integrate_adaptive(
        [&copy](double t) {
            double v = copy.velocity(t);
            return v * v;
        },
        -40.0, 40.0, 1e-12);
    CHECK(rel(s_time, numeric.action()) < 1e-10);
}

TEST_CASE("numeric profiles across families and directions") {
    PotentialModel tw = triple_well(1.0);

    InstantonProfile left = numeric_instanton(tw, -1.0, 0.0, 0.0, 1e-11);
    CHECK(left.endpoints() == std::pair{-1.0, 0.0});
    CHECK(left.decay_rates() == std::pair{2.0, 1.0});
    CHECK(left.position(0.0) == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-12));
    CHECK(left.position(-30.0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::fabs(left.position(30.0)) < 1e-12);
    CHECK(left.velocity(1.3) > 0.0);

    InstantonProfile down = numeric_instanton(tw, 1.0, 0.0, 0.0, 1e-11);
    CHECK(down.endpoints() == std::pair{1.0, 0.0});
    CHECK(down.decay_rates() == std::pair{2.0, 1.0});
    CHECK(down.position(0.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(down.velocity(0.0) < 0.0);
    CHECK(down.position(-30.0) == doctest::Approx(1.0).epsilon(1e-12));

    InstantonProfile kink = numeric_instanton(double_well(2.0), -1.0, 1.0, 0.0, 1e-11);
    CHECK(kink.position(0.0) == 0.0);  // midpoint anchor
    CHECK(rel(kink.action(), 4.0 / 3.0) < 1e-12);  // 2 omega / 3
    CHECK(rel(kink.position(1.0), std::tanh(1.0)) < 1e-10);  // tanh(omega tau / 2)
    CHECK(kink.decay_rates() == std::pair{2.0, 2.0});
    auto [kd, kc] = kink.amplitude_constants();
    CHECK(rel(kd, std::sqrt(12.0)) < 1e-6);  // sqrt(6 omega)
    CHECK(rel(kc, std::sqrt(12.0)) < 1e-6);
}

TEST_CASE("construction rejects bad requests") {
    PotentialModel tw = triple_well(1.0);
    CHECK_THROWS_AS(numeric_instanton(tw, -1.0, 1.0, 0.0, 1e-10), NonAdjacentWells);
    CHECK_THROWS_AS(numeric_instanton(tw, 0.0, 0.0, 0.0, 1e-10), DomainError);
    CHECK_THROWS_AS(numeric_instanton(tw, 0.0, 0.5, 0.0, 1e-10), DomainError);
    CHECK_THROWS_AS(numeric_instanton(tw, 0.0, 1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(numeric_instanton(harmonic(1.0), 0.0, 1.0, 0.0, 1e-10), DomainError);
    CHECK_THROWS_AS(closed_form_instanton(-1.0, 0.0), DomainError);
}

TEST_CASE("transforms compose and invert exactly") {
    InstantonProfile p = closed_form_instanton(1.5, 0.0);

    InstantonProfile anti = time_reverse(p);
    CHECK(anti.endpoints() == std::pair{1.0, 0.0});
    CHECK(anti.decay_rates() == std::pair{2.0 * 1.5, 1.5});
    CHECK(anti.action() == p.action());
    CHECK(anti.position(2.0) == p.position(-2.0));
    CHECK(anti.velocity(2.0) == -p.velocity(-2.0));

    InstantonProfile mirrored = space_reflect(p);
    CHECK(mirrored.endpoints() == std::pair{-0.0, -1.0});
    CHECK(mirrored.position(0.7) == -p.position(0.7));
    CHECK(mirrored.action() == p.action());

    InstantonProfile shifted = translate(p, 5.0);
    CHECK(shifted.center() == 5.0);
    for (double t : {-2.0, 0.0, 1.25, 8.0})
        CHECK(shifted.position(t) == p.position(t - 5.0));

    // double application restores the original pointwise
    InstantonProfile twice_t = time_reverse(time_reverse(p));
    InstantonProfile twice_s = space_reflect(space_reflect(p));
    for (double t : {-7.3, -1.0, 0.0, 0.9, 4.4}) {
        CHECK(twice_t.position(t) == p.position(t));
        CHECK(twice_t.velocity(t) == p.velocity(t));
        CHECK(twice_s.position(t) == p.position(t));
        CHECK(twice_s.velocity(t) == p.velocity(t));
    }
}

TEST_CASE("zero mode normalization and asymptotics") {
    for (double omega : {1.0, 4.0}) {
        InstantonProfile p = closed_form_instanton(omega, 0.0);
        ZeroMode zm = zero_mode(p);
        CHECK(std::fabs(zm.norm_check - 1.0) < 1e-8);

        // tails: D e^{mu_- tau} on the left, C e^{-mu_+ tau} on the right
        double tau = 9.0 / omega;
        CHECK(rel(zm.values(tau), 2.0 * std::sqrt(omega) *
                                      std::exp(-2.0 * omega * tau)) < 1e-6);
        CHECK(rel(zm.values(-tau),
                  2.0 * std::sqrt(omega) * std::exp(-omega * tau)) < 1e-6);
    }

    ZeroMode numeric_zm =
        zero_mode(numeric_instanton(triple_well(1.0), 0.0, 1.0, 0.0, 1e-11));
    CHECK(std::fabs(numeric_zm.norm_check - 1.0) < 1e-8);
}

TEST_CASE("zero mode annihilates under the stability operator") {
    InstantonProfile p = closed_form_instanton(1.0, 0.0);
    CHECK(zero_mode_residual_sup(p, 1e-3, 10.0) < 1e-6);
}

TEST_CASE("fitted asymptotic constants") {
    CHECK(asymptotic_constants(closed_form_instanton(1.0, 0.0)) ==
          std::pair{2.0, 2.0});
    CHECK(asymptotic_constants(closed_form_instanton(4.0, 0.0)) ==
          std::pair{4.0, 4.0});

    auto [d1, c1] =
        asymptotic_constants(numeric_instanton(triple_well(1.0), 0.0, 1.0, 0.0, 1e-11));
    CHECK(std::fabs(d1 - 2.0) < 1e-6);
    CHECK(std::fabs(c1 - 2.0) < 1e-6);

    auto [d4, c4] =
        asymptotic_constants(numeric_instanton(triple_well(4.0), 0.0, 1.0, 0.0, 1e-11));
    CHECK(std::fabs(d4 - 4.0) < 1e-6);
    CHECK(std::fabs(c4 - 4.0) < 1e-6);

    // fitting a reversed profile honours the swapped rates
    auto [dr, cr] = asymptotic_constants(
        time_reverse(numeric_instanton(triple_well(1.0), 0.0, 1.0, 0.0, 1e-11)));
    CHECK(std::fabs(dr - 2.0) < 1e-6);
    CHECK(std::fabs(cr - 2.0) < 1e-6);
}
