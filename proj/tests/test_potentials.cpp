#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "semiclassic/potentials.hpp"

using namespace semiclassic;

TEST_CASE("triple well closed forms at dyadic points are exact") {
    PotentialModel m = triple_well(2.0);
    CHECK(m.value(0.5) == 0.28125);              // 2 * 0.25 * 0.5625
    CHECK(m.derivative(0.5) == 0.375);           // 4 * 0.5 * (-0.75) * (-0.25)
    CHECK(m.second_derivative(0.5) == -4.25);    // 2 * (1.875 - 6 + 2)
    CHECK(m.value(0.0) == 0.0);
    CHECK(m.value(1.0) == 0.0);
    CHECK(m.value(-1.0) == 0.0);
}

TEST_CASE("double well and harmonic closed forms") {
    PotentialModel d = double_well(2.0);
    CHECK(d.value(0.0) == 0.5);                  // omega^2 / 8
    CHECK(d.derivative(0.5) == -0.75);
    CHECK(d.second_derivative(0.5) == -0.5);
    CHECK(d.value(1.0) == 0.0);

    PotentialModel h = harmonic(3.0);
    CHECK(h.value(2.0) == 18.0);
    CHECK(h.derivative(2.0) == 18.0);
    CHECK(h.second_derivative(5.0) == 9.0);
}

TEST_CASE("derivatives agree with central differences") {
    const double fd_h = 1e-6;
    for (PotentialModel m : {triple_well(1.0), triple_well(7.0), double_well(3.0),
                             harmonic(2.0)}) {
        for (double x : {-1.7, -0.9, -0.3, 0.2, 0.6, 1.1, 1.9}) {
            double fd1 = (m.value(x + fd_h) - m.value(x - fd_h)) / (2 * fd_h);
            double fd2 =
                (m.derivative(x + fd_h) - m.derivative(x - fd_h)) / (2 * fd_h);
            CHECK(m.derivative(x) == doctest::Approx(fd1).epsilon(1e-7));
            CHECK(m.second_derivative(x) == doctest::Approx(fd2).epsilon(1e-7));
        }
    }
}

TEST_CASE("even symmetry and nonnegativity") {
    for (PotentialModel m : {triple_well(3.0), double_well(1.5), harmonic(0.7)}) {
        for (double x = 0.0; x <= 2.5; x += 0.17) {
            CHECK(m.value(x) == m.value(-x));
            CHECK(m.value(x) >= 0.0);
        }
    }
}

TEST_CASE("well catalogue") {
    PotentialModel m = triple_well(5.0);
    auto w = m.wells();
    REQUIRE(w.size() == 3);
    CHECK(w[0].location == -1.0);
    CHECK(w[1].location == 0.0);
    CHECK(w[2].location == 1.0);
    CHECK(w[0].frequency == 10.0);  // 2 omega at the lateral wells
    CHECK(w[1].frequency == 5.0);   // omega at the central well
    CHECK(w[2].frequency == 10.0);
    CHECK(w[0].equivalence_class == WellClass::Lateral);
    CHECK(w[1].equivalence_class == WellClass::Central);
    CHECK(m.max_well_frequency() == 10.0);

    // frequencies really are sqrt(V'') at the minima
    for (const WellInfo& info : w)
        CHECK(m.second_derivative(info.location) ==
              doctest::Approx(info.frequency * info.frequency).epsilon(1e-15));

    auto dw = double_well(5.0).wells();
    REQUIRE(dw.size() == 2);
    CHECK(dw[0].frequency == 5.0);
    CHECK(dw[1].equivalence_class == WellClass::Lateral);

    auto hw = harmonic(5.0).wells();
    REQUIRE(hw.size() == 1);
    CHECK(hw[0].location == 0.0);
    CHECK(hw[0].frequency == 5.0);
}

TEST_CASE("sqrt(2V) and its offset form") {
    for (PotentialModel m : {triple_well(2.0), double_well(4.0), harmonic(1.3)}) {
        for (double x : {-1.4, -0.6, 0.3, 0.8, 1.5}) {
            double s = m.sqrt_two_v(x);
            CHECK(s * s == doctest::Approx(2.0 * m.value(x)).epsilon(1e-14));
        }
    }

    // moderate offsets: factored form equals the direct evaluation
    PotentialModel m = triple_well(2.0);
    for (const WellInfo& info : m.wells())
        for (double delta : {0.3, -0.25, 0.07}) {
            if (info.location + delta < -1.0 || info.location + delta > 1.0) continue;
            CHECK(m.sqrt_two_v_offset(info.location, delta) ==
                  doctest::Approx(m.sqrt_two_v(info.location + delta)).epsilon(1e-13));
        }

    // tiny offsets: full relative accuracy where the direct form loses the well
    // distance to rounding; leading behaviour is frequency * |delta|
    // (ratio form: doctest's Approx is absolute near zero)
    double tiny = 1e-30;
    CHECK(m.sqrt_two_v_offset(0.0, tiny) / tiny ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m.sqrt_two_v_offset(1.0, -tiny) / tiny ==
          doctest::Approx(4.0).epsilon(1e-14));
    CHECK(m.sqrt_two_v_offset(-1.0, tiny) / tiny ==
          doctest::Approx(4.0).epsilon(1e-14));
    CHECK(double_well(3.0).sqrt_two_v_offset(1.0, -tiny) / tiny ==
          doctest::Approx(3.0).epsilon(1e-14));
    CHECK(harmonic(3.0).sqrt_two_v_offset(0.0, -tiny) / tiny ==
          doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("rejects nonpositive frequency") {
    CHECK_THROWS_AS(triple_well(0.0), DomainError);
    CHECK_THROWS_AS(double_well(-2.0), DomainError);
    CHECK_THROWS_AS(harmonic(0.0), DomainError);
}
