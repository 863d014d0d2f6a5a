#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "gdicke/quadratic_boson.hpp"

using namespace gdicke;

namespace {

ExcitationPair expect_stable(const ExcitationOutcome& o) {
    REQUIRE(is_stable(o));
    return std::get<ExcitationPair>(o);
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-30});
}

}  // namespace

TEST_CASE("decoupled identical oscillators") {
    const auto pair = expect_stable(excitation_energies({1.0, 1.0, 0.0, 0.0, 0.0}));
    CHECK(pair.eps_minus == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pair.eps_plus == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("resonant bilinear coupling r = 0.25") {
    const auto pair = expect_stable(excitation_energies({1.0, 1.0, 0.0, 0.25, 0.0}));
    CHECK(pair.eps_minus * pair.eps_minus == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pair.eps_plus * pair.eps_plus == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(pair.eps_minus == doctest::Approx(0.70710678118654752).epsilon(1e-14));
    CHECK(pair.eps_plus == doctest::Approx(1.2247448713915890).epsilon(1e-14));
}

TEST_CASE("the lower mode closes exactly at r = 0.5 on resonance") {
    const auto pair = expect_stable(excitation_energies({1.0, 1.0, 0.0, 0.5, 0.0}));
    CHECK(pair.eps_minus <= 1e-8);
    CHECK(pair.eps_plus == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("past the closing point the form is unstable and carries eps_minus^2") {
    const auto out = excitation_energies({1.0, 1.0, 0.0, 0.6, 0.0});
    REQUIRE(!is_stable(out));
    CHECK(eps_minus_sq(out) == doctest::Approx(1.0 - 2.0 * 0.6).epsilon(1e-12));
}

TEST_CASE("decoupled single-mode squeezing") {
    // b-mode energy sqrt(omega_b(omega_b + 4s)) = sqrt(10)
    const auto pair = expect_stable(excitation_energies({1.0, 2.0, 0.75, 0.0, 0.0}));
    CHECK(pair.eps_minus == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pair.eps_plus == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));

    const auto numeric = expect_stable(diagonalize_numeric({1.0, 2.0, 0.75, 0.0, 0.0}));
    CHECK(numeric.eps_plus == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("invalid forms are rejected") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(excitation_energies({1.0, nan, 0.0, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(excitation_energies({0.0, 1.0, 0.0, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(diagonalize_numeric({1.0, 1.0, 0.0, nan, 0.0}), std::domain_error);
}

TEST_CASE("closed form and dynamical matrix agree on a random sweep") {
    std::mt19937 rng(951623);
    std::uniform_real_distribution<double> freq(0.1, 10.0);
    std::uniform_real_distribution<double> squeeze(-1.0, 5.0);
    std::uniform_real_distribution<double> couple(0.0, 5.0);

    int stable_count = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const QuadraticForm q{freq(rng), freq(rng), squeeze(rng), couple(rng), 0.0};
        const auto closed = excitation_energies(q);
        const auto numeric = diagonalize_numeric(q);
        REQUIRE(is_stable(closed) == is_stable(numeric));
        if (!is_stable(closed)) continue;
        ++stable_count;
        const auto c = std::get<ExcitationPair>(closed);
        const auto n = std::get<ExcitationPair>(numeric);
        CHECK(close_rel(c.eps_minus, n.eps_minus, 1e-10));
        CHECK(close_rel(c.eps_plus, n.eps_plus, 1e-10));
    }
    CHECK(stable_count > 1000);  // the sweep must actually exercise the stable region
}

TEST_CASE("stability boundary on resonance with s = 0 is 4r^2 = omega*omega_b") {
    for (double w : {0.5, 1.0, 2.0}) {
        for (double wb : {0.5, 1.0, 3.0}) {
            const double r_star = 0.5 * std::sqrt(w * wb);
            for (double shift : {-0.02, 0.02}) {
                const double r = r_star + shift;
                const auto out = excitation_energies({w, wb, 0.0, r, 0.0});
                CHECK(is_stable(out) == (shift < 0.0));
            }
        }
    }
}

TEST_CASE("excitation energies vary continuously along stable rays") {
    std::mt19937 rng(77001);
    std::uniform_real_distribution<double> freq(0.5, 3.0);
    std::uniform_real_distribution<double> squeeze(0.0, 1.0);

    for (int ray = 0; ray < 20; ++ray) {
        const QuadraticForm q0{freq(rng), freq(rng), squeeze(rng), 0.0, 0.0};
        // couple up to 60% of the critical r so the ray stays well inside stability
        const double r_max = 0.6 * 0.5 * std::sqrt(q0.omega_a * q0.omega_b_tilde *
                                                    (1.0 + 4.0 * q0.s / q0.omega_b_tilde));
        const int samples = 256;
        double prev_minus = 0.0, prev_plus = 0.0;
        for (int i = 0; i <= samples; ++i) {
            QuadraticForm q = q0;
            q.r = r_max * static_cast<double>(i) / samples;
            const auto pair = expect_stable(excitation_energies(q));
            if (i > 0) {
                CHECK(std::abs(pair.eps_minus - prev_minus) < 0.05);
                CHECK(std::abs(pair.eps_plus - prev_plus) < 0.05);
            }
            prev_minus = pair.eps_minus;
            prev_plus = pair.eps_plus;
        }
    }
}
