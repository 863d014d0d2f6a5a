#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gdicke/tdlimit.hpp"

using namespace gdicke;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double half_pi = pi / 2.0;

const BranchCandidate* find_candidate(const std::vector<BranchCandidate>& cands, double x_b,
                                      double tol = 1e-6) {
    for (const auto& c : cands)
        if (std::abs(c.sol.x_b - x_b) < tol) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("displacement residual vanishes on known roots") {
    // cos(pi/2) is ~6e-17 in floating point, so "zero" means machine level
    CHECK(std::abs(displacement_residual({1.0, 1.0, half_pi, 0.3}, 0.0)) < 1e-15);
    CHECK(std::abs(displacement_residual({2.0, 0.7, half_pi, 1.1}, 0.0)) < 1e-15);
    CHECK(displacement_residual({1.0, 1.0, 0.0, 0.4}, 1.0) == 0.0);
    CHECK(displacement_residual({0.5, 2.0, 0.0, 0.9}, 1.0) == 0.0);

    // at lambda = 0 the root is b = 1 - sin(theta)
    const double xb = std::sqrt(1.0 - std::sin(pi / 4.0));
    CHECK(std::abs(displacement_residual({1.0, 1.0, pi / 4.0, 0.0}, xb)) < 1e-14);
}

TEST_CASE("displacement residual rejects the HP breakdown region") {
    CHECK_THROWS_AS(displacement_residual({1.0, 1.0, 0.3, 0.1}, 1.5), std::domain_error);
    CHECK_THROWS_AS(displacement_residual({1.0, 1.0, 0.3, 0.1}, -std::sqrt(2.0)),
                    std::domain_error);
}

TEST_CASE("critical coupling") {
    CHECK(critical_coupling(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(critical_coupling(2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(critical_coupling(0.5, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(critical_coupling(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(critical_coupling(1.0, -1.0), std::domain_error);
}

TEST_CASE("orthogonal coupling below lambda_c keeps only the undisplaced root") {
    const CanonicalParams p{1.0, 1.0, half_pi, 0.25};
    const auto sols = solve_displacements(p);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].x_b == 0.0);
    CHECK(sols[0].tag == BranchTag::normal);
    CHECK(sols[0].validity == Validity::physical);
}

TEST_CASE("orthogonal coupling above lambda_c: displaced pair, undisplaced unstable") {
    const CanonicalParams p{1.0, 1.0, half_pi, 0.7};
    const auto cands = solve_candidates(p);
    REQUIRE(cands.size() == 3);

    const double mu = p.omega * p.Omega / (4.0 * p.lambda * p.lambda);
    const double xb = std::sqrt(1.0 - mu);
    CHECK(xb == doctest::Approx(0.69986).epsilon(1e-4));

    const auto* normal = find_candidate(cands, 0.0);
    REQUIRE(normal != nullptr);
    CHECK(normal->sol.validity == Validity::unstable);
    CHECK(eps_minus_sq(normal->excitations) < 0.0);

    for (double sign : {+1.0, -1.0}) {
        const auto* disp = find_candidate(cands, sign * xb);
        REQUIRE(disp != nullptr);
        CHECK(disp->sol.validity == Validity::physical);
        CHECK(disp->sol.x_a == doctest::Approx(sign * 0.85140).epsilon(1e-4));
        // alpha relation with matching signs
        const double xa_expected = (2.0 * p.lambda / p.omega) * disp->sol.x_b *
                                   std::sqrt(0.5 * (2.0 - disp->sol.b));
        CHECK(disp->sol.x_a == doctest::Approx(xa_expected).epsilon(1e-14));
    }
}

TEST_CASE("aligned coupling: x_b = -1 is spurious, +1 physical") {
    for (double lambda : {0.1, 0.3, 0.5, 0.9}) {
        const CanonicalParams p{1.0, 1.0, 0.0, lambda};
        const auto cands = solve_candidates(p);
        const auto* plus = find_candidate(cands, 1.0);
        const auto* minus = find_candidate(cands, -1.0);
        REQUIRE(plus != nullptr);
        REQUIRE(minus != nullptr);
        CHECK(plus->sol.validity == Validity::physical);
        CHECK(minus->sol.validity != Validity::physical);
        if (is_stable(minus->excitations)) CHECK(minus->sol.validity == Validity::spurious);
        CHECK(minus->form.e_g > plus->form.e_g);
    }
}

TEST_CASE("aligned coupling at lambda = 0.3 matches the spec classification") {
    const CanonicalParams p{1.0, 1.0, 0.0, 0.3};
    const auto cands = solve_candidates(p);
    const auto* minus = find_candidate(cands, -1.0);
    REQUIRE(minus != nullptr);
    CHECK(minus->sol.validity == Validity::spurious);
    CHECK(minus->form.e_g == doctest::Approx(1.0 - 2.0 * 0.09).epsilon(1e-12));
}

TEST_CASE("quadratic form coefficients at zero coupling") {
    for (double theta : {0.1, 0.5, 1.0, 2.0, 2.8}) {
        const double Omega = 1.3;
        const CanonicalParams p{0.8, Omega, theta, 0.0};
        const auto cands = solve_candidates(p);

        const double st = std::sin(theta);
        const double xb_expected = (std::cos(theta) >= 0.0 ? 1.0 : -1.0) * std::sqrt(1.0 - st);
        const auto* c = find_candidate(cands, xb_expected, 1e-8);
        REQUIRE(c != nullptr);
        CHECK(c->sol.validity == Validity::physical);

        CHECK(c->form.omega_b_tilde == doctest::Approx(Omega * (1.0 + st) / 2.0).epsilon(1e-12));
        CHECK(c->form.s ==
              doctest::Approx(Omega * (1.0 - st) * (3.0 + st) / (8.0 * (1.0 + st))).epsilon(1e-11));
        CHECK(c->form.r == 0.0);
        const double b_mode =
            std::sqrt(c->form.omega_b_tilde * (c->form.omega_b_tilde + 4.0 * c->form.s));
        CHECK(b_mode == doctest::Approx(Omega).epsilon(1e-12));
        CHECK(c->form.e_g == doctest::Approx(-Omega).epsilon(1e-12));
    }
}

TEST_CASE("quadratic form at the undisplaced Dicke root is the bilinear model") {
    const CanonicalParams p{1.0, 1.0, half_pi, 0.25};
    const auto cands = solve_candidates(p);
    const auto* c = find_candidate(cands, 0.0);
    REQUIRE(c != nullptr);
    CHECK(c->form.omega_b_tilde == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c->form.s == 0.0);
    CHECK(c->form.r == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(c->form.e_g == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("quadratic form on the displaced Dicke branch") {
    const CanonicalParams p{1.0, 1.0, half_pi, 0.7};
    const auto cands = solve_candidates(p);
    const double mu = 1.0 / 1.96;
    const auto* c = find_candidate(cands, std::sqrt(1.0 - mu));
    REQUIRE(c != nullptr);
    // omega_b reduces to Omega(1+mu)/(2 mu) on this branch
    CHECK(c->form.omega_b_tilde == doctest::Approx((1.0 + mu) / (2.0 * mu)).epsilon(1e-12));
}

TEST_CASE("aligned coupling decouples the modes") {
    const CanonicalParams p{1.0, 1.0, 0.0, 0.5};
    const auto cands = solve_candidates(p);
    const auto* c = find_candidate(cands, 1.0);
    REQUIRE(c != nullptr);
    CHECK(std::abs(c->form.r) < 1e-14);
    CHECK(c->form.omega_b_tilde ==
          doctest::Approx(0.5 * p.Omega + 2.0 * p.lambda * p.lambda / p.omega).epsilon(1e-13));
    CHECK(c->form.s == doctest::Approx(0.75 * c->form.omega_b_tilde).epsilon(1e-13));
    const double b_mode = std::sqrt(c->form.omega_b_tilde * (c->form.omega_b_tilde + 4.0 * c->form.s));
    CHECK(b_mode == doctest::Approx(p.Omega + 4.0 * p.lambda * p.lambda / p.omega).epsilon(1e-13));
}

TEST_CASE("solve: superradiant Dicke point") {
    const CanonicalParams p{1.0, 1.0, half_pi, 0.7};
    const auto branches = solve(p);
    REQUIRE(branches.size() == 2);
    for (const auto& td : branches) {
        CHECK(td.eps_minus == doctest::Approx(0.82666).epsilon(5e-5));
        CHECK(td.eps_plus == doctest::Approx(2.03920).epsilon(5e-5));
        CHECK(td.e_g == doctest::Approx(-1.23510204081632653).epsilon(1e-12));
        CHECK(td.jz_per_j == doctest::Approx(-0.51020408163265306).epsilon(1e-12));
        CHECK(td.photons_per_j == doctest::Approx(0.72489795918367347).epsilon(1e-12));
    }
    CHECK(branches[0].solution.x_b == doctest::Approx(-branches[1].solution.x_b).epsilon(1e-15));
    CHECK(std::abs(branches[0].e_g - branches[1].e_g) < 1e-12);
}

TEST_CASE("solve: aligned closed-form point") {
    const auto branches = solve(CanonicalParams{1.0, 1.0, 0.0, 0.5});
    REQUIRE(branches.size() == 1);
    const auto& td = branches[0];
    CHECK(td.eps_minus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(td.eps_plus == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(td.e_g == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(td.jz_per_j == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(td.photons_per_j == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("solve: free model at lambda = 0") {
    for (double theta : {0.0, 0.4, half_pi, 2.4, pi}) {
        const CanonicalParams p{1.0, 1.3, theta, 0.0};
        const auto branches = solve(p);
        REQUIRE(branches.size() == 1);
        const auto& td = branches[0];
        const double lo = std::min(p.omega, p.Omega);
        const double hi = std::max(p.omega, p.Omega);
        CHECK(td.eps_minus == doctest::Approx(lo).epsilon(1e-11));
        CHECK(td.eps_plus == doctest::Approx(hi).epsilon(1e-11));
        CHECK(td.e_g == doctest::Approx(-p.Omega).epsilon(1e-11));
        CHECK(td.jz_per_j == doctest::Approx(-std::sin(theta)).epsilon(1e-11));
        CHECK(td.photons_per_j == 0.0);
    }
}

TEST_CASE("solve: degenerate model rejected") {
    CHECK_THROWS_AS(solve(CanonicalParams{1.0, 0.0, 0.3, 0.0}), std::invalid_argument);
}

TEST_CASE("exactly one physical branch away from orthogonal coupling") {
    for (int it = 0; it <= 8; ++it) {
        const double theta = pi * it / 8.0;
        if (theta == half_pi) continue;
        for (int il = 0; il <= 15; ++il) {
            const double lambda = 1.5 * il / 15.0;
            const auto branches = solve(CanonicalParams{1.0, 1.0, theta, lambda});
            CHECK(branches.size() == 1);
            const double xb = branches[0].solution.x_b;
            CHECK(xb * std::cos(theta) > 0.0);  // sign rule
            if (lambda > 0.0) CHECK(branches[0].solution.x_a * std::cos(theta) > 0.0);
        }
    }
}

TEST_CASE("solutions satisfy the residual and domain invariants") {
    std::mt19937 rng(5150123);
    std::uniform_real_distribution<double> angle(0.0, pi);
    std::uniform_real_distribution<double> freq(0.3, 3.0);
    std::uniform_real_distribution<double> coupling(0.0, 1.5);

    for (int trial = 0; trial < 300; ++trial) {
        const CanonicalParams p{freq(rng), freq(rng), angle(rng), coupling(rng)};
        for (const auto& sol : solve_displacements(p)) {
            CHECK(sol.b >= 0.0);
            CHECK(sol.b < 2.0);
            const double resid = std::abs(displacement_residual(p, sol.x_b));
            if (sol.validity == Validity::physical || sol.b < 1.9) {
                CHECK(resid < 1e-12);
            } else {
                // rejected roots in the 1/sqrt(2-b) singular region: the
                // conditioning floor of double precision is above 1e-12
                CHECK(resid < 1e-8);
            }
        }
    }
}

TEST_CASE("dicke closed form matches the general pipeline") {
    const CanonicalParams base{1.0, 1.0, half_pi, 0.0};
    for (int i = 0; i < 40; ++i) {
        CanonicalParams p = base;
        p.lambda = 1.0 * i / 39.0;
        const auto general = solve(p);
        const auto closed = dicke_closed_form(p);
        REQUIRE(general.size() == closed.size());
        for (std::size_t k = 0; k < closed.size(); ++k) {
            CHECK(general[k].eps_minus == doctest::Approx(closed[k].eps_minus).epsilon(1e-10));
            CHECK(general[k].eps_plus == doctest::Approx(closed[k].eps_plus).epsilon(1e-10));
            CHECK(general[k].e_g == doctest::Approx(closed[k].e_g).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(dicke_closed_form(CanonicalParams{1.0, 1.0, 0.3, 0.1}), std::domain_error);
}

TEST_CASE("dicke closed form is continuous at the critical coupling") {
    const auto below = dicke_closed_form(CanonicalParams{1.0, 1.0, half_pi, 0.5});
    REQUIRE(below.size() == 1);
    CHECK(below[0].eps_minus <= 1e-7);
    CHECK(below[0].e_g == doctest::Approx(-1.0).epsilon(1e-12));

    const auto above = dicke_closed_form(CanonicalParams{1.0, 1.0, half_pi, 0.5 + 1e-9});
    REQUIRE(above.size() == 2);
    CHECK(above[0].e_g == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("theta0 closed form matches the general pipeline") {
    for (int i = 0; i < 40; ++i) {
        const CanonicalParams p{1.0, 1.0, 0.0, 1.0 * i / 39.0};
        const auto general = solve(p);
        REQUIRE(general.size() == 1);
        const auto closed = theta0_closed_form(p);
        CHECK(general[0].eps_minus == doctest::Approx(closed.eps_minus).epsilon(1e-10));
        CHECK(general[0].eps_plus == doctest::Approx(closed.eps_plus).epsilon(1e-10));
        CHECK(general[0].e_g == doctest::Approx(closed.e_g).epsilon(1e-10));
        CHECK(general[0].photons_per_j == doctest::Approx(closed.photons_per_j).epsilon(1e-10));
    }
    CHECK_THROWS_AS(theta0_closed_form(CanonicalParams{1.0, 1.0, 0.2, 0.1}), std::domain_error);
}

TEST_CASE("gap stays open away from the critical point") {
    for (int it = 0; it <= 8; ++it) {
        const double theta = pi * it / 8.0;
        for (int il = 0; il <= 100; ++il) {
            const double lambda = il / 100.0;
            if (theta == half_pi && std::abs(lambda - 0.5) < 1e-3) continue;
            const auto branches = solve(CanonicalParams{1.0, 1.0, theta, lambda});
            for (const auto& td : branches) CHECK(td.eps_minus > 1e-6);
        }
    }
    const auto critical = solve(CanonicalParams{1.0, 1.0, half_pi, 0.5});
    CHECK(critical[0].eps_minus < 1e-5);
}

TEST_CASE("ground-state energy is once-differentiable across the transition") {
    // E_G' is continuous at lambda_c (it is E_G'' that jumps by -16)
    auto eg = [](double lam) { return solve(CanonicalParams{1.0, 1.0, half_pi, lam}).front().e_g; };
    const double h = 1e-4;
    const double slope_below = (eg(0.5 - h) - eg(0.5 - 3.0 * h)) / (2.0 * h);
    const double slope_above = (eg(0.5 + 3.0 * h) - eg(0.5 + h)) / (2.0 * h);
    CHECK(std::abs(slope_below) < 1e-12);
    CHECK(std::abs(slope_above - slope_below) < 0.01);
}

TEST_CASE("mirror symmetry: theta -> pi - theta flips the displacement sign") {
    for (double theta : {0.3, 0.9, 1.3}) {
        for (double lambda : {0.2, 0.8}) {
            const auto a = solve(CanonicalParams{1.0, 1.0, theta, lambda});
            const auto b = solve(CanonicalParams{1.0, 1.0, pi - theta, lambda});
            REQUIRE(a.size() == 1);
            REQUIRE(b.size() == 1);
            CHECK(a[0].solution.x_b == doctest::Approx(-b[0].solution.x_b).epsilon(1e-9));
            CHECK(a[0].e_g == doctest::Approx(b[0].e_g).epsilon(1e-10));
            CHECK(a[0].eps_minus == doctest::Approx(b[0].eps_minus).epsilon(1e-9));
        }
    }
}
