#include "gdicke/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gdicke {

namespace {

double norm3(const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::array<double, 3> cross3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

bool finite3(const std::array<double, 3>& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

}  // namespace

void validate(const CanonicalParams& p) {
    if (!std::isfinite(p.omega) || !std::isfinite(p.Omega) || !std::isfinite(p.theta) ||
        !std::isfinite(p.lambda))
        throw std::invalid_argument("canonical parameters must be finite");
    if (!(p.omega > 0.0))
        throw std::invalid_argument("boson frequency omega must be positive");
    if (p.Omega < 0.0)
        throw std::invalid_argument("spin frequency Omega must be non-negative");
    if (p.lambda < 0.0)
        throw std::invalid_argument("coupling lambda must be non-negative");
    if (p.theta < 0.0 || p.theta > std::numbers::pi)
        throw std::invalid_argument("coupling angle theta must lie in [0, pi]");
}

double snap_theta(double theta) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (std::abs(theta - half_pi) < 1e-12) return half_pi;
    return theta;
}

CanonicalParams canonicalize(const GeneralCoupling& g) {
    if (!std::isfinite(g.omega) || !finite3(g.omega_vec) || !finite3(g.lambda_vec))
        throw std::invalid_argument("general coupling must be finite");
    if (!(g.omega > 0.0))
        throw std::invalid_argument("boson frequency omega must be positive");

    const double lambda = norm3(g.lambda_vec);
    const double Omega = norm3(g.omega_vec);
    if (lambda == 0.0 && Omega == 0.0)
        throw std::invalid_argument("degenerate model: both coupling vectors vanish");

    // Angle convention when either vector vanishes; physically irrelevant.
    double theta = std::numbers::pi / 2.0;
    if (lambda > 0.0 && Omega > 0.0) {
        const double sin_part = norm3(cross3(g.omega_vec, g.lambda_vec));
        theta = std::atan2(sin_part, dot3(g.omega_vec, g.lambda_vec));  // in [0, pi]
    }

    CanonicalParams p{g.omega, Omega, snap_theta(theta), lambda};
    validate(p);
    return p;
}

GeneralCoupling to_general(const CanonicalParams& p) {
    validate(p);
    return GeneralCoupling{
        p.omega,
        {p.Omega * std::cos(p.theta), 0.0, p.Omega * std::sin(p.theta)},
        {p.lambda, 0.0, 0.0},
    };
}

}  // namespace gdicke
