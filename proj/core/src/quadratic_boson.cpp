#include "gdicke/quadratic_boson.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace gdicke {

namespace {

void check_form(const QuadraticForm& q) {
    if (!std::isfinite(q.omega_a) || !std::isfinite(q.omega_b_tilde) || !std::isfinite(q.s) ||
        !std::isfinite(q.r) || !std::isfinite(q.e_g))
        throw std::domain_error("quadratic form has non-finite coefficients");
    if (!(q.omega_a > 0.0))
        throw std::domain_error("a-mode frequency must be positive");
}

// Roundoff allowance for ε₋² at the critical point.
double negative_tolerance(const QuadraticForm& q) {
    return 1e-12 * std::max(q.omega_a * q.omega_a, q.omega_b_tilde * q.omega_b_tilde);
}

}  // namespace

bool is_stable(const ExcitationOutcome& o) {
    return std::holds_alternative<ExcitationPair>(o);
}

double eps_minus_sq(const ExcitationOutcome& o) {
    if (const auto* pair = std::get_if<ExcitationPair>(&o))
        return pair->eps_minus * pair->eps_minus;
    return std::get<Unstable>(o).eps_minus_sq;
}

ExcitationOutcome excitation_energies(const QuadraticForm& q) {
    check_form(q);
    const double w2 = q.omega_a * q.omega_a;
    const double wt = q.omega_b_tilde;
    const double wb2 = wt * wt + 4.0 * wt * q.s;  // squared bare b-mode frequency

    const double arg = (wb2 - w2) * (wb2 - w2) + 16.0 * q.r * q.r * q.omega_a * wt;
    if (arg < 0.0)  // complex-conjugate pair of squared energies
        return Unstable{0.5 * (w2 + wb2)};

    const double root = std::sqrt(arg);
    const double lo = 0.5 * (w2 + wb2 - root);
    const double hi = 0.5 * (w2 + wb2 + root);
    if (lo < -negative_tolerance(q)) return Unstable{lo};
    return ExcitationPair{std::sqrt(std::max(0.0, lo)), std::sqrt(std::max(0.0, hi))};
}

ExcitationOutcome diagonalize_numeric(const QuadraticForm& q) {
    check_form(q);

    // Classical equivalent with x = (a†+a)/√2 etc.:
    //   H = ½ pᵀT p + ½ xᵀV x,  T = diag(ω, ω̃),  V = [[ω, 2r], [2r, ω̃+4s]],
    // so ẋ = T p, ṗ = −V x and the 4×4 dynamical matrix has eigenvalues ±iε±.
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 2) = q.omega_a;
    m(1, 3) = q.omega_b_tilde;
    m(2, 0) = -q.omega_a;
    m(2, 1) = -2.0 * q.r;
    m(3, 0) = -2.0 * q.r;
    m(3, 1) = -(q.omega_b_tilde + 4.0 * q.s);

    const Eigen::EigenSolver<Eigen::Matrix4d> es(m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dynamical-matrix eigensolver failed");

    // For μ = eigenvalue, −Re(μ²) = Im(μ)² − Re(μ)² equals ε² on stable modes
    // and −σ² on exponentially growing ones; Im(μ²) ≠ 0 flags a complex quartet.
    std::array<double, 4> eps_sq{};
    double mix = 0.0;
    double scale_sq = 0.0;
    for (int k = 0; k < 4; ++k) {
        const std::complex<double> mu = es.eigenvalues()(k);
        eps_sq[k] = mu.imag() * mu.imag() - mu.real() * mu.real();
        mix = std::max(mix, std::abs(2.0 * mu.real() * mu.imag()));
        scale_sq = std::max(scale_sq, std::norm(mu));
    }
    std::sort(eps_sq.begin(), eps_sq.end());
    const double lo = 0.5 * (eps_sq[0] + eps_sq[1]);
    const double hi = 0.5 * (eps_sq[2] + eps_sq[3]);

    if (mix > 1e-9 * std::max(scale_sq, 1e-300)) return Unstable{lo};
    if (lo < -negative_tolerance(q)) return Unstable{lo};
    return ExcitationPair{std::sqrt(std::max(0.0, lo)), std::sqrt(std::max(0.0, hi))};
}

}  // namespace gdicke
