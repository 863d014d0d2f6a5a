// model.hpp — Hamiltonian family for a collective spin j coupled to one boson mode,
// and its reduction to the canonical four-parameter form.

#pragma once

#include <array>

namespace gdicke {

// General real-coupling model
//   H = omega a†a + Omega_vec·J + (2/sqrt(2j)) (a† + a) lambda_vec·J
// with both vectors real and three-dimensional.
struct GeneralCoupling {
    double omega = 1.0;                           // boson frequency, > 0
    std::array<double, 3> omega_vec{0.0, 0.0, 1.0};
    std::array<double, 3> lambda_vec{0.0, 0.0, 0.0};
};

// Canonical form after rotating lambda_vec onto x and Omega_vec into the x-z plane:
//   H = omega a†a + Omega (Jx cos θ + Jz sin θ) + (2λ/sqrt(2j)) (a† + a) Jx.
// θ is the angle between the static and fluctuating coupling vectors, folded
// into [0, π]; θ = π/2 is the Dicke model, θ = 0 the fully aligned (dephasing-like) one.
struct CanonicalParams {
    double omega = 1.0;   // boson frequency, > 0
    double Omega = 1.0;   // spin frequency magnitude, >= 0
    double theta = 0.0;   // coupling angle, in [0, π]
    double lambda = 0.0;  // coupling strength, >= 0
};

/// Throws std::invalid_argument on invalid parameter values.
void validate(const CanonicalParams& p);

// Snap θ to exact π/2 when within 1e-12, so the displacement solver's
// orthogonal-coupling special case engages on swept grids.
double snap_theta(double theta);

// Reduce a general coupling to canonical parameters. λ = |lambda_vec|,
// Omega = |omega_vec|, θ = angle(omega_vec, lambda_vec). When either vector
// vanishes the angle is undefined and the convention θ = π/2 is used;
// downstream solvers must not depend on it. Throws std::invalid_argument when
// both vectors vanish (no spin dynamics left to fix the rotation).
CanonicalParams canonicalize(const GeneralCoupling& g);

// Embed canonical parameters back as a GeneralCoupling (lambda_vec on x,
// omega_vec in the x-z plane). canonicalize(to_general(p)) == p up to roundoff.
GeneralCoupling to_general(const CanonicalParams& p);

}  // namespace gdicke
