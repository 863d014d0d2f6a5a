// quadratic_boson.hpp — normal-mode analysis of the effective two-mode
// quadratic Hamiltonian
//   H = ω a†a + ω̃ b†b + s (b†+b)² + r (a†+a)(b†+b) + j E_G.

#pragma once

#include <variant>

namespace gdicke {

struct QuadraticForm {
    double omega_a;        // a-mode frequency, > 0
    double omega_b_tilde;  // b-mode frequency ω̃ (may be negative on rejected branches)
    double s;              // (b†+b)² coefficient
    double r;              // (a†+a)(b†+b) coefficient
    double e_g;            // scaled ground-state energy E_G (per j)
};

struct ExcitationPair {
    double eps_minus;  // lower excitation energy, >= 0
    double eps_plus;   // upper excitation energy, >= eps_minus
};

// The lower squared normal-mode frequency went negative (or the pair turned
// complex): the candidate ground state is not a minimum. Carries ε₋² so
// callers can apply the imaginary-eigenenergy validity criterion.
struct Unstable {
    double eps_minus_sq;
};

using ExcitationOutcome = std::variant<ExcitationPair, Unstable>;

bool is_stable(const ExcitationOutcome& o);
double eps_minus_sq(const ExcitationOutcome& o);

// Closed form:
//   ε±² = ½[ ω² + ω̃² + 4ω̃s ± sqrt((ω̃² + 4ω̃s − ω²)² + 16 r² ω ω̃) ].
// A tiny negative ε₋² within 1e-12·max(ω², ω̃²) is roundoff at the critical
// point and is clamped to a stable ε₋ = 0.
ExcitationOutcome excitation_energies(const QuadraticForm& q);

// Independent numeric route: eigenvalues of the 4×4 dynamical matrix of the
// classical-equivalent quadratic form in position-momentum variables.
// Agrees with excitation_energies to 1e-10 relative on stable input.
ExcitationOutcome diagonalize_numeric(const QuadraticForm& q);

}  // namespace gdicke
