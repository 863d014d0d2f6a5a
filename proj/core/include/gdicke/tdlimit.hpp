// tdlimit.hpp — thermodynamic-limit solver: displacement equation, effective
// quadratic form, branch selection, spectra and ground-state observables.
//
// Everything is phrased in scaled, j-free variables:
//   x_b = sqrt(β/j) (signed), b = β/j = x_b², x_a = sqrt(α/j) (signed),
// so the large-j limit is exact and no spin length appears at runtime.

#pragma once

#include <stdexcept>
#include <vector>

#include "gdicke/model.hpp"
#include "gdicke/quadratic_boson.hpp"

namespace gdicke {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BranchTag { normal, displaced_plus, displaced_minus, unique };
enum class Validity { physical, unstable, spurious };

const char* to_string(BranchTag t);
const char* to_string(Validity v);

struct DisplacementSolution {
    double x_b = 0.0;  // signed sqrt(β/j)
    double x_a = 0.0;  // signed sqrt(α/j); fixed by x_a = (2λ/ω) x_b sqrt((2−b)/2)
    double b = 0.0;    // β/j = x_b², in [0, 2)
    BranchTag tag = BranchTag::unique;
    Validity validity = Validity::physical;
};

// A root of the displacement equation together with its effective quadratic
// form and (attempted) excitation energies, before/after classification.
struct BranchCandidate {
    DisplacementSolution sol;
    QuadraticForm form;
    ExcitationOutcome excitations;
};

struct TdSpectrum {
    double eps_minus = 0.0;
    double eps_plus = 0.0;
    double e_g = 0.0;            // scaled ground-state energy E_G
    double jz_per_j = 0.0;       // atomic inversion <Jz>/j = b − 1
    double photons_per_j = 0.0;  // <a†a>/j = x_a²
    DisplacementSolution solution;
};

struct RootSearchOptions {
    int grid_cells = 2048;      // uniform bracketing grid over (−√2, √2)
    double residual_tol = 1e-12;
    double dedup_tol = 1e-9;
};

// Scaled residual of the displacement equation,
//   F(x_b) = (4λ²/ω)(1−b) x_b − Ω sinθ x_b + Ω cosθ (1−b)/sqrt(2−b),  b = x_b².
// Roots of F are the stationary displacements. Throws std::domain_error for
// b >= 2 (Holstein-Primakoff breakdown).
double displacement_residual(const CanonicalParams& p, double x_b);

/// λ_c = sqrt(ω Ω)/2. Throws std::domain_error unless both arguments are > 0.
double critical_coupling(double omega, double Omega);

// All real roots of the displacement equation with quadratic forms attached
// and validity assigned (physical / unstable / spurious). θ == π/2 is handled
// by its exact root set {0} ∪ {±sqrt(1−μ) : λ > λ_c}, μ = ωΩ/(4λ²); generic
// bracketing is unreliable near that double root.
std::vector<BranchCandidate> solve_candidates(const CanonicalParams& p,
                                              const RootSearchOptions& opt = {});

/// Classified displacement roots only (no spectra).
std::vector<DisplacementSolution> solve_displacements(const CanonicalParams& p,
                                                      const RootSearchOptions& opt = {});

// Effective quadratic-form coefficients at a displacement solution, in scaled
// variables (k/j = 2−b):
//   ω̃ = Ω sinθ + 2λ x_a x_b / sqrt(2(2−b)) + (Ω cosθ/2) x_b/sqrt(2−b)
//   s  = λ x_a x_b (4−b) / (2√2 (2−b)^{3/2}) + (Ω cosθ/4)(x_b/sqrt(2−b))(1 + b/(2(2−b)))
//   r  = √2 λ (1−b)/sqrt(2−b)
//   E_G = Ω sinθ (b−1) − (2λ²/ω) b(2−b) − Ω cosθ x_b sqrt(2−b)
// where sqrt(β) carries the sign of x_b throughout.
QuadraticForm quadratic_form(const CanonicalParams& p, const DisplacementSolution& sol);

// Assign validity: unstable if the excitation energies came out imaginary,
// spurious if the scaled ground-state energy exceeds the candidate minimum by
// more than 1e-10·max(1, |E_G_min|); remaining candidates are physical.
void classify_candidates(std::vector<BranchCandidate>& candidates);

// Full pipeline; returns the physical branches only. One branch for θ ≠ π/2,
// one below λ_c at θ = π/2 and two degenerate displaced branches above.
// Throws SolverError when no physical branch survives.
std::vector<TdSpectrum> solve(const CanonicalParams& p, const RootSearchOptions& opt = {});

// Closed forms for the orthogonal-coupling (Dicke, θ = π/2) limit; oracle for
// solve(). Normal phase for λ <= λ_c, two displaced branches for λ > λ_c.
std::vector<TdSpectrum> dicke_closed_form(const CanonicalParams& p);

// Closed form for the aligned limit θ = 0: ε₋ = ω, ε₊ = Ω + 4λ²/ω,
// E_G = −(Ω + 2λ²/ω); oracle for solve().
TdSpectrum theta0_closed_form(const CanonicalParams& p);

}  // namespace gdicke
