// finite_j.hpp — exact diagonalization of H_θ at finite spin length j in a
// truncated Fock ⊗ spin product basis |n⟩⊗|j,m⟩. Serves as the independent
// oracle for the thermodynamic-limit solver and carries the parity analysis.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <vector>

#include "gdicke/model.hpp"

namespace gdicke {

struct BasisSpec {
    double j;    // spin length, half-integer > 0
    int n_max;   // Fock cutoff, >= 0
};

void validate(const BasisSpec& basis);
std::size_t basis_dimension(const BasisSpec& basis);  // (n_max+1)(2j+1)

enum class EigenMethod {
    automatic,  // dense up to dense_cutoff_dim, Lanczos beyond
    dense,      // full spectrum, dense symmetric solver
    lanczos,    // lowest eigenpair only, sparse matrix
};

struct FiniteJOptions {
    EigenMethod method = EigenMethod::automatic;
    std::size_t entry_limit = 1'000'000;  // dense-matrix entry guard
    int dense_cutoff_dim = 1000;          // matches the entry guard: 1000^2 entries
    bool convergence_check = true;  // re-solve at doubled n_max (Lanczos) for the flag
};

struct FiniteJResult {
    std::vector<double> energies;  // ascending; full spectrum (dense) or lowest one (lanczos)
    double gs_energy_per_j = 0.0;
    double gs_jz_per_j = 0.0;
    double gs_photons_per_j = 0.0;
    double gs_parity = 0.0;              // <Π> in the ground state
    double parity_commutator_norm = 0.0; // ‖[H, Π]‖_F in the truncated space
    bool converged = false;              // doubling n_max moves E₀/j by < 1e-8
};

// Matrix of ω a†a + Ω(Jx cosθ + Jz sinθ) + (2λ/sqrt(2j))(a†+a)Jx in the
// product basis, index = n(2j+1) + (m+j). Real symmetric by construction.
// Throws std::length_error when dim² exceeds entry_limit.
Eigen::MatrixXd build_hamiltonian(const CanonicalParams& p, const BasisSpec& basis,
                                  std::size_t entry_limit = 1'000'000);

// Same operator as a sparse matrix (Fock-tridiagonal × spin-tridiagonal).
Eigen::SparseMatrix<double> build_sparse_hamiltonian(const CanonicalParams& p,
                                                     const BasisSpec& basis);

// General (unrotated) coupling; complex Hermitian because of Jy.
// Used to check unitary equivalence of canonicalize().
Eigen::MatrixXcd build_general_hamiltonian(const GeneralCoupling& g, const BasisSpec& basis,
                                           std::size_t entry_limit = 1'000'000);

// Parity Π = exp(iπ N̂), N̂ = a†a + Jz + j, diagonal with entries (−1)^(n+m+j).
Eigen::VectorXd parity_diagonal(const BasisSpec& basis);

// Dense full-spectrum diagonalization with ground-state observables and the
// parity data. The convergence flag is left false; solve_finite sets it.
FiniteJResult diagonalize(const Eigen::MatrixXd& h, const BasisSpec& basis);

// Build + diagonalize + cutoff-convergence check per the options.
FiniteJResult solve_finite(const CanonicalParams& p, const BasisSpec& basis,
                           const FiniteJOptions& opts = {});

/// (‖[H,Π]‖_F, ground-state <Π>).
std::pair<double, double> parity_check(const CanonicalParams& p, const BasisSpec& basis);

// Analytic spectrum at θ = 0: {ω n + Ω m − 2λ²m²/(jω)}, n <= n_max,
// m = −j..j, ascending. Cutoff caveat: the displaced-oscillator identity is
// exact level-by-level, so only the lowest levels of a truncated
// diagonalization are comparable. Throws std::domain_error unless θ == 0.
std::vector<double> theta0_spectrum(const CanonicalParams& p, const BasisSpec& basis);

// Fock-cutoff heuristic n_max = max(40, ceil(8 α_est) + 20) with
// α_est = j · <a†a>/j from the thermodynamic-limit solution.
int auto_cutoff(const CanonicalParams& p, double j);

// Lowest eigenpair by Lanczos with full reorthogonalization.
struct LanczosResult {
    double value = 0.0;
    Eigen::VectorXd vector;
    int iterations = 0;
    bool converged = false;
};
LanczosResult lowest_eigenpair(const Eigen::SparseMatrix<double>& h,
                               int max_iterations = 500, double tol = 1e-12);

}  // namespace gdicke
