// sweep.hpp — grid sweeps, transition location and finite-j convergence
// tables behind the command-line front end.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdicke/finite_j.hpp"
#include "gdicke/model.hpp"
#include "gdicke/tdlimit.hpp"

namespace gdicke {

enum class SweepAxis { lambda, theta };
enum class OutputSet { displacements, excitations, observables, all };

struct SweepSpec {
    SweepAxis axis = SweepAxis::lambda;
    double lo = 0.0;
    double hi = 1.0;
    int count = 101;
    CanonicalParams fixed;  // swept field ignored
    OutputSet outputs = OutputSet::all;
    int threads = 0;  // 0 = hardware concurrency
};

// One grid point × one physical branch.
struct SweepRow {
    double theta;
    double lambda;
    BranchTag branch;
    double x_a, x_b;
    double eps_minus, eps_plus;
    double e_g;
    double jz_per_j, photons_per_j;
};

// Deterministic row-major sweep; grid points are dispatched to a worker pool
// and gathered in grid order. Every row is re-validated (|F(x_b)| < 1e-12 and
// jz_per_j = x_b² − 1) before being emitted. A solver failure aborts with the
// offending grid point identified.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Physical branches of a single parameter point, as sweep rows.
std::vector<SweepRow> run_solve(const CanonicalParams& p);

// Coupling at which the lower excitation energy vanishes, if any. Bisects the
// onset of the displaced solution pair at θ = π/2 until ε₋ < 1e-6 there;
// scans up to 10 λ_c otherwise and reports nullopt (the gap closes only for
// orthogonal coupling).
std::optional<double> locate_transition(double omega, double Omega, double theta);

struct EdSpec {
    CanonicalParams params;
    std::vector<double> j_values;
    std::optional<int> n_max;  // nullopt = auto_cutoff heuristic per j
    FiniteJOptions options;
};

struct EdRow {
    double j;
    int n_max;
    double e0_per_j;
    double gs_jz_per_j;
    double gs_photons_per_j;
    double gs_parity;
    double parity_comm_norm;
    bool converged;
};

struct EdTable {
    std::vector<EdRow> rows;
    TdSpectrum td_reference;  // thermodynamic-limit row appended on output
};

EdTable run_ed(const EdSpec& spec);

// CSV rendering: '#'-prefixed header lines carrying the fixed parameters and
// artifact version, then a column-name line, then one row per record.
std::string sweep_csv(const std::vector<SweepRow>& rows, const SweepSpec& spec);
std::string solve_csv(const std::vector<SweepRow>& rows, const CanonicalParams& p);
std::string ed_csv(const EdTable& table, const EdSpec& spec);

std::vector<std::string> sweep_columns(OutputSet outputs);

}  // namespace gdicke
