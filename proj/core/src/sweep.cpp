#include "gdicke/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "gdicke/version.hpp"

namespace gdicke {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double grid_point(double lo, double hi, int count, int i) {
    if (i == count - 1) return hi;  // exact endpoint
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

CanonicalParams point_params(const SweepSpec& spec, int i) {
    CanonicalParams p = spec.fixed;
    const double v = grid_point(spec.lo, spec.hi, spec.count, i);
    if (spec.axis == SweepAxis::lambda)
        p.lambda = v;
    else
        p.theta = snap_theta(v);
    p.theta = snap_theta(p.theta);
    return p;
}

void validate_spec(const SweepSpec& spec) {
    if (!(spec.lo < spec.hi)) throw std::invalid_argument("sweep range requires lo < hi");
    if (spec.count < 2) throw std::invalid_argument("sweep requires at least 2 points");
    if (spec.axis == SweepAxis::theta &&
        (spec.lo < 0.0 || spec.hi > std::numbers::pi))
        throw std::invalid_argument("theta sweep must stay inside [0, pi]");
    if (spec.axis == SweepAxis::lambda && spec.lo < 0.0)
        throw std::invalid_argument("lambda sweep must be non-negative");
    CanonicalParams probe = spec.fixed;
    if (spec.axis == SweepAxis::lambda)
        probe.lambda = spec.lo;
    else
        probe.theta = spec.lo;
    validate(probe);
}

std::vector<SweepRow> rows_for_point(const CanonicalParams& p) {
    std::vector<TdSpectrum> branches;
    try {
        branches = solve(p);
    } catch (const SolverError& e) {
        throw SolverError("at theta=" + fmt(p.theta) + " lambda=" + fmt(p.lambda) + ": " +
                          e.what());
    }
    std::vector<SweepRow> rows;
    rows.reserve(branches.size());
    for (const auto& td : branches) {
        // emitted rows re-validate against the displacement equation
        const double resid = displacement_residual(p, td.solution.x_b);
        if (std::abs(resid) > 1e-12)
            throw SolverError("row residual check failed at theta=" + fmt(p.theta) +
                              " lambda=" + fmt(p.lambda) + ": |F|=" + fmt(std::abs(resid)));
        if (std::abs(td.jz_per_j - (td.solution.x_b * td.solution.x_b - 1.0)) > 1e-12)
            throw SolverError("row inversion check failed at theta=" + fmt(p.theta) +
                              " lambda=" + fmt(p.lambda));
        rows.push_back(SweepRow{p.theta, p.lambda, td.solution.tag, td.solution.x_a,
                                td.solution.x_b, td.eps_minus, td.eps_plus, td.e_g, td.jz_per_j,
                                td.photons_per_j});
    }
    return rows;
}

}  // namespace

std::vector<SweepRow> run_solve(const CanonicalParams& p) {
    CanonicalParams q = p;
    q.theta = snap_theta(q.theta);
    validate(q);
    return rows_for_point(q);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    validate_spec(spec);

    std::vector<std::vector<SweepRow>> slots(spec.count);
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    unsigned n_workers = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(spec.count));

    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= spec.count) return;
            try {
                slots[i] = rows_for_point(point_params(spec, i));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    std::vector<SweepRow> rows;
    for (const auto& slot : slots) rows.insert(rows.end(), slot.begin(), slot.end());
    return rows;
}

std::optional<double> locate_transition(double omega, double Omega, double theta) {
    const double lambda_c = critical_coupling(omega, Omega);
    theta = snap_theta(theta);
    CanonicalParams p{omega, Omega, theta, 0.0};
    validate(p);

    const double lambda_max = 10.0 * lambda_c;

    if (theta == kHalfPi) {
        // Bisect the onset of the displaced solution pair; at the midpoint of
        // the final < 1e-13 bracket the surviving gap is below 1e-6.
        auto symmetry_broken = [&](double lam) {
            p.lambda = lam;
            return solve(p).size() >= 2;
        };
        if (!symmetry_broken(lambda_max)) return std::nullopt;
        double lo = 0.0, hi = lambda_max;
        while (hi - lo > 1e-13) {
            const double mid = 0.5 * (lo + hi);
            (symmetry_broken(mid) ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    }

    // Away from orthogonal coupling the gap never closes; scan to confirm.
    const int n = 1024;
    for (int i = 1; i <= n; ++i) {
        p.lambda = lambda_max * static_cast<double>(i) / n;
        double gap = std::numeric_limits<double>::infinity();
        for (const auto& td : solve(p)) gap = std::min(gap, td.eps_minus);
        if (gap < 1e-6) return p.lambda;
    }
    return std::nullopt;
}

EdTable run_ed(const EdSpec& spec) {
    CanonicalParams p = spec.params;
    p.theta = snap_theta(p.theta);
    validate(p);
    if (spec.j_values.empty()) throw std::invalid_argument("ed requires at least one j");

    EdTable table;
    table.td_reference = solve(p).front();

    for (double j : spec.j_values) {
        const int n_max = spec.n_max ? *spec.n_max : auto_cutoff(p, j);
        const BasisSpec basis{j, n_max};
        const auto res = solve_finite(p, basis, spec.options);
        table.rows.push_back(EdRow{j, n_max, res.gs_energy_per_j, res.gs_jz_per_j,
                                   res.gs_photons_per_j, res.gs_parity,
                                   res.parity_commutator_norm, res.converged});
    }
    return table;
}

std::vector<std::string> sweep_columns(OutputSet outputs) {
    std::vector<std::string> cols{"theta", "lambda", "branch"};
    const bool all = outputs == OutputSet::all;
    if (all || outputs == OutputSet::displacements) {
        cols.emplace_back("x_a");
        cols.emplace_back("x_b");
    }
    if (all || outputs == OutputSet::excitations) {
        cols.emplace_back("eps_minus");
        cols.emplace_back("eps_plus");
    }
    if (all || outputs == OutputSet::observables) {
        cols.emplace_back("e_g");
        cols.emplace_back("jz_per_j");
        cols.emplace_back("photons_per_j");
    }
    return cols;
}

namespace {

void append_row(std::ostringstream& out, const SweepRow& row, OutputSet outputs) {
    const bool all = outputs == OutputSet::all;
    out << fmt(row.theta) << ',' << fmt(row.lambda) << ',' << to_string(row.branch);
    if (all || outputs == OutputSet::displacements)
        out << ',' << fmt(row.x_a) << ',' << fmt(row.x_b);
    if (all || outputs == OutputSet::excitations)
        out << ',' << fmt(row.eps_minus) << ',' << fmt(row.eps_plus);
    if (all || outputs == OutputSet::observables)
        out << ',' << fmt(row.e_g) << ',' << fmt(row.jz_per_j) << ',' << fmt(row.photons_per_j);
    out << '\n';
}

void append_columns(std::ostringstream& out, const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows, const SweepSpec& spec) {
    std::ostringstream out;
    out << "# gdicke sweep v" << kVersion << '\n';
    out << "# axis=" << (spec.axis == SweepAxis::lambda ? "lambda" : "theta")
        << " range=" << fmt(spec.lo) << ':' << fmt(spec.hi) << ':' << spec.count << '\n';
    out << "# omega=" << fmt(spec.fixed.omega) << " Omega=" << fmt(spec.fixed.Omega);
    if (spec.axis == SweepAxis::lambda)
        out << " theta=" << fmt(snap_theta(spec.fixed.theta));
    else
        out << " lambda=" << fmt(spec.fixed.lambda);
    out << '\n';
    append_columns(out, sweep_columns(spec.outputs));
    for (const auto& row : rows) append_row(out, row, spec.outputs);
    return out.str();
}

std::string solve_csv(const std::vector<SweepRow>& rows, const CanonicalParams& p) {
    std::ostringstream out;
    out << "# gdicke solve v" << kVersion << '\n';
    out << "# omega=" << fmt(p.omega) << " Omega=" << fmt(p.Omega)
        << " theta=" << fmt(snap_theta(p.theta)) << " lambda=" << fmt(p.lambda) << '\n';
    append_columns(out, sweep_columns(OutputSet::all));
    for (const auto& row : rows) append_row(out, row, OutputSet::all);
    return out.str();
}

std::string ed_csv(const EdTable& table, const EdSpec& spec) {
    const CanonicalParams& p = spec.params;
    std::ostringstream out;
    out << "# gdicke ed v" << kVersion << '\n';
    out << "# omega=" << fmt(p.omega) << " Omega=" << fmt(p.Omega)
        << " theta=" << fmt(snap_theta(p.theta)) << " lambda=" << fmt(p.lambda) << '\n';
    out << "j,n_max,E0_per_j,gs_jz_per_j,gs_photons_per_j,gs_parity,parity_comm_norm,converged\n";
    for (const auto& row : table.rows) {
        out << fmt(row.j) << ',' << row.n_max << ',' << fmt(row.e0_per_j) << ','
            << fmt(row.gs_jz_per_j) << ',' << fmt(row.gs_photons_per_j) << ','
            << fmt(row.gs_parity) << ',' << fmt(row.parity_comm_norm) << ','
            << (row.converged ? 1 : 0) << '\n';
    }
    const auto& td = table.td_reference;
    out << "inf,-1," << fmt(td.e_g) << ',' << fmt(td.jz_per_j) << ',' << fmt(td.photons_per_j)
        << ",nan,nan,1\n";
    return out.str();
}

}  // namespace gdicke
