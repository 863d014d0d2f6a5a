#include "gdicke/finite_j.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gdicke/tdlimit.hpp"

namespace gdicke {

namespace {

int two_j_int(double j) { return static_cast<int>(std::lround(2.0 * j)); }

// <j, m+1 | J+ | j, m>
double ladder_coeff(double j, double m) { return std::sqrt(j * (j + 1.0) - m * (m + 1.0)); }

struct BasisLayout {
    double j;
    int n_states;  // Fock states, n_max + 1
    int s_states;  // spin projections, 2j + 1
    int index(int n, int s) const { return n * s_states + s; }
    double m_of(int s) const { return static_cast<double>(s) - j; }
};

BasisLayout layout(const BasisSpec& basis) {
    return BasisLayout{basis.j, basis.n_max + 1, two_j_int(basis.j) + 1};
}

void check_entry_limit(const BasisSpec& basis, std::size_t entry_limit) {
    const std::size_t dim = basis_dimension(basis);
    if (dim * dim > entry_limit)
        throw std::length_error("dense Hamiltonian would exceed the entry limit; "
                                "raise it explicitly or reduce the basis");
}

// Observable weights are diagonal in the product basis.
struct DiagonalObservables {
    Eigen::VectorXd n;   // photon number
    Eigen::VectorXd m;   // Jz
    Eigen::VectorXd pi;  // parity (−1)^(n+m+j)
};

DiagonalObservables diagonal_observables(const BasisSpec& basis) {
    const auto lay = layout(basis);
    const std::size_t dim = basis_dimension(basis);
    DiagonalObservables d{Eigen::VectorXd(dim), Eigen::VectorXd(dim), Eigen::VectorXd(dim)};
    for (int n = 0; n < lay.n_states; ++n) {
        for (int s = 0; s < lay.s_states; ++s) {
            const int i = lay.index(n, s);
            d.n(i) = n;
            d.m(i) = lay.m_of(s);
            d.pi(i) = ((n + s) % 2 == 0) ? 1.0 : -1.0;
        }
    }
    return d;
}

double frobenius_commutator_with_diagonal(const Eigen::SparseMatrix<double>& h,
                                          const Eigen::VectorXd& pi) {
    // [H, Π] with Π diagonal has elements H_ij (π_j − π_i).
    double sum = 0.0;
    for (int k = 0; k < h.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(h, k); it; ++it) {
            const double diff = pi(it.col()) - pi(it.row());
            sum += it.value() * it.value() * diff * diff;
        }
    }
    return std::sqrt(sum);
}

FiniteJResult observables_from_vector(const BasisSpec& basis, const Eigen::VectorXd& gs,
                                      double e0) {
    const auto d = diagonal_observables(basis);
    const Eigen::VectorXd w = gs.array().square();
    FiniteJResult res;
    res.energies = {e0};
    res.gs_energy_per_j = e0 / basis.j;
    res.gs_jz_per_j = w.dot(d.m) / basis.j;
    res.gs_photons_per_j = w.dot(d.n) / basis.j;
    res.gs_parity = w.dot(d.pi);
    return res;
}

}  // namespace

void validate(const BasisSpec& basis) {
    if (!std::isfinite(basis.j) || basis.j <= 0.0)
        throw std::invalid_argument("spin length j must be a positive half-integer");
    if (std::abs(2.0 * basis.j - std::lround(2.0 * basis.j)) > 1e-9)
        throw std::invalid_argument("2j must be an integer");
    if (basis.n_max < 0) throw std::invalid_argument("Fock cutoff n_max must be >= 0");
}

std::size_t basis_dimension(const BasisSpec& basis) {
    return static_cast<std::size_t>(basis.n_max + 1) *
           static_cast<std::size_t>(two_j_int(basis.j) + 1);
}

Eigen::MatrixXd build_hamiltonian(const CanonicalParams& p, const BasisSpec& basis,
                                  std::size_t entry_limit) {
    validate(p);
    validate(basis);
    check_entry_limit(basis, entry_limit);

    const auto lay = layout(basis);
    const std::size_t dim = basis_dimension(basis);
    const double st = std::sin(p.theta);
    const double ct = std::cos(p.theta);
    const double g = 2.0 * p.lambda / std::sqrt(2.0 * basis.j);

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n < lay.n_states; ++n) {
        for (int s = 0; s < lay.s_states; ++s) {
            const int i = lay.index(n, s);
            const double m = lay.m_of(s);
            h(i, i) = p.omega * n + p.Omega * st * m;

            if (s + 1 < lay.s_states) {
                const double c = 0.5 * ladder_coeff(basis.j, m);
                // Ω cosθ Jx: spin flip within a Fock level
                const int iu = lay.index(n, s + 1);
                h(iu, i) += p.Omega * ct * c;
                h(i, iu) += p.Omega * ct * c;
                // (2λ/sqrt(2j)) (a†+a) Jx: spin flip with one photon up/down
                if (n + 1 < lay.n_states) {
                    const double v = g * c * std::sqrt(n + 1.0);
                    const int a = lay.index(n + 1, s + 1);
                    const int b = lay.index(n, s);
                    h(a, b) += v;
                    h(b, a) += v;
                    const int c1 = lay.index(n + 1, s);
                    const int c2 = lay.index(n, s + 1);
                    h(c1, c2) += v;
                    h(c2, c1) += v;
                }
            }
        }
    }
    return h;
}

Eigen::SparseMatrix<double> build_sparse_hamiltonian(const CanonicalParams& p,
                                                     const BasisSpec& basis) {
    validate(p);
    validate(basis);

    const auto lay = layout(basis);
    const std::size_t dim = basis_dimension(basis);
    const double st = std::sin(p.theta);
    const double ct = std::cos(p.theta);
    const double g = 2.0 * p.lambda / std::sqrt(2.0 * basis.j);

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(dim * 6);
    for (int n = 0; n < lay.n_states; ++n) {
        for (int s = 0; s < lay.s_states; ++s) {
            const int i = lay.index(n, s);
            const double m = lay.m_of(s);
            trip.emplace_back(i, i, p.omega * n + p.Omega * st * m);
            if (s + 1 < lay.s_states) {
                const double c = 0.5 * ladder_coeff(basis.j, m);
                const int iu = lay.index(n, s + 1);
                trip.emplace_back(iu, i, p.Omega * ct * c);
                trip.emplace_back(i, iu, p.Omega * ct * c);
                if (n + 1 < lay.n_states) {
                    const double v = g * c * std::sqrt(n + 1.0);
                    trip.emplace_back(lay.index(n + 1, s + 1), lay.index(n, s), v);
                    trip.emplace_back(lay.index(n, s), lay.index(n + 1, s + 1), v);
                    trip.emplace_back(lay.index(n + 1, s), lay.index(n, s + 1), v);
                    trip.emplace_back(lay.index(n, s + 1), lay.index(n + 1, s), v);
                }
            }
        }
    }
    Eigen::SparseMatrix<double> h(dim, dim);
    h.setFromTriplets(trip.begin(), trip.end());
    return h;
}

Eigen::MatrixXcd build_general_hamiltonian(const GeneralCoupling& g, const BasisSpec& basis,
                                           std::size_t entry_limit) {
    validate(basis);
    check_entry_limit(basis, entry_limit);
    if (!(g.omega > 0.0)) throw std::invalid_argument("omega must be positive");

    const auto lay = layout(basis);
    const int ns = lay.s_states;
    const std::size_t dim = basis_dimension(basis);
    using Mat = Eigen::MatrixXcd;
    const std::complex<double> I(0.0, 1.0);

    // spin matrices in |j, m>
    Mat jx = Mat::Zero(ns, ns), jy = Mat::Zero(ns, ns), jz = Mat::Zero(ns, ns);
    for (int s = 0; s < ns; ++s) {
        const double m = lay.m_of(s);
        jz(s, s) = m;
        if (s + 1 < ns) {
            const double c = ladder_coeff(basis.j, m);
            jx(s + 1, s) += 0.5 * c;
            jx(s, s + 1) += 0.5 * c;
            jy(s + 1, s) += -0.5 * I * c;  // (J+ − J−)/(2i)
            jy(s, s + 1) += 0.5 * I * c;
        }
    }
    auto spin_op = [&](const std::array<double, 3>& v) {
        return (v[0] * jx + v[1] * jy + v[2] * jz).eval();
    };
    const Mat h_static = spin_op(g.omega_vec);
    const double scale = 2.0 / std::sqrt(2.0 * basis.j);
    const Mat h_coupling = scale * spin_op(g.lambda_vec);

    Mat h = Mat::Zero(dim, dim);
    for (int n = 0; n < lay.n_states; ++n) {
        for (int s1 = 0; s1 < ns; ++s1) {
            const int i = lay.index(n, s1);
            h(i, i) += g.omega * static_cast<double>(n);
            for (int s2 = 0; s2 < ns; ++s2) {
                h(lay.index(n, s1), lay.index(n, s2)) += h_static(s1, s2);
                if (n + 1 < lay.n_states) {
                    const double f = std::sqrt(n + 1.0);
                    h(lay.index(n + 1, s1), lay.index(n, s2)) += f * h_coupling(s1, s2);
                    h(lay.index(n, s1), lay.index(n + 1, s2)) += f * h_coupling(s1, s2);
                }
            }
        }
    }
    return h;
}

Eigen::VectorXd parity_diagonal(const BasisSpec& basis) {
    validate(basis);
    return diagonal_observables(basis).pi;
}

FiniteJResult diagonalize(const Eigen::MatrixXd& h, const BasisSpec& basis) {
    validate(basis);
    if (h.rows() != h.cols() ||
        static_cast<std::size_t>(h.rows()) != basis_dimension(basis))
        throw std::invalid_argument("matrix dimension does not match the basis");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense symmetric eigensolver failed to converge");

    const auto d = diagonal_observables(basis);
    const Eigen::VectorXd gs = es.eigenvectors().col(0);
    const Eigen::VectorXd w = gs.array().square();

    FiniteJResult res;
    res.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    res.gs_energy_per_j = es.eigenvalues()(0) / basis.j;
    res.gs_jz_per_j = w.dot(d.m) / basis.j;
    res.gs_photons_per_j = w.dot(d.n) / basis.j;
    res.gs_parity = w.dot(d.pi);

    double comm = 0.0;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        for (Eigen::Index k = 0; k < h.cols(); ++k) {
            const double diff = d.pi(k) - d.pi(i);
            comm += h(i, k) * h(i, k) * diff * diff;
        }
    res.parity_commutator_norm = std::sqrt(comm);
    res.converged = false;
    return res;
}

LanczosResult lowest_eigenpair(const Eigen::SparseMatrix<double>& h, int max_iterations,
                               double tol) {
    const Eigen::Index dim = h.rows();
    if (dim == 0 || h.cols() != dim) throw std::invalid_argument("matrix must be square");
    const int max_iter = std::min<Eigen::Index>(max_iterations, dim);

    // deterministic start vector with non-vanishing overlap in practice
    Eigen::VectorXd v = Eigen::VectorXd::Ones(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) += 0.5 * std::sin(1.0 + static_cast<double>(i));
    v.normalize();

    std::vector<Eigen::VectorXd> basis;
    basis.reserve(max_iter);
    std::vector<double> alpha, beta;

    double prev_ritz = std::numeric_limits<double>::infinity();
    LanczosResult out;

    for (int k = 0; k < max_iter; ++k) {
        basis.push_back(v);
        Eigen::VectorXd w = h * v;
        const double a = v.dot(w);
        alpha.push_back(a);
        w -= a * v;
        if (k > 0) w -= beta[k - 1] * basis[k - 1];
        // full reorthogonalization, two passes
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) w -= q.dot(w) * q;

        const int m = k + 1;
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            tri(i, i) = alpha[i];
            if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(tri);
        const double ritz = tes.eigenvalues()(0);

        const double b = w.norm();
        const double resid = b * std::abs(tes.eigenvectors().col(0)(m - 1));
        const double scale = std::max(1.0, std::abs(ritz));
        if ((resid < tol * scale && std::abs(ritz - prev_ritz) < tol * scale) || b < 1e-14 ||
            m == max_iter || m == dim) {
            Eigen::VectorXd gs = Eigen::VectorXd::Zero(dim);
            for (int i = 0; i < m; ++i) gs += tes.eigenvectors().col(0)(i) * basis[i];
            gs.normalize();
            out.value = ritz;
            out.vector = gs;
            out.iterations = m;
            out.converged = resid < tol * scale * 10.0 || b < 1e-14 || m == dim;
            return out;
        }
        prev_ritz = ritz;
        beta.push_back(b);
        v = w / b;
    }
    throw std::runtime_error("lanczos failed to converge");
}

FiniteJResult solve_finite(const CanonicalParams& p, const BasisSpec& basis,
                           const FiniteJOptions& opts) {
    validate(p);
    validate(basis);
    const std::size_t dim = basis_dimension(basis);

    EigenMethod method = opts.method;
    if (method == EigenMethod::automatic)
        method = dim <= static_cast<std::size_t>(opts.dense_cutoff_dim) ? EigenMethod::dense
                                                                        : EigenMethod::lanczos;

    FiniteJResult res;
    if (method == EigenMethod::dense) {
        res = diagonalize(build_hamiltonian(p, basis, opts.entry_limit), basis);
    } else {
        const auto h = build_sparse_hamiltonian(p, basis);
        const auto pair = lowest_eigenpair(h);
        if (!pair.converged) throw std::runtime_error("lanczos did not converge");
        res = observables_from_vector(basis, pair.vector, pair.value);
        res.parity_commutator_norm =
            frobenius_commutator_with_diagonal(h, diagonal_observables(basis).pi);
    }

    if (opts.convergence_check) {
        const BasisSpec doubled{basis.j, 2 * basis.n_max};
        const auto h2 = build_sparse_hamiltonian(p, doubled);
        const auto pair2 = lowest_eigenpair(h2);
        res.converged =
            std::abs(res.gs_energy_per_j - pair2.value / basis.j) < 1e-8;
    }
    return res;
}

std::pair<double, double> parity_check(const CanonicalParams& p, const BasisSpec& basis) {
    FiniteJOptions opts;
    opts.convergence_check = false;
    const auto res = solve_finite(p, basis, opts);
    return {res.parity_commutator_norm, res.gs_parity};
}

std::vector<double> theta0_spectrum(const CanonicalParams& p, const BasisSpec& basis) {
    validate(p);
    validate(basis);
    if (p.theta != 0.0) throw std::domain_error("theta0_spectrum requires theta = 0");

    const auto lay = layout(basis);
    std::vector<double> energies;
    energies.reserve(basis_dimension(basis));
    for (int n = 0; n <= basis.n_max; ++n) {
        for (int s = 0; s < lay.s_states; ++s) {
            const double m = lay.m_of(s);
            energies.push_back(p.omega * n + p.Omega * m -
                               2.0 * p.lambda * p.lambda * m * m / (basis.j * p.omega));
        }
    }
    std::sort(energies.begin(), energies.end());
    return energies;
}

int auto_cutoff(const CanonicalParams& p, double j) {
    double photons = 0.0;
    for (const auto& branch : solve(p)) photons = std::max(photons, branch.photons_per_j);
    const double alpha_est = j * photons;
    return std::max(40, static_cast<int>(std::ceil(8.0 * alpha_est)) + 20);
}

}  // namespace gdicke
