#include "gdicke/tdlimit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gdicke {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kDomainGuard = 1e-9;  // stay clear of the HP breakdown at b -> 2

double domain_edge() { return std::sqrt(2.0) - kDomainGuard; }

// α relation in scaled variables; sign(x_a) follows sign(x_b).
double alpha_from_beta(const CanonicalParams& p, double x_b) {
    const double b = x_b * x_b;
    return (2.0 * p.lambda / p.omega) * x_b * std::sqrt(0.5 * (2.0 - b));
}

double residual_unchecked(const CanonicalParams& p, double x_b) {
    const double b = x_b * x_b;
    return (4.0 * p.lambda * p.lambda / p.omega) * (1.0 - b) * x_b -
           p.Omega * std::sin(p.theta) * x_b +
           p.Omega * std::cos(p.theta) * (1.0 - b) / std::sqrt(2.0 - b);
}

// Brent's method on a sign-changing bracket [a, b].
double brent_root(const CanonicalParams& p, double a, double b, double fa, double fb,
                  double ftol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;

    double c = a, fc = fa;
    double d = b - a, e = d;
    const double xtol = 1e-15;

    for (int iter = 0; iter < 200; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || std::abs(fb) < ftol) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic / secant step
            const double s = fb / fa;
            double pnum, qden;
            if (a == c) {
                pnum = 2.0 * xm * s;
                qden = 1.0 - s;
            } else {
                const double q = fa / fc;
                const double r = fb / fc;
                pnum = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                qden = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pnum > 0.0) qden = -qden;
            pnum = std::abs(pnum);
            if (2.0 * pnum < std::min(3.0 * xm * qden - std::abs(tol1 * qden), std::abs(e * qden))) {
                e = d;
                d = pnum / qden;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = residual_unchecked(p, b);
    }
    return b;
}

std::vector<double> find_roots(const CanonicalParams& p, const RootSearchOptions& opt) {
    std::vector<double> roots;

    if (p.theta == kHalfPi) {
        // x_b = 0 is always stationary; the displaced pair exists above λ_c.
        roots.push_back(0.0);
        if (p.lambda > 0.0) {
            const double mu = p.omega * p.Omega / (4.0 * p.lambda * p.lambda);
            if (mu < 1.0) {
                const double xb = std::sqrt(1.0 - mu);
                roots.push_back(xb);
                roots.push_back(-xb);
            }
        }
        return roots;
    }

    const double edge = domain_edge();
    const int n = std::max(8, opt.grid_cells);
    double x_prev = -edge;
    double f_prev = residual_unchecked(p, x_prev);
    for (int i = 1; i <= n; ++i) {
        const double x = -edge + (2.0 * edge * i) / n;
        const double f = residual_unchecked(p, x);
        if (f_prev == 0.0) {
            roots.push_back(x_prev);
        } else if ((f_prev > 0.0) != (f > 0.0)) {
            roots.push_back(brent_root(p, x_prev, x, f_prev, f, opt.residual_tol));
        }
        x_prev = x;
        f_prev = f;
    }
    if (f_prev == 0.0) roots.push_back(x_prev);

    // b = 1 is stationary whenever sinθ vanishes (θ = 0 or π); seed the pair
    // explicitly since λ = λ_c turns x_b = −sign(cosθ) into a double root the
    // sign-change scan cannot see.
    if (std::abs(std::sin(p.theta)) < 1e-13) {
        roots.push_back(1.0);
        roots.push_back(-1.0);
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots) {
        if (unique.empty() || std::abs(r - unique.back()) > opt.dedup_tol) unique.push_back(r);
    }
    return unique;
}

BranchTag tag_for(const CanonicalParams& p, double x_b) {
    if (p.theta != kHalfPi) return BranchTag::unique;
    if (x_b == 0.0) return BranchTag::normal;
    return x_b > 0.0 ? BranchTag::displaced_plus : BranchTag::displaced_minus;
}

TdSpectrum spectrum_from(const BranchCandidate& c) {
    const auto& pair = std::get<ExcitationPair>(c.excitations);
    return TdSpectrum{pair.eps_minus, pair.eps_plus,     c.form.e_g,
                      c.sol.b - 1.0,  c.sol.x_a * c.sol.x_a, c.sol};
}

}  // namespace

const char* to_string(BranchTag t) {
    switch (t) {
        case BranchTag::normal: return "normal";
        case BranchTag::displaced_plus: return "displaced_plus";
        case BranchTag::displaced_minus: return "displaced_minus";
        case BranchTag::unique: return "unique";
    }
    return "?";
}

const char* to_string(Validity v) {
    switch (v) {
        case Validity::physical: return "physical";
        case Validity::unstable: return "unstable";
        case Validity::spurious: return "spurious";
    }
    return "?";
}

double displacement_residual(const CanonicalParams& p, double x_b) {
    if (!std::isfinite(x_b) || x_b * x_b >= 2.0)
        throw std::domain_error("displacement outside the Holstein-Primakoff domain (b >= 2)");
    return residual_unchecked(p, x_b);
}

double critical_coupling(double omega, double Omega) {
    if (!(omega > 0.0) || !(Omega > 0.0))
        throw std::domain_error("critical coupling requires positive omega and Omega");
    return 0.5 * std::sqrt(omega * Omega);
}

QuadraticForm quadratic_form(const CanonicalParams& p, const DisplacementSolution& sol) {
    const double b = sol.b;
    if (!(b >= 0.0) || b >= 2.0)
        throw std::domain_error("displacement outside the Holstein-Primakoff domain (b >= 2)");

    const double st = std::sin(p.theta);
    const double ct = std::cos(p.theta);
    const double xa = sol.x_a;
    const double xb = sol.x_b;
    const double k = 2.0 - b;  // k/j
    const double sqrt_k = std::sqrt(k);
    const double sqrt2 = std::numbers::sqrt2;

    const double omega_b =
        p.Omega * st + 2.0 * p.lambda * xa * xb / (sqrt2 * sqrt_k) + 0.5 * p.Omega * ct * xb / sqrt_k;
    const double s = p.lambda * xa * xb * (4.0 - b) / (2.0 * sqrt2 * k * sqrt_k) +
                     0.25 * p.Omega * ct * (xb / sqrt_k) * (1.0 + b / (2.0 * k));
    const double r = sqrt2 * p.lambda * (1.0 - b) / sqrt_k;
    const double e_g = p.Omega * st * (b - 1.0) -
                       (2.0 * p.lambda * p.lambda / p.omega) * b * k -
                       p.Omega * ct * xb * sqrt_k;

    return QuadraticForm{p.omega, omega_b, s, r, e_g};
}

void classify_candidates(std::vector<BranchCandidate>& candidates) {
    double eg_min = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates)
        if (is_stable(c.excitations)) eg_min = std::min(eg_min, c.form.e_g);

    const double tol = 1e-10 * std::max(1.0, std::abs(eg_min));
    for (auto& c : candidates) {
        if (!is_stable(c.excitations))
            c.sol.validity = Validity::unstable;
        else if (c.form.e_g > eg_min + tol)
            c.sol.validity = Validity::spurious;
        else
            c.sol.validity = Validity::physical;
    }
}

std::vector<BranchCandidate> solve_candidates(const CanonicalParams& p,
                                              const RootSearchOptions& opt) {
    validate(p);
    if (p.Omega == 0.0 && p.lambda == 0.0)
        throw std::invalid_argument(
            "degenerate model: Omega = lambda = 0 leaves the displacement undetermined");
    const auto roots = find_roots(p, opt);
    if (roots.empty()) throw SolverError("displacement equation yielded no roots");

    std::vector<BranchCandidate> candidates;
    candidates.reserve(roots.size());
    for (double xb : roots) {
        DisplacementSolution sol;
        sol.x_b = xb;
        sol.x_a = alpha_from_beta(p, xb);
        sol.b = xb * xb;
        sol.tag = tag_for(p, xb);
        QuadraticForm form = quadratic_form(p, sol);
        ExcitationOutcome exc = excitation_energies(form);
        candidates.push_back(BranchCandidate{sol, form, std::move(exc)});
    }
    classify_candidates(candidates);
    return candidates;
}

std::vector<DisplacementSolution> solve_displacements(const CanonicalParams& p,
                                                      const RootSearchOptions& opt) {
    std::vector<DisplacementSolution> out;
    for (const auto& c : solve_candidates(p, opt)) out.push_back(c.sol);
    return out;
}

std::vector<TdSpectrum> solve(const CanonicalParams& p, const RootSearchOptions& opt) {
    const auto candidates = solve_candidates(p, opt);
    std::vector<TdSpectrum> out;
    for (const auto& c : candidates)
        if (c.sol.validity == Validity::physical) out.push_back(spectrum_from(c));
    if (out.empty())
        throw SolverError("no physical branch: all displacement candidates unstable");
    return out;
}

std::vector<TdSpectrum> dicke_closed_form(const CanonicalParams& p) {
    validate(p);
    if (p.theta != kHalfPi)
        throw std::domain_error("dicke_closed_form requires theta = pi/2");

    const double w = p.omega;
    const double W = p.Omega;
    const double lam = p.lambda;
    const double lc_sq = 0.25 * w * W;  // λ_c²

    std::vector<TdSpectrum> out;

    if (lam * lam <= lc_sq) {
        // normal phase
        const double root = std::sqrt((W * W - w * w) * (W * W - w * w) + 16.0 * lam * lam * w * W);
        const double lo = 0.5 * (w * w + W * W - root);
        const double hi = 0.5 * (w * w + W * W + root);
        TdSpectrum td;
        td.eps_minus = std::sqrt(std::max(0.0, lo));
        td.eps_plus = std::sqrt(hi);
        td.e_g = -W;
        td.jz_per_j = -1.0;
        td.photons_per_j = 0.0;
        td.solution = DisplacementSolution{0.0, 0.0, 0.0, BranchTag::normal, Validity::physical};
        out.push_back(td);
    } else {
        // superradiant phase: two degenerate displaced branches
        const double mu = lc_sq / (lam * lam);
        const double a2 = W * W / (mu * mu);
        const double root = std::sqrt((a2 - w * w) * (a2 - w * w) + 4.0 * w * w * W * W);
        const double lo = 0.5 * (a2 + w * w - root);
        const double hi = 0.5 * (a2 + w * w + root);
        const double e_g = -(2.0 * lam * lam / w + W * W * w / (8.0 * lam * lam));
        const double xb = std::sqrt(1.0 - mu);
        for (double sign : {+1.0, -1.0}) {
            TdSpectrum td;
            td.eps_minus = std::sqrt(std::max(0.0, lo));
            td.eps_plus = std::sqrt(hi);
            td.e_g = e_g;
            td.jz_per_j = -mu;
            td.photons_per_j = (2.0 * lam * lam / (w * w)) * (1.0 - mu * mu);
            DisplacementSolution sol;
            sol.x_b = sign * xb;
            sol.x_a = alpha_from_beta(p, sol.x_b);
            sol.b = 1.0 - mu;
            sol.tag = sign > 0.0 ? BranchTag::displaced_plus : BranchTag::displaced_minus;
            sol.validity = Validity::physical;
            td.solution = sol;
            out.push_back(td);
        }
    }
    return out;
}

TdSpectrum theta0_closed_form(const CanonicalParams& p) {
    validate(p);
    if (p.theta != 0.0)
        throw std::domain_error("theta0_closed_form requires theta = 0");

    const double ea = p.omega;
    const double eb = p.Omega + 4.0 * p.lambda * p.lambda / p.omega;
    TdSpectrum td;
    td.eps_minus = std::min(ea, eb);
    td.eps_plus = std::max(ea, eb);
    td.e_g = -(p.Omega + 2.0 * p.lambda * p.lambda / p.omega);
    td.jz_per_j = 0.0;
    td.photons_per_j = 2.0 * p.lambda * p.lambda / (p.omega * p.omega);
    DisplacementSolution sol;
    sol.x_b = 1.0;
    sol.x_a = alpha_from_beta(p, 1.0);
    sol.b = 1.0;
    sol.tag = BranchTag::unique;
    sol.validity = Validity::physical;
    td.solution = sol;
    return td;
}

}  // namespace gdicke
