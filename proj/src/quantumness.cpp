#include "qwalk/quantumness.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qwalk/classical.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/numerics.hpp"

namespace qwalk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log2_safe(double x) { return std::log2(x); }

// Nonnegative-by-theory quantities pick up O(eps) noise when the true value
// is 0; round that to 0 and treat anything worse as a real defect.
double floor_tiny_negative(double v) {
    if (v < -kEntropyEigClip) {
        throw Error("nonnegative measure came out negative beyond tolerance");
    }
    return v < 0.0 ? 0.0 : v;
}

struct KlOutcome {
    double value = 0.0;
    std::vector<int> offending;  // support points where q vanishes under p
};

KlOutcome kl_with_diagnostics(const PositionDistribution& p,
                              const PositionDistribution& q) {
    const auto [pa, qa] = align_supports(p, q);
    KlOutcome out;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < pa.probs.size(); ++i) {
        const double pi = pa.probs[i];
        if (pi <= kSupportEps) continue;
        const double qi = qa.probs[i];
        if (qi <= 0.0) {
            out.offending.push_back(pa.support[static_cast<std::size_t>(i)]);
            continue;
        }
        sum += pi * (log2_safe(pi) - log2_safe(qi));
    }
    out.value = out.offending.empty() ? sum : kInf;
    return out;
}

// -sum_x P_qw(x) log2 P_ref(x); +inf on support mismatch.
double cross_entropy(const PositionDistribution& p,
                     const PositionDistribution& ref) {
    const auto [pa, ra] = align_supports(p, ref);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < pa.probs.size(); ++i) {
        const double pi = pa.probs[i];
        if (pi <= kSupportEps) continue;
        const double ri = ra.probs[i];
        if (ri <= 0.0) return kInf;
        sum -= pi * log2_safe(ri);
    }
    return sum;
}

// Grid scan over [0,1] followed by golden-section refinement of the
// bracketing interval; f may return +inf.
ScalarMinimum minimize_unit_interval(const std::function<double(double)>& f,
                                     int grid_points = 1024,
                                     double x_tol = 1e-8) {
    ScalarMinimum best{0.5, kInf};
    int best_i = -1;
    for (int i = 0; i < grid_points; ++i) {
        const double x = static_cast<double>(i) / (grid_points - 1);
        const double v = f(x);
        if (v < best.value) {
            best = {x, v};
            best_i = i;
        }
    }
    if (best_i < 0) return best;  // everything diverged

    const double lo =
        static_cast<double>(std::max(0, best_i - 1)) / (grid_points - 1);
    const double hi = static_cast<double>(std::min(grid_points - 1, best_i + 1)) /
                      (grid_points - 1);
    return golden_section_refine(f, lo, hi, best, x_tol);
}

PositionDistribution family_member(const Topology& t, int tau,
                                   int loop_start_site, double p) {
    if (std::holds_alternative<Line>(t)) return binomial_distribution(p, tau);
    return classical_loop_distribution(p, std::get<Loop>(t), tau,
                                       loop_start_site);
}

}  // namespace

ScalarMinimum golden_section_refine(const std::function<double(double)>& f,
                                    double lo, double hi, ScalarMinimum seed,
                                    double x_tol) {
    ScalarMinimum best = seed;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    while (hi - lo > x_tol) {
        const double x1 = hi - invphi * (hi - lo);
        const double x2 = lo + invphi * (hi - lo);
        const double f1 = f(x1);
        const double f2 = f(x2);
        if (f1 < best.value) best = {x1, f1};
        if (f2 < best.value) best = {x2, f2};
        if (f1 < f2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    return best;
}

double shannon_entropy(const PositionDistribution& d) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < d.probs.size(); ++i) {
        const double p = d.probs[i];
        if (p > 0.0) h -= p * log2_safe(p);
    }
    return h;
}

double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * log2_safe(p);
    if (p < 1.0) h -= (1.0 - p) * log2_safe(1.0 - p);
    return h;
}

double kl_divergence(const PositionDistribution& p,
                     const PositionDistribution& q) {
    return kl_with_diagnostics(p, q).value;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != rho.cols()) {
        throw DimensionMismatchError("density matrix must be square");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStateHermitianTol) {
        throw InvalidDensityError("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0)) > kStateTraceTol) {
        throw InvalidDensityError("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                       Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()[i];
        if (lam < -kEntropyEigClip) {
            throw InvalidDensityError("density matrix eigenvalue below -1e-10");
        }
        if (lam > 0.0) s -= lam * log2_safe(lam);
    }
    return s;
}

double optimal_p_plus(const PositionDistribution& d, int tau) {
    if (tau < 1) throw ParameterOutOfRangeError("tau must be >= 1");
    const double mean = moments(d).mean;
    return std::clamp(0.5 + mean / (2.0 * tau), 0.0, 1.0);
}

QResult quantumness_q(const PositionDistribution& d, const Topology& t,
                      int tau, int loop_start_site) {
    d.validate();
    if (std::holds_alternative<Line>(t)) {
        QResult out;
        out.p_plus_star = optimal_p_plus(d, tau);
        out.reference = binomial_distribution(out.p_plus_star, tau);
        const KlOutcome kl = kl_with_diagnostics(d, out.reference);
        out.q = std::isfinite(kl.value) ? floor_tiny_negative(kl.value)
                                        : kl.value;
        out.divergent_support = kl.offending;
        return out;
    }
    const auto family = [&](double p) {
        return family_member(t, tau, loop_start_site, p);
    };
    return quantumness_q_scan(d, family);
}

QResult quantumness_q_scan(
    const PositionDistribution& d,
    const std::function<PositionDistribution(double)>& family) {
    const auto objective = [&](double p) {
        return kl_divergence(d, family(p));
    };
    const ScalarMinimum min = minimize_unit_interval(objective);
    QResult out;
    out.p_plus_star = min.x;
    out.reference = family(min.x);
    const KlOutcome kl = kl_with_diagnostics(d, out.reference);
    out.q = std::isfinite(kl.value) ? floor_tiny_negative(kl.value)
                                    : kl.value;
    out.divergent_support = kl.offending;
    return out;
}

QuantumnessSplit quantumness_fair_split(const PositionDistribution& d, int tau) {
    d.validate();
    const double p_star = optimal_p_plus(d, tau);
    const PositionDistribution ref = binomial_distribution(p_star, tau);
    const PositionDistribution half = binomial_distribution(0.5, tau);

    QuantumnessSplit out;
    out.q = kl_divergence(d, ref);
    out.d_vs_half = kl_divergence(d, half);
    out.penalty = kl_divergence(ref, half);

    const double penalty_formula = tau * (1.0 - binary_entropy(p_star));
    if (std::abs(out.penalty - penalty_formula) > 1e-9 ||
        std::abs(out.q - (out.d_vs_half - out.penalty)) > 1e-9) {
        throw Error("relative-entropy split disagrees with its closed form");
    }
    return out;
}

double coherence(const Eigen::MatrixXcd& rho) {
    PositionDistribution diag;
    diag.support.resize(static_cast<std::size_t>(rho.rows()));
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
        diag.support[static_cast<std::size_t>(i)] = static_cast<int>(i);
    diag.probs = rho.diagonal().real().cwiseMax(0.0);
    const double c = shannon_entropy(diag) - von_neumann_entropy(rho);
    if (c < -kEntropyEigClip) {
        throw InvalidDensityError("coherence is negative beyond tolerance");
    }
    return std::max(c, 0.0);
}

QuantumnessReport total_quantumness(const PositionState& ps, const Topology& t,
                                    int tau, int loop_start_site) {
    const QResult qr = quantumness_q(ps.dist, t, tau, loop_start_site);
    QuantumnessReport rep;
    rep.q_value = qr.q;
    rep.p_plus_star = qr.p_plus_star;
    rep.reference = qr.reference;
    rep.divergent_support = qr.divergent_support;
    rep.coherence = qwalk::coherence(ps.rho);
    rep.total = rep.q_value + rep.coherence;

    // Independent route: min_p S(rho || diag(P_RW)) = -S(rho) + min_p
    // cross-entropy; the same reference attains both minima.
    const double s_rho = von_neumann_entropy(ps.rho);
    rep.total_direct = -s_rho + cross_entropy(ps.dist, qr.reference);
    if (std::isfinite(rep.total) &&
        std::abs(rep.total_direct - rep.total) > 1e-9) {
        throw Error("quantum relative entropy routes disagree");
    }

    const double bound =
        kl_divergence(ps.dist, family_member(t, tau, loop_start_site, 0.5));
    rep.upper_bound_eq8 =
        std::isfinite(bound) ? floor_tiny_negative(bound) : bound;
    rep.saturated = std::isfinite(rep.q_value) &&
                    std::abs(rep.q_value - rep.upper_bound_eq8) <= 1e-9;
    return rep;
}

GaussianApprox gaussian_q_approx(const PositionDistribution& d, int tau,
                                 double mean) {
    if (tau < 10) {
        throw ParameterOutOfRangeError(
            "gaussian approximation needs tau >= 10");
    }
    d.validate();
    const PositionDistribution g = gaussian_reference(mean, tau);
    GaussianApprox out;
    out.q_direct = kl_divergence(d, g);
    out.entropy_gap = shannon_entropy(g) - shannon_entropy(d);
    const double var_g = moments(g).variance;
    const double var_d = moments(d).variance;
    out.variance_term = (var_d - var_g) / (2.0 * var_g * std::numbers::ln2);
    out.expansion = out.entropy_gap + out.variance_term;
    return out;
}

double asymptotic_p_star(double eta, double gamma, double alpha, double beta,
                         double theta) {
    constexpr double half_pi = std::numbers::pi / 2;
    if (theta <= 0.0) {
        throw ThetaZeroError("asymptotic bias formula is undefined at theta 0");
    }
    if (theta > half_pi) {
        throw ParameterOutOfRangeError("theta must lie in (0, pi/2]");
    }
    if (theta == half_pi) return 0.5;  // tan(theta)(1 - sin(theta)) -> 0
    const double phi = alpha + beta - gamma;
    return 0.5 + (std::cos(2.0 * eta) +
                  std::tan(theta) * std::cos(phi) * std::sin(2.0 * eta)) *
                     (1.0 - std::sin(theta)) / 2.0;
}

L1Report l1_quantumness(const PositionState& ps, const Topology& t, int tau,
                        int loop_start_site) {
    ps.dist.validate();
    const auto family = [&](double p) {
        return family_member(t, tau, loop_start_site, p);
    };
    const auto objective = [&](double p) {
        const auto [pa, qa] = align_supports(ps.dist, family(p));
        return (pa.probs - qa.probs).cwiseAbs().sum();
    };
    // The l1 objective is kinked at its minimum, so the value error is
    // linear in the bracket width; refine further than the KL path.
    const ScalarMinimum min = minimize_unit_interval(objective, 1024, 1e-11);

    L1Report out;
    out.p_plus_star = min.x;
    out.q_l1 = min.value;
    out.c_l1 = ps.rho.cwiseAbs().sum() - ps.rho.diagonal().cwiseAbs().sum();
    out.total_l1 = out.q_l1 + out.c_l1;
    return out;
}

}  // namespace qwalk
