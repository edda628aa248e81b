#include "qwalk/classical.hpp"

#include <cmath>

#include "qwalk/channels.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/numerics.hpp"

namespace qwalk {

PositionDistribution binomial_distribution(double p_plus, int tau) {
    if (!(p_plus >= 0.0 && p_plus <= 1.0)) {
        throw ParameterOutOfRangeError("p_plus must lie in [0,1]");
    }
    if (tau < 0) throw ParameterOutOfRangeError("tau must be >= 0");

    PositionDistribution d;
    d.support.resize(static_cast<std::size_t>(tau) + 1);
    for (int m = 0; m <= tau; ++m)
        d.support[static_cast<std::size_t>(m)] = -tau + 2 * m;
    d.probs = Eigen::VectorXd::Zero(tau + 1);

    if (p_plus == 0.0 || p_plus == 1.0) {
        d.probs[p_plus == 0.0 ? 0 : tau] = 1.0;
        return d;
    }
    const double log_p = std::log(p_plus);
    const double log_q = std::log1p(-p_plus);
    const double log_fact_tau = std::lgamma(tau + 1.0);
    for (int m = 0; m <= tau; ++m) {
        const double log_pmf = log_fact_tau - std::lgamma(m + 1.0) -
                               std::lgamma(tau - m + 1.0) + m * log_p +
                               (tau - m) * log_q;
        d.probs[m] = std::exp(log_pmf);
    }
    return d;
}

Eigen::MatrixXcd classical_density_operator(const PositionDistribution& d) {
    d.validate();
    return d.probs.cast<Complex>().asDiagonal();
}

void classical_loop_step(Eigen::VectorXd& v, double p_plus, const Loop& loop) {
    const int n = loop.n_sites;
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n + 1);
    for (int p = 0; p < n; ++p) {
        next[(p + 1) % n] += p_plus * v[p];
        next[(p + n - 1) % n] += (1.0 - p_plus) * v[p];
    }
    next[n] += v[n];  // sink is absorbing
    // Sink matrix S_k: site k leaks into n+1 with probability r.
    const int k = loop.sink_site - 1;
    const double leaked = loop.leak * next[k];
    next[k] -= leaked;
    next[n] += leaked;
    v = std::move(next);
}

PositionDistribution classical_loop_distribution(double p_plus,
                                                 const Loop& loop, int tau,
                                                 int start_site) {
    if (!(p_plus >= 0.0 && p_plus <= 1.0)) {
        throw ParameterOutOfRangeError("p_plus must lie in [0,1]");
    }
    validate(Topology{loop});
    if (start_site < 1 || start_site > loop.n_sites) {
        throw UnsupportedTopologyError("loop start site must lie in 1..n");
    }
    if (tau < 0) throw ParameterOutOfRangeError("tau must be >= 0");

    Eigen::VectorXd v = Eigen::VectorXd::Zero(loop.n_sites + 1);
    v[start_site - 1] = 1.0;
    for (int t = 0; t < tau; ++t) classical_loop_step(v, p_plus, loop);

    PositionDistribution d;
    d.support = position_space(Topology{loop});
    d.probs = std::move(v);
    return d;
}

ContractionCheck contraction_walk_check(double p_plus, ContractionCoin coin,
                                        int tau) {
    if (tau < 1) throw ParameterOutOfRangeError("tau must be >= 1");
    const CoinOperator u = (coin == ContractionCoin::identity)
                               ? CoinOperator::identity()
                               : CoinOperator::pauli_z();
    ContractionCheck out{
        evolve_noisy(u, CoinState::pure(0.0, 0.0),
                     NoiseChannel::contraction(p_plus), Line{tau}, tau),
        0.0, 0.0, 0.0};

    const PositionState marg = position_marginal(out.joint);
    const Eigen::Index s = marg.rho.rows();
    for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = 0; j < s; ++j) {
            if (i == j) continue;
            out.max_offdiagonal =
                std::max(out.max_offdiagonal, std::abs(marg.rho(i, j)));
        }
    }
    const PositionDistribution binom = binomial_distribution(p_plus, tau);
    out.max_diag_deviation = (marg.dist.probs - binom.probs).cwiseAbs().maxCoeff();

    // Product-form joint state: coin reset every step, so the walker piles
    // binomial(tau-1) weight on |2m - tau + 2> (+ branch) and |2m - tau>
    // (- branch), weighted p+ and p- respectively.
    const double p_minus = 1.0 - p_plus;
    Eigen::MatrixXcd rho_cf =
        Eigen::MatrixXcd::Zero(2 * (tau + 1), 2 * (tau + 1));
    const PositionDistribution base = binomial_distribution(p_plus, tau - 1);
    for (int m = 0; m <= tau - 1; ++m) {
        const double w = base.probs[m];
        rho_cf(m + 1, m + 1) += w * p_plus;                    // |+> block
        rho_cf((tau + 1) + m, (tau + 1) + m) += w * p_minus;   // |-> block
    }
    out.joint_deviation = (out.joint.rho - rho_cf).cwiseAbs().maxCoeff();
    return out;
}

PositionDistribution gaussian_reference(double mean, int tau) {
    if (tau < 0) throw ParameterOutOfRangeError("tau must be >= 0");
    if (std::abs(mean) > tau) {
        throw MeanOutOfRangeError("gaussian mean must satisfy |mean| <= tau");
    }
    PositionDistribution d;
    d.support.resize(static_cast<std::size_t>(tau) + 1);
    for (int m = 0; m <= tau; ++m)
        d.support[static_cast<std::size_t>(m)] = -tau + 2 * m;
    d.probs = Eigen::VectorXd::Zero(tau + 1);

    const double var = tau == 0 ? 0.0 : tau * (1.0 - mean * mean / (static_cast<double>(tau) * tau));
    if (var <= 0.0) {
        // Degenerate reference: point mass on the support point nearest the
        // mean (mean = ±tau lies on the grid).
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i <= tau; ++i) {
            if (std::abs(d.support[static_cast<std::size_t>(i)] - mean) <
                std::abs(d.support[static_cast<std::size_t>(best)] - mean)) {
                best = i;
            }
        }
        d.probs[best] = 1.0;
        return d;
    }
    for (int m = 0; m <= tau; ++m) {
        const double dx = d.support[static_cast<std::size_t>(m)] - mean;
        d.probs[m] = std::exp(-dx * dx / (2.0 * var));
    }
    d.probs /= d.probs.sum();
    return d;
}

}  // namespace qwalk
