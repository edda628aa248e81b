#include "qwalk/transport.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qwalk/classical.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/numerics.hpp"
#include "qwalk/quantumness.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kGridPoints = 1024;
constexpr double kChainSlack = 1e-9;

PositionDistribution to_distribution(const Eigen::VectorXd& v,
                                     const std::vector<int>& support) {
    PositionDistribution d;
    d.support = support;
    d.probs = v;
    return d;
}

}  // namespace

std::vector<double> quantum_efficiency(const CoinOperator& coin,
                                       const CoinState& s0, const Loop& loop,
                                       const NoiseChannel& noise, int tau,
                                       int start_site) {
    if (tau < 1) throw ParameterOutOfRangeError("tau must be >= 1");
    NoisyWalk walk(coin, s0, noise, Topology{loop}, SinkChannel::from(loop),
                   start_site);
    const Eigen::Index sink = loop.n_sites;
    std::vector<double> eta;
    eta.reserve(static_cast<std::size_t>(tau));
    for (int t = 0; t < tau; ++t) {
        walk.step();
        eta.push_back(position_marginal(walk.state()).dist.probs[sink]);
    }
    return eta;
}

std::vector<double> classical_efficiency(double p_plus, const Loop& loop,
                                         int tau, int start_site) {
    if (tau < 1) throw ParameterOutOfRangeError("tau must be >= 1");
    if (!(p_plus >= 0.0 && p_plus <= 1.0)) {
        throw ParameterOutOfRangeError("p_plus must lie in [0,1]");
    }
    validate(Topology{loop});
    if (start_site < 1 || start_site > loop.n_sites) {
        throw UnsupportedTopologyError("loop start site must lie in 1..n");
    }
    Eigen::VectorXd v = Eigen::VectorXd::Zero(loop.n_sites + 1);
    v[start_site - 1] = 1.0;
    std::vector<double> eta;
    eta.reserve(static_cast<std::size_t>(tau));
    for (int t = 0; t < tau; ++t) {
        classical_loop_step(v, p_plus, loop);
        eta.push_back(v[loop.n_sites]);
    }
    return eta;
}

double u_lower_bound(double eta_qw, double eta_rw) {
    if (eta_qw < 0.0 || eta_qw > 1.0 || eta_rw < 0.0 || eta_rw > 1.0) {
        throw ParameterOutOfRangeError("efficiencies must lie in [0,1]");
    }
    const double linear = (eta_rw - eta_qw) / std::numbers::ln2;
    if (eta_qw == 0.0) return linear;  // 0 log(0/x) vanishes
    if (eta_rw == 0.0) return kInf;
    const double u = linear + eta_qw * std::log2(eta_qw / eta_rw);
    // u >= 0 is x ln(x/y) - x + y >= 0; round off eps-level noise at 0
    return u < 0.0 && u > -1e-12 ? 0.0 : u;
}

TransportResult transport_report(const CoinOperator& coin, const CoinState& s0,
                                 const Loop& loop, const NoiseChannel& noise,
                                 int tau, ClassicalMode mode,
                                 double fixed_p_plus, int start_site) {
    if (tau < 1) throw ParameterOutOfRangeError("tau must be >= 1");
    if (mode == ClassicalMode::fixed &&
        !(fixed_p_plus >= 0.0 && fixed_p_plus <= 1.0)) {
        throw ParameterOutOfRangeError("fixed p_plus must lie in [0,1]");
    }
    validate(Topology{loop});
    if (start_site < 1 || start_site > loop.n_sites) {
        throw UnsupportedTopologyError("loop start site must lie in 1..n");
    }

    NoisyWalk walk(coin, s0, noise, Topology{loop}, SinkChannel::from(loop),
                   start_site);
    const std::vector<int> support = position_space(Topology{loop});
    const Eigen::Index sink = loop.n_sites;

    // The classical family is re-scanned at every step; advancing one walker
    // per grid bias keeps the scan at O(grid * n) per step instead of
    // re-simulating each candidate from scratch.
    std::vector<Eigen::VectorXd> grid(
        kGridPoints, Eigen::VectorXd::Zero(loop.n_sites + 1));
    for (auto& v : grid) v[start_site - 1] = 1.0;
    Eigen::VectorXd fixed_walker = Eigen::VectorXd::Zero(loop.n_sites + 1);
    fixed_walker[start_site - 1] = 1.0;

    TransportResult result;
    result.mode = mode;
    result.trajectory.reserve(static_cast<std::size_t>(tau));

    for (int t = 1; t <= tau; ++t) {
        walk.step();
        for (int i = 0; i < kGridPoints; ++i) {
            classical_loop_step(grid[static_cast<std::size_t>(i)],
                                static_cast<double>(i) / (kGridPoints - 1),
                                loop);
        }
        classical_loop_step(fixed_walker, fixed_p_plus, loop);

        const PositionState marg = position_marginal(walk.state());

        ScalarMinimum best{0.5, kInf};
        int best_i = -1;
        for (int i = 0; i < kGridPoints; ++i) {
            const double p = static_cast<double>(i) / (kGridPoints - 1);
            const double v = kl_divergence(
                marg.dist,
                to_distribution(grid[static_cast<std::size_t>(i)], support));
            if (v < best.value) {
                best = {p, v};
                best_i = i;
            }
        }
        if (best_i >= 0) {
            const auto objective = [&](double p) {
                return kl_divergence(
                    marg.dist, classical_loop_distribution(p, loop, t,
                                                           start_site));
            };
            const double lo = static_cast<double>(std::max(0, best_i - 1)) /
                              (kGridPoints - 1);
            const double hi =
                static_cast<double>(std::min(kGridPoints - 1, best_i + 1)) /
                (kGridPoints - 1);
            best = golden_section_refine(objective, lo, hi, best);
        }

        TransportPoint pt;
        pt.tau = t;
        pt.eta_qw = std::clamp(marg.dist.probs[sink], 0.0, 1.0);
        pt.q_value = best.value;
        pt.total_q = best.value + coherence(marg.rho);
        pt.classical_p_plus =
            (mode == ClassicalMode::optimal) ? best.x : fixed_p_plus;
        const double eta_rw =
            (mode == ClassicalMode::optimal)
                ? classical_loop_distribution(best.x, loop, t, start_site)
                      .probs[sink]
                : fixed_walker[sink];
        pt.eta_rw = std::clamp(eta_rw, 0.0, 1.0);
        pt.deviation = std::abs(pt.eta_qw - pt.eta_rw);
        pt.u_bound = u_lower_bound(pt.eta_qw, pt.eta_rw);

        if (mode == ClassicalMode::optimal) {
            const bool chain_ok = pt.total_q >= pt.q_value - kChainSlack &&
                                  pt.q_value >= pt.u_bound - kChainSlack &&
                                  pt.u_bound >= -kChainSlack;
            if (!chain_ok) {
                throw Error("transport bound chain violated at step " +
                            std::to_string(t));
            }
        }
        result.trajectory.push_back(pt);
    }
    return result;
}

}  // namespace qwalk
