#pragma once

#include <vector>

#include "qwalk/channels.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

// Sink population trajectory eta(t) for t = 1..tau.
std::vector<double> quantum_efficiency(const CoinOperator& coin,
                                       const CoinState& s0, const Loop& loop,
                                       const NoiseChannel& noise, int tau,
                                       int start_site = 1);

std::vector<double> classical_efficiency(double p_plus, const Loop& loop,
                                         int tau, int start_site = 1);

// u = (eta_rw - eta_qw)/ln 2 + eta_qw log2(eta_qw/eta_rw), in bits.
// 0 log(0/x) is 0; +infinity when eta_qw > 0 with eta_rw = 0.
double u_lower_bound(double eta_qw, double eta_rw);

enum class ClassicalMode { optimal, fixed };

struct TransportPoint {
    int tau = 0;
    double eta_qw = 0.0;
    double eta_rw = 0.0;
    double deviation = 0.0;
    double u_bound = 0.0;
    double q_value = 0.0;
    double total_q = 0.0;
    double classical_p_plus = 0.5;
};

struct TransportResult {
    ClassicalMode mode = ClassicalMode::optimal;
    std::vector<TransportPoint> trajectory;  // one point per step 1..tau

    const TransportPoint& final_point() const { return trajectory.back(); }
};

// Full comparison on the loop. optimal mode: the classical reference at each
// step is the Q-minimizing walk (same start site), and the chain
// total_q >= q >= u >= 0 is verified within 1e-9 slack. fixed mode: eta_rw,
// deviation and u use the supplied bias while q/total_q remain the minimized
// measures, so the chain is reported but not asserted.
TransportResult transport_report(const CoinOperator& coin, const CoinState& s0,
                                 const Loop& loop, const NoiseChannel& noise,
                                 int tau,
                                 ClassicalMode mode = ClassicalMode::optimal,
                                 double fixed_p_plus = 0.5,
                                 int start_site = 1);

}  // namespace qwalk
