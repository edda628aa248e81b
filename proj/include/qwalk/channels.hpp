#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <vector>

#include "qwalk/topology.hpp"

namespace qwalk {

/// Quantum channel on the coin, given by 2x2 Kraus operators.
class NoiseChannel {
  public:
    // Completeness sum_i K_i^dag K_i = I is checked.
    explicit NoiseChannel(std::vector<Eigen::Matrix2cd> kraus);

    static NoiseChannel identity();
    // K1 = sqrt(p+)|+><+|, K2 = sqrt(p+)|+><-|, K3 = sqrt(p-)|-><+|,
    // K4 = sqrt(p-)|-><-|: resets the coin to diag(p+, p-).
    static NoiseChannel contraction(double p_plus);
    // K1 = sqrt(q)|+><+|, K2 = sqrt(q)|-><-|, K3 = sqrt(1-q) I.
    static NoiseChannel unital_decay(double q);
    static NoiseChannel amplitude_damping(double gamma);
    static NoiseChannel depolarizing(double p);

    const std::vector<Eigen::Matrix2cd>& kraus() const { return kraus_; }

    Eigen::Matrix2cd apply(const Eigen::Matrix2cd& rho) const;

  private:
    std::vector<Eigen::Matrix2cd> kraus_;
};

// name in {identity, contraction, unital-decay, amplitude-damping,
// depolarizing}; param is ignored for identity.
NoiseChannel make_channel(std::string_view name, double param);

/// Sink channel on the joint space of a loop: leaks population from the
/// sink_site into the absorbing site n+1 with probability `leak` per
/// application. Kraus operators are I (x) A and I (x) sqrt(r)|n+1><k|.
struct SinkChannel {
    int n_sites = 0;
    int sink_site = 1;
    double leak = 0.0;

    static SinkChannel from(const Loop& loop);
};

}  // namespace qwalk
