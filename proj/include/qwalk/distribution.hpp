#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qwalk {

/// Probability distribution over an explicit, ordered position support.
struct PositionDistribution {
    std::vector<int> support;
    Eigen::VectorXd probs;

    // Sum 1 within 1e-10, all entries >= 0, support sorted and matching.
    void validate() const;
    double prob_at(int x) const;  // 0 if x is off-support
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

Moments moments(const PositionDistribution& d);

/// Position-space density matrix together with its diagonal distribution.
struct PositionState {
    PositionDistribution dist;
    Eigen::MatrixXcd rho;
};

// Union of supports; probabilities re-indexed, missing points get 0.
std::pair<PositionDistribution, PositionDistribution> align_supports(
    const PositionDistribution& a, const PositionDistribution& b);

}  // namespace qwalk
