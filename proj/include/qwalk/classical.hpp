#pragma once

#include <Eigen/Dense>

#include "qwalk/distribution.hpp"
#include "qwalk/topology.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

// Classical walks are parameterized by the right-move probability p_plus
// (p_minus is implied) plus the topology they run on.

// P(x) = C(tau, (tau+x)/2) p+^{(tau+x)/2} p-^{(tau-x)/2} on the parity
// support {-tau..tau}; log-space evaluation.
PositionDistribution binomial_distribution(double p_plus, int tau);

Eigen::MatrixXcd classical_density_operator(const PositionDistribution& d);

enum class ContractionCoin { identity, pauli_z };

/// Runs the contraction-noise walk and reports how classical the result is.
struct ContractionCheck {
    JointState joint;
    double max_offdiagonal = 0.0;    // position-basis coherence
    double max_diag_deviation = 0.0; // marginal vs binomial
    double joint_deviation = 0.0;    // vs the analytic product-form state
};

ContractionCheck contraction_walk_check(double p_plus, ContractionCoin coin,
                                        int tau);

// (n+1)-site stochastic process: cyclic ±1 moves with p± on loop sites, an
// absorbing sink, and the sink matrix S_k applied after each move.
PositionDistribution classical_loop_distribution(double p_plus,
                                                 const Loop& loop, int tau,
                                                 int start_site);

// One move + sink application on the (n+1)-entry site-probability vector.
void classical_loop_step(Eigen::VectorXd& v, double p_plus, const Loop& loop);

// Discrete Gaussian on the parity support with sigma^2 = tau (1 - mean^2 /
// tau^2), renormalized after discretization.
PositionDistribution gaussian_reference(double mean, int tau);

}  // namespace qwalk
