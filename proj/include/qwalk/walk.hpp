#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qwalk/channels.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

/// Unnormalized amplitude pair (psi+, psi-) of a unitary line walk over the
/// parity-matching support {-tau, -tau+2, ..., tau}.
struct PureWalkState {
    int tau = 0;
    std::vector<int> support;
    Eigen::VectorXcd psi_plus;
    Eigen::VectorXcd psi_minus;

    // |psi+|^2 + |psi-|^2 = 1 within 1e-10.
    void validate() const;
    Eigen::VectorXcd joint_vector() const;  // [psi+; psi-], coin-major
};

/// Density matrix on coin (x) position. Layout is coin-major: index
/// c*S + i with S the support size, so rho splits into four SxS blocks.
struct JointState {
    int tau = 0;
    std::vector<int> support;
    Eigen::MatrixXcd rho;

    void validate() const;  // Hermitian 1e-10, trace 1e-10, min eig >= -1e-8
};

// Dense W = E (U (x) I) on coin (x) position. For Line{L} the position space
// is {-L..L}; the matrix implements M±|x> = |x±1> with the outermost columns
// truncated, so it is meaningful only for states kept away from the edges.
// For Loop{n} it is the cyclic shift fixing the sink, unitary on the whole
// space.
Eigen::MatrixXcd step_operator(const CoinOperator& coin, const Topology& t);
std::vector<int> position_space(const Topology& t);

/// Unitary line walk from the origin; O(tau^2) amplitude updates.
PureWalkState evolve_pure(const CoinOperator& coin, const CoinState& s0,
                          const Line& line, int tau);

/// Incremental noisy evolution: per step, coin noise, coin unitary, then the
/// conditional shift; a sink channel (if any) is applied after the walk step.
class NoisyWalk {
  public:
    NoisyWalk(const CoinOperator& coin, const CoinState& s0,
              const NoiseChannel& noise, const Topology& topology,
              std::optional<SinkChannel> sink = std::nullopt,
              int loop_start_site = 1);

    void step();
    int tau() const { return state_.tau; }
    const JointState& state() const { return state_; }

  private:
    CoinOperator coin_;
    NoiseChannel noise_;
    Topology topology_;
    std::optional<SinkChannel> sink_;
    JointState state_;
};

JointState evolve_noisy(const CoinOperator& coin, const CoinState& s0,
                        const NoiseChannel& noise, const Topology& topology,
                        int tau,
                        std::optional<SinkChannel> sink = std::nullopt,
                        int loop_start_site = 1);

// Trace over the coin: rho_pos = block(0,0) + block(1,1); the distribution is
// its (real) diagonal.
PositionState position_marginal(const JointState& s);
PositionState position_marginal(const PureWalkState& s);

void apply_sink(JointState& s, const SinkChannel& sink);

}  // namespace qwalk
