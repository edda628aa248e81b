#pragma once

#include <Eigen/Dense>
#include <optional>

#include "qwalk/numerics.hpp"

namespace qwalk {

// Coin basis convention used everywhere: index 0 <-> |+>, index 1 <-> |->.

enum class CoinTag { parameterized, hadamard, identity, pauli_z, custom };

struct CoinParams {
    double alpha = 0.0;
    double beta = 0.0;
    double theta = 0.0;
};

/// A validated 2x2 unitary acting on the coin space.
class CoinOperator {
  public:
    // [[e^{ia} cos t, e^{-ib} sin t], [e^{ib} sin t, -e^{-ia} cos t]],
    // with 0 <= t <= pi/2.
    static CoinOperator parameterized(double alpha, double beta, double theta);
    static CoinOperator hadamard();
    static CoinOperator identity();
    static CoinOperator pauli_z();
    // Arbitrary matrix; unitarity is checked.
    static CoinOperator from_matrix(const Eigen::Matrix2cd& u);

    const Eigen::Matrix2cd& matrix() const { return u_; }
    CoinTag tag() const { return tag_; }
    const std::optional<CoinParams>& params() const { return params_; }

  private:
    CoinOperator(Eigen::Matrix2cd u, CoinTag tag, std::optional<CoinParams> p);

    Eigen::Matrix2cd u_;
    CoinTag tag_;
    std::optional<CoinParams> params_;
};

/// Coin state: either the pure form cos(eta)|+> + e^{i gamma} sin(eta)|->
/// or an arbitrary 2x2 density matrix in the {|+>,|->} basis.
class CoinState {
  public:
    static CoinState pure(double eta, double gamma);
    // Hermitian, trace 1, PSD (all within the configured tolerance).
    static CoinState from_density(const Eigen::Matrix2cd& rho);

    bool has_pure_form() const { return pure_.has_value(); }
    double eta() const;
    double gamma() const;

    // Ket of the pure form, or the dominant eigenvector if the density is
    // numerically rank one. Throws NonPureCoinError otherwise.
    Eigen::Vector2cd ket() const;
    Eigen::Matrix2cd density() const;

  private:
    CoinState() = default;

    struct PureParams {
        double eta;
        double gamma;
    };
    std::optional<PureParams> pure_;
    Eigen::Matrix2cd rho_;
};

}  // namespace qwalk
