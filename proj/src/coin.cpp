#include "qwalk/coin.hpp"

#include <cmath>
#include <numbers>

#include "qwalk/errors.hpp"

namespace qwalk {

NumericsConfig& numerics_config() {
    static NumericsConfig cfg;
    return cfg;
}

namespace {

void check_unitary(const Eigen::Matrix2cd& u) {
    const Eigen::Matrix2cd gram = u.adjoint() * u;
    const double dev =
        (gram - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (dev > numerics_config().check_tol) {
        throw NonUnitaryError("coin matrix is not unitary (deviation " +
                              std::to_string(dev) + ")");
    }
}

}  // namespace

CoinOperator::CoinOperator(Eigen::Matrix2cd u, CoinTag tag,
                           std::optional<CoinParams> p)
    : u_(std::move(u)), tag_(tag), params_(std::move(p)) {}

CoinOperator CoinOperator::parameterized(double alpha, double beta,
                                         double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2)) {
        throw ParameterOutOfRangeError("coin theta must lie in [0, pi/2]");
    }
    const Complex ia(0.0, alpha);
    const Complex ib(0.0, beta);
    Eigen::Matrix2cd u;
    u << std::exp(ia) * std::cos(theta), std::exp(-ib) * std::sin(theta),
        std::exp(ib) * std::sin(theta), -std::exp(-ia) * std::cos(theta);
    check_unitary(u);
    return CoinOperator(u, CoinTag::parameterized,
                        CoinParams{alpha, beta, theta});
}

CoinOperator CoinOperator::hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd u;
    u << s, s, s, -s;
    return CoinOperator(u, CoinTag::hadamard, std::nullopt);
}

CoinOperator CoinOperator::identity() {
    return CoinOperator(Eigen::Matrix2cd::Identity(), CoinTag::identity,
                        std::nullopt);
}

CoinOperator CoinOperator::pauli_z() {
    Eigen::Matrix2cd u;
    u << 1.0, 0.0, 0.0, -1.0;
    return CoinOperator(u, CoinTag::pauli_z, std::nullopt);
}

CoinOperator CoinOperator::from_matrix(const Eigen::Matrix2cd& u) {
    check_unitary(u);
    return CoinOperator(u, CoinTag::custom, std::nullopt);
}

CoinState CoinState::pure(double eta, double gamma) {
    CoinState s;
    s.pure_ = PureParams{eta, gamma};
    const Complex lower = std::exp(Complex(0.0, gamma)) * std::sin(eta);
    Eigen::Vector2cd ket(std::cos(eta), lower);
    s.rho_ = ket * ket.adjoint();
    return s;
}

CoinState CoinState::from_density(const Eigen::Matrix2cd& rho) {
    const double tol = numerics_config().check_tol;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw InvalidDensityError("coin density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0)) > tol) {
        throw InvalidDensityError("coin density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
    if (es.eigenvalues().minCoeff() < -tol) {
        throw InvalidDensityError(
            "coin density matrix is not positive semidefinite");
    }
    CoinState s;
    s.rho_ = rho;
    return s;
}

double CoinState::eta() const {
    if (!pure_) throw NonPureCoinError("coin state has no pure-parameter form");
    return pure_->eta;
}

double CoinState::gamma() const {
    if (!pure_) throw NonPureCoinError("coin state has no pure-parameter form");
    return pure_->gamma;
}

Eigen::Vector2cd CoinState::ket() const {
    if (pure_) {
        return Eigen::Vector2cd(
            std::cos(pure_->eta),
            std::exp(Complex(0.0, pure_->gamma)) * std::sin(pure_->eta));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho_);
    if (es.eigenvalues().maxCoeff() < 1.0 - 1e-10) {
        throw NonPureCoinError("coin density matrix is not rank one");
    }
    return es.eigenvectors().col(1);  // eigenvalues ascending
}

Eigen::Matrix2cd CoinState::density() const { return rho_; }

}  // namespace qwalk
