#pragma once

#include <Eigen/Dense>
#include <numbers>
#include <random>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::testing {

inline CoinOperator random_coin(std::mt19937_64& rng, double theta_lo,
                                double theta_hi) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> theta(theta_lo, theta_hi);
    return CoinOperator::parameterized(angle(rng), angle(rng), theta(rng));
}

inline CoinOperator random_coin(std::mt19937_64& rng) {
    return random_coin(rng, 0.0, std::numbers::pi / 2);
}

// All four entry magnitudes above 0.1, keeping the closed form well away
// from its singular branch.
inline CoinOperator random_nonsingular_coin(std::mt19937_64& rng) {
    return random_coin(rng, 0.15, std::numbers::pi / 2 - 0.15);
}

inline CoinState random_pure_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> eta(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> gamma(0.0, 2.0 * std::numbers::pi);
    return CoinState::pure(eta(rng), gamma(rng));
}

// Brute-force line walk: repeated application of the dense step operator on
// the full lattice {-L..L}. Returns the joint vector, coin-major.
inline Eigen::VectorXcd dense_line_evolve(const CoinOperator& coin,
                                          const Eigen::Vector2cd& phi0,
                                          int tau, int lattice_radius) {
    const Topology t = Line{lattice_radius};
    const Eigen::MatrixXcd w = step_operator(coin, t);
    const Eigen::Index s = 2 * lattice_radius + 1;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * s);
    psi[lattice_radius] = phi0[0];
    psi[s + lattice_radius] = phi0[1];
    for (int i = 0; i < tau; ++i) psi = w * psi;
    return psi;
}

// All R_{N+} matrices by explicit enumeration of the 2^{tau-1} projector
// strings U P_{k_{tau-1}} ... U P_{k_1} U, binned by right-move count.
inline std::vector<Eigen::Matrix2cd> path_enum_r_matrices(
    const Eigen::Matrix2cd& u, int tau) {
    std::vector<Eigen::Matrix2cd> r(static_cast<std::size_t>(tau),
                                    Eigen::Matrix2cd::Zero());
    Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero();
    Eigen::Matrix2cd p1 = Eigen::Matrix2cd::Zero();
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const int nbits = tau - 1;
    for (unsigned long mask = 0; mask < (1ul << nbits); ++mask) {
        Eigen::Matrix2cd prod = u;
        int n_minus = 0;
        for (int i = 0; i < nbits; ++i) {
            const bool left = (mask >> i) & 1u;
            n_minus += left ? 1 : 0;
            prod = u * (left ? p1 : p0) * prod;
        }
        r[static_cast<std::size_t>(tau - 1 - n_minus)] += prod;
    }
    return r;
}

inline double linear_fit_r_squared(const std::vector<double>& x,
                                   const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = slope * x[i] + intercept;
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    return 1.0 - ss_res / ss_tot;
}

}  // namespace qwalk::testing
