#pragma once

#include <Eigen/Dense>

#include "qwalk/coin.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

// Terminating Gauss hypergeometric series 2F1(a,b;c;z) with a <= 0 (or
// b <= 0) an integer, evaluated term by term with the coefficient
// recurrence. Throws NonTerminatingSeriesError if neither a nor b is a
// non-positive integer, InvalidSeriesParameterError if c <= 0.
Complex hyp2f1_terminating(int a, int b, int c, Complex z);

// 2x2 coin-space matrix summing all length-tau walk paths with n_plus right
// moves. Extreme cases n_plus in {0, tau-1} use the direct products; the
// generic branch assembles four terminating 2F1 terms and requires the coin
// products U00*U11 and U01*U10 to be nonsingular.
Eigen::Matrix2cd r_matrix(const CoinOperator& coin, int tau, int n_plus);

// Analytic walker amplitudes: psi±(tau) has <±|R_{N+}|phi0> at position
// 2 N+ - tau + 1 ± 1. Contract-identical to evolve_pure; throws
// SingularCoinError for coins with a vanishing entry product, in which case
// callers fall back to the step-by-step engine.
PureWalkState closed_form_state(const CoinOperator& coin, const CoinState& s0,
                                int tau);

bool coin_is_singular(const CoinOperator& coin);

}  // namespace qwalk
